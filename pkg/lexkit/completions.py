"""
Weight classes, the finite coproduct completion and the closure engine.

A weight class is a list of weights; each weight pairs a generating sketch
with a recipe that computes the weighted colimit of a diagram instantiating
the sketch. The closure engine grows a set of presheaves from the
representables by finite limits and recipe colimits, one round at a time.
"""

from collections import Counter
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import chain, islice
from itertools import product as cartesian
from typing import Any

from . import relcalc
from ._logger import get_logger
from ._serialize import SCHEMA_VERSION
from .carrier.base import Carrier
from .carrier.diagram import Diagram
from .carrier.model import NatTrans, Presheaf
from .carrier.presheaf import PresheafCarrier, canonical_signature, iso_test
from .config import Cutoffs
from .exactness import double_kernel_colimit
from .exception import IllFormed, MonoViolation, ShapeMismatch, Unsupported
from .fincat import (
    FinCategory,
    binary_product,
    equalizer,
    pretty_print,
    standard_shape,
    terminal_object,
)

logger = get_logger()

MAX_ELEMENT_SIZE = 8


@dataclass(frozen=True)
class ColimitResult:
    apex: Any
    legs: tuple

    def leg(self, obj: str) -> Any:
        return dict(self.legs)[obj]


@dataclass(frozen=True)
class Weight:
    name: str
    sketch: FinCategory
    recipe: Callable[[Carrier, Diagram], ColimitResult] = field(compare=False)


@dataclass(frozen=True)
class WeightClass:
    name: str
    weights: tuple[Weight, ...]

    def weight_for(self, shape: FinCategory) -> Weight:
        for weight in self.weights:
            if weight.sketch == shape:
                return weight
        expected = " or ".join(w.sketch.describe() for w in self.weights)
        raise ShapeMismatch(expected, shape.describe())

    def weight_named(self, name: str) -> Weight:
        for weight in self.weights:
            if weight.name == name:
                return weight
        raise IllFormed(f"class {self.name} has no weight '{name}'")


# ---------------------------------------------------------------------------
# recipes


def _initial(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    return ColimitResult(carrier.initial(), ())


def _coproduct(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    objects = diagram.shape.objects
    coproduct = carrier.coproduct([diagram.at(o) for o in objects])
    return ColimitResult(coproduct.apex, tuple(zip(objects, coproduct.injections)))


def _regular(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    """Coequalizer of the kernel pair of the arrow."""
    f = diagram.map("f")
    kernel = carrier.kernel_pair(f)
    coequalizer = carrier.coequalizer(kernel.p1, kernel.p2)
    return ColimitResult(coequalizer.apex, (("A", coequalizer.quotient),))


def _exact(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    d, c = diagram.map("d"), diagram.map("c")
    r = relcalc.relation_from_legs(carrier, d.target, d, c)
    if not relcalc.is_equivalence(carrier, r):
        raise IllFormed("parallel pair is not an equivalence relation")
    coequalizer = carrier.coequalizer(d, c)
    return ColimitResult(coequalizer.apex, (("Y", coequalizer.quotient),))


def _union(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    """Pushout of the two subobjects over their intersection."""
    pullback = carrier.pullback(diagram.map("f"), diagram.map("g"))
    pushout = carrier.pushout(pullback.p1, pullback.p2)
    return ColimitResult(pushout.apex, (("A", pushout.q1), ("B", pushout.q2)))


def _double_kernel(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    colimit, _ = double_kernel_colimit(carrier, diagram.map("f"), diagram.map("g"))
    legs = (("A", colimit.leg("A")), ("B", colimit.leg("B")))
    return ColimitResult(colimit.apex, legs)


def _pushout_along_mono(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    pushout = carrier.pushout(diagram.map("m"), diagram.map("f"))
    return ColimitResult(pushout.apex, (("A", pushout.q1), ("B", pushout.q2)))


def _reflexive(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    """Image of the pair, its chain closure, then the quotient by the closure."""
    d, c = diagram.map("d"), diagram.map("c")
    r = relcalc.relation_from_legs(carrier, d.target, d, c)
    closure, steps = relcalc.chain_stabilize(carrier, r)
    coequalizer = carrier.coequalizer(closure.d, closure.c)
    direct = carrier.coequalizer(d, c).quotient
    if not relcalc.same_relation(
        carrier,
        relcalc.kernel_pair(carrier, direct),
        relcalc.kernel_pair(carrier, coequalizer.quotient),
    ):
        logger.warning(
            f"reflexive coequalizer via the relation chain ({steps} steps) "
            "differs from the direct coequalizer"
        )
    return ColimitResult(coequalizer.apex, (("Y", coequalizer.quotient),))


def _diagram_colimit(carrier: Carrier, diagram: Diagram) -> ColimitResult:
    colimit = carrier.colimit(diagram)
    return ColimitResult(colimit.apex, colimit.legs)


def _weights() -> dict[str, Weight]:
    return {
        "initial": Weight("initial", standard_shape("discrete", 0), _initial),
        "coproduct": Weight("coproduct", standard_shape("discrete", 2), _coproduct),
        "reg": Weight("reg", standard_shape("walking_arrow"), _regular),
        "ex": Weight("ex", standard_shape("parallel_pair"), _exact),
        "union": Weight("union", standard_shape("mono_cospan"), _union),
        "double_kernel": Weight(
            "double_kernel", standard_shape("cospan"), _double_kernel
        ),
        "adh": Weight("adh", standard_shape("mono_span"), _pushout_along_mono),
        "rc": Weight("rc", standard_shape("reflexive_pair"), _reflexive),
    }


WEIGHTS = _weights()

_CLASSES = {
    "lext": ("initial", "coproduct"),
    "reg": ("reg",),
    "ex": ("ex",),
    "union": ("union",),
    "coh": ("reg", "initial", "union"),
    "coh_prime": ("initial", "double_kernel"),
    "adh": ("adh",),
    "rc": ("rc",),
}

CLASS_NAMES = tuple(_CLASSES) + ("filt",)


def weight_class(name: str) -> WeightClass:
    """
    Look up a class by name; ``filt(<shape>)`` builds the filtered class of
    a standard shape.
    """
    key = name.strip()
    if key.startswith("filt"):
        shape_name = key[len("filt") :].strip()
        if not (shape_name.startswith("(") and shape_name.endswith(")")):
            raise IllFormed("the filtered class is written filt(<shape>)")
        return filtered_class(standard_shape(shape_name[1:-1]))
    try:
        members = _CLASSES[key]
    except KeyError:
        raise IllFormed(f"unknown weight class '{name}'")
    return WeightClass(key, tuple(WEIGHTS[w] for w in members))


def filtered_class(shape: FinCategory) -> WeightClass:
    name = f"filt({shape.describe()})"
    return WeightClass(name, (Weight(name, shape, _diagram_colimit),))


def weighted_colimit(
    w: WeightClass, diagram: Diagram, carrier: Carrier
) -> ColimitResult:
    """
    Colimit of ``diagram`` weighted by the member of ``w`` whose sketch is
    the diagram's shape.

    Raises:
        ShapeMismatch: If no weight of ``w`` has the diagram's shape.
        MonoViolation: If a generator marked mono is not sent to a mono.
    """
    weight = w.weight_for(diagram.shape)
    for g in weight.sketch.monos:
        if not carrier.is_mono(diagram.map(g)):
            raise MonoViolation(g)
    return weight.recipe(carrier, diagram)


# ---------------------------------------------------------------------------
# the finite coproduct completion


@dataclass(frozen=True)
class FamObject:
    items: tuple[str, ...]


@dataclass(frozen=True)
class FamMorphism:
    """A reindexing ``I -> J`` with components ``X_i -> Y_{f(i)}``."""

    source: FamObject
    target: FamObject
    reindex: tuple[int, ...]
    components: tuple[str, ...]


class FamCategory:
    """
    Finite families of objects of ``base``.

    Coproducts are concatenation; products, terminal object and equalizers
    are built from those of ``base`` when it has them.
    """

    def __init__(self, base: FinCategory):
        self.base = base

    def check(self, f: FamMorphism) -> FamMorphism:
        if len(f.reindex) != len(f.source.items) or len(f.components) != len(
            f.source.items
        ):
            raise IllFormed("family morphism has the wrong number of components")
        for i, (j, h) in enumerate(zip(f.reindex, f.components)):
            if not 0 <= j < len(f.target.items):
                raise IllFormed(f"index {i} is sent outside the target family")
            if (self.base.source(h), self.base.target(h)) != (
                f.source.items[i],
                f.target.items[j],
            ):
                raise IllFormed(f"component {h} has the wrong ends")
        return f

    def identity(self, x: FamObject) -> FamMorphism:
        return FamMorphism(
            x,
            x,
            tuple(range(len(x.items))),
            tuple(self.base.identity(o) for o in x.items),
        )

    def compose(self, g: FamMorphism, f: FamMorphism) -> FamMorphism:
        if f.target != g.source:
            raise IllFormed("family morphisms are not composable")
        return FamMorphism(
            f.source,
            g.target,
            tuple(g.reindex[j] for j in f.reindex),
            tuple(
                self.base.compose(g.components[j], h)
                for j, h in zip(f.reindex, f.components)
            ),
        )

    def hom(self, x: FamObject, y: FamObject) -> Iterator[FamMorphism]:
        for reindex in cartesian(range(len(y.items)), repeat=len(x.items)):
            spaces = [
                self.base.hom(x.items[i], y.items[j]) for i, j in enumerate(reindex)
            ]
            for components in cartesian(*spaces):
                yield FamMorphism(x, y, tuple(reindex), tuple(components))

    def objects(self, max_length: int) -> list[FamObject]:
        return [
            FamObject(items)
            for n in range(max_length + 1)
            for items in cartesian(self.base.objects, repeat=n)
        ]

    # coproducts

    def initial(self) -> FamObject:
        return FamObject(())

    def coproduct(self, objects: Sequence[FamObject]) -> tuple[FamObject, list]:
        apex = FamObject(tuple(o for x in objects for o in x.items))
        injections = []
        offset = 0
        for x in objects:
            injections.append(
                FamMorphism(
                    x,
                    apex,
                    tuple(offset + i for i in range(len(x.items))),
                    tuple(self.base.identity(o) for o in x.items),
                )
            )
            offset += len(x.items)
        return apex, injections

    def copair(self, apex: FamObject, maps: Sequence[FamMorphism], target: FamObject):
        return FamMorphism(
            apex,
            target,
            tuple(j for f in maps for j in f.reindex),
            tuple(h for f in maps for h in f.components),
        )

    # limits

    def terminal(self) -> FamObject:
        t = terminal_object(self.base)
        if t is None:
            raise Unsupported(f"Fam({self.base.describe()})", "terminal object")
        return FamObject((t,))

    def product(
        self, x: FamObject, y: FamObject
    ) -> tuple[FamObject, FamMorphism, FamMorphism]:
        items, left, right, to_x, to_y = [], [], [], [], []
        for i, a in enumerate(x.items):
            for j, b in enumerate(y.items):
                found = binary_product(self.base, a, b)
                if found is None:
                    raise Unsupported(
                        f"Fam({self.base.describe()})", f"product of {a} and {b}"
                    )
                p, pa, pb = found
                items.append(p)
                to_x.append(i)
                to_y.append(j)
                left.append(pa)
                right.append(pb)
        apex = FamObject(tuple(items))
        return (
            apex,
            FamMorphism(apex, x, tuple(to_x), tuple(left)),
            FamMorphism(apex, y, tuple(to_y), tuple(right)),
        )

    def equalizer(
        self, f: FamMorphism, g: FamMorphism
    ) -> tuple[FamObject, FamMorphism]:
        if f.source != g.source or f.target != g.target:
            raise IllFormed("equalizer needs a parallel pair")
        items, reindex, components = [], [], []
        for i in range(len(f.source.items)):
            if f.reindex[i] != g.reindex[i]:
                continue
            found = equalizer(self.base, f.components[i], g.components[i])
            if found is None:
                raise Unsupported(
                    f"Fam({self.base.describe()})",
                    f"equalizer of {f.components[i]} and {g.components[i]}",
                )
            e, m = found
            items.append(e)
            reindex.append(i)
            components.append(m)
        apex = FamObject(tuple(items))
        return apex, FamMorphism(apex, f.source, tuple(reindex), tuple(components))

    # embeddings

    def W(self, obj: str) -> FamObject:
        return FamObject((obj,))

    def W_map(self, morphism: str) -> FamMorphism:
        return FamMorphism(
            self.W(self.base.source(morphism)),
            self.W(self.base.target(morphism)),
            (0,),
            (morphism,),
        )

    def J(self, x: FamObject, carrier: PresheafCarrier) -> Presheaf:
        """``J(X_i) = Σ Y(X_i)`` in the presheaf carrier."""
        return carrier.coproduct([carrier.yoneda(o) for o in x.items]).apex

    def J_map(self, f: FamMorphism, carrier: PresheafCarrier) -> NatTrans:
        source = carrier.coproduct([carrier.yoneda(o) for o in f.source.items])
        target = carrier.coproduct([carrier.yoneda(o) for o in f.target.items])
        maps = [
            carrier.compose(target.injections[j], carrier.yoneda_map(h))
            for j, h in zip(f.reindex, f.components)
        ]
        return carrier.copair(source, maps, target.apex)

    def summary(self, max_length: int = 2) -> dict:
        objects = self.objects(max_length)
        morphisms = sum(len(list(self.hom(x, y))) for x in objects for y in objects)
        return {
            "base": self.base.describe(),
            "max_length": max_length,
            "objects": len(objects),
            "morphisms": morphisms,
        }

    def check_preservation(self, max_length: int = 2) -> dict:
        """
        Compare ``J`` of Fam coproducts and limits with the presheaf
        constructions, up to isomorphism.
        """
        carrier = PresheafCarrier(self.base)
        objects = self.objects(max_length)
        report = {"coproducts": 0, "products": 0, "terminal": 0, "equalizers": 0}
        failures = []
        for x, y in cartesian(objects, repeat=2):
            apex, _ = self.coproduct([x, y])
            expected = carrier.coproduct([self.J(x, carrier), self.J(y, carrier)]).apex
            if iso_test(self.J(apex, carrier), expected) is None:
                failures.append(
                    {"construction": "coproduct", "objects": [x.items, y.items]}
                )
            report["coproducts"] += 1
            try:
                product, _, _ = self.product(x, y)
            except Unsupported:
                continue
            expected = carrier.product([self.J(x, carrier), self.J(y, carrier)]).apex
            if iso_test(self.J(product, carrier), expected) is None:
                failures.append(
                    {"construction": "product", "objects": [x.items, y.items]}
                )
            report["products"] += 1
        try:
            terminal = self.terminal()
        except Unsupported:
            terminal = None
        if terminal is not None:
            if iso_test(self.J(terminal, carrier), carrier.terminal()) is None:
                failures.append({"construction": "terminal"})
            report["terminal"] += 1
        for x, y in cartesian(objects, repeat=2):
            homs = list(self.hom(x, y))
            for k, f in enumerate(homs):
                for g in homs[k + 1 :]:
                    try:
                        apex, _ = self.equalizer(f, g)
                    except Unsupported:
                        continue
                    expected = carrier.equalizer(
                        self.J_map(f, carrier), self.J_map(g, carrier)
                    ).apex
                    if iso_test(self.J(apex, carrier), expected) is None:
                        failures.append(
                            {"construction": "equalizer", "objects": [x.items, y.items]}
                        )
                    report["equalizers"] += 1
        report["failures"] = failures
        return report


def famf_build(base: FinCategory) -> FamCategory:
    return FamCategory(base)


# ---------------------------------------------------------------------------
# closure of the representables


@dataclass(frozen=True)
class Term:
    """
    A construction term.

    ``op`` is one of ``yoneda``, ``terminal``, ``product``, ``equalizer``
    or ``colimit``; ``params`` are sorted ``(key, value)`` pairs.
    """

    op: str
    children: tuple["Term", ...] = ()
    params: tuple = ()

    def param(self, key: str) -> Any:
        return dict(self.params)[key]

    def to_json(self) -> dict:
        return {
            "op": self.op,
            "children": [c.to_json() for c in self.children],
            "params": {k: dict(v) if k == "maps" else v for k, v in self.params},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Term":
        try:
            return cls(
                data["op"],
                tuple(cls.from_json(c) for c in data.get("children", [])),
                tuple(sorted(_freeze(data.get("params", {})).items())),
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise IllFormed(f"cannot decode construction term: {e!r}")


def _freeze(params: dict) -> dict:
    return {
        k: tuple(sorted(v.items())) if isinstance(v, dict) else v
        for k, v in params.items()
    }


def _term(op: str, children: Sequence[Term] = (), **params) -> Term:
    return Term(op, tuple(children), tuple(sorted(_freeze(params).items())))


def render_term(term: Term) -> str:
    """Human-readable form: ``Y(x0) + Y(x0)``, ``A × B``, ``Eq(A, B)``."""
    if term.op == "yoneda":
        return f"Y({term.param('object')})"
    if term.op == "terminal":
        return "1"
    if term.op == "product":
        return " × ".join(_wrap(c, "product") for c in term.children)
    if term.op == "equalizer":
        return f"Eq({', '.join(render_term(c) for c in term.children)})"
    weight = term.param("weight")
    if weight == "initial":
        return "0"
    if weight == "coproduct":
        return " + ".join(_wrap(c, "coproduct") for c in term.children)
    return f"{weight}({', '.join(render_term(c) for c in term.children)})"


def _infix(term: Term) -> str | None:
    if term.op == "product":
        return "product"
    if term.op == "colimit" and term.param("weight") == "coproduct":
        return "coproduct"
    return None


def _wrap(term: Term, context: str) -> str:
    text = render_term(term)
    infix = _infix(term)
    if infix is not None and infix != context:
        return f"({text})"
    return text


@dataclass(frozen=True)
class ClosureElement:
    presheaf: Presheaf
    term: Term
    round: int


@dataclass(frozen=True)
class ClosureSet:
    base: FinCategory
    classes: tuple[str, ...]
    budget: int
    status: str
    rounds: int
    elements: tuple[ClosureElement, ...]
    oversized: int = 0
    truncated: int = 0

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "base": pretty_print(self.base),
            "classes": list(self.classes),
            "budget": self.budget,
            "status": self.status,
            "rounds": self.rounds,
            "cuts": {"oversized": self.oversized, "truncated": self.truncated},
            "elements": [
                {
                    "sizes": {o: len(e.presheaf.at(o)) for o in self.base.objects},
                    "round": e.round,
                    "term": e.term.to_json(),
                    "rendered": render_term(e.term),
                }
                for e in self.elements
            ],
        }


class _Inventory:
    """Elements found so far, bucketed by canonical signature."""

    def __init__(self, max_element_size: int):
        self.max_element_size = max_element_size
        self.elements: list[ClosureElement] = []
        self._buckets: dict = {}
        self.cuts: Counter = Counter()

    def find(self, presheaf: Presheaf) -> ClosureElement | None:
        for element in self._buckets.get(canonical_signature(presheaf), []):
            if iso_test(presheaf, element.presheaf) is not None:
                return element
        return None

    def add(self, presheaf: Presheaf, term: Term, round_: int) -> bool:
        if presheaf.size > self.max_element_size:
            self.cuts["oversized"] += 1
            return False
        if self.find(presheaf) is not None:
            return False
        element = ClosureElement(presheaf, term, round_)
        self._buckets.setdefault(canonical_signature(presheaf), []).append(element)
        self.elements.append(element)
        return True


def _homs(carrier: PresheafCarrier, source, target, cap: int, cuts: Counter) -> list:
    homs = list(islice(carrier.hom(source, target), cap + 1))
    if len(homs) > cap:
        cuts["truncated"] += 1
    return homs[:cap]


def _limit_candidates(
    carrier: PresheafCarrier,
    snapshot: list[ClosureElement],
    cutoffs: Cutoffs,
    cuts: Counter,
) -> Iterator[tuple[Presheaf, Term]]:
    yield carrier.terminal(), _term("terminal")
    for i, a in enumerate(snapshot):
        for b in snapshot[i:]:
            product = carrier.product([a.presheaf, b.presheaf]).apex
            yield product, _term("product", [a.term, b.term])
    # hom_cap bounds the maps considered per pair of elements, not the pairs of maps
    for a in snapshot:
        for b in snapshot:
            homs = _homs(carrier, a.presheaf, b.presheaf, cutoffs.hom_cap, cuts)
            for k, f in enumerate(homs):
                for m, g in enumerate(homs[k + 1 :], start=k + 1):
                    apex = carrier.equalizer(f, g).apex
                    yield apex, _term("equalizer", [a.term, b.term], f=k, g=m)


def _instantiations(
    carrier: PresheafCarrier,
    sketch: FinCategory,
    snapshot: list,
    cutoffs: Cutoffs,
    cuts: Counter,
) -> Iterator[tuple[list, dict, Diagram]]:
    """Diagrams of ``sketch`` over snapshot elements, with hom indices per generator."""
    generators = list(sketch.generators)
    symmetric = not generators
    for choice in cartesian(range(len(snapshot)), repeat=len(sketch.objects)):
        if symmetric and list(choice) != sorted(choice):
            continue
        objects = {o: snapshot[k].presheaf for o, k in zip(sketch.objects, choice)}
        spaces = [
            _homs(
                carrier,
                objects[sketch.source(g)],
                objects[sketch.target(g)],
                cutoffs.hom_cap,
                cuts,
            )
            for g in generators
        ]
        for indices in cartesian(*[range(len(s)) for s in spaces]):
            maps = {
                g: spaces[n][k] for n, (g, k) in enumerate(zip(generators, indices))
            }
            try:
                diagram = Diagram.build(carrier, sketch, objects, maps)
            except (IllFormed, MonoViolation):
                continue
            yield [snapshot[k] for k in choice], dict(zip(generators, indices)), diagram


def _colimit_candidates(
    carrier: PresheafCarrier,
    classes: Sequence[WeightClass],
    snapshot: list[ClosureElement],
    cutoffs: Cutoffs,
    cuts: Counter,
) -> Iterator[tuple[Presheaf, Term]]:
    seen = set()
    for w in classes:
        for weight in w.weights:
            if weight.name in seen:
                continue
            seen.add(weight.name)
            for members, maps, diagram in _instantiations(
                carrier, weight.sketch, snapshot, cutoffs, cuts
            ):
                try:
                    result = weight.recipe(carrier, diagram)
                except IllFormed:
                    continue
                yield result.apex, _term(
                    "colimit",
                    [m.term for m in members],
                    weight=weight.name,
                    cls=w.name,
                    maps=maps,
                )


def phi_closure(
    base: FinCategory,
    classes: Sequence[WeightClass],
    budget: int,
    cutoffs: Cutoffs = Cutoffs(),
    max_element_size: int = MAX_ELEMENT_SIZE,
) -> ClosureSet:
    """
    Close the representables under finite limits and the given colimits.

    Each round works on a snapshot of the elements found so far. The result
    is a fixpoint when a round adds nothing and nothing was cut off by
    ``max_element_size`` or ``cutoffs.hom_cap``; otherwise the budget ran
    out. A quiet round that was cut off ends the search.
    """
    carrier = PresheafCarrier(base)
    inventory = _Inventory(max_element_size)
    for obj in base.objects:
        inventory.add(carrier.yoneda(obj), _term("yoneda", object=obj), 0)
    status = "budget_exhausted"
    rounds = 0
    for round_ in range(1, budget + 1):
        rounds = round_
        snapshot = list(inventory.elements)
        cuts = inventory.cuts = Counter()
        candidates = chain(
            _limit_candidates(carrier, snapshot, cutoffs, cuts),
            _colimit_candidates(carrier, classes, snapshot, cutoffs, cuts),
        )
        added = sum(inventory.add(p, term, round_) for p, term in candidates)
        logger.debug(
            f"closure round {round_}: {added} new, {len(inventory.elements)} total"
        )
        if cuts:
            logger.warning(
                f"closure round {round_}: {cuts['oversized']} candidates over "
                f"size {max_element_size} dropped, {cuts['truncated']} hom-sets "
                f"cut at {cutoffs.hom_cap}"
            )
        if not added:
            if not cuts:
                status = "fixpoint"
            break
    return ClosureSet(
        base,
        tuple(w.name for w in classes),
        budget,
        status,
        rounds,
        tuple(inventory.elements),
        oversized=inventory.cuts["oversized"],
        truncated=inventory.cuts["truncated"],
    )


def evaluate_term(
    base: FinCategory, term: Term, classes: Sequence[WeightClass] = ()
) -> Presheaf:
    """
    Rebuild the presheaf a term describes.

    Raises:
        IllFormed: If the term does not describe a construction.
    """
    carrier = PresheafCarrier(base)
    by_name = {w.name: w for w in classes}

    def evaluate(t: Term) -> Presheaf:
        children = [evaluate(c) for c in t.children]
        if t.op == "yoneda":
            return carrier.yoneda(t.param("object"))
        if t.op == "terminal":
            return carrier.terminal()
        if t.op == "product":
            return carrier.product(children).apex
        if t.op == "equalizer":
            homs = list(carrier.hom(children[0], children[1]))
            return carrier.equalizer(homs[t.param("f")], homs[t.param("g")]).apex
        if t.op == "colimit":
            cls = t.param("cls")
            w = by_name.get(cls) or weight_class(cls)
            weight = w.weight_named(t.param("weight"))
            sketch = weight.sketch
            objects = dict(zip(sketch.objects, children))
            maps = {}
            for g, k in t.param("maps"):
                source, target = objects[sketch.source(g)], objects[sketch.target(g)]
                maps[g] = list(carrier.hom(source, target))[k]
            diagram = Diagram.build(carrier, sketch, objects, maps)
            return weight.recipe(carrier, diagram).apex
        raise IllFormed(f"unknown construction '{t.op}'")

    return evaluate(term)


@dataclass(frozen=True)
class SaturationResult:
    status: str
    term: Term | None = None

    def to_json(self) -> dict:
        document: dict[str, Any] = {"status": self.status}
        if self.term is not None:
            document["term"] = self.term.to_json()
            document["rendered"] = render_term(self.term)
        return document


def in_saturation(
    presheaf: Presheaf,
    classes: Sequence[WeightClass],
    budget: int,
    cutoffs: Cutoffs = Cutoffs(),
) -> SaturationResult:
    """Semi-decide membership of ``presheaf`` in the saturation within ``budget``."""
    closure = phi_closure(
        presheaf.base,
        classes,
        budget,
        cutoffs,
        max_element_size=max(MAX_ELEMENT_SIZE, presheaf.size),
    )
    for element in closure.elements:
        if iso_test(presheaf, element.presheaf) is not None:
            return SaturationResult("yes", element.term)
    return SaturationResult("no_within_budget")
