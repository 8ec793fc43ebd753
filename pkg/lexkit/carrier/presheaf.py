"""
The presheaf carrier ``[C^op, FinSet]`` for a finite category ``C``.

Limits and colimits are computed objectwise with the finite-set
constructions; actions are induced on the resulting element names.
"""

import random
from collections.abc import Callable, Iterator, Mapping, Sequence
from itertools import product as cartesian

from .._memo import MemoTable
from .._order import UnionFind, set_partitions
from .._serialize import from_jsonable, to_jsonable
from ..exception import IllFormed
from ..fincat import FinCategory
from .base import Carrier
from .finset import POINT, FinSetCarrier
from .model import (
    Coequalizer,
    Coproduct,
    Equalizer,
    FinMap,
    FinSet,
    Image,
    NatTrans,
    Presheaf,
    Product,
    Pullback,
)

_SIGNATURES: MemoTable = MemoTable(max_entries=8192)

RANDOM_ATTEMPTS = 64


def yoneda(base: FinCategory, obj: str) -> Presheaf:
    """The representable presheaf ``Hom(-, obj)``."""
    values = {b: FinSet(base.hom(b, obj)) for b in base.objects}
    actions = tuple(
        (
            arrow.name,
            FinMap.of(
                values[arrow.target],
                values[arrow.source],
                lambda h, f=arrow.name: base.compose(h, f),
            ),
        )
        for arrow in base.arrows
    )
    return Presheaf(base, tuple((b, values[b]) for b in base.objects), actions)


def yoneda_map(base: FinCategory, morphism: str) -> NatTrans:
    """``Y(f): Y(a) -> Y(a')`` for ``f: a -> a'``, by postcomposition."""
    source = yoneda(base, base.source(morphism))
    target = yoneda(base, base.target(morphism))
    return _natural(source, target, lambda _, h: base.compose(morphism, h))


def _natural(source: Presheaf, target: Presheaf, fn: Callable) -> NatTrans:
    return NatTrans(
        source,
        target,
        tuple(
            (o, FinMap.of(source.at(o), target.at(o), lambda x, o=o: fn(o, x)))
            for o in source.base.objects
        ),
    )


def _refine(presheaf: Presheaf) -> tuple[tuple, dict]:
    """
    Colour refinement over elements.

    Returns an isomorphism-invariant signature together with the final
    colouring; colourings of two presheaves with equal signatures are
    directly comparable.
    """
    base = presheaf.base
    elements = presheaf.elements()
    preimages: dict = {e: {g: [] for g in base.generators} for e in elements}
    for g in base.generators:
        a, b = base.source(g), base.target(g)
        for x in presheaf.at(b):
            preimages[(a, presheaf.act(g, x))][g].append((b, x))
    colour = {e: base.objects.index(e[0]) for e in elements}
    history = []
    classes = len(set(colour.values()))
    for _ in range(len(elements) + 1):
        signature = {}
        for obj, x in elements:
            outgoing = tuple(
                colour[(base.source(g), presheaf.act(g, x))]
                for g in base.generators
                if base.target(g) == obj
            )
            incoming = tuple(
                tuple(sorted(colour[e] for e in preimages[(obj, x)][g]))
                for g in base.generators
                if base.source(g) == obj
            )
            signature[(obj, x)] = (colour[(obj, x)], outgoing, incoming)
        distinct = sorted(set(signature.values()))
        history.append(tuple(sorted(signature.values())))
        colour = {e: distinct.index(signature[e]) for e in elements}
        if len(distinct) == classes:
            break
        classes = len(distinct)
    sizes = tuple(len(presheaf.at(o)) for o in base.objects)
    return (sizes, tuple(history)), colour


def canonical_signature(presheaf: Presheaf) -> tuple:
    return _SIGNATURES.get_or_compute(presheaf, lambda: _refine(presheaf)[0])


def iso_test(first: Presheaf, second: Presheaf) -> NatTrans | None:
    """
    An isomorphism ``first -> second`` or None.

    Candidates are restricted to equally coloured elements, then a
    backtracking search checks the generator actions.
    """
    if first.base != second.base:
        return None
    signature, colour = _refine(first)
    other_signature, other_colour = _refine(second)
    if signature != other_signature:
        return None
    base = first.base
    elements = first.elements()
    position = {e: i for i, e in enumerate(elements)}
    constraints = _constraints(first, position)
    candidates = [
        [
            y
            for y in second.at(obj)
            if other_colour[(obj, y)] == colour[(obj, x)]
        ]
        for obj, x in elements
    ]
    values: list = [None] * len(elements)
    used: dict[str, set] = {o: set() for o in base.objects}

    def extend(k: int) -> bool:
        if k == len(elements):
            return True
        obj = elements[k][0]
        for y in candidates[k]:
            if y in used[obj]:
                continue
            values[k] = y
            if all(
                values[j] == second.act(g, values[i]) for i, j, g in constraints[k]
            ):
                used[obj].add(y)
                if extend(k + 1):
                    return True
                used[obj].discard(y)
        values[k] = None
        return False

    if not extend(0):
        return None
    table = dict(zip(elements, values))
    return _natural(first, second, lambda o, x: table[(o, x)])


def _constraints(presheaf: Presheaf, position: dict) -> list[list]:
    """Per element index: ``(i, j, g)`` meaning value[j] = act(g, value[i])."""
    base = presheaf.base
    constraints: list[list] = [[] for _ in position]
    for g in base.generators:
        a, b = base.source(g), base.target(g)
        for x in presheaf.at(b):
            i = position[(b, x)]
            j = position[(a, presheaf.act(g, x))]
            constraints[max(i, j)].append((i, j, g))
    return constraints


class PresheafCarrier(Carrier):
    """Presheaves on a finite category and natural transformations."""

    is_topos = True
    sampled = True

    def __init__(self, base: FinCategory, logger=None):
        super().__init__(logger)
        self.base = base
        self.name = f"presheaf:{base.describe()}"
        self._sets = FinSetCarrier(logger)
        self._objects: dict[int, list] = {}

    def _presheaf(self, values: Mapping[str, FinSet], act: Callable) -> Presheaf:
        actions = tuple(
            (
                arrow.name,
                FinMap.of(
                    values[arrow.target],
                    values[arrow.source],
                    lambda x, m=arrow.name: act(m, x),
                ),
            )
            for arrow in self.base.arrows
        )
        return Presheaf(
            self.base, tuple((o, values[o]) for o in self.base.objects), actions
        )

    def yoneda(self, obj: str) -> Presheaf:
        return yoneda(self.base, obj)

    def yoneda_map(self, morphism: str) -> NatTrans:
        return yoneda_map(self.base, morphism)

    # -- category structure ------------------------------------------------

    def identity(self, obj: Presheaf) -> NatTrans:
        return _natural(obj, obj, lambda _, x: x)

    def compose(self, g: NatTrans, f: NatTrans) -> NatTrans:
        if f.target != g.source:
            raise IllFormed("cannot compose transformations: target and source differ")
        return _natural(f.source, g.target, lambda o, x: g(o, f(o, x)))

    def hom(self, source: Presheaf, target: Presheaf) -> Iterator[NatTrans]:
        elements = source.elements()
        position = {e: i for i, e in enumerate(elements)}
        constraints = _constraints(source, position)
        choices = [target.at(obj).elements for obj, _ in elements]
        values: list = [None] * len(elements)

        def extend(k: int):
            if k == len(elements):
                table = dict(zip(elements, values))
                yield _natural(source, target, lambda o, x: table[(o, x)])
                return
            for y in choices[k]:
                values[k] = y
                if all(
                    values[j] == target.act(g, values[i]) for i, j, g in constraints[k]
                ):
                    yield from extend(k + 1)
            values[k] = None

        yield from extend(0)

    def size(self, obj: Presheaf) -> int:
        return obj.size

    def _pointwise(self, predicate, f: NatTrans) -> bool:
        return all(predicate(f.component(o)) for o in self.base.objects)

    def is_mono(self, f: NatTrans) -> bool:
        return self._pointwise(self._sets.is_mono, f)

    def is_epi(self, f: NatTrans) -> bool:
        return self._pointwise(self._sets.is_epi, f)

    def is_iso(self, f: NatTrans) -> bool:
        return self._pointwise(self._sets.is_iso, f)

    def inverse(self, f: NatTrans) -> NatTrans:
        if not self.is_iso(f):
            raise IllFormed("transformation is not invertible")
        back = {
            o: {y: x for x, y in f.component(o).mapping} for o in self.base.objects
        }
        return _natural(f.target, f.source, lambda o, y: back[o][y])

    # -- limits ------------------------------------------------------------

    def terminal(self) -> Presheaf:
        point = FinSet((POINT,))
        return self._presheaf({o: point for o in self.base.objects}, lambda m, x: x)

    def to_terminal(self, obj: Presheaf) -> NatTrans:
        return _natural(obj, self.terminal(), lambda o, x: POINT)

    def product(self, objects: Sequence[Presheaf]) -> Product:
        objects = list(objects)
        values = {
            o: self._sets.product([p.at(o) for p in objects]).apex
            for o in self.base.objects
        }
        apex = self._presheaf(
            values, lambda m, t: tuple(p.act(m, x) for p, x in zip(objects, t))
        )
        projections = tuple(
            _natural(apex, p, lambda o, t, k=k: t[k]) for k, p in enumerate(objects)
        )
        return Product(apex, projections)

    def pair(self, product: Product, maps: Sequence, source) -> NatTrans:
        return _natural(source, product.apex, lambda o, x: tuple(m(o, x) for m in maps))

    def equalizer(self, f: NatTrans, g: NatTrans) -> Equalizer:
        values = {
            o: FinSet(tuple(x for x in f.source.at(o) if f(o, x) == g(o, x)))
            for o in self.base.objects
        }
        apex = self._presheaf(values, f.source.act)
        return Equalizer(apex, _natural(apex, f.source, lambda o, x: x))

    def lift_equalizer(self, equalizer: Equalizer, h: NatTrans) -> NatTrans:
        return _natural(h.source, equalizer.apex, h)

    def pullback(self, f: NatTrans, g: NatTrans) -> Pullback:
        if f.target != g.target:
            raise IllFormed("pullback legs must share their target")
        values = {
            o: FinSet(
                tuple(
                    (x, y)
                    for x in f.source.at(o)
                    for y in g.source.at(o)
                    if f(o, x) == g(o, y)
                )
            )
            for o in self.base.objects
        }
        apex = self._presheaf(
            values, lambda m, t: (f.source.act(m, t[0]), g.source.act(m, t[1]))
        )
        return Pullback(
            apex,
            _natural(apex, f.source, lambda o, t: t[0]),
            _natural(apex, g.source, lambda o, t: t[1]),
        )

    def mediate_pullback(
        self, pullback: Pullback, u: NatTrans, v: NatTrans
    ) -> NatTrans:
        return _natural(u.source, pullback.apex, lambda o, x: (u(o, x), v(o, x)))

    # -- colimits ----------------------------------------------------------

    def initial(self) -> Presheaf:
        empty = FinSet(())
        return self._presheaf({o: empty for o in self.base.objects}, lambda m, x: x)

    def from_initial(self, obj: Presheaf) -> NatTrans:
        return _natural(self.initial(), obj, lambda o, x: x)

    def coproduct(self, objects: Sequence[Presheaf]) -> Coproduct:
        objects = list(objects)
        values = {
            o: FinSet(tuple((k, x) for k, p in enumerate(objects) for x in p.at(o)))
            for o in self.base.objects
        }
        apex = self._presheaf(values, lambda m, t: (t[0], objects[t[0]].act(m, t[1])))
        injections = tuple(
            _natural(p, apex, lambda o, x, k=k: (k, x)) for k, p in enumerate(objects)
        )
        return Coproduct(apex, injections)

    def copair(self, coproduct: Coproduct, maps: Sequence, target) -> NatTrans:
        return _natural(coproduct.apex, target, lambda o, t: maps[t[0]](o, t[1]))

    def coequalizer(self, f: NatTrans, g: NatTrans) -> Coequalizer:
        if f.source != g.source or f.target != g.target:
            raise IllFormed("coequalizer needs a parallel pair")
        target = f.target
        representative = {}
        for o in self.base.objects:
            classes = UnionFind(target.at(o).elements)
            for x in f.source.at(o):
                classes.union(f(o, x), g(o, x))
            representative[o] = classes.representative_map()
        values = {
            o: FinSet(tuple(set(representative[o].values()))) for o in self.base.objects
        }
        apex = self._presheaf(
            values,
            lambda m, r: representative[self.base.source(m)][target.act(m, r)],
        )
        quotient = _natural(target, apex, lambda o, y: representative[o][y])
        return Coequalizer(apex, quotient)

    def descend(self, coequalizer: Coequalizer, h: NatTrans) -> NatTrans:
        quotient = coequalizer.quotient
        if h.source != quotient.source:
            raise IllFormed("transformation does not start at the coequalized object")
        values: dict = {}
        for o in self.base.objects:
            for y in h.source.at(o):
                key = (o, quotient(o, y))
                if values.setdefault(key, h(o, y)) != h(o, y):
                    raise IllFormed("transformation does not coequalize the pair")
        return _natural(coequalizer.apex, h.target, lambda o, r: values[(o, r)])

    def image(self, f: NatTrans) -> Image:
        values = {o: FinSet(f.component(o).image_elements()) for o in self.base.objects}
        apex = self._presheaf(values, f.target.act)
        return Image(
            apex,
            _natural(f.source, apex, f),
            _natural(apex, f.target, lambda o, y: y),
        )

    # -- enumeration -------------------------------------------------------

    def _build_all(self, sizes: Mapping[str, int]) -> Iterator[Presheaf]:
        values = {o: tuple(range(sizes[o])) for o in self.base.objects}
        generators = list(self.base.generators)
        spaces = [
            cartesian(
                values[self.base.source(g)], repeat=len(values[self.base.target(g)])
            )
            for g in generators
        ]
        for choice in cartesian(*[list(s) for s in spaces]):
            actions = {
                g: dict(zip(values[self.base.target(g)], images))
                for g, images in zip(generators, choice)
            }
            try:
                yield Presheaf.build(self.base, values, actions)
            except IllFormed:
                continue

    def objects(self, max_size: int) -> list:
        if max_size in self._objects:
            return self._objects[max_size]
        found: list = []
        buckets: dict = {}
        count = len(self.base.objects)
        for total in range(max_size + 1):
            for split in cartesian(range(total + 1), repeat=count):
                if sum(split) != total:
                    continue
                sizes = dict(zip(self.base.objects, split))
                for candidate in self._build_all(sizes):
                    bucket = buckets.setdefault(canonical_signature(candidate), [])
                    if any(iso_test(candidate, known) for known in bucket):
                        continue
                    bucket.append(candidate)
                    found.append(candidate)
        self._logger.debug(
            f"{self.name}: {len(found)} presheaves of size <= {max_size}"
        )
        self._objects[max_size] = found
        return found

    def random_object(self, rng: random.Random, max_size: int) -> Presheaf:
        objects = list(self.base.objects)
        for _ in range(RANDOM_ATTEMPTS):
            sizes = {o: 0 for o in objects}
            if objects:
                for _ in range(rng.randint(0, max_size)):
                    sizes[rng.choice(objects)] += 1
            actions = {}
            feasible = True
            for g in self.base.generators:
                a, b = self.base.source(g), self.base.target(g)
                if sizes[b] and not sizes[a]:
                    feasible = False
                    break
                actions[g] = {y: rng.randrange(sizes[a]) for y in range(sizes[b])}
            if not feasible:
                continue
            try:
                return Presheaf.build(
                    self.base, {o: range(sizes[o]) for o in objects}, actions
                )
            except IllFormed:
                continue
        return rng.choice(self.objects(min(max_size, 2)))

    def probe_family(self, obj: Presheaf, probe_bound: int = 0) -> list:
        """Maps ``Y(c) -> obj``, one per element of ``obj(c)`` (Yoneda)."""
        probes = []
        for c in self.base.objects:
            representable = self.yoneda(c)
            for x in obj.at(c):
                probes.append(
                    _natural(representable, obj, lambda o, h, x=x: obj.act(h, x))
                )
        return probes

    def _closed_subsets(self, presheaf: Presheaf, forced=frozenset()) -> Iterator[dict]:
        elements = presheaf.elements()
        position = {e: i for i, e in enumerate(elements)}
        # (i, j) checked once both are decided: i chosen implies j chosen
        implications: list[list[tuple[int, int]]] = [[] for _ in elements]
        for g in self.base.generators:
            a, b = self.base.source(g), self.base.target(g)
            for x in presheaf.at(b):
                i, j = position[(b, x)], position[(a, presheaf.act(g, x))]
                implications[max(i, j)].append((i, j))
        chosen: list = [False] * len(elements)

        def extend(k: int):
            if k == len(elements):
                yield {
                    o: [x for (p, x), c in zip(elements, chosen) if c and p == o]
                    for o in self.base.objects
                }
                return
            options = (True,) if elements[k] in forced else (False, True)
            for option in options:
                chosen[k] = option
                if all(not chosen[i] or chosen[j] for i, j in implications[k]):
                    yield from extend(k + 1)
            chosen[k] = False

        yield from extend(0)

    def _subpresheaf(
        self, presheaf: Presheaf, members: Mapping[str, Sequence]
    ) -> NatTrans:
        values = {o: FinSet(tuple(members[o])) for o in self.base.objects}
        apex = self._presheaf(values, presheaf.act)
        return _natural(apex, presheaf, lambda o, x: x)

    def subobjects(self, obj: Presheaf) -> list:
        return [self._subpresheaf(obj, m) for m in self._closed_subsets(obj)]

    def equivalence_relations(self, obj: Presheaf) -> list:
        square = self.product([obj, obj]).apex
        per_object = [
            list(set_partitions(obj.at(o).elements)) for o in self.base.objects
        ]
        relations = []
        for choice in cartesian(*per_object):
            block = {}
            for o, blocks in zip(self.base.objects, choice):
                for index, members in enumerate(blocks):
                    for x in members:
                        block[(o, x)] = index
            compatible = all(
                block[(self.base.source(g), obj.act(g, x))]
                == block[(self.base.source(g), obj.act(g, y))]
                for g in self.base.generators
                for x in obj.at(self.base.target(g))
                for y in obj.at(self.base.target(g))
                if block[(self.base.target(g), x)] == block[(self.base.target(g), y)]
            )
            if not compatible:
                continue
            members = {
                o: [(x, y) for b in blocks for x in b for y in b]
                for o, blocks in zip(self.base.objects, choice)
            }
            relations.append(self._subpresheaf(square, members))
        return relations

    def reflexive_relations(self, obj: Presheaf) -> list:
        square = self.product([obj, obj]).apex
        diagonal = frozenset((o, (x, x)) for o in self.base.objects for x in obj.at(o))
        return [
            self._subpresheaf(square, m) for m in self._closed_subsets(square, diagonal)
        ]

    # -- serialization -----------------------------------------------------

    def encode_object(self, obj: Presheaf) -> dict:
        return {
            "values": {o: to_jsonable(obj.at(o).elements) for o in self.base.objects},
            "actions": {
                g: to_jsonable(obj.action(g).mapping) for g in self.base.generators
            },
        }

    def decode_object(self, data: dict) -> Presheaf:
        try:
            values = {o: from_jsonable(v) for o, v in data["values"].items()}
            actions = {
                g: dict(from_jsonable(pairs)) for g, pairs in data["actions"].items()
            }
        except (KeyError, TypeError, AttributeError) as e:
            raise IllFormed(f"cannot decode presheaf: {e}")
        return Presheaf.build(self.base, values, actions)

    def encode_morphism(self, f: NatTrans) -> dict:
        return {
            "source": self.encode_object(f.source),
            "target": self.encode_object(f.target),
            "components": {
                o: to_jsonable(f.component(o).mapping) for o in self.base.objects
            },
        }

    def decode_morphism(self, data: dict) -> NatTrans:
        try:
            components = {
                o: dict(from_jsonable(pairs)) for o, pairs in data["components"].items()
            }
        except (KeyError, TypeError, AttributeError) as e:
            raise IllFormed(f"cannot decode transformation: {e}")
        return NatTrans.build(
            self.decode_object(data["source"]),
            self.decode_object(data["target"]),
            components,
        )
