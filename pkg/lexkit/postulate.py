"""
Cocone presentations and the postulatedness test.

A presentation names, inside a small base category, a family of legs
``r_j: B_j -> apex`` and relations ``s_i: A_i -> B_σi``, ``t_i: A_i -> B_τi``
with ``r_σi ∘ s_i = r_τi ∘ t_i``. The checks below run on an instantiation of
the base in a carrier, given as a :class:`~lexkit.carrier.Diagram`.
"""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any

from . import relcalc
from ._logger import get_logger
from ._memo import MemoTable
from ._parallel import ordered_map
from .carrier.base import Carrier
from .carrier.diagram import Diagram
from .carrier.presheaf import PresheafCarrier
from .completions import WeightClass, weight_class, weighted_colimit
from .config import Cutoffs
from .exactness import Status, double_kernel_diagram
from .exception import IllFormed, IllFormedZigZag, Unsupported
from .fincat import FinCategory, cocone_shape, parse_category, standard_shape

logger = get_logger()

_PAIR_IMAGES: MemoTable = MemoTable(max_entries=4096)


@dataclass(frozen=True)
class CoconePresentation:
    """
    Attributes:
        base: The category the presentation lives in.
        apex: Object receiving the legs.
        legs: ``(j, r_j)`` pairs; ``B_j`` is the source of ``r_j``.
        relations: ``(i, s_i, σi, t_i, τi)`` tuples.
    """

    base: FinCategory
    apex: str
    legs: tuple
    relations: tuple = ()
    name: str = field(default="", compare=False)

    @property
    def indices(self) -> tuple[str, ...]:
        return tuple(j for j, _ in self.legs)

    def leg(self, j: str) -> str:
        try:
            return dict(self.legs)[j]
        except KeyError:
            raise IllFormed(f"presentation has no leg '{j}'")

    def obj(self, j: str) -> str:
        return self.base.source(self.leg(j))

    def relation(self, i: str) -> tuple:
        for relation in self.relations:
            if relation[0] == i:
                return relation
        raise IllFormed(f"presentation has no relation '{i}'")

    def validate(self) -> "CoconePresentation":
        """
        Raises:
            IllFormed: If a leg misses the apex, indices repeat, or a
                relation breaks the cocone condition.
        """
        if self.apex not in self.base.objects:
            raise IllFormed(f"apex '{self.apex}' is not an object of the base")
        if len(set(self.indices)) != len(self.indices):
            raise IllFormed("leg indices repeat")
        for j, r in self.legs:
            if not self.base.has_arrow(r) or self.base.target(r) != self.apex:
                raise IllFormed(f"leg {j} = {r} does not end at the apex")
        names = [rel[0] for rel in self.relations]
        if len(set(names)) != len(names):
            raise IllFormed("relation names repeat")
        for i, s, sigma, t, tau in self.relations:
            for arrow in (s, t):
                if not self.base.has_arrow(arrow):
                    raise IllFormed(f"relation {i} uses unknown arrow '{arrow}'")
            if self.base.source(s) != self.base.source(t):
                raise IllFormed(f"relation {i}: {s} and {t} have different sources")
            if self.base.target(s) != self.obj(sigma):
                raise IllFormed(f"relation {i}: {s} does not land in B_{sigma}")
            if self.base.target(t) != self.obj(tau):
                raise IllFormed(f"relation {i}: {t} does not land in B_{tau}")
            left = self.base.compose(self.leg(sigma), s)
            right = self.base.compose(self.leg(tau), t)
            if left != right:
                raise IllFormed(f"relation {i} breaks the cocone condition")
        return self


@dataclass(frozen=True)
class ZigZag:
    """
    ``start`` followed by steps ``(i, forward)``; a forward step crosses
    relation ``i`` from ``σi`` to ``τi``, a backward step from ``τi`` to ``σi``.
    """

    start: str
    steps: tuple = ()


def _orient(p: CoconePresentation, i: str, forward: bool) -> tuple[str, str, str, str]:
    """``(f, g, from, to)`` for one zig-zag step."""
    _, s, sigma, t, tau = p.relation(i)
    return (s, t, sigma, tau) if forward else (t, s, tau, sigma)


def zigzag_end(p: CoconePresentation, z: ZigZag) -> str:
    """
    Raises:
        IllFormedZigZag: If consecutive steps do not meet.
    """
    if z.start not in p.indices:
        raise IllFormedZigZag(f"zig-zag starts at unknown index '{z.start}'")
    current = z.start
    for n, (i, forward) in enumerate(z.steps):
        try:
            _, _, origin, to = _orient(p, i, forward)
        except IllFormed as e:
            raise IllFormedZigZag(str(e))
        if origin != current:
            raise IllFormedZigZag(
                f"step {n} leaves B_{origin} but the zig-zag is at B_{current}"
            )
        current = to
    return current


def _step(carrier: Carrier, diagram: Diagram, a, b, f, g) -> tuple[Any, Any]:
    """Compose the span ``(a, b)`` with the span ``(f, g)`` by a pullback."""
    pullback = carrier.pullback(b, diagram.map(f))
    return (
        carrier.compose(a, pullback.p1),
        carrier.compose(diagram.map(g), pullback.p2),
    )


@dataclass(frozen=True)
class ZigZagLeg:
    span: tuple
    pullback: Any
    leg: Any


def zigzag_leg(
    p: CoconePresentation, z: ZigZag, diagram: Diagram, carrier: Carrier
) -> ZigZagLeg:
    """
    The span ``B_j <- Z -> B_k`` obtained by composing the spans of ``z``,
    and the induced map ``ℓ: Z -> B_j ×_apex B_k``.
    """
    end = zigzag_end(p, z)
    a = b = carrier.identity(diagram.at(p.obj(z.start)))
    for i, forward in z.steps:
        f, g, _, _ = _orient(p, i, forward)
        a, b = _step(carrier, diagram, a, b, f, g)
    pullback = carrier.pullback(
        diagram.map(p.leg(z.start)), diagram.map(p.leg(end))
    )
    return ZigZagLeg((a, b), pullback, carrier.mediate_pullback(pullback, a, b))


def _pair_image(carrier: Carrier, a, b) -> relcalc.Subobject:
    def compute():
        square = carrier.product([a.target, b.target])
        return relcalc.image(carrier, carrier.pair(square, [a, b], a.source))

    return _PAIR_IMAGES.get_or_compute((carrier.name, a, b), compute)


@dataclass(frozen=True)
class Sieve:
    """
    Attributes:
        sieve: Image of all zig-zag legs in ``B_j ×_apex B_k``.
        legs: One leg per distinct image, in discovery order.
        rounds: Zig-zag lengths explored.
        stabilized_at: Length after which the sieve stopped growing.
    """

    j: str
    k: str
    pullback: Any
    sieve: relcalc.Subobject
    legs: tuple
    rounds: int
    stabilized_at: int


def _outgoing(p: CoconePresentation, current: str) -> Iterator[tuple[str, bool]]:
    for i, _, sigma, _, tau in p.relations:
        if sigma == current:
            yield i, True
        if tau == current:
            yield i, False


def zigzag_sieve(
    p: CoconePresentation, j: str, k: str, diagram: Diagram, carrier: Carrier
) -> Sieve:
    """
    Image of ``(ℓ_z | z a zig-zag from j to k)``.

    Zig-zags are explored by length. A partial zig-zag is only kept when the
    image of its span in ``B_j × B_current`` is new, so the search ends once
    no new relation appears; finite subobject lattices guarantee that.
    """
    pullback = carrier.pullback(diagram.map(p.leg(j)), diagram.map(p.leg(k)))
    sieve = relcalc.bottom(carrier, pullback.apex)
    images: list[relcalc.Subobject] = []
    legs = []

    def extend(item):
        (_, a, b), (i, forward) = item
        f, g, _, to = _orient(p, i, forward)
        a, b = _step(carrier, diagram, a, b, f, g)
        return to, a, b, _pair_image(carrier, a, b)

    start = carrier.identity(diagram.at(p.obj(j)))
    frontier = [(j, start, start)]
    seen = {(j, _pair_image(carrier, start, start))}
    rounds = stabilized_at = 0
    while frontier:
        for current, a, b in frontier:
            if current != k:
                continue
            leg = carrier.mediate_pullback(pullback, a, b)
            image = relcalc.image(carrier, leg)
            if any(relcalc.same_subobject(carrier, image, known) for known in images):
                continue
            images.append(image)
            legs.append(leg)
            grown = relcalc.union(carrier, sieve, image)
            if not relcalc.same_subobject(carrier, grown, sieve):
                sieve = grown
                stabilized_at = rounds
        moves = [
            (state, move) for state in frontier for move in _outgoing(p, state[0])
        ]
        frontier = []
        for to, a, b, key in ordered_map(extend, moves):
            if (to, key) not in seen:
                seen.add((to, key))
                frontier.append((to, a, b))
        if frontier:
            rounds += 1
    logger.debug(
        f"zig-zag sieve ({j}, {k}) stable after length {stabilized_at}, "
        f"explored {rounds} lengths"
    )
    return Sieve(j, k, pullback, sieve, tuple(legs), rounds, stabilized_at)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class CheckResult:
    status: Status
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status.value, **self.detail}


def _bounded(carrier: Carrier) -> Status:
    return Status.HOLDS if carrier.is_topos else Status.UNKNOWN


def check_P1(
    p: CoconePresentation, diagram: Diagram, carrier: Carrier, probe_bound: int = 3
) -> CheckResult:
    """The legs are stably effective-epimorphic onto the apex."""
    legs = [diagram.map(r) for _, r in p.legs]
    probe = carrier.find_unstable_probe(legs, diagram.at(p.apex), probe_bound)
    if probe is None:
        return CheckResult(_bounded(carrier))
    return CheckResult(
        Status.FAILS,
        {
            "reason": "legs not stably effective-epimorphic",
            "probe": carrier.encode_morphism(probe),
        },
    )


def check_P2(
    p: CoconePresentation, diagram: Diagram, carrier: Carrier, probe_bound: int = 3
) -> CheckResult:
    """Every zig-zag sieve is stably effective-epimorphic onto its pullback."""
    pairs = []
    for j in p.indices:
        for k in p.indices:
            sieve = zigzag_sieve(p, j, k, diagram, carrier)
            probe = carrier.find_unstable_probe(
                list(sieve.legs), sieve.pullback.apex, probe_bound
            )
            entry = {
                "pair": [j, k],
                "legs": len(sieve.legs),
                "rounds": sieve.rounds,
                "stabilized_at": sieve.stabilized_at,
            }
            if probe is not None:
                entry["probe"] = carrier.encode_morphism(probe)
                entry["reason"] = f"zig-zag sieve ({j}, {k}) is not stably effective"
                return CheckResult(Status.FAILS, entry)
            pairs.append(entry)
    return CheckResult(_bounded(carrier), {"pairs": pairs})


def _combine(*statuses: Status) -> Status:
    if Status.FAILS in statuses:
        return Status.FAILS
    if all(s is Status.HOLDS for s in statuses):
        return Status.HOLDS
    return Status.UNKNOWN


@dataclass(frozen=True)
class PostulateReport:
    presentation: str
    carrier: str
    status: Status
    p1: CheckResult
    p2: CheckResult
    via_finality: CheckResult | None = None

    def to_json(self) -> dict:
        document = {
            "presentation": self.presentation,
            "carrier": self.carrier,
            "status": self.status.value,
            "P1": self.p1.to_json(),
            "P2": self.p2.to_json(),
        }
        if self.via_finality is not None:
            document["via_finality"] = self.via_finality.to_json()
        return document


def is_postulated(
    p: CoconePresentation,
    diagram: Diagram,
    carrier: Carrier,
    cutoffs: Cutoffs = Cutoffs(),
    cross_check: bool = False,
) -> PostulateReport:
    """
    Both conditions on an instantiation; with ``cross_check`` the stable
    finality variant is computed too and disagreement is logged.
    """
    p1 = check_P1(p, diagram, carrier, cutoffs.probe_bound)
    p2 = check_P2(p, diagram, carrier, cutoffs.probe_bound)
    status = _combine(p1.status, p2.status)
    via = None
    if cross_check:
        via = postulated_via_finality(p, diagram, carrier, cutoffs, p2=p2)
        if (via.status is Status.FAILS) != (status is Status.FAILS):
            logger.warning(
                f"{p.name or 'presentation'}: postulatedness {status.value} "
                f"but finality check {via.status.value}"
            )
    return PostulateReport(p.name, carrier.name, status, p1, p2, via)


# ---------------------------------------------------------------------------
# finality


def _require_presheaf(carrier: Carrier, operation: str) -> PresheafCarrier:
    if not isinstance(carrier, PresheafCarrier):
        raise Unsupported(carrier.name, operation)
    return carrier


def is_final(carrier: Carrier, f) -> CheckResult:
    """
    Whether every map from ``f.source`` into a representable extends
    uniquely along ``f``.

    Raises:
        Unsupported: Outside presheaf carriers.
    """
    carrier = _require_presheaf(carrier, "finality")
    for c in carrier.base.objects:
        representable = carrier.yoneda(c)
        restricted = [
            carrier.compose(h, f) for h in carrier.hom(f.target, representable)
        ]
        if len(set(restricted)) != len(restricted):
            return CheckResult(
                Status.FAILS, {"reason": "extension is not unique", "object": c}
            )
        missing = set(carrier.hom(f.source, representable)) - set(restricted)
        if missing:
            return CheckResult(
                Status.FAILS,
                {
                    "reason": "map into a representable has no extension",
                    "object": c,
                    "map": carrier.encode_morphism(min(missing, key=repr)),
                },
            )
    return CheckResult(Status.HOLDS)


def is_stably_final(carrier: Carrier, f, probe_bound: int = 3) -> CheckResult:
    """Finality of every pullback of ``f`` along a representable probe."""
    carrier = _require_presheaf(carrier, "stable finality")
    probes = [carrier.identity(f.target)] + list(
        carrier.probe_family(f.target, probe_bound)
    )
    for probe in probes:
        pulled = carrier.pullback(f, probe).p2
        result = is_final(carrier, pulled)
        if result.status is Status.FAILS:
            return CheckResult(
                Status.FAILS,
                {**result.detail, "probe": carrier.encode_morphism(probe)},
            )
    return CheckResult(Status.HOLDS)


def _presented_comparison(
    carrier: Carrier,
    objects: dict,
    relations: Sequence[tuple],
    legs: dict,
    target,
) -> Any:
    """
    Map from the coequalizer of ``Σ A_i ⇉ Σ B_j`` to ``target``.

    ``relations`` holds ``(A_i, s_i, σi, t_i, τi)`` with carrier morphisms.
    """
    indices = list(objects)
    cover = carrier.coproduct([objects[j] for j in indices])
    injection = dict(zip(indices, cover.injections))
    overlaps = carrier.coproduct([a for a, *_ in relations])
    u = carrier.copair(
        overlaps,
        [carrier.compose(injection[sigma], s) for _, s, sigma, _, _ in relations],
        cover.apex,
    )
    v = carrier.copair(
        overlaps,
        [carrier.compose(injection[tau], t) for _, _, _, t, tau in relations],
        cover.apex,
    )
    total = carrier.copair(cover, [legs[j] for j in indices], target)
    return carrier.descend(carrier.coequalizer(u, v), total)


def _carrier_relations(p: CoconePresentation, diagram: Diagram) -> list[tuple]:
    return [
        (diagram.at(p.base.source(s)), diagram.map(s), sigma, diagram.map(t), tau)
        for _, s, sigma, t, tau in p.relations
    ]


def cocone_is_final(p: CoconePresentation, diagram: Diagram, carrier: Carrier) -> bool:
    """Whether the instantiated cocone is a colimit of the presented diagram."""
    comparison = _presented_comparison(
        carrier,
        {j: diagram.at(p.obj(j)) for j in p.indices},
        _carrier_relations(p, diagram),
        {j: diagram.map(r) for j, r in p.legs},
        diagram.at(p.apex),
    )
    return carrier.is_iso(comparison)


def _pulled_back_comparison(
    p: CoconePresentation, diagram: Diagram, carrier: Carrier, probe
) -> Any:
    legs = {j: carrier.pullback(diagram.map(r), probe) for j, r in p.legs}
    relations = []
    for _, s, sigma, t, tau in p.relations:
        s_map, t_map = diagram.map(s), diagram.map(t)
        corner = carrier.pullback(
            carrier.compose(diagram.map(p.leg(sigma)), s_map), probe
        )
        relations.append(
            (
                corner.apex,
                carrier.mediate_pullback(
                    legs[sigma], carrier.compose(s_map, corner.p1), corner.p2
                ),
                sigma,
                carrier.mediate_pullback(
                    legs[tau], carrier.compose(t_map, corner.p1), corner.p2
                ),
                tau,
            )
        )
    return _presented_comparison(
        carrier,
        {j: pb.apex for j, pb in legs.items()},
        relations,
        {j: pb.p2 for j, pb in legs.items()},
        probe.source,
    )


def cocone_is_stably_final(
    p: CoconePresentation, diagram: Diagram, carrier: Carrier, probe_bound: int = 3
) -> CheckResult:
    """The cocone stays a colimit after pulling back along every probe."""
    apex = diagram.at(p.apex)
    probes = [carrier.identity(apex)] + list(carrier.probe_family(apex, probe_bound))
    for probe in probes:
        if not carrier.is_iso(_pulled_back_comparison(p, diagram, carrier, probe)):
            return CheckResult(
                Status.FAILS,
                {
                    "reason": "cocone is not a colimit after pullback",
                    "probe": carrier.encode_morphism(probe),
                },
            )
    return CheckResult(_bounded(carrier))


def postulated_via_finality(
    p: CoconePresentation,
    diagram: Diagram,
    carrier: Carrier,
    cutoffs: Cutoffs = Cutoffs(),
    p2: CheckResult | None = None,
) -> CheckResult:
    final = cocone_is_stably_final(p, diagram, carrier, cutoffs.probe_bound)
    if final.status is Status.FAILS:
        return final
    if p2 is None:
        p2 = check_P2(p, diagram, carrier, cutoffs.probe_bound)
    return CheckResult(_combine(final.status, p2.status), dict(p2.detail))


# ---------------------------------------------------------------------------
# canonical presentations

_BASES = {
    "quotient": parse_category(
        "objects K, X, Q; arrows s:K->X, t:K->X, q:X->Q; eq q.s = q.t;",
        name="quotient",
    ),
    "union": parse_category(
        "objects I, A, B, U; arrows i1:I->A, i2:I->B, u1:A->U, u2:B->U;"
        "eq u1.i1 = u2.i2; mono i1, i2;",
        name="union",
    ),
    "double_kernel": parse_category(
        "objects Kf, P, Kg, A, B, Z;"
        "arrows d1:Kf->A, c1:Kf->A, pa:P->A, pb:P->B, d2:Kg->B, c2:Kg->B,"
        " za:A->Z, zb:B->Z;"
        "eq za.d1 = za.c1, za.pa = zb.pb, zb.d2 = zb.c2;",
        name="double_kernel",
    ),
    "adh": parse_category(
        "objects C, A, B, D; arrows m:C->A, f:C->B, g:A->D, n:B->D;"
        "eq g.m = n.f; mono m;",
        name="adh",
    ),
}

_QUOTIENT = CoconePresentation(
    _BASES["quotient"], "Q", (("X", "q"),), (("K", "s", "X", "t", "X"),), "quotient"
)
_UNION = CoconePresentation(
    _BASES["union"],
    "U",
    (("A", "u1"), ("B", "u2")),
    (("I", "i1", "A", "i2", "B"),),
    "union",
)
_DOUBLE_KERNEL = CoconePresentation(
    _BASES["double_kernel"],
    "Z",
    (("A", "za"), ("B", "zb")),
    (
        ("Kf", "d1", "A", "c1", "A"),
        ("P", "pa", "A", "pb", "B"),
        ("Kg", "d2", "B", "c2", "B"),
    ),
    "double_kernel",
)
_ADHESIVE = CoconePresentation(
    _BASES["adh"], "D", (("A", "g"), ("B", "n")), (("C", "m", "A", "f", "B"),), "adh"
)


def _coproduct_presentation(shape: FinCategory) -> CoconePresentation:
    objects = list(shape.objects)
    apex = "S"
    while apex in objects:
        apex += "'"
    arrows = ", ".join(f"r_{o}:{o}->{apex}" for o in objects)
    text = f"objects {', '.join(objects + [apex])};"
    if arrows:
        text += f"arrows {arrows};"
    base = parse_category(text, name=f"coproduct({len(objects)})")
    legs = tuple((o, f"r_{o}") for o in objects)
    return CoconePresentation(base, apex, legs, (), base.name)


def _filtered_presentation(shape: FinCategory) -> tuple[CoconePresentation, str]:
    extended, _ = cocone_shape(shape)
    apex = next(o for o in extended.objects if o not in shape.objects)
    relations = tuple(
        (g, g, shape.target(g), shape.identity(shape.source(g)), shape.source(g))
        for g in shape.generators
    )
    legs = tuple((o, f"leg_{o}") for o in shape.objects)
    return CoconePresentation(extended, apex, legs, relations, extended.name), apex


def presentation_of(
    w: WeightClass | str, diagram: Diagram, carrier: Carrier
) -> tuple[CoconePresentation, Diagram]:
    """
    The canonical presentation of the colimit ``w`` computes on ``diagram``,
    with its instantiation in ``carrier``.

    Raises:
        ShapeMismatch: If no weight of ``w`` has the diagram's shape.
    """
    if isinstance(w, str):
        w = weight_class(w)
    weight = w.weight_for(diagram.shape)
    result = weighted_colimit(w, diagram, carrier)
    name = weight.name

    if name in ("initial", "coproduct"):
        p = _coproduct_presentation(diagram.shape)
        objects = {o: diagram.at(o) for o in diagram.shape.objects}
        objects[p.apex] = result.apex
        maps = {f"r_{o}": result.leg(o) for o in diagram.shape.objects}
        return p, Diagram.build(carrier, p.base, objects, maps)

    if name in ("reg", "ex", "rc"):
        if name == "reg":
            kernel = carrier.kernel_pair(diagram.map("f"))
            k, x, s, t = kernel.apex, diagram.at("A"), kernel.p1, kernel.p2
            q = result.leg("A")
        else:
            d, c = diagram.map("d"), diagram.map("c")
            if name == "rc":
                closure, _ = relcalc.chain_stabilize(
                    carrier, relcalc.relation_from_legs(carrier, d.target, d, c)
                )
                d, c = closure.d, closure.c
            k, x, s, t = d.source, d.target, d, c
            q = result.leg("Y")
        return _QUOTIENT, Diagram.build(
            carrier,
            _QUOTIENT.base,
            {"K": k, "X": x, "Q": result.apex},
            {"s": s, "t": t, "q": q},
        )

    if name == "union":
        pullback = carrier.pullback(diagram.map("f"), diagram.map("g"))
        return _UNION, Diagram.build(
            carrier,
            _UNION.base,
            {
                "I": pullback.apex,
                "A": diagram.at("A"),
                "B": diagram.at("B"),
                "U": result.apex,
            },
            {
                "i1": pullback.p1,
                "i2": pullback.p2,
                "u1": result.leg("A"),
                "u2": result.leg("B"),
            },
        )

    if name == "double_kernel":
        inner = double_kernel_diagram(carrier, diagram.map("f"), diagram.map("g"))
        objects = {o: inner.at(o) for o in inner.shape.objects}
        objects["Z"] = result.apex
        maps = {g: inner.map(g) for g in inner.shape.generators}
        maps.update(za=result.leg("A"), zb=result.leg("B"))
        return _DOUBLE_KERNEL, Diagram.build(
            carrier, _DOUBLE_KERNEL.base, objects, maps
        )

    if name == "adh":
        return _ADHESIVE, Diagram.build(
            carrier,
            _ADHESIVE.base,
            {o: diagram.at(o) for o in ("C", "A", "B")} | {"D": result.apex},
            {
                "m": diagram.map("m"),
                "f": diagram.map("f"),
                "g": result.leg("A"),
                "n": result.leg("B"),
            },
        )

    p, apex = _filtered_presentation(diagram.shape)
    objects = {o: diagram.at(o) for o in diagram.shape.objects}
    objects[apex] = result.apex
    maps = {g: diagram.map(g) for g in diagram.shape.generators}
    maps.update({f"leg_{o}": result.leg(o) for o in diagram.shape.objects})
    return p, Diagram.build(carrier, p.base, objects, maps)


# ---------------------------------------------------------------------------
# pushouts along monos, item by item


def adhesive_items(carrier: Carrier, m, f) -> dict:
    """
    Report the conditions of the pushout presentation of ``(m, f)`` one by
    one, each next to the direct property it corresponds to.
    """
    span = Diagram.build(
        carrier,
        standard_shape("mono_span"),
        {"C": m.source, "A": m.target, "B": f.target},
        {"m": m, "f": f},
    )
    p, diagram = presentation_of("adh", span, carrier)
    g, n = diagram.map("g"), diagram.map("n")

    def sieve_equals(j: str, k: str, *spans, full: bool = False) -> bool:
        sieve = zigzag_sieve(p, j, k, diagram, carrier)
        covered = relcalc.bottom(carrier, sieve.pullback.apex)
        for a, b in spans:
            leg = carrier.mediate_pullback(sieve.pullback, a, b)
            covered = relcalc.union(carrier, covered, relcalc.image(carrier, leg))
        if full and not relcalc.same_subobject(
            carrier, covered, relcalc.top(carrier, sieve.pullback.apex)
        ):
            return False
        return relcalc.same_subobject(carrier, sieve.sieve, covered)

    identity_b = carrier.identity(f.target)
    n_monic = carrier.is_mono(n)
    square = carrier.pullback(g, n)
    square_pullback = carrier.is_iso(carrier.mediate_pullback(square, m, f))

    kernel_c = carrier.kernel_pair(f)
    kernel_a = carrier.kernel_pair(g)
    identity_c = carrier.identity(m.source)
    diagonal_c = carrier.mediate_pullback(kernel_c, identity_c, identity_c)
    identity_a = carrier.identity(m.target)
    diagonal_a = carrier.mediate_pullback(kernel_a, identity_a, identity_a)
    across = carrier.mediate_pullback(
        kernel_a,
        carrier.compose(m, kernel_c.p1),
        carrier.compose(m, kernel_c.p2),
    )
    pushout = carrier.pushout(diagonal_c, m)
    kernel_pushout = carrier.is_iso(carrier.copair_pushout(pushout, across, diagonal_a))

    items = {
        "n_monic": {
            "direct": n_monic,
            "sieve": sieve_equals("B", "B", (identity_b, identity_b)),
        },
        "square_pullback": {
            "direct": square_pullback,
            "sieve": sieve_equals("A", "B", (m, f)),
        },
        "square_pullback_transposed": {
            "direct": square_pullback,
            "sieve": sieve_equals("B", "A", (f, m)),
        },
        "kernel_diagonal_pushout": {
            "direct": kernel_pushout,
            "sieve": sieve_equals(
                "A",
                "A",
                (identity_a, identity_a),
                (carrier.compose(m, kernel_c.p1), carrier.compose(m, kernel_c.p2)),
                full=True,
            ),
        },
    }
    for item in items.values():
        item["agree"] = item["direct"] == item["sieve"]
    return items
