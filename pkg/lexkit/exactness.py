"""
Bounded checkers for exactness properties of a carrier.

Every check walks one or more instance streams (exhaustive small objects,
then seeded random ones for sampled carriers) and stops at the first
violation. Instances are encoded so that a counterexample can be replayed
from its JSON form alone.
"""

import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from enum import Enum
from itertools import islice
from typing import Any

from . import relcalc
from ._logger import get_logger
from ._parallel import first_match
from ._serialize import SCHEMA_VERSION
from .carrier.base import Carrier
from .carrier.diagram import (
    Diagram,
    decode_components,
    decode_diagram,
    encode_components,
    encode_diagram,
    enumerate_diagrams,
    transformations,
)
from .config import Cutoffs
from .exception import IllFormed, LexkitError, NotFiltered, ReplayError
from .fincat import (
    FinCategory,
    build_category,
    is_filtered,
    parse_category,
    pretty_print,
)

logger = get_logger()


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown_bounded"


PROPERTIES = (
    "regular",
    "exact",
    "lextensive",
    "unions",
    "coherent",
    "adhesive",
    "rc",
    "filtered",
)

DOUBLE_KERNEL = parse_category(
    "objects Kf, A, P, B, Kg;"
    "arrows d1:Kf->A, c1:Kf->A, pa:P->A, pb:P->B, d2:Kg->B, c2:Kg->B;",
    name="double_kernel",
)


@dataclass(frozen=True)
class Verdict:
    property: str
    carrier: str
    seed: int
    cutoffs: Cutoffs
    status: Status
    witness: dict | None = None
    counterexample: dict | None = None
    instances: int = field(default=0, compare=False)

    def to_json(self) -> dict:
        document: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "property": self.property,
            "carrier": self.carrier,
            "seed": self.seed,
            "cutoffs": self.cutoffs.to_json(),
            "status": self.status.value,
        }
        if self.witness is not None:
            document["witness"] = self.witness
        if self.counterexample is not None:
            document["counterexample"] = self.counterexample
        return document


# ---------------------------------------------------------------------------
# constructions used by the checks


def double_kernel_diagram(carrier: Carrier, f, g) -> Diagram:
    """The kernel pairs of ``f`` and ``g`` joined by their pullback."""
    kf = carrier.kernel_pair(f)
    kg = carrier.kernel_pair(g)
    p = carrier.pullback(f, g)
    return Diagram.build(
        carrier,
        DOUBLE_KERNEL,
        {"Kf": kf.apex, "A": f.source, "P": p.apex, "B": g.source, "Kg": kg.apex},
        {
            "d1": kf.p1,
            "c1": kf.p2,
            "pa": p.p1,
            "pb": p.p2,
            "d2": kg.p1,
            "c2": kg.p2,
        },
    )


def double_kernel_colimit(carrier: Carrier, f, g) -> tuple[Any, Any]:
    """
    Colimit of the double kernel of ``f: A -> C`` and ``g: B -> C``.

    Returns:
        ``(colimit, comparison)`` with the comparison map into ``C``.
    """
    if f.target != g.target:
        raise IllFormed("double kernel needs maps into the same object")
    diagram = double_kernel_diagram(carrier, f, g)
    colimit = carrier.colimit(diagram)
    maps = {
        "A": f,
        "B": g,
        "Kf": carrier.compose(f, diagram.map("d1")),
        "P": carrier.compose(f, diagram.map("pa")),
        "Kg": carrier.compose(g, diagram.map("d2")),
    }
    return colimit, carrier.colimit_mediator(colimit, maps, f.target)


def chain_shape(length: int) -> FinCategory:
    """``c0 -> c1 -> ... -> c<length>``."""
    objects = [f"c{k}" for k in range(length + 1)]
    generators = [(f"i{k}", f"c{k}", f"c{k + 1}") for k in range(length)]
    return build_category(objects, generators, name=f"chain({length})")


def _probes(carrier: Carrier, obj, probe_bound: int) -> list:
    return [carrier.identity(obj)] + list(carrier.probe_family(obj, probe_bound))


# ---------------------------------------------------------------------------
# instance checks; each returns a violation or None


def _regular_epi(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    q = inst["q"]
    kernel = carrier.kernel_pair(q)
    e = carrier.coequalizer(kernel.p1, kernel.p2).quotient
    for probe in _probes(carrier, e.target, probe_bound):
        pulled = carrier.pullback(e, probe).p2
        if not carrier.is_regular_epi(pulled):
            return {
                "reason": "regular epi not stable under pullback",
                "probe": carrier.encode_morphism(probe),
                "pullback": carrier.encode_morphism(pulled),
            }
    return None


def _effective_relation(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    r = relcalc.relation(carrier, inst["X"], inst["R"])
    q = carrier.coequalizer(r.d, r.c).quotient
    kernel = relcalc.kernel_pair(carrier, q)
    if not relcalc.same_relation(carrier, kernel, r):
        return {
            "reason": "equivalence relation is not the kernel pair of its coequalizer",
            "quotient": carrier.encode_morphism(q),
            "kernel": carrier.encode_morphism(kernel.sub.mono),
        }
    return None


def _coproduct(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    coproduct = carrier.coproduct([inst["X"], inst["Y"]])
    i1, i2 = coproduct.injections
    for k, injection in enumerate((i1, i2)):
        if not carrier.is_mono(injection):
            return {"reason": "coproduct injection is not monic", "injection": k}
    meet = carrier.pullback(i1, i2)
    if not carrier.is_initial(meet.apex):
        return {
            "reason": "coproduct injections are not disjoint",
            "intersection": carrier.encode_object(meet.apex),
        }
    for probe in _probes(carrier, coproduct.apex, probe_bound):
        parts = carrier.pull_back_family([i1, i2], probe)
        pieces = carrier.coproduct([p.source for p in parts])
        comparison = carrier.copair(pieces, parts, probe.source)
        if not carrier.is_iso(comparison):
            return {
                "reason": "coproduct not stable under pullback",
                "probe": carrier.encode_morphism(probe),
            }
    return None


def _strict_initial(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    h = inst["h"]
    if carrier.is_initial(h.target) and not carrier.is_iso(h):
        return {
            "reason": "initial object is not strict",
            "map": carrier.encode_morphism(h),
        }
    return None


def _union(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    a = relcalc.subobject(carrier, inst["A"])
    b = relcalc.subobject(carrier, inst["B"])
    if not relcalc.is_effective_union(carrier, a, b):
        return {"reason": "union is not the pushout over the intersection"}
    joined = relcalc.union(carrier, a, b)
    for probe in carrier.probe_family(a.ambient, probe_bound):
        pulled = relcalc.pullback_subobject(carrier, joined, probe)
        rejoined = relcalc.union(
            carrier,
            relcalc.pullback_subobject(carrier, a, probe),
            relcalc.pullback_subobject(carrier, b, probe),
        )
        if not relcalc.same_subobject(carrier, pulled, rejoined):
            return {
                "reason": "union not stable under pullback",
                "probe": carrier.encode_morphism(probe),
            }
    return None


def _double_kernel(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    f, g = inst["f"], inst["g"]
    colimit, comparison = double_kernel_colimit(carrier, f, g)
    if not carrier.is_mono(comparison):
        return {
            "reason": "double kernel colimit does not embed",
            "colimit": carrier.encode_object(colimit.apex),
        }
    joined = relcalc.union(
        carrier, relcalc.image(carrier, f), relcalc.image(carrier, g)
    )
    if not relcalc.same_subobject(carrier, relcalc.image(carrier, comparison), joined):
        return {
            "reason": "double kernel colimit differs from the union of images",
            "colimit": carrier.encode_object(colimit.apex),
        }
    return None


def _pushout_square(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    m, f = inst["m"], inst["f"]
    pushout = carrier.pushout(m, f)
    g, n = pushout.q1, pushout.q2
    if not carrier.is_mono(n):
        return {
            "reason": "pushout of a mono is not monic",
            "pushout": carrier.encode_object(pushout.apex),
        }
    pullback = carrier.pullback(g, n)
    if not carrier.is_iso(carrier.mediate_pullback(pullback, m, f)):
        return {
            "reason": "pushout along a mono is not a pullback",
            "pushout": carrier.encode_object(pushout.apex),
        }
    return None


def van_kampen_comparison(carrier: Carrier, m, f, probe) -> Any:
    """
    Pull the pushout square of ``(m, f)`` back along ``probe`` and return the
    map from the pushout of the pulled-back span to ``probe.source``.
    """
    pushout = carrier.pushout(m, f)
    g, n = pushout.q1, pushout.q2
    corner = carrier.pullback(carrier.compose(g, m), probe)
    left = carrier.pullback(g, probe)
    right = carrier.pullback(n, probe)
    m_pulled = carrier.mediate_pullback(
        left, carrier.compose(m, corner.p1), corner.p2
    )
    f_pulled = carrier.mediate_pullback(
        right, carrier.compose(f, corner.p1), corner.p2
    )
    pulled = carrier.pushout(m_pulled, f_pulled)
    return carrier.copair_pushout(pulled, left.p2, right.p2)


def _van_kampen(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    m, f = inst["m"], inst["f"]
    pushout = carrier.pushout(m, f)
    for probe in _probes(carrier, pushout.apex, probe_bound):
        if not carrier.is_iso(van_kampen_comparison(carrier, m, f, probe)):
            return {
                "reason": "pushout along a mono not stable under pullback",
                "probe": carrier.encode_morphism(probe),
            }
    return None


def _reflexive_relation(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    r = relcalc.relation(carrier, inst["X"], inst["R"])
    closure, steps = relcalc.chain_stabilize(carrier, r)
    if not relcalc.is_equivalence(carrier, closure):
        return {"reason": "chain union is not an equivalence relation", "steps": steps}
    q = carrier.coequalizer(r.d, r.c).quotient
    q_closure = carrier.coequalizer(closure.d, closure.c).quotient
    kernel = relcalc.kernel_pair(carrier, q_closure)
    if not relcalc.same_relation(carrier, relcalc.kernel_pair(carrier, q), kernel):
        return {"reason": "coequalizers of the relation and its chain differ"}
    if not relcalc.same_relation(carrier, kernel, closure):
        return {"reason": "chain union is not the kernel pair of its coequalizer"}
    members = relcalc.chain_members(carrier, r, steps)
    shape = chain_shape(steps)
    diagram = Diagram.build(
        carrier,
        shape,
        {f"c{k}": member.sub.apex for k, member in enumerate(members)},
        {
            f"i{k}": relcalc.factor(carrier, members[k + 1].sub, members[k].sub.mono)
            for k in range(steps)
        },
    )
    colimit = carrier.colimit(diagram)
    comparison = carrier.colimit_mediator(
        colimit,
        {f"c{k}": member.sub.mono for k, member in enumerate(members)},
        closure.sub.ambient,
    )
    if not carrier.is_mono(comparison) or not relcalc.same_subobject(
        carrier, relcalc.image(carrier, comparison), closure.sub
    ):
        return {
            "reason": "colimit of the relation chain is not its union",
            "steps": steps,
        }
    for probe in _probes(carrier, q_closure.target, probe_bound):
        pulled = carrier.pullback(q_closure, probe).p2
        if not carrier.is_regular_epi(pulled):
            return {
                "reason": "reflexive coequalizer not stable under pullback",
                "probe": carrier.encode_morphism(probe),
            }
    return None


def _filtered(carrier: Carrier, inst: dict, probe_bound: int) -> dict | None:
    d1, d2, d3 = inst["D1"], inst["D2"], inst["D3"]
    alpha, beta = inst["alpha"], inst["beta"]
    shape = d3.shape
    c1, c2, c3 = carrier.colimit(d1), carrier.colimit(d2), carrier.colimit(d3)
    a = carrier.colimit_mediator(
        c1, {o: carrier.compose(c3.leg(o), alpha[o]) for o in shape.objects}, c3.apex
    )
    b = carrier.colimit_mediator(
        c2, {o: carrier.compose(c3.leg(o), beta[o]) for o in shape.objects}, c3.apex
    )
    target = carrier.pullback(a, b)
    pullbacks = {o: carrier.pullback(alpha[o], beta[o]) for o in shape.objects}
    pointwise = Diagram.build(
        carrier,
        shape,
        {o: pullbacks[o].apex for o in shape.objects},
        {
            g: carrier.mediate_pullback(
                pullbacks[shape.target(g)],
                carrier.compose(d1.map(g), pullbacks[shape.source(g)].p1),
                carrier.compose(d2.map(g), pullbacks[shape.source(g)].p2),
            )
            for g in shape.generators
        },
    )
    colimit = carrier.colimit(pointwise)
    comparison = carrier.colimit_mediator(
        colimit,
        {
            o: carrier.mediate_pullback(
                target,
                carrier.compose(c1.leg(o), pullbacks[o].p1),
                carrier.compose(c2.leg(o), pullbacks[o].p2),
            )
            for o in shape.objects
        },
        target.apex,
    )
    if not carrier.is_iso(comparison):
        return {
            "reason": "filtered colimit does not commute with the pullback",
            "colimit": carrier.encode_object(colimit.apex),
            "pullback": carrier.encode_object(target.apex),
        }
    return None


@dataclass(frozen=True)
class _Check:
    run: Callable[[Carrier, dict, int], dict | None]
    fields: tuple[tuple[str, str], ...]


_CHECKS: dict[str, _Check] = {
    "regular_epi": _Check(_regular_epi, (("q", "morphism"),)),
    "effective_relation": _Check(
        _effective_relation, (("X", "object"), ("R", "morphism"))
    ),
    "coproduct": _Check(_coproduct, (("X", "object"), ("Y", "object"))),
    "strict_initial": _Check(_strict_initial, (("h", "morphism"),)),
    "union": _Check(_union, (("A", "morphism"), ("B", "morphism"))),
    "double_kernel": _Check(_double_kernel, (("f", "morphism"), ("g", "morphism"))),
    "pushout_square": _Check(_pushout_square, (("m", "morphism"), ("f", "morphism"))),
    "van_kampen": _Check(_van_kampen, (("m", "morphism"), ("f", "morphism"))),
    "reflexive_relation": _Check(
        _reflexive_relation, (("X", "object"), ("R", "morphism"))
    ),
    "filtered": _Check(
        _filtered,
        (
            ("D1", "diagram"),
            ("D2", "diagram"),
            ("D3", "diagram"),
            ("alpha", "components"),
            ("beta", "components"),
        ),
    ),
}


def encode_instance(carrier: Carrier, kind: str, inst: dict, probe_bound: int) -> dict:
    encoded: dict[str, Any] = {"kind": kind, "probe_bound": probe_bound}
    for name, sort in _CHECKS[kind].fields:
        value = inst[name]
        if sort == "object":
            encoded[name] = carrier.encode_object(value)
        elif sort == "morphism":
            encoded[name] = carrier.encode_morphism(value)
        elif sort == "diagram":
            encoded[name] = encode_diagram(carrier, value)
        else:
            encoded[name] = encode_components(carrier, value)
    if "shape" in inst:
        encoded["shape"] = pretty_print(inst["shape"])
    return encoded


def decode_instance(carrier: Carrier, encoded: dict) -> tuple[str, dict, int]:
    try:
        kind = encoded["kind"]
        check = _CHECKS[kind]
        probe_bound = int(encoded["probe_bound"])
        inst: dict[str, Any] = {}
        if "shape" in encoded:
            inst["shape"] = parse_category(encoded["shape"])
        for name, sort in check.fields:
            data = encoded[name]
            if sort == "object":
                inst[name] = carrier.decode_object(data)
            elif sort == "morphism":
                inst[name] = carrier.decode_morphism(data)
            elif sort == "diagram":
                inst[name] = decode_diagram(carrier, inst["shape"], data)
            else:
                inst[name] = decode_components(carrier, data)
    except (KeyError, TypeError, ValueError) as e:
        raise ReplayError(f"cannot decode instance: {e!r}")
    except LexkitError as e:
        raise ReplayError(f"cannot decode instance: {e}")
    return kind, inst, probe_bound


# ---------------------------------------------------------------------------
# instance streams


def _quotient_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    for x in carrier.sweep_objects(cutoffs, "regular"):
        for q in carrier.quotients(x):
            yield {"q": q}


def _equivalence_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    for x in carrier.sweep_objects(cutoffs, "exact"):
        for mono in carrier.equivalence_relations(x):
            yield {"X": x, "R": mono}


def _coproduct_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    for x, y in carrier.sweep_pairs(cutoffs, "lextensive"):
        yield {"X": x, "Y": y}


def _strict_initial_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    zero = carrier.initial()
    for x in carrier.objects(carrier.exhaustive_size(cutoffs)):
        for h in carrier.hom(x, zero):
            yield {"h": h}


def _subobject_pairs(carrier: Carrier, cutoffs: Cutoffs, label: str) -> Iterator[tuple]:
    for x in carrier.sweep_objects(cutoffs, label):
        subs = carrier.subobjects(x)
        for i, a in enumerate(subs):
            for b in subs[i:]:
                yield a, b


def _union_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    for a, b in _subobject_pairs(carrier, cutoffs, "unions"):
        yield {"A": a, "B": b}


def _double_kernel_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    for f, g in _subobject_pairs(carrier, cutoffs, "coherent"):
        yield {"f": f, "g": g}
    for x in carrier.sweep_objects(cutoffs, "coherent/quotients"):
        quotients = carrier.quotients(x)
        for q in quotients:
            yield {"f": q, "g": q}


def _mono_span_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    small = carrier.objects(carrier.exhaustive_size(cutoffs))
    for c in small:
        for a in small:
            monos = [m for m in carrier.hom(c, a) if carrier.is_mono(m)]
            if not monos:
                continue
            for b in small:
                for f in carrier.hom(c, b):
                    for m in monos:
                        yield {"m": m, "f": f}
    if not carrier.sampled:
        return
    rng = random.Random(f"{cutoffs.seed}/adhesive")
    for _ in range(cutoffs.samples):
        a = carrier.random_object(rng, cutoffs.max_size)
        m = rng.choice(carrier.subobjects(a))
        b = carrier.random_object(rng, cutoffs.max_size)
        homs = list(islice(carrier.hom(m.source, b), cutoffs.hom_cap))
        if homs:
            yield {"m": m, "f": rng.choice(homs)}


def _reflexive_stream(carrier: Carrier, cutoffs: Cutoffs) -> Iterator[dict]:
    for x in carrier.sweep_objects(cutoffs, "rc"):
        for mono in carrier.reflexive_relations(x):
            yield {"X": x, "R": mono}


def _filtered_stream(
    carrier: Carrier, shape: FinCategory, cutoffs: Cutoffs
) -> Iterator[dict]:
    pool = carrier.objects(min(cutoffs.max_size, 2))

    def instances():
        for d3 in enumerate_diagrams(carrier, shape, pool):
            for d1 in enumerate_diagrams(carrier, shape, pool):
                for alpha in transformations(carrier, d1, d3):
                    for d2 in enumerate_diagrams(carrier, shape, pool):
                        for beta in transformations(carrier, d2, d3):
                            yield {
                                "shape": shape,
                                "D1": d1,
                                "D2": d2,
                                "D3": d3,
                                "alpha": alpha,
                                "beta": beta,
                            }

    yield from islice(instances(), cutoffs.samples)


# ---------------------------------------------------------------------------
# checks


Stage = tuple[str, Iterator[dict]]


def _run(
    prop: str, carrier: Carrier, cutoffs: Cutoffs, stages: list[Callable[[], Stage]]
) -> Verdict:
    total = 0
    for make in stages:
        kind, stream = make()
        check = _CHECKS[kind]
        visited, match = first_match(
            lambda inst: check.run(carrier, inst, cutoffs.probe_bound), stream
        )
        total += visited
        logger.debug(f"{prop} on {carrier.name}: {kind} checked {visited} instances")
        if match is not None:
            inst, violation = match
            counterexample = {
                "property": prop,
                "instance": encode_instance(carrier, kind, inst, cutoffs.probe_bound),
                "violation": violation,
            }
            logger.info(f"{prop} fails on {carrier.name}: {violation['reason']}")
            return Verdict(
                prop,
                carrier.name,
                cutoffs.seed,
                cutoffs,
                Status.FAILS,
                counterexample=counterexample,
                instances=total,
            )
    status = Status.HOLDS if carrier.is_topos else Status.UNKNOWN
    witness = {
        "instances": total,
        "exhaustive_size": carrier.exhaustive_size(cutoffs),
        "sampled": carrier.sampled,
    }
    return Verdict(
        prop,
        carrier.name,
        cutoffs.seed,
        cutoffs,
        status,
        witness=witness,
        instances=total,
    )


def _regular_stages(carrier: Carrier, cutoffs: Cutoffs) -> list:
    return [lambda: ("regular_epi", _quotient_stream(carrier, cutoffs))]


def _exact_stages(carrier: Carrier, cutoffs: Cutoffs) -> list:
    return [
        lambda: ("effective_relation", _equivalence_stream(carrier, cutoffs)),
        *_regular_stages(carrier, cutoffs),
    ]


def _union_stages(carrier: Carrier, cutoffs: Cutoffs) -> list:
    return [
        lambda: ("strict_initial", _strict_initial_stream(carrier, cutoffs)),
        lambda: ("union", _union_stream(carrier, cutoffs)),
    ]


def check_regular(carrier: Carrier, cutoffs: Cutoffs = Cutoffs()) -> Verdict:
    """Regular epis, taken as coequalizers of kernel pairs, are stable under probes."""
    return _run("regular", carrier, cutoffs, _regular_stages(carrier, cutoffs))


def check_barr_exact(carrier: Carrier, cutoffs: Cutoffs = Cutoffs()) -> Verdict:
    """Equivalence relations are effective, and the carrier is regular."""
    return _run("exact", carrier, cutoffs, _exact_stages(carrier, cutoffs))


def check_lextensive(carrier: Carrier, cutoffs: Cutoffs = Cutoffs()) -> Verdict:
    """Binary coproducts are disjoint and stable under probes."""
    return _run(
        "lextensive",
        carrier,
        cutoffs,
        [lambda: ("coproduct", _coproduct_stream(carrier, cutoffs))],
    )


def check_effective_unions(carrier: Carrier, cutoffs: Cutoffs = Cutoffs()) -> Verdict:
    """Strict initial object, and unions of subobject pairs are effective and stable."""
    return _run("unions", carrier, cutoffs, _union_stages(carrier, cutoffs))


def check_coherent(carrier: Carrier, cutoffs: Cutoffs = Cutoffs()) -> Verdict:
    """Regular with effective unions; double kernel colimits are unions of images."""
    stages = [
        *_regular_stages(carrier, cutoffs),
        *_union_stages(carrier, cutoffs),
        lambda: ("double_kernel", _double_kernel_stream(carrier, cutoffs)),
    ]
    return _run("coherent", carrier, cutoffs, stages)


def check_adhesive(carrier: Carrier, cutoffs: Cutoffs = Cutoffs()) -> Verdict:
    """
    Pushouts along monos are pullbacks with monic opposite side, and stay
    pushouts when pulled back along probes.
    """
    stages = [
        lambda: ("pushout_square", _mono_span_stream(carrier, cutoffs)),
        lambda: ("van_kampen", _mono_span_stream(carrier, cutoffs)),
    ]
    return _run("adhesive", carrier, cutoffs, stages)


def check_reflexive_coeq(carrier: Carrier, cutoffs: Cutoffs = Cutoffs()) -> Verdict:
    """
    Barr-exact, and the kernel of a reflexive relation's coequalizer is
    reached by a stable chain of composites.
    """
    stages = [
        *_exact_stages(carrier, cutoffs),
        lambda: ("reflexive_relation", _reflexive_stream(carrier, cutoffs)),
    ]
    return _run("rc", carrier, cutoffs, stages)


def check_filtered_commute(
    carrier: Carrier, shape: FinCategory, cutoffs: Cutoffs = Cutoffs()
) -> Verdict:
    """
    Colimits over ``shape`` commute with pullbacks on sampled diagrams.

    Raises:
        NotFiltered: If ``shape`` is not filtered.
    """
    filtered, reason = is_filtered(shape)
    if not filtered:
        raise NotFiltered(shape.describe(), reason)
    return _run(
        "filtered",
        carrier,
        cutoffs,
        [lambda: ("filtered", _filtered_stream(carrier, shape, cutoffs))],
    )


def check(
    prop: str,
    carrier: Carrier,
    cutoffs: Cutoffs = Cutoffs(),
    shape: FinCategory | None = None,
) -> Verdict:
    """Dispatch by property name (``regular``, ``exact``, ... ``filtered``)."""
    if prop == "filtered":
        if shape is None:
            raise IllFormed("the filtered check needs a shape")
        return check_filtered_commute(carrier, shape, cutoffs)
    checks = {
        "regular": check_regular,
        "exact": check_barr_exact,
        "lextensive": check_lextensive,
        "unions": check_effective_unions,
        "coherent": check_coherent,
        "adhesive": check_adhesive,
        "rc": check_reflexive_coeq,
    }
    try:
        fn = checks[prop]
    except KeyError:
        raise IllFormed(f"unknown property '{prop}'")
    return fn(carrier, cutoffs)


def replay(carrier: Carrier, counterexample: dict) -> dict | None:
    """
    Re-run a stored counterexample.

    Returns:
        The counterexample, re-encoded, if the violation reproduces;
        otherwise None.

    Raises:
        ReplayError: If the document cannot be decoded.
    """
    try:
        prop = counterexample["property"]
        encoded = counterexample["instance"]
    except (KeyError, TypeError):
        raise ReplayError("counterexample needs 'property' and 'instance'")
    kind, inst, probe_bound = decode_instance(carrier, encoded)
    violation = _CHECKS[kind].run(carrier, inst, probe_bound)
    if violation is None:
        return None
    return {
        "property": prop,
        "instance": encode_instance(carrier, kind, inst, probe_bound),
        "violation": violation,
    }
