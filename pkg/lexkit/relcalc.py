"""
Subobjects and internal relations over any carrier.

A subobject is stored as the image of its mono, which gives one canonical
representative per subobject; a relation on ``X`` is a subobject of
``X × X`` together with its two legs.
"""

from dataclasses import dataclass
from itertools import count
from typing import Any

from ._logger import get_logger
from ._order import equivalence_closure
from .carrier.base import Carrier
from .exception import IllFormed

logger = get_logger()


@dataclass(frozen=True)
class Subobject:
    ambient: Any
    mono: Any

    @property
    def apex(self) -> Any:
        return self.mono.source


@dataclass(frozen=True)
class Relation:
    """
    A relation ``R >-> X × X`` with legs ``d, c: R -> X``.
    """

    obj: Any
    sub: Subobject
    d: Any
    c: Any


def subobject(carrier: Carrier, mono) -> Subobject:
    """
    Canonical subobject presented by ``mono``.

    Raises:
        IllFormed: If ``mono`` is not monic.
    """
    if not carrier.is_mono(mono):
        raise IllFormed("subobject presentation is not a monomorphism")
    return Subobject(mono.target, carrier.image(mono).mono)


def image(carrier: Carrier, f) -> Subobject:
    return Subobject(f.target, carrier.image(f).mono)


def leq(carrier: Carrier, a: Subobject, b: Subobject) -> bool:
    """``a`` factors through ``b``."""
    if a.ambient != b.ambient:
        raise IllFormed("subobjects of different objects")
    return carrier.is_iso(carrier.pullback(a.mono, b.mono).p1)


def same_subobject(carrier: Carrier, a: Subobject, b: Subobject) -> bool:
    return a == b or (leq(carrier, a, b) and leq(carrier, b, a))


def factor(carrier: Carrier, b: Subobject, f) -> Any:
    """
    The map ``g`` with ``b.mono ∘ g = f``.

    Raises:
        IllFormed: If ``f`` does not factor through ``b``.
    """
    pullback = carrier.pullback(b.mono, f)
    if not carrier.is_iso(pullback.p2):
        raise IllFormed("morphism does not factor through the subobject")
    return carrier.compose(pullback.p1, carrier.inverse(pullback.p2))


def bottom(carrier: Carrier, obj) -> Subobject:
    return image(carrier, carrier.from_initial(obj))


def top(carrier: Carrier, obj) -> Subobject:
    return image(carrier, carrier.identity(obj))


def intersection(carrier: Carrier, a: Subobject, b: Subobject) -> Subobject:
    pullback = carrier.pullback(a.mono, b.mono)
    return image(carrier, carrier.compose(a.mono, pullback.p1))


def union(carrier: Carrier, a: Subobject, b: Subobject) -> Subobject:
    """Image of the copairing ``A + B -> C``."""
    if a.ambient != b.ambient:
        raise IllFormed("subobjects of different objects")
    coproduct = carrier.coproduct([a.apex, b.apex])
    return image(carrier, carrier.copair(coproduct, [a.mono, b.mono], a.ambient))


def union_comparison(carrier: Carrier, a: Subobject, b: Subobject) -> Any:
    """The map from the pushout over ``a ∩ b`` to ``a ∪ b``."""
    pullback = carrier.pullback(a.mono, b.mono)
    pushout = carrier.pushout(pullback.p1, pullback.p2)
    joined = union(carrier, a, b)
    return carrier.copair_pushout(
        pushout, factor(carrier, joined, a.mono), factor(carrier, joined, b.mono)
    )


def is_effective_union(carrier: Carrier, a: Subobject, b: Subobject) -> bool:
    """Whether the intersection square of ``a`` and ``b`` is a pushout."""
    return carrier.is_iso(union_comparison(carrier, a, b))


def pullback_subobject(carrier: Carrier, a: Subobject, f) -> Subobject:
    """``f*(a)`` as a subobject of ``f.source``."""
    if f.target != a.ambient:
        raise IllFormed("map does not land in the ambient of the subobject")
    return image(carrier, carrier.pullback(a.mono, f).p2)


# relations


def relation(carrier: Carrier, obj, mono) -> Relation:
    """The relation presented by a mono into ``obj × obj``."""
    sub = subobject(carrier, mono)
    d, c = carrier.relation_legs(sub.mono, obj)
    return Relation(obj, sub, d, c)


def relation_from_legs(carrier: Carrier, obj, d, c) -> Relation:
    """The image of ``(d, c): S -> X × X``."""
    square = carrier.product([obj, obj])
    paired = carrier.pair(square, [d, c], d.source)
    sub = image(carrier, paired)
    d, c = carrier.relation_legs(sub.mono, obj)
    return Relation(obj, sub, d, c)


def kernel_pair(carrier: Carrier, f) -> Relation:
    pullback = carrier.kernel_pair(f)
    return relation_from_legs(carrier, f.source, pullback.p1, pullback.p2)


def diagonal(carrier: Carrier, obj) -> Relation:
    identity = carrier.identity(obj)
    return relation_from_legs(carrier, obj, identity, identity)


def rel_opposite(carrier: Carrier, r: Relation) -> Relation:
    return relation_from_legs(carrier, r.obj, r.c, r.d)


def rel_compose(carrier: Carrier, s: Relation, r: Relation) -> Relation:
    """``s ∘ r``: pairs ``(x, z)`` with ``x r y`` and ``y s z`` for some ``y``."""
    if s.obj != r.obj:
        raise IllFormed("relations on different objects")
    pullback = carrier.pullback(r.c, s.d)
    return relation_from_legs(
        carrier,
        r.obj,
        carrier.compose(r.d, pullback.p1),
        carrier.compose(s.c, pullback.p2),
    )


def rel_leq(carrier: Carrier, r: Relation, s: Relation) -> bool:
    return leq(carrier, r.sub, s.sub)


def same_relation(carrier: Carrier, r: Relation, s: Relation) -> bool:
    return same_subobject(carrier, r.sub, s.sub)


def is_reflexive(carrier: Carrier, r: Relation) -> bool:
    return rel_leq(carrier, diagonal(carrier, r.obj), r)


def is_symmetric(carrier: Carrier, r: Relation) -> bool:
    return rel_leq(carrier, rel_opposite(carrier, r), r)


def is_transitive(carrier: Carrier, r: Relation) -> bool:
    return rel_leq(carrier, rel_compose(carrier, r, r), r)


def is_equivalence(carrier: Carrier, r: Relation) -> bool:
    return (
        is_reflexive(carrier, r)
        and is_symmetric(carrier, r)
        and is_transitive(carrier, r)
    )


def flags(carrier: Carrier, r: Relation) -> dict[str, bool]:
    return {
        "reflexive": is_reflexive(carrier, r),
        "symmetric": is_symmetric(carrier, r),
        "transitive": is_transitive(carrier, r),
    }


def chain_stabilize(carrier: Carrier, r: Relation) -> tuple[Relation, int]:
    """
    Iterate ``T ↦ R ∘ R° ∘ T`` from ``T = R`` until the subobject stops growing.

    Returns:
        ``(R*, steps)`` where ``steps`` counts strict increases.

    Raises:
        IllFormed: If ``r`` is not reflexive.
    """
    if not is_reflexive(carrier, r):
        raise IllFormed("chain stabilization needs a reflexive relation")
    opposite = rel_opposite(carrier, r)
    current = r
    for steps in count():
        following = rel_compose(carrier, r, rel_compose(carrier, opposite, current))
        if same_relation(carrier, following, current):
            logger.debug(f"relation chain stabilized after {steps} steps")
            return current, steps
        current = following
    raise AssertionError("unreachable")


def chain_members(carrier: Carrier, r: Relation, steps: int) -> list[Relation]:
    """``R, RR°R, ...``: the first ``steps + 1`` members of the chain."""
    opposite = rel_opposite(carrier, r)
    members = [r]
    for _ in range(steps):
        members.append(
            rel_compose(carrier, r, rel_compose(carrier, opposite, members[-1]))
        )
    return members


def relation_pairs(r: Relation) -> frozenset:
    """Element pairs of a relation in a set-based carrier."""
    return frozenset(r.sub.apex.elements)


def closure_oracle(r: Relation) -> frozenset:
    """Equivalence closure of a set-based relation computed with boolean matrices."""
    return equivalence_closure(r.obj.elements, relation_pairs(r))
