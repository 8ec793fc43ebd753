import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexkit import relcalc
from lexkit.carrier import FinMap, FinPoset, FinSet, FinSetCarrier
from lexkit.exception import IllFormed

SETS = FinSetCarrier()


def subset(carrier, obj, members):
    return relcalc.subobject(
        carrier, FinMap.of(FinSet(tuple(members)), obj, lambda x: x)
    )


def rel(carrier, obj, pairs):
    square = carrier.product([obj, obj]).apex
    mono = FinMap.of(FinSet(tuple(pairs)), square, lambda x: x)
    return relcalc.relation(carrier, obj, mono)


@st.composite
def reflexive_relations(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    extra = draw(
        st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6)
    )
    return n, {(i, i) for i in range(n)} | extra


@pytest.mark.unittest
class TestSubobjects:
    def test_canonical_representative(self, finset):
        x = FinSet((0, 1, 2))
        by_inclusion = subset(finset, x, [0, 2])
        by_renaming = relcalc.subobject(
            finset, FinMap(FinSet(("p", "q")), x, (("p", 2), ("q", 0)))
        )
        assert by_inclusion == by_renaming

    def test_non_mono_is_rejected(self, finset):
        with pytest.raises(IllFormed, match="not a monomorphism"):
            relcalc.subobject(
                finset, FinMap(FinSet((0, 1)), FinSet((0,)), ((0, 0), (1, 0)))
            )

    def test_lattice_operations(self, finset):
        x = FinSet((0, 1, 2, 3))
        a = subset(finset, x, [0, 1])
        b = subset(finset, x, [1, 2])
        assert relcalc.intersection(finset, a, b).apex.elements == (1,)
        assert relcalc.union(finset, a, b).apex.elements == (0, 1, 2)
        assert relcalc.leq(finset, relcalc.bottom(finset, x), a)
        assert relcalc.leq(finset, a, relcalc.top(finset, x))
        assert not relcalc.leq(finset, a, b)

    def test_unions_are_effective_in_sets(self, finset):
        x = FinSet((0, 1, 2))
        a = subset(finset, x, [0, 1])
        b = subset(finset, x, [1, 2])
        assert relcalc.is_effective_union(finset, a, b)

    def test_factor_through_a_subobject(self, finset):
        x = FinSet((0, 1, 2))
        a = subset(finset, x, [1, 2])
        f = FinMap(FinSet(("u",)), x, (("u", 2),))
        g = relcalc.factor(finset, a, f)
        assert finset.compose(a.mono, g) == f
        with pytest.raises(IllFormed, match="does not factor"):
            relcalc.factor(finset, a, FinMap(FinSet(("u",)), x, (("u", 0),)))

    def test_pullback_subobject(self, finset):
        x = FinSet((0, 1))
        y = FinSet(("a", "b", "c"))
        f = FinMap(y, x, (("a", 0), ("b", 1), ("c", 1)))
        pulled = relcalc.pullback_subobject(finset, subset(finset, x, [1]), f)
        assert pulled.apex.elements == ("b", "c")

    def test_different_ambients(self, finset):
        a = relcalc.top(finset, FinSet((0,)))
        b = relcalc.top(finset, FinSet((1,)))
        with pytest.raises(IllFormed, match="different objects"):
            relcalc.union(finset, a, b)

    def test_poset_subobjects_keep_their_order(self, finposet, chain2):
        discrete = FinMap.of(FinPoset((0, 1)), chain2, lambda x: x)
        induced = relcalc.top(finposet, chain2)
        thin = relcalc.subobject(finposet, discrete)
        assert relcalc.leq(finposet, thin, induced)
        assert not relcalc.same_subobject(finposet, thin, induced)


@pytest.mark.unittest
class TestRelations:
    def test_kernel_pair_is_an_equivalence(self, finset):
        f = FinMap(
            FinSet((0, 1, 2)), FinSet(("u", "v")), ((0, "u"), (1, "u"), (2, "v"))
        )
        kernel = relcalc.kernel_pair(finset, f)
        assert relcalc.flags(finset, kernel) == {
            "reflexive": True,
            "symmetric": True,
            "transitive": True,
        }
        assert relcalc.relation_pairs(kernel) == {
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 1),
            (2, 2),
        }

    def test_composition_and_opposite(self, finset):
        x = FinSet((0, 1, 2))
        r = rel(finset, x, [(0, 1)])
        s = rel(finset, x, [(1, 2)])
        assert relcalc.relation_pairs(relcalc.rel_compose(finset, s, r)) == {(0, 2)}
        assert relcalc.relation_pairs(relcalc.rel_opposite(finset, r)) == {(1, 0)}
        assert not relcalc.is_reflexive(finset, r)
        assert relcalc.is_reflexive(finset, relcalc.diagonal(finset, x))

    def test_chain_needs_reflexivity(self, finset):
        with pytest.raises(IllFormed, match="reflexive"):
            relcalc.chain_stabilize(finset, rel(finset, FinSet((0, 1)), [(0, 1)]))

    def test_chain_closes_a_path(self, finset):
        x = FinSet((0, 1, 2, 3))
        pairs = [(i, i) for i in range(4)] + [(0, 1), (2, 1), (2, 3)]
        r = rel(finset, x, pairs)
        closure, steps = relcalc.chain_stabilize(finset, r)
        assert steps >= 1
        assert relcalc.is_equivalence(finset, closure)
        assert relcalc.relation_pairs(closure) == relcalc.closure_oracle(r)
        members = relcalc.chain_members(finset, r, steps)
        assert len(members) == steps + 1
        assert relcalc.same_relation(finset, members[-1], closure)
        assert all(
            relcalc.rel_leq(finset, a, b) for a, b in zip(members, members[1:])
        )

    def test_equivalence_stabilizes_at_once(self, finset):
        x = FinSet((0, 1, 2))
        r = rel(finset, x, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)])
        closure, steps = relcalc.chain_stabilize(finset, r)
        assert steps == 0
        assert relcalc.same_relation(finset, closure, r)

    @settings(max_examples=40, deadline=None)
    @given(reflexive_relations())
    def test_chain_agrees_with_the_matrix_closure(self, data):
        n, pairs = data
        r = rel(SETS, FinSet(tuple(range(n))), sorted(pairs))
        closure, _ = relcalc.chain_stabilize(SETS, r)
        assert relcalc.relation_pairs(closure) == relcalc.closure_oracle(r)
