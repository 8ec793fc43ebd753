import pytest

from lexkit.carrier import FinMap, FinPoset, FinPosetCarrier, carrier_for
from lexkit.exception import IllFormed, PosetQuotientCollapse

CHAIN3 = FinPoset((0, 1, 2), ((0, 1), (1, 2)))
POINT = FinPoset(("p",))


def ends_of_chain():
    first = FinMap(POINT, CHAIN3, (("p", 0),))
    last = FinMap(POINT, CHAIN3, (("p", 2),))
    return first, last


@pytest.mark.unittest
class TestFinPoset:
    def test_order_is_closed(self):
        assert CHAIN3.order == ((0, 1), (0, 2), (1, 2))
        assert CHAIN3.leq(0, 2)
        assert not CHAIN3.leq(2, 0)

    def test_cycles_are_rejected(self):
        with pytest.raises(IllFormed, match="not antisymmetric"):
            FinPoset((0, 1), ((0, 1), (1, 0)))

    def test_foreign_pairs_are_rejected(self):
        with pytest.raises(IllFormed, match="non-element"):
            FinPoset((0,), ((0, 1),))

    def test_maps_must_be_monotone(self, chain2):
        with pytest.raises(IllFormed, match="not monotone"):
            FinMap(chain2, chain2, ((0, 1), (1, 0)))


@pytest.mark.unittest
class TestFinPosetCarrier:
    def test_unlabeled_posets(self, finposet):
        assert len(finposet.objects(3)) == 9
        assert [len(finposet.objects(n)) for n in range(3)] == [1, 2, 4]

    def test_hom_is_monotone_maps(self, finposet, chain2):
        assert len(list(finposet.hom(chain2, chain2))) == 3
        assert len(list(finposet.hom(CHAIN3, chain2))) == 4

    def test_bijection_need_not_be_iso(self, finposet, chain2):
        discrete = FinPoset((0, 1))
        f = FinMap.of(discrete, chain2, lambda x: x)
        assert finposet.is_mono(f)
        assert finposet.is_epi(f)
        assert not finposet.is_iso(f)
        assert not finposet.is_regular_epi(f)

    def test_product_order(self, finposet, chain2):
        product = finposet.product([chain2, chain2])
        assert product.apex.leq((0, 0), (1, 1))
        assert not product.apex.leq((0, 1), (1, 0))

    def test_coproduct_keeps_summands_apart(self, finposet, chain2):
        coproduct = finposet.coproduct([chain2, POINT])
        assert coproduct.apex.order == (((0, 0), (0, 1)),)

    def test_quotient_collapse(self, finposet):
        first, last = ends_of_chain()
        coequalizer = finposet.coequalizer(first, last)
        assert coequalizer.collapsed
        assert len(coequalizer.apex) == 1

    def test_strict_quotient_refuses_to_collapse(self):
        first, last = ends_of_chain()
        with pytest.raises(PosetQuotientCollapse):
            FinPosetCarrier(strict=True).coequalizer(first, last)

    def test_quotient_without_collapse(self, finposet):
        first = FinMap(POINT, CHAIN3, (("p", 0),))
        second = FinMap(POINT, CHAIN3, (("p", 1),))
        coequalizer = finposet.coequalizer(first, second)
        assert not coequalizer.collapsed
        assert len(coequalizer.apex) == 2
        assert len(coequalizer.apex.order) == 1

    def test_probes_cover_every_small_map(self, finposet, chain2):
        probes = finposet.probe_family(chain2, 1)
        assert len(probes) == 2
        assert len(finposet.probe_family(chain2, 2)) == 2 + 3 + 4

    def test_equivalence_relations_come_in_two_orders(self, finposet, chain2):
        relations = finposet.equivalence_relations(chain2)
        assert len(relations) == 3
        orders = sorted(len(r.source.order) for r in relations)
        assert orders == [1, 1, 5]

    def test_subobjects_include_every_sub_order(self, finposet, chain2):
        shapes = [
            (len(m.source), len(m.source.order)) for m in finposet.subobjects(chain2)
        ]
        assert shapes == [(0, 0), (1, 0), (1, 0), (2, 1), (2, 0)]

    def test_discrete_pair_is_a_subobject_of_the_chain(self, finposet, chain2):
        discrete = FinMap.of(FinPoset((0, 1)), chain2, lambda x: x)
        assert discrete in finposet.subobjects(chain2)

    def test_reflexive_relations_keep_the_diagonal_monotone(self, finposet, chain2):
        relations = finposet.reflexive_relations(chain2)
        assert len(relations) == 1 + 4 + 4 + 16
        assert len(set(relations)) == len(relations)
        for r in relations:
            FinMap.of(chain2, r.source, lambda x: (x, x))

    def test_image_carries_the_pushed_order(self, finposet, chain2):
        f = FinMap.of(CHAIN3, chain2, lambda x: min(x, 1))
        image = finposet.image(f)
        assert image.apex.order == ((0, 1),)

    def test_serialization_keeps_the_order(self, finposet):
        encoded = finposet.encode_object(CHAIN3)
        assert encoded["order"] == [[0, 1], [0, 2], [1, 2]]
        assert finposet.decode_object(encoded) == CHAIN3


@pytest.mark.unittest
class TestCarrierFor:
    @pytest.mark.parametrize(
        "selector, name",
        [
            ("finset", "finset"),
            ("finposet", "finposet"),
            ("finposet-strict", "finposet"),
            ("presheaf:walking_arrow", "presheaf:walking_arrow"),
        ],
    )
    def test_selectors(self, selector, name):
        assert carrier_for(selector).name == name

    def test_strict_flag(self):
        assert carrier_for("finposet-strict").strict
        assert not carrier_for("finposet").strict

    def test_unknown_selector(self):
        with pytest.raises(IllFormed, match="unknown carrier"):
            carrier_for("hilbert")
