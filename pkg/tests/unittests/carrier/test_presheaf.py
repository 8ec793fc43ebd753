import pytest

from lexkit.carrier import (
    NatTrans,
    Presheaf,
    canonical_signature,
    iso_test,
    yoneda,
    yoneda_map,
)
from lexkit.exception import IllFormed
from lexkit.fincat import standard_shape

ARROW = standard_shape("walking_arrow")


def element_presheaf():
    """``P(B) = {0}``, ``P(A) = {0, 1}``, with ``f`` picking ``1``."""
    return Presheaf.build(ARROW, {"A": (0, 1), "B": (0,)}, {"f": {0: 1}})


@pytest.mark.unittest
class TestRepresentables:
    def test_yoneda_values(self):
        y = yoneda(ARROW, "B")
        assert y.at("A").elements == ("f",)
        assert y.at("B").elements == (ARROW.identity("B"),)
        assert y.act("f", ARROW.identity("B")) == "f"
        assert yoneda(ARROW, "A").size == 1

    def test_yoneda_map(self):
        y = yoneda_map(ARROW, "f")
        assert y.source == yoneda(ARROW, "A")
        assert y.target == yoneda(ARROW, "B")
        assert y("A", ARROW.identity("A")) == "f"

    def test_hom_from_a_representable(self, arrow_presheaves):
        p = element_presheaf()
        assert len(list(arrow_presheaves.hom(arrow_presheaves.yoneda("B"), p))) == 1
        assert len(list(arrow_presheaves.hom(arrow_presheaves.yoneda("A"), p))) == 2

    def test_probes_are_elements(self, arrow_presheaves):
        assert len(arrow_presheaves.probe_family(element_presheaf())) == 3


@pytest.mark.unittest
class TestPresheafBuild:
    def test_partial_action(self):
        with pytest.raises(IllFormed, match="not total"):
            Presheaf.build(ARROW, {"A": (0,), "B": (0, 1)}, {"f": {0: 0}})

    def test_unknown_objects(self):
        with pytest.raises(IllFormed, match="unknown objects"):
            Presheaf.build(ARROW, {"C": (0,)})

    def test_naturality_is_checked(self):
        p = element_presheaf()
        with pytest.raises(IllFormed, match="naturality"):
            NatTrans.build(p, p, {"A": {0: 0, 1: 0}, "B": {0: 0}})


@pytest.mark.unittest
class TestIsomorphism:
    def test_relabelled_representable(self):
        relabelled = Presheaf.build(
            ARROW, {"A": ("u",), "B": ("v",)}, {"f": {"v": "u"}}
        )
        iso = iso_test(yoneda(ARROW, "B"), relabelled)
        assert iso is not None
        assert iso("B", ARROW.identity("B")) == "v"
        assert canonical_signature(relabelled) == canonical_signature(
            yoneda(ARROW, "B")
        )

    def test_same_sizes_different_actions(self):
        loose = Presheaf.build(ARROW, {"A": (0, 1), "B": (0,)}, {"f": {0: 0}})
        assert iso_test(loose, element_presheaf()) is not None
        split = Presheaf.build(ARROW, {"A": (0, 1)})
        assert iso_test(split, element_presheaf()) is None

    def test_objects_are_iso_classes(self, arrow_presheaves):
        assert len(arrow_presheaves.objects(2)) == 4
        assert arrow_presheaves.objects(2) is arrow_presheaves.objects(2)


@pytest.mark.unittest
class TestPresheafConstructions:
    def test_terminal_and_initial(self, arrow_presheaves):
        assert arrow_presheaves.terminal().size == 2
        assert arrow_presheaves.initial().size == 0
        assert arrow_presheaves.is_strict_initial(2) == (True, None)

    def test_products_are_pointwise(self, arrow_presheaves):
        ya, yb = arrow_presheaves.yoneda("A"), arrow_presheaves.yoneda("B")
        assert arrow_presheaves.product([ya, yb]).apex.size == 1
        assert arrow_presheaves.product([yb, yb]).apex.size == 2

    def test_cokernel_pair_of_a_representable_map(self, arrow_presheaves):
        f = arrow_presheaves.yoneda_map("f")
        assert arrow_presheaves.is_mono(f)
        assert not arrow_presheaves.is_epi(f)
        pushout = arrow_presheaves.cokernel_pair(f)
        assert len(pushout.apex.at("A")) == 1
        assert len(pushout.apex.at("B")) == 2

    def test_inverse(self, arrow_presheaves):
        y = arrow_presheaves.yoneda("B")
        identity = arrow_presheaves.identity(y)
        assert arrow_presheaves.inverse(identity) == identity
        with pytest.raises(IllFormed, match="not invertible"):
            arrow_presheaves.inverse(arrow_presheaves.yoneda_map("f"))

    def test_subobjects_of_a_representable(self, arrow_presheaves):
        subobjects = arrow_presheaves.subobjects(arrow_presheaves.yoneda("B"))
        assert sorted(m.source.size for m in subobjects) == [0, 1, 2]
        assert all(arrow_presheaves.is_mono(m) for m in subobjects)

    def test_regular_epi(self, arrow_presheaves):
        collapse = arrow_presheaves.to_terminal(element_presheaf())
        assert arrow_presheaves.is_regular_epi(collapse)
        partial = arrow_presheaves.to_terminal(arrow_presheaves.yoneda("A"))
        assert not arrow_presheaves.is_regular_epi(partial)

    def test_serialization(self, arrow_presheaves):
        p = element_presheaf()
        assert arrow_presheaves.decode_object(arrow_presheaves.encode_object(p)) == p
