import pytest

from lexkit.carrier import FinMap, FinSet, PresheafCarrier
from lexkit.carrier.diagram import Diagram
from lexkit.carrier.model import Presheaf
from lexkit.carrier.presheaf import iso_test
from lexkit.completions import (
    CLASS_NAMES,
    FamCategory,
    FamMorphism,
    FamObject,
    Term,
    evaluate_term,
    in_saturation,
    phi_closure,
    render_term,
    weight_class,
    weighted_colimit,
)
from lexkit.config import Cutoffs
from lexkit.exception import IllFormed, MonoViolation, ShapeMismatch, Unsupported
from lexkit.fincat import standard_shape

THREE = FinSet(("a", "b", "c"))
TWO = FinSet(("u", "v"))
F = FinMap(THREE, TWO, (("a", "u"), ("b", "u"), ("c", "v")))


@pytest.mark.unittest
class TestWeightClasses:
    def test_class_names(self):
        assert "lext" in CLASS_NAMES
        assert "coh_prime" in CLASS_NAMES
        assert "filt" in CLASS_NAMES

    def test_lookup(self):
        lext = weight_class("lext")
        assert [w.name for w in lext.weights] == ["initial", "coproduct"]
        assert weight_class(" coh ").name == "coh"

    def test_filtered_class_of_a_shape(self):
        filt = weight_class("filt(walking_arrow)")
        assert filt.weights[0].sketch == standard_shape("walking_arrow")

    @pytest.mark.parametrize("name", ["bogus", "filt walking_arrow", "filt(pentagon)"])
    def test_bad_names(self, name):
        with pytest.raises(IllFormed):
            weight_class(name)

    def test_weight_named(self):
        assert weight_class("coh").weight_named("union").name == "union"
        with pytest.raises(IllFormed, match="has no weight"):
            weight_class("reg").weight_named("adh")


@pytest.mark.unittest
class TestWeightedColimit:
    def test_regular_weight_is_the_image(self, finset):
        diagram = Diagram.build(
            finset, standard_shape("walking_arrow"), {"A": THREE, "B": TWO}, {"f": F}
        )
        result = weighted_colimit(weight_class("reg"), diagram, finset)
        assert len(result.apex) == 2
        assert finset.is_epi(result.leg("A"))

    def test_coproduct_weight(self, finset):
        diagram = Diagram.build(
            finset, standard_shape("discrete", 2), {"x0": THREE, "x1": TWO}, {}
        )
        result = weighted_colimit(weight_class("lext"), diagram, finset)
        assert len(result.apex) == 5

    def test_shape_mismatch(self, finset):
        kernel = finset.kernel_pair(F)
        diagram = Diagram.build(
            finset,
            standard_shape("parallel_pair"),
            {"X": kernel.apex, "Y": THREE},
            {"d": kernel.p1, "c": kernel.p2},
        )
        with pytest.raises(ShapeMismatch):
            weighted_colimit(weight_class("reg"), diagram, finset)

    def test_exact_weight_quotients_an_equivalence(self, finset):
        kernel = finset.kernel_pair(F)
        diagram = Diagram.build(
            finset,
            standard_shape("parallel_pair"),
            {"X": kernel.apex, "Y": THREE},
            {"d": kernel.p1, "c": kernel.p2},
        )
        result = weighted_colimit(weight_class("ex"), diagram, finset)
        assert len(result.apex) == 2

    def test_exact_weight_rejects_a_non_equivalence(self, finset):
        one = FinSet(("p",))
        diagram = Diagram.build(
            finset,
            standard_shape("parallel_pair"),
            {"X": one, "Y": TWO},
            {
                "d": FinMap(one, TWO, (("p", "u"),)),
                "c": FinMap(one, TWO, (("p", "v"),)),
            },
        )
        with pytest.raises(IllFormed, match="not an equivalence"):
            weighted_colimit(weight_class("ex"), diagram, finset)

    def test_mono_marking_is_enforced(self, finset):
        with pytest.raises(MonoViolation):
            Diagram.build(
                finset,
                standard_shape("mono_span"),
                {"C": THREE, "A": TWO, "B": TWO},
                {"m": F, "f": F},
            )

    def test_pushout_along_a_mono(self, finset):
        m = FinMap(TWO, THREE, (("u", "a"), ("v", "b")))
        f = FinMap(TWO, FinSet(("x",)), (("u", "x"), ("v", "x")))
        diagram = Diagram.build(
            finset,
            standard_shape("mono_span"),
            {"C": TWO, "A": THREE, "B": FinSet(("x",))},
            {"m": m, "f": f},
        )
        result = weighted_colimit(weight_class("adh"), diagram, finset)
        assert len(result.apex) == 2


@pytest.mark.unittest
class TestFamCategory:
    def test_objects_and_homs(self):
        fam = FamCategory(standard_shape("walking_arrow"))
        assert len(fam.objects(1)) == 3
        assert len(list(fam.hom(fam.W("A"), fam.W("B")))) == 1
        assert list(fam.hom(fam.W("B"), fam.W("A"))) == []
        assert len(list(fam.hom(fam.initial(), fam.W("A")))) == 1

    def test_coproduct_is_concatenation(self):
        fam = FamCategory(standard_shape("walking_arrow"))
        apex, injections = fam.coproduct([fam.W("A"), fam.W("B")])
        assert apex == FamObject(("A", "B"))
        assert injections[1].reindex == (1,)
        maps = [fam.W_map("f"), fam.identity(fam.W("B"))]
        joined = fam.copair(apex, maps, fam.W("B"))
        assert fam.compose(joined, injections[0]) == fam.W_map("f")

    def test_identity_laws(self):
        fam = FamCategory(standard_shape("walking_arrow"))
        f = fam.W_map("f")
        assert fam.compose(f, fam.identity(f.source)) == f
        assert fam.compose(fam.identity(f.target), f) == f

    def test_limits_from_the_base(self):
        fam = FamCategory(standard_shape("walking_arrow"))
        assert fam.terminal() == FamObject(("B",))
        apex, left, right = fam.product(fam.W("A"), fam.W("B"))
        assert apex == FamObject(("A",))
        assert right.components == ("f",)

    def test_missing_terminal(self):
        fam = FamCategory(standard_shape("discrete", 2))
        with pytest.raises(Unsupported):
            fam.terminal()

    def test_check_rejects_wrong_ends(self):
        fam = FamCategory(standard_shape("walking_arrow"))
        bad = FamMorphism(fam.W("B"), fam.W("A"), (0,), ("f",))
        with pytest.raises(IllFormed, match="wrong ends"):
            fam.check(bad)

    def test_embedding_preserves_coproducts_and_limits(self):
        fam = FamCategory(standard_shape("walking_arrow"))
        report = fam.check_preservation(max_length=1)
        assert report["failures"] == []
        assert report["coproducts"] == 9
        assert report["terminal"] == 1

    def test_summary(self):
        fam = FamCategory(standard_shape("walking_arrow"))
        summary = fam.summary(max_length=1)
        assert summary["objects"] == 3
        assert summary["base"] == "walking_arrow"


@pytest.mark.unittest
class TestClosure:
    def test_lext_over_a_point(self):
        base = standard_shape("discrete", 1)
        closure = phi_closure(base, [weight_class("lext")], 3, Cutoffs(hom_cap=16))
        sizes = sorted(e.presheaf.size for e in closure.elements)
        assert sizes == list(range(9))
        assert closure.status == "budget_exhausted"
        assert closure.rounds == 3
        by_size = {e.presheaf.size: e for e in closure.elements}
        assert by_size[1].round == 0
        assert {by_size[0].round, by_size[2].round} == {1}
        assert render_term(by_size[3].term) == "Y(x0) + Y(x0) + Y(x0)"

    def test_no_colimits_reaches_a_fixpoint(self):
        base = standard_shape("walking_arrow")
        closure = phi_closure(base, [], 3)
        assert closure.status == "fixpoint"
        assert closure.rounds < 3
        assert closure.to_json()["status"] == "fixpoint"

    def test_size_cutoff_is_not_a_fixpoint(self):
        base = standard_shape("discrete", 1)
        closure = phi_closure(base, [weight_class("lext")], 3, max_element_size=1)
        assert closure.status == "budget_exhausted"
        assert closure.rounds == 2
        assert sorted(e.presheaf.size for e in closure.elements) == [0, 1]
        assert closure.oversized > 0
        assert closure.to_json()["cuts"]["oversized"] == closure.oversized

    def test_hom_cap_is_not_a_fixpoint(self):
        base = standard_shape("parallel_pair")
        closure = phi_closure(base, [], 2, Cutoffs(hom_cap=1))
        assert closure.status == "budget_exhausted"
        assert closure.truncated > 0

    def test_terms_rebuild_their_presheaves(self):
        base = standard_shape("discrete", 1)
        classes = [weight_class("lext")]
        closure = phi_closure(base, classes, 2, Cutoffs(hom_cap=16))
        for element in closure.elements:
            term = Term.from_json(element.term.to_json())
            assert term == element.term
            rebuilt = evaluate_term(base, term, classes)
            assert iso_test(rebuilt, element.presheaf) is not None

    def test_unknown_term(self):
        with pytest.raises(IllFormed):
            evaluate_term(standard_shape("discrete", 1), Term("lift"))

    def test_render(self):
        y = Term("yoneda", params=(("object", "A"),))
        pair = Term("product", (y, Term("terminal")))
        assert render_term(pair) == "Y(A) × 1"
        params = (("cls", "lext"), ("maps", ()), ("weight", "coproduct"))
        total = Term("colimit", (pair, y), params)
        assert render_term(total) == "(Y(A) × 1) + Y(A)"


@pytest.mark.unittest
class TestSaturation:
    def test_three_points_are_reached(self):
        base = standard_shape("discrete", 1)
        three = Presheaf.build(base, {"x0": (0, 1, 2)})
        result = in_saturation(three, [weight_class("lext")], 2, Cutoffs(hom_cap=16))
        assert result.status == "yes"
        assert result.to_json()["rendered"]

    def test_not_within_budget(self):
        base = standard_shape("walking_arrow")
        presheaf = Presheaf.build(base, {"A": (0, 1), "B": (0,)}, {"f": {0: 0}})
        result = in_saturation(presheaf, [weight_class("reg")], 0)
        assert result.status == "no_within_budget"
        assert result.to_json() == {"status": "no_within_budget"}

    def test_representables_are_members(self):
        base = standard_shape("walking_arrow")
        carrier = PresheafCarrier(base)
        result = in_saturation(carrier.yoneda("B"), [], 0)
        assert result.status == "yes"
        assert result.term.op == "yoneda"
