import pytest

from lexkit.carrier import FinPosetCarrier, FinSetCarrier, PresheafCarrier
from lexkit.document import load_document, parse_document
from lexkit.exception import IllFormed, ParseError

SAMPLE = """
# an arrow, a presheaf on it and a diagram in each carrier
category C { objects A, B; arrows f:A->B; }
presheaf P on C { A: {a0, a1}; B: {b0}; f: b0 -> a1; }
presheaf Q on C { A: {c0}; B: {d0}; f: {d0 -> c0}; }
diagram D on walking_arrow in finset {
    A = {x, y, z};
    B = {u, v};
    f = {x -> u, y -> u, z -> v};
}
diagram E on walking_arrow in finposet {
    A = {p, q; p < q}; B = {r}; f = {p -> r, q -> r};
}
diagram G on C in presheaf:C {
    A = Q;
    B = P;
    f = {A: {c0 -> a1}, B: {d0 -> b0}};
}
cocone K on C { apex B; leg a = f; leg b = id_B; rel r = id_A -> a, f -> b; }
"""


@pytest.mark.unittest
class TestParseDocument:
    def test_blocks_are_collected(self):
        document = parse_document(SAMPLE)
        assert list(document.categories) == ["C"]
        assert set(document.presheaves) == {"P", "Q"}
        assert set(document.diagrams) == {"D", "E", "G"}
        assert list(document.cocones) == ["K"]

    def test_presheaf_actions(self):
        presheaf = parse_document(SAMPLE).presheaves["P"]
        assert presheaf.at("A").elements == ("a0", "a1")
        assert presheaf.act("f", "b0") == "a1"

    def test_diagram_carriers(self):
        document = parse_document(SAMPLE)
        assert isinstance(document.diagrams["D"].carrier, FinSetCarrier)
        assert isinstance(document.diagrams["E"].carrier, FinPosetCarrier)
        assert isinstance(document.diagrams["G"].carrier, PresheafCarrier)
        poset = document.diagrams["E"].diagram.at("A")
        assert poset.order == (("p", "q"),)
        f = document.diagrams["D"].diagram.map("f")
        assert f("z") == "v"

    def test_cocone(self):
        cocone = parse_document(SAMPLE).cocones["K"]
        assert cocone.apex == "B"
        assert cocone.indices == ("a", "b")
        assert cocone.relation("r") == ("r", "id_A", "a", "f", "b")

    def test_only(self):
        document = parse_document(SAMPLE)
        assert document.only("cocones").apex == "B"
        assert document.only("diagrams", "D").diagram.shape.describe() == (
            "walking_arrow"
        )
        with pytest.raises(IllFormed, match="name the one"):
            document.only("diagrams")
        with pytest.raises(IllFormed, match="no diagram"):
            document.only("diagrams", "X")

    def test_standard_shapes_with_arguments(self):
        document = parse_document(
            "diagram D on discrete(2) in finset { x0 = {a}; x1 = {b, c}; }"
        )
        assert document.only("diagrams").diagram.shape.objects == ("x0", "x1")

    def test_load_from_a_file(self, tmp_path):
        path = tmp_path / "sample.lex"
        path.write_text(SAMPLE, encoding="utf-8")
        assert set(load_document(path).diagrams) == {"D", "E", "G"}


@pytest.mark.unittest
class TestDocumentErrors:
    @pytest.mark.parametrize(
        "text",
        [
            "widget W { }",
            "presheaf P on walking_arrow { C: {x}; }",
            "diagram D on walking_arrow in finset { f = {x -> u}; }",
            "diagram D on walking_arrow in finset { A = {x; x < x}; }",
            "cocone K on walking_arrow { apex B; bend f; }",
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_document(text)

    @pytest.mark.parametrize(
        "text",
        [
            "cocone K on walking_arrow { leg a = f; }",
            "cocone K on walking_arrow { apex B; leg a = id_A; }",
            "diagram D on walking_arrow in finset { A = {x}; B = {}; f = {}; }",
            "diagram D on walking_arrow in hilbert { A = {x}; }",
        ],
    )
    def test_ill_formed_blocks(self, text):
        with pytest.raises(IllFormed):
            parse_document(text)

    def test_presheaf_on_another_base(self):
        text = (
            "presheaf P on walking_arrow { A: {a}; B: {b}; f: b -> a; }"
            "diagram D on discrete(1) in presheaf:span { x0 = P; }"
        )
        with pytest.raises(IllFormed, match="another base"):
            parse_document(text)
