import pytest

from lexkit.carrier import Diagram, FinMap, FinSet, enumerate_diagrams, transformations
from lexkit.carrier.diagram import decode_diagram, encode_diagram
from lexkit.exception import IllFormed
from lexkit.fincat import FinFunctor, parse_category, standard_shape

THREE = FinSet(("a", "b", "c"))
TWO = FinSet(("u", "v"))
ONE = FinSet(("x",))
F = FinMap(THREE, TWO, (("a", "u"), ("b", "u"), ("c", "v")))
M = FinMap(TWO, THREE, (("u", "a"), ("v", "b")))
BANG = FinMap(TWO, ONE, (("u", "x"), ("v", "x")))


def arrow(carrier):
    return Diagram.build(
        carrier, standard_shape("walking_arrow"), {"A": THREE, "B": TWO}, {"f": F}
    )


def span(carrier):
    return Diagram.build(
        carrier,
        standard_shape("span"),
        {"C": TWO, "A": THREE, "B": ONE},
        {"m": M, "f": BANG},
    )


@pytest.mark.unittest
class TestDiagramBuild:
    def test_identities_are_filled_in(self, finset):
        diagram = arrow(finset)
        assert diagram.map("id_A") == finset.identity(THREE)
        assert diagram.map("f") == F

    def test_composites_follow_paths(self, finset):
        shape = parse_category("objects X, Y, Z; arrows p:X->Y, q:Y->Z;")
        diagram = Diagram.build(
            finset, shape, {"X": TWO, "Y": THREE, "Z": TWO}, {"p": M, "q": F}
        )
        composite = next(a.name for a in shape.arrows if len(a.path) == 2)
        assert diagram.map(composite) == finset.compose(F, M)

    def test_missing_pieces(self, finset):
        shape = standard_shape("walking_arrow")
        with pytest.raises(IllFormed, match="no object"):
            Diagram.build(finset, shape, {"A": THREE}, {"f": F})
        with pytest.raises(IllFormed, match="no morphism"):
            Diagram.build(finset, shape, {"A": THREE, "B": TWO}, {})
        with pytest.raises(IllFormed, match="wrong source or target"):
            Diagram.build(finset, shape, {"A": TWO, "B": TWO}, {"f": F})

    def test_equations_are_checked(self, finset):
        shape = standard_shape("reflexive_pair")
        d = FinMap(THREE, TWO, (("a", "u"), ("b", "v"), ("c", "v")))
        with pytest.raises(IllFormed, match="does not respect"):
            Diagram.build(
                finset, shape, {"X": THREE, "Y": TWO}, {"d": d, "c": F, "r": M}
            )

    def test_restrict_along_a_functor(self, finset):
        functor = FinFunctor.from_generators(
            standard_shape("walking_arrow"),
            standard_shape("span"),
            {"A": "C", "B": "A"},
            {"f": "m"},
        )
        restricted = span(finset).restrict(functor)
        assert restricted.at("A") == TWO
        assert restricted.map("f") == M

    def test_restrict_needs_a_matching_codomain(self, finset):
        functor = FinFunctor.identity(standard_shape("span"))
        with pytest.raises(IllFormed, match="does not land"):
            arrow(finset).restrict(functor)

    def test_encoding(self, finset):
        diagram = arrow(finset)
        encoded = encode_diagram(finset, diagram)
        assert set(encoded["generators"]) == {"f"}
        assert decode_diagram(finset, diagram.shape, encoded) == diagram


@pytest.mark.unittest
class TestEnumeration:
    def test_arrows_between_small_sets(self, finset):
        shape = standard_shape("walking_arrow")
        assert len(list(enumerate_diagrams(finset, shape, finset.objects(1)))) == 3

    def test_mono_marked_generators_are_skipped(self, finset):
        pool = finset.objects(2)
        marked = enumerate_diagrams(finset, standard_shape("mono_span"), pool)
        plain = enumerate_diagrams(finset, standard_shape("span"), pool)
        assert len(list(marked)) == 28
        assert len(list(plain)) == 43

    def test_transformations(self, finset):
        diagram = arrow(finset)
        found = list(transformations(finset, diagram, diagram))
        assert len(found) == 15
        identity = {"A": finset.identity(THREE), "B": finset.identity(TWO)}
        assert identity in found

    def test_transformations_need_one_shape(self, finset):
        with pytest.raises(IllFormed, match="same shape"):
            list(transformations(finset, arrow(finset), span(finset)))


@pytest.mark.unittest
class TestLimitsOfDiagrams:
    def test_limit_of_a_cospan_is_the_pullback(self, finset):
        diagram = Diagram.build(
            finset,
            standard_shape("cospan"),
            {"A": THREE, "B": TWO, "C": TWO},
            {"f": F, "g": finset.identity(TWO)},
        )
        limit = finset.limit(diagram)
        assert len(limit.apex) == len(finset.pullback(F, finset.identity(TWO)).apex)
        assert finset.compose(F, limit.leg("A")) == limit.leg("B")

    def test_colimit_of_a_span_is_the_pushout(self, finset):
        diagram = span(finset)
        colimit = finset.colimit(diagram)
        assert len(colimit.apex) == 2
        assert not colimit.collapsed
        point = finset.terminal()
        maps = {o: finset.to_terminal(diagram.at(o)) for o in ("C", "A", "B")}
        mediator = finset.colimit_mediator(colimit, maps, point)
        for o, f in maps.items():
            assert finset.compose(mediator, colimit.leg(o)) == f

    def test_limit_mediator(self, finset):
        diagram = arrow(finset)
        limit = finset.limit(diagram)
        assert len(limit.apex) == 3
        maps = {"A": finset.identity(THREE), "B": F}
        mediator = finset.limit_mediator(limit, maps, THREE)
        assert finset.compose(limit.leg("B"), mediator) == F
