import pytest

from lexkit.carrier import AuditedCarrier, FinMap, FinPoset, FinSet, FinSetCarrier
from lexkit.carrier.finposet import FinPosetCarrier
from lexkit.carrier.model import Coequalizer, Product
from lexkit.carrier.universal import (
    verify_coequalizer,
    verify_product,
    verify_terminal,
)
from lexkit.exception import UniversalPropertyViolation

THREE = FinSet(("a", "b", "c"))
TWO = FinSet(("u", "v"))
F = FinMap(THREE, TWO, (("a", "u"), ("b", "u"), ("c", "v")))


@pytest.fixture
def audited() -> AuditedCarrier:
    return AuditedCarrier(FinSetCarrier(), test_size=2)


@pytest.mark.unittest
class TestAuditedCarrier:
    def test_delegates_identity(self, audited):
        assert audited.name == "finset"
        assert audited.is_topos
        assert len(audited.tests) == 3
        assert audited.identity(TWO) == FinSetCarrier().identity(TWO)

    def test_constructions_are_audited(self, audited):
        audited.terminal()
        audited.initial()
        audited.product([THREE, TWO])
        kernel = audited.pullback(F, F)
        audited.coequalizer(kernel.p1, kernel.p2)
        audited.coproduct([TWO, TWO])
        assert audited.audits == 6

    def test_pushout_audits_its_parts(self, audited):
        m = FinMap(TWO, THREE, (("u", "a"), ("v", "b")))
        f = FinMap(TWO, FinSet(("x",)), (("u", "x"), ("v", "x")))
        pushout = audited.pushout(m, f)
        assert len(pushout.apex) == 2
        assert audited.audits == 3

    def test_derived_checks_run_through_the_audit(self, audited):
        assert audited.is_regular_epi(F)
        assert audited.audits >= 2

    def test_collapsed_poset_quotient_is_still_a_coequalizer(self):
        chain = FinPoset((0, 1, 2), ((0, 1), (1, 2)))
        point = FinPoset(("p",))
        audited = AuditedCarrier(FinPosetCarrier(), test_size=2)
        coequalizer = audited.coequalizer(
            FinMap(point, chain, (("p", 0),)), FinMap(point, chain, (("p", 2),))
        )
        assert coequalizer.collapsed
        assert audited.audits == 1


@pytest.mark.unittest
class TestVerifiers:
    def test_too_many_maps_into_a_terminal(self, finset):
        with pytest.raises(UniversalPropertyViolation, match="terminal"):
            verify_terminal(finset, TWO, finset.objects(1))

    def test_product_with_a_redundant_element(self, finset):
        apex = FinSet((0, 1, 2))
        fake = Product(apex, (FinMap(apex, TWO, ((0, "u"), (1, "v"), (2, "v"))),))
        with pytest.raises(UniversalPropertyViolation, match="same cone"):
            verify_product(finset, fake, [TWO], finset.objects(1))

    def test_product_missing_an_element(self, finset):
        apex = FinSet((0,))
        fake = Product(apex, (FinMap(apex, TWO, ((0, "u"),)),))
        with pytest.raises(UniversalPropertyViolation, match="no mediating"):
            verify_product(finset, fake, [TWO], finset.objects(1))

    def test_quotient_must_coequalize(self, finset):
        kernel = finset.kernel_pair(F)
        fake = Coequalizer(THREE, finset.identity(THREE))
        with pytest.raises(UniversalPropertyViolation) as e:
            verify_coequalizer(finset, fake, kernel.p1, kernel.p2, finset.objects(1))
        assert e.value.construction == "coequalizer"
