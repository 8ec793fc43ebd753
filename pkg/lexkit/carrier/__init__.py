from ..exception import IllFormed
from ..fincat import FinCategory, standard_shape
from .base import Carrier
from .diagram import Diagram, enumerate_diagrams, transformations
from .finposet import FinPosetCarrier
from .finset import FinSetCarrier
from .model import FinMap, FinPoset, FinSet, NatTrans, Presheaf
from .presheaf import (
    PresheafCarrier,
    canonical_signature,
    iso_test,
    yoneda,
    yoneda_map,
)
from .universal import AuditedCarrier

PRESHEAF_PREFIX = "presheaf:"

__all__ = [
    "AuditedCarrier",
    "Carrier",
    "PRESHEAF_PREFIX",
    "Diagram",
    "FinMap",
    "FinPoset",
    "FinPosetCarrier",
    "FinSet",
    "FinSetCarrier",
    "NatTrans",
    "Presheaf",
    "PresheafCarrier",
    "canonical_signature",
    "carrier_for",
    "enumerate_diagrams",
    "iso_test",
    "transformations",
    "yoneda",
    "yoneda_map",
]


def carrier_for(
    selector: str, base: FinCategory | None = None, logger=None
) -> Carrier:
    """
    Resolve ``finset``, ``finposet`` or ``presheaf:<shape>``.

    ``base`` overrides the shape named after ``presheaf:`` (used when the
    base category comes from a file).
    """
    if selector == "finset":
        return FinSetCarrier(logger)
    if selector == "finposet":
        return FinPosetCarrier(logger=logger)
    if selector == "finposet-strict":
        return FinPosetCarrier(strict=True, logger=logger)
    if selector.startswith(PRESHEAF_PREFIX):
        if base is None:
            base = standard_shape(selector[len(PRESHEAF_PREFIX) :])
        return PresheafCarrier(base, logger)
    raise IllFormed(f"unknown carrier '{selector}'")
