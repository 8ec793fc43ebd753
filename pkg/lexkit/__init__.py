from . import exception
from .__version__ import VERSION
from .carrier import (
    AuditedCarrier,
    Diagram,
    FinPosetCarrier,
    FinSetCarrier,
    PresheafCarrier,
    carrier_for,
)
from .completions import famf_build, in_saturation, phi_closure, weight_class
from .config import Cutoffs
from .document import load_document, parse_document
from .exactness import Status, Verdict, check
from .fincat import FinCategory, parse_category, standard_shape
from .postulate import CoconePresentation, is_postulated, presentation_of

version = VERSION

__all__ = [
    "AuditedCarrier",
    "CoconePresentation",
    "Cutoffs",
    "Diagram",
    "FinCategory",
    "FinPosetCarrier",
    "FinSetCarrier",
    "PresheafCarrier",
    "Status",
    "Verdict",
    "carrier_for",
    "check",
    "exception",
    "famf_build",
    "in_saturation",
    "is_postulated",
    "load_document",
    "parse_category",
    "parse_document",
    "phi_closure",
    "presentation_of",
    "standard_shape",
    "version",
    "weight_class",
]
