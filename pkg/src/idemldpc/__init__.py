"""Non-binary cyclic LDPC codes built from sums of cyclotomic idempotents."""

__version__ = "0.1.0"

from .construct import CodeBlueprint, IdempotentSpec, build_code, blueprint_from_poly
from .field import build_field, splitting_field
from .ring import RingPoly, parse_poly

__all__ = [
    "__version__",
    "CodeBlueprint",
    "IdempotentSpec",
    "RingPoly",
    "blueprint_from_poly",
    "build_code",
    "build_field",
    "parse_poly",
    "splitting_field",
]
