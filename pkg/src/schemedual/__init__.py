"""Parameters and self-duality of symmetric association schemes."""
from .numerics import APPROX, EXACT, Mode, Tolerance
from .scheme import (AssociationScheme, AxiomViolation, SchemeError, SchemeParameters,
                     associate_matrix, intersection_numbers, verify_scheme)
from .spectral import SpectralData, decompose, krein_parameters

__all__ = [
    "APPROX", "EXACT", "Mode", "Tolerance",
    "AssociationScheme", "AxiomViolation", "SchemeError", "SchemeParameters",
    "associate_matrix", "intersection_numbers", "verify_scheme",
    "SpectralData", "decompose", "krein_parameters",
]
