"""Hilbert point semistability of the balanced double A_(2k+1)-curve, with exact certificates."""

from .certify import (
    NONSEMISTABLE,
    SEMISTABLE,
    ClassSystem,
    StabilityCertificate,
    build_class_system,
    certify,
    constructive_basis,
    toy_class_system,
    verify_certificate,
)
from .chi import is_chi_basis, min_weight_chi_basis, nonpositive_chi_basis
from .monomials import Monomial, RhoWeights

__all__ = [
    "NONSEMISTABLE",
    "SEMISTABLE",
    "ClassSystem",
    "Monomial",
    "RhoWeights",
    "StabilityCertificate",
    "build_class_system",
    "certify",
    "constructive_basis",
    "is_chi_basis",
    "min_weight_chi_basis",
    "nonpositive_chi_basis",
    "toy_class_system",
    "verify_certificate",
]
