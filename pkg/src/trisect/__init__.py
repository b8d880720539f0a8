"""Exact-arithmetic invariants and normal forms for relative trisection diagrams."""

from ._kernel import BACKEND as kernel_backend
from .diagram import (Diagram, TrisectionParams, ValidationReport,
                      parse_diagram, serialize_diagram, synthesize_diagram,
                      trivial_disk_diagram, validate)
from .intlin import (IntMatrix, Lattice, SmithDecomposition, kernel_basis,
                     lattice_intersection, lattice_quotient, saturate,
                     smith_normal_form, unimodular_inverse)
from .invariants import (FormInvariants, HomologyResult, build_chain_complex,
                         form_invariants, homology, linking_matrix)
from .monodromy import (MonodromyResult, QuotientBases, arc_step,
                        monodromy_action, quotient_bases)
from .standardize import (ComparisonReport, StandardizationResult,
                          TransformationRecord, is_homologically_torelli,
                          orthogonal_split, standardize, torelli_compare)
from .surface import (ArcClass, CurveClass, StandardConfiguration,
                      SurfaceModel, build_surface_model, pairing_matrix,
                      standard_configuration, standard_sutured_pattern)

__version__ = "0.1.0"

__all__ = [
    "ArcClass", "ComparisonReport", "CurveClass", "Diagram", "FormInvariants",
    "HomologyResult", "IntMatrix", "Lattice", "MonodromyResult",
    "QuotientBases", "SmithDecomposition", "StandardConfiguration",
    "StandardizationResult", "TransformationRecord", "TrisectionParams",
    "ValidationReport", "arc_step", "build_chain_complex",
    "build_surface_model", "form_invariants", "homology",
    "is_homologically_torelli", "kernel_backend", "kernel_basis",
    "lattice_intersection", "lattice_quotient", "linking_matrix",
    "monodromy_action", "orthogonal_split", "pairing_matrix", "parse_diagram",
    "quotient_bases", "saturate", "serialize_diagram", "smith_normal_form",
    "standard_configuration", "standard_sutured_pattern", "standardize",
    "synthesize_diagram", "torelli_compare", "trivial_disk_diagram",
    "unimodular_inverse", "validate", "__version__",
]
