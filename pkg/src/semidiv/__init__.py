"""Exact divisorial invariants of normal affine semigroup rings."""
__version__ = "0.1.0"

from .conic import (canonical_dual_bounds, conic_classes, face_ideal_bounds,
                    frobenius_decomposition, is_conic)
from .depth import (cm_classes, cohen_macaulay_test, depth_bounds, hilbert_samuel_multiplicity,
                    progression_analysis, simplicial_check)
from .divisorial import (canonical_class, class_group, class_lift, class_of_bounds,
                         minimal_generators, torsion_order)
from .errors import (CapExceededError, HypothesisError, InputError, SemidivError,
                     StabilizationError)
from .lattice import (hermite_normal_form, lattice_solve, quotient_presentation,
                      smith_normal_form)
from .polyhedral import (RationalPolyhedron, dualize_cone, face_lattice, polyhedron_vertices,
                         rational_lp, strict_feasibility)
from .semigroup import (FormSystem, coset_divisoriality_check, from_equations,
                        from_inequalities, normalize, purity_check)
from .xiconvex import (eff_bounds, enumerate_small_mu, intersect_modules, xi_iso_test,
                       xi_minimal_generators)

__all__ = [
    "CapExceededError",
    "FormSystem",
    "HypothesisError",
    "InputError",
    "RationalPolyhedron",
    "SemidivError",
    "StabilizationError",
    "canonical_class",
    "canonical_dual_bounds",
    "class_group",
    "class_lift",
    "class_of_bounds",
    "cm_classes",
    "cohen_macaulay_test",
    "conic_classes",
    "coset_divisoriality_check",
    "depth_bounds",
    "dualize_cone",
    "eff_bounds",
    "enumerate_small_mu",
    "face_ideal_bounds",
    "face_lattice",
    "frobenius_decomposition",
    "from_equations",
    "from_inequalities",
    "hermite_normal_form",
    "hilbert_samuel_multiplicity",
    "intersect_modules",
    "is_conic",
    "lattice_solve",
    "minimal_generators",
    "normalize",
    "polyhedron_vertices",
    "progression_analysis",
    "purity_check",
    "quotient_presentation",
    "rational_lp",
    "simplicial_check",
    "smith_normal_form",
    "strict_feasibility",
    "torsion_order",
    "xi_iso_test",
    "xi_minimal_generators",
]
