"""Exact cohomological checks for semistable degenerations with simple normal crossings.

Everything is computed over Q(i) with gmpy2 rationals; no floating point is
used anywhere in a verdict.
"""

__version__ = "0.1.0"

from .errors import SncHodgeError  # noqa: E402
from .geometries import scenario  # noqa: E402
from .linalg import Form, Mat, Subspace, signature  # noqa: E402
from .snc import (  # noqa: E402
    CohomologyPackage,
    DoubleLocus,
    Scenario,
    SncVariety,
    glue_line_bundle,
    gysin,
    rho,
    validate,
)
from .weight import betti_numbers, condition_star, graded_pieces, n1_map  # noqa: E402

__all__ = [
    "__version__",
    "SncHodgeError",
    "Form",
    "Mat",
    "Subspace",
    "signature",
    "CohomologyPackage",
    "DoubleLocus",
    "Scenario",
    "SncVariety",
    "glue_line_bundle",
    "gysin",
    "rho",
    "validate",
    "betti_numbers",
    "condition_star",
    "graded_pieces",
    "n1_map",
    "scenario",
]
