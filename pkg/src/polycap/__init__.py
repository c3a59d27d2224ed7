"""Conformal capacity of polycircular condensers by boundary integral equations."""

import os as _os

# A too-old TBB makes numba warn on first parallel launch; default to OpenMP.
_os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")

from .analytic import (
    bound_lower,
    bound_upper,
    cap_annulus,
    cap_disk_segment,
    ellip_K,
    hyperbolic_perimeter,
    mu_grotzsch,
)
from .bie import SolverOptions, solve_bie
from .capacity import (
    CapacityRequest,
    CapacityResult,
    capacity,
    compute_capacity,
    convergence_sweep,
    lens_family,
    mobius_invariance_report,
)
from .domainfile import dump_condenser, load_domain
from .errors import (
    DomainError,
    GeometryDegenerate,
    InvalidGeometry,
    InvalidParameter,
    PointOnBoundary,
    PolycapError,
    SolverFailure,
    ValidationFailed,
)
from .geometry import (
    PolycircularCondenser,
    arc_from_endpoints_center,
    arc_from_three_points,
    make_circle,
    make_four_lens,
    make_lens,
    mobius_apply,
    unit_disk_condenser,
    validate,
)
from .parametrization import discretize

__version__ = "0.1.0"
