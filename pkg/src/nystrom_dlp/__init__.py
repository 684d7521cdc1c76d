"""Nystrom method for double layer potential equations on contours with corners."""

__version__ = "0.1.0"

from .contour import Contour, Corner, curve_ellipse, curve_l1, curve_l2, derivatives_at, make_curve
from .dlp import kernel_bracket, kernel_matrix, rhs_const2, rhs_f1, rhs_f2
from .errors import (
    CornerEvaluationError,
    GeometryError,
    InvalidArgumentError,
    NumericalFailureError,
    NystromDLPError,
    PoleError,
    SingularMatrixError,
)
from .estimators import CriticalAngleSweep, NystromSolver, WedgeSigmaMin
from .localop import assemble_block_mellin, assemble_wedge, sigma_min_study, wedge_to_block_permutation
from .mellin import fredholm_scan, k_omega, mellin_transform_check, n_omega, symbol_A
from .numerics import condition_number_2, singular_values, solve
from .nystrom import (
    Discretization,
    assemble,
    condition_of,
    convergence_study,
    interpolate,
    relative_error,
    solve_dlp,
    solve_system,
)
from .quadrature import CompositeGrid, QuadratureRule, composite_integrate, gauss_legendre
from .sweep import SweepConfig, SweepReport, kappa_at, run_sweep
