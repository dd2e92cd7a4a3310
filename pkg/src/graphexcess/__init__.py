"""Exact and asymptotic enumeration of connected labeled graphs and
multigraphs by number of vertices n and excess k = edges - vertices.

The package provides

* exact truncated power series over arbitrary-precision rationals and the
  classic tree/unicycle series (``series``),
* the algebra of polynomials in T(z) with poles at T = 1 and the Wright
  polynomial tables MK_k, K_k, MK*_k, K*_k (``trational``, ``wright``),
* patchwork generating functions for the loop/double-edge
  inclusion-exclusion (``patchworks``),
* minimum-degree-2 cores and positive-excess families (``posexcess``),
* exact connected counts by three independent routes (``counts``),
* exhaustive small-instance oracles (``bruteforce``),
* saddle-point asymptotics at linear excess and fixed-excess expansions
  (``asympt``),
* a command-line interface (``graphexcess``; see ``cli``).
"""

from .counts import (
    CountRecord,
    cmg_exact,
    cmg_recurrence_oracle,
    csg_exact,
    csg_recurrence_oracle,
    projection_factor_check,
)
from .errors import (
    BudgetExceeded,
    ConstantTermViolation,
    ConvergenceFailure,
    GraphExcessError,
    HalfPoleResidue,
    InsufficientGrid,
    InvalidExcess,
    NonIntegralCount,
    NonPositiveRatio,
    NonRationalLeadingPower,
)
from .asympt import (
    SaddlePoint,
    cmg_dominant_log,
    csg_dominant_log,
    estimate_c1,
    fixed_excess_asympt,
    solve_saddle,
    sqdk,
    truncation_report,
)
from .patchworks import PatchworkPoly, TrivariateSlice, patchwork_excess_poly, patchwork_gf
from .posexcess import (
    core_coeff,
    mcore_coeff,
    mgpos_count,
    mgpos_series,
    sgpos_count,
    sgpos_series,
)
from .series import ExactSeries, graphs_gf_slice, tree_series, unicycle_series
from .trational import TRational, XSeries, kernel_base, mgpos_tform, txs_pow
from .wright import WrightTables, sgpos_tform, star_value_at_one, wright_polys

__version__ = "0.1.0"
