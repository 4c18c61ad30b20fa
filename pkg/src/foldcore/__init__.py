"""foldcore: fold planar difference systems into scalar core equations plus
passive reconstruction equations, synthesize systems by unfolding prescribed
cores, and analyze the resulting orbits for cycles, bounded windows and
operational chaos."""

from ._kernels import BACKEND
from .errors import (
    DegenerateOrbit,
    FoldcoreError,
    InvalidParam,
    Overflow,
    Singular,
)
from .seqcoef import (
    CoeffSeq,
    Constant,
    ConvergentToPeriodic,
    Explicit,
    Periodic,
    abs_bound,
    coeff_from_obj,
    coeff_to_obj,
    eventual_structure,
    value_at,
)
from .mapexpr import (
    MapExpr,
    affine_map,
    expr_from_obj,
    expr_to_obj,
    linear_fractional_map,
    ratio_map,
    render,
)
from .folding import (
    ConsistencyReport,
    Folding,
    ScalarCore,
    SemiInversion,
    SystemSpec,
    check_fold_consistency,
    fold,
    fold_semilinear,
    reconstruct_orbit,
    semi_invert_rational,
    semi_invert_separable,
    unfold_affine,
    unfold_general,
    unfold_order1,
    unfold_skip,
)
from .rational import (
    CatalogId,
    CatalogSystem,
    QuadraticCoreParams,
    RationalParams,
    core_rh,
    in_window,
    logistic_conjugate,
    logistic_step,
    make_system,
    mu_max,
    passive_rh,
    quad_window,
    quadratic_core,
    quadratic_core_step,
    step_catalog,
    step_rh,
    y_ratio_bound,
)
from .dynamics import (
    Behavior,
    ClassifyReport,
    CycleReport,
    Orbit,
    PairStats,
    SweepRow,
    bifurcation_sweep,
    classify_rhsc,
    detect_cycle,
    iterate_core,
    iterate_system,
    lcm_period,
    lyapunov_core,
    lyapunov_core_generic,
    sensitive_pair_stat,
)

__version__ = "0.1.0"
