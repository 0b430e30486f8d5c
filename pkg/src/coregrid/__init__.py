"""coregrid: linear-time constant-factor approximations on geometric
intersection graphs via shifted grids and per-cell coresets."""

from .baselines import greedy_ds_udg, greedy_wis_udg
from .checks import (
    is_dominating,
    is_independent_rects,
    is_independent_udg,
    is_vertex_cover,
    solution_feasible,
)
from .ds_udg import (
    DS_GAMMA,
    PdsInstance,
    check_ds_gamma,
    ds_coreset,
    ds_shifted,
    expansion_count,
    pds_constdiam,
    pds_select_k,
    pds_shifted,
)
from .errors import (
    BadRange,
    BoxTooSmall,
    BudgetExceeded,
    CapExceeded,
    CoregridError,
    EmptyInput,
    Infeasible,
    InvalidWeight,
    LambdaTooSmall,
    NonPositiveEps,
    NonPositiveGamma,
    NonPositiveSide,
    ParseError,
    SideOutOfRange,
)
from .exactsolve import (
    exact_min_pds,
    exact_min_vc_udg,
    exact_mwis_rect,
    exact_mwis_udg,
)
from .geom import (
    GridIndex,
    Grid4Index,
    PointSet,
    RectSet,
    Solution,
    WeightedPoint,
    WeightedRect,
    bounding_box,
    build_grid,
    build_grid4,
    diam_upper,
    rect_intersects,
    rect_overlap,
    udg_adjacent,
)
from .instances import (
    InstanceFile,
    SplitMix64,
    gen_clustered_points,
    gen_uniform_points,
    gen_uniform_rects,
    read_instance,
    write_instance,
)
from .vc_udg import vc_constdiam, vc_select_k, vc_shifted, vc_threshold
from .wis_rect import (
    RECT_DELTA,
    rect_coreset,
    rect_select_k,
    wis_rect_constdiam,
    wis_rect_shifted,
)
from .wis_udg import (
    WIS_GAMMA,
    ShiftPlan,
    contraction_count,
    make_shift_plan,
    wis_constdiam,
    wis_coreset,
    wis_select_k,
    wis_shifted,
)

__version__ = "0.1.0"
