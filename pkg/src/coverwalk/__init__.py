"""Exact-arithmetic branched-cover combinatorics and wall-crossing transforms."""

from .errors import CapacityError, CoverwalkError, InfeasibleError, PadeError, ValidationError
from .partitions import (
    MultiplicityForm,
    Partition,
    age,
    aut_order,
    centralizer_order,
    class_size,
    normal_order,
    partitions_of,
)
from .characters import CharTable, character_table, irrep_dimension
from .hurwitz import (
    HurwitzProblem,
    branch_degree,
    hurwitz_connected,
    hurwitz_disconnected,
    simple_hurwitz,
    transitive_tuple_count,
    tuple_count,
)
from .series import (
    GaussianRational,
    I,
    ONE,
    PadeResult,
    Series,
    ZERO,
    exp_series,
    invert,
    log_series,
    pade,
    rational_power,
    sin_half_norm,
    subst_exp,
    y_to_s,
)
from .hodge import HodgeSeries, hodge_integral, hodge_series, log_sin_half_norm, verify_hodge_identities
from .wallcross import (
    CorrelatorTable,
    NormalizedSeries,
    bridge_pipelines,
    crc_continue,
    dt_normalize,
    equivalence_check,
    euler_regrade,
    genus_regrade,
    gw_normalize,
    shift_potential,
    walls,
)
from .orbifold import (
    GradedLabelSet,
    WeightedPartition,
    nakajima_degree,
    orbifold_basis,
    orbifold_degree,
    poincare_orbifold,
    quantum_coefficient,
    quantum_relabel,
    to_nakajima,
)
from .covergraph import (
    CoverGraph,
    SmoothNode,
    SourceComponent,
    TargetComponent,
    branch_divisor,
    classify_extremal,
    contract_tail,
    is_admissible,
    riemann_hurwitz_check,
    wall_spectrum,
)

__version__ = "0.1.0"
