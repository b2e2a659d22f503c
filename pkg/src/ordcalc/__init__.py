"""Exact arithmetic for ordinals, transfinite-sum normal forms, and
Euclidean sizes of ordinal point sets, with finite partial-sum oracles."""

from .errors import BudgetExceeded, OrdcalcError, ParseError, PreconditionError
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    Universe,
    compare,
    from_exponents,
    from_int,
    limit_split,
    nat_prod,
    nat_sum,
    ord_sum,
    pow2,
    shift_mul,
    split,
)
from .fincode import (
    FilterBaseSet,
    FinOrdSet,
    cofinal_chain,
    criterion_C,
    criterion_D,
    decode,
    encode,
    enumerate_universe,
    formal_member,
    formal_subset,
    hat,
    in_filter_base,
    join,
    meet,
)
from .sequence import (
    StepSequence,
    chi,
    counting,
    from_counting,
    linear_combo,
    product_partial,
    translate,
    value_at,
)
from .euclid import (
    EuclidInt,
    PartialSumExpr,
    SignWitness,
    UNIT,
    ZERO_E,
    expr_compare_sampled,
    expr_eval,
    from_step,
    partial_sum,
    psi,
    sign,
)
from .euclid import compare as euclid_compare
from .numerosity import (
    Interval,
    PointSet,
    congruence_check,
    diff_witness,
    difference,
    finmap_num,
    finset_num,
    intersect,
    num,
    partial_count,
    product,
    realize,
    union,
)
from .partition import (
    FipResult,
    HomogeneousResult,
    Partition2,
    find_zero_chain,
    fip_check,
    g_psi,
    homogeneous_search,
    product_partition,
    q_member,
)

__version__ = "0.1.0"
