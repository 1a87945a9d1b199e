"""Mean-value census tools for unit-fraction splittings of 4/p.

The package computes exact solution counts of 4/n = 1/n1 + 1/n2 + 1/n3,
splits prime solution counts into Type I / Type II, accumulates their
mean values over primes with reference-envelope diagnostics, counts
congruence roots, and evaluates exact divisor sums over dyadic boxes
with a four-way smooth/rough case partition.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    CapacityError,
    ConfigurationError,
    DomainError,
    EsmeanError,
    InvariantViolation,
)

from .arith import (  # noqa: F401
    ArithTables,
    Factorization,
    big_omega,
    d2_over_n_partial,
    d2_partial,
    default_tables,
    divisor_count,
    euler_phi,
    factorize,
    greatest_prime_factor,
    integer_cbrt,
    is_prime,
    least_prime_factor,
    primes_up_to,
    sieve_tables,
    smooth_count,
)

from .congruence import (  # noqa: F401
    linear_root_count,
    linear_root_count_oracle,
    quad_root_count,
    quad_root_count_oracle,
    quad_root_count_prime,
)

from .solutions import (  # noqa: F401
    SolutionSet,
    SolutionTriple,
    SolutionType,
    TypeSplit,
    classify,
    enumerate_solutions,
    type_split,
    type_split_many,
)

from .bilinear import (  # noqa: F401
    BcSplit,
    BoxSpec,
    CaseLabel,
    SmallSmoothTail,
    SweepResult,
    bilinear_divisor_sum,
    case_contributions,
    classify_case,
    linear_branch_sum,
    min_exponent_exceeding_sqrt,
    omega_bound_check,
    s_p,
    small_smooth_tail,
    smooth_d2_over_n_sum,
    split_bc,
    sweep_box,
    sweep_box_dump,
)

from .meanvalue import (  # noqa: F401
    envelope_values,
    final_chain,
    mean_value_report,
    reduction_weight_sum,
    split_table,
    sum_f1,
    sum_f2,
)

from .reports import (  # noqa: F401
    REPORT_SCHEMA_VERSION,
    MeanValueReport,
    SumReport,
    WeightSumReport,
)
