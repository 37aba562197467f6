"""Exact counting of unit-sum tuples of bounded-height fractions,
stochastic matrix counts, and exponential-sum experiments."""

from .arith import (
    PrimeWindow,
    SieveTable,
    build_sieve,
    euler_phi,
    gcd,
    hooley_delta,
    mobius,
    mod_inverse,
    omega,
    primes_in_window,
    tau,
)
from .counting import (
    CoefficientVector,
    IntegerBox,
    check_bound_regression,
    count_doubly_brute,
    count_L,
    count_L_brute,
    count_L_fast,
    count_L_naive,
    count_N_brute,
    count_N_fast,
    count_S,
    doubly_lower_construction,
    lower_bound_construction,
)
from .errors import CapacityError, DomainError, ResourceError, UsageError
from .expsum import (
    ColumnDomain,
    MomentStats,
    balanced_residue,
    congruence_count,
    moment_over_primes,
    orthogonality_check,
    proof_statistics,
    ratio_sum,
)
from .lcm_filter import count_J, enumerate_admissible, is_admissible, lcm_of_squares
from .rationals import (
    Accumulator,
    Fraction,
    accumulate,
    farey_unit_count,
    height,
    in_farey,
    reduce,
)
from .records import CountRecord
from .scaling import GrowthFit, fit_loglog, scaling_experiment

__version__ = "0.1.0"
