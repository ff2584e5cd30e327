"""Square-prime numbers (p * a**2, p prime, a >= 2): sieving, counting,
additive conjecture verification, Pell-orbit gap families, and last-digit
statistics."""

from .conjectures import (
    GapRecord,
    Representation,
    find_two_sp_sum,
    gap_histogram,
    sp_between_squares,
    twin_pairs,
    verify_goldbach_range,
    verify_sp_goldbach,
    verify_squares_range,
)
from .density import (
    ZETA2_MINUS_1,
    DensityRecord,
    density_table,
    sp_asymptotic,
    sp_count,
    sp_count_via_pi,
)
from .digits import (
    DigitDistribution,
    DigitReport,
    HurwitzValue,
    digit_counts,
    digit_report,
    hurwitz_zeta2,
    last_digit_constant,
)
from .errors import DistinctPrimeError, RangeError, ResourceLimitError
from .pell import (
    GapWitness,
    PellSolution,
    find_witness,
    generate_gap_pairs,
    pell_compose,
    pell_fundamental_unit,
    witness_from_pair,
)
from .sieve import (
    SpDecomposition,
    SpTable,
    build_table,
    is_prime,
    is_sp,
    largest_square_divisor,
)

__version__ = "1.0.0"

__all__ = [
    "DistinctPrimeError",
    "RangeError",
    "ResourceLimitError",
    "SpDecomposition",
    "SpTable",
    "build_table",
    "is_prime",
    "is_sp",
    "largest_square_divisor",
    "ZETA2_MINUS_1",
    "DensityRecord",
    "density_table",
    "sp_asymptotic",
    "sp_count",
    "sp_count_via_pi",
    "GapRecord",
    "Representation",
    "find_two_sp_sum",
    "gap_histogram",
    "sp_between_squares",
    "twin_pairs",
    "verify_goldbach_range",
    "verify_sp_goldbach",
    "verify_squares_range",
    "GapWitness",
    "PellSolution",
    "find_witness",
    "generate_gap_pairs",
    "pell_compose",
    "pell_fundamental_unit",
    "witness_from_pair",
    "DigitDistribution",
    "DigitReport",
    "HurwitzValue",
    "digit_counts",
    "digit_report",
    "hurwitz_zeta2",
    "last_digit_constant",
    "__version__",
]
