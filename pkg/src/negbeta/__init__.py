"""Negative beta-shifts and the permutation patterns they allow.

For a permutation pi, the library computes the threshold base below which no
negative-base shift realizes pi as an ordinal pattern, together with the
supporting machinery: digit words under the alternating lexicographical
order, exact polynomial root isolation, certified (-beta)-expansions, shift
admissibility, minimal alphabet sizes, and the inverse construction mapping
an eventually periodic expansion of 1 back to a permutation attaining it.
"""

from .words import (
    EventuallyPeriodicWord,
    alt_lex_compare,
    canonicalize,
    parse_word,
    format_word,
    sup_of_shifts,
    word,
)
from .permutations import (
    Permutation,
    parse_permutation,
    perm,
    circular,
    landmarks,
    z_digits,
    is_collapsed,
    z_variants,
    a_sequence,
)
from .algebraic import (
    IntPolynomial,
    AlgebraicNumber,
    p_polynomial,
    char_polynomial,
    largest_root_gt1,
    b_of,
    classify_perron_pisot,
)
from .dynamics import (
    BetaValue,
    expansion_of_one,
    shift_membership,
    validate_expansion,
)
from .analysis import (
    AnalysisReport,
    analyze,
    pat_of_word,
    pat_of_orbit,
    prop1_check,
    count_b1,
    spectrum,
    extremal_report,
    min_alphabet_bruteforce,
    witness_word,
)
from .inverse import construct_pi, rho_of

__version__ = "0.1.0"
