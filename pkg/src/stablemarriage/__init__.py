"""Stable marriage procedures, gender neutrality and manipulation analysis."""
from .core import (
    MEN,
    WOMEN,
    BlockingPair,
    BoundExceeded,
    Matching,
    Profile,
    ProfileError,
    all_stable_matchings,
    blocking_pairs,
    format_profile,
    is_stable,
    parse_profile,
    swap_genders,
)
from .gale_shapley import GSOutcome, female_optimal, gale_shapley, male_optimal
from .gender_neutral import (
    Signature,
    gender_signature,
    gn_rule,
    gn_wrap,
    signature_tiebreak,
    simple_signature,
)
from .procedures import get_procedure, lexmin_regret, score_procedure, sum_score

__version__ = "0.1.0"
