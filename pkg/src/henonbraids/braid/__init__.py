"""Braid words, Garside normal form, a Dynnikov-coordinate oracle and pair verification."""
from .words import (
    BraidWord,
    crossing_pairs,
    exponent_sum,
    induced_permutation,
    inversions,
    is_direct,
    is_positive,
    permutation_word,
    unimodal_braid,
)
from .garside import LeftNormalForm, braid_equal, normal_form
from .dynnikov import DynnikovState, dynnikov_equal
from .verify import VerificationError, VerificationReport, conjugator, verify_pair

__all__ = [
    "BraidWord",
    "DynnikovState",
    "LeftNormalForm",
    "VerificationError",
    "VerificationReport",
    "braid_equal",
    "conjugator",
    "crossing_pairs",
    "dynnikov_equal",
    "exponent_sum",
    "induced_permutation",
    "inversions",
    "is_direct",
    "is_positive",
    "normal_form",
    "permutation_word",
    "unimodal_braid",
    "verify_pair",
]
