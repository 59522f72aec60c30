"""Exact clique numbers of Paley graphs and checks of the character-sum bounds."""

from .bounds import BoundReport, bound_report, classify_prime, improvement_fraction, poly_zero_check, theorem_bound
from .clique import CliqueResult, is_clique, is_maximal, max_clique, max_clique_naive
from .ffield import CharacterTable, FieldSpec, build_character, build_field, field_for_order
from .paley import PaleyGraph, build_paley, verify_self_complementary, verify_srg
from .phi import (
    DSet,
    PhiProfile,
    compute_phi,
    construct_dset,
    find_best_t,
    sbound,
    third_moment,
    verify_lemma_count,
    verify_moments,
)

__version__ = "0.1.0"
