"""Exact character theory of small permutation groups: character tables,
Feit numbers, p-special characters and Sylow normalizer data."""

__version__ = "0.1.0"

from .chartable import CharacterTable, ClassFunction, character_table, compute_character_table
from .charinv import character_profile, determinantal_order, feit_number, is_p_special
from .cyclotomic import Cyclo, parse_cyclo, root_of_unity
from .permgroup import FinGroup, conjugacy_classes, group_closure, parse_cycles

__all__ = [
    "__version__", "CharacterTable", "ClassFunction", "character_table", "compute_character_table",
    "character_profile", "determinantal_order", "feit_number", "is_p_special",
    "Cyclo", "parse_cyclo", "root_of_unity",
    "FinGroup", "conjugacy_classes", "group_closure", "parse_cycles",
]
