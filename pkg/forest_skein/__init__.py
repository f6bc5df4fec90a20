"""
forest_skein
------------
Computer algebra for the forest-skein groups L_n ⊂ G_n ⊂ M_n built from the
category F_n = FS<a, b | τ_n(a) = ρ_n(b)>, n >= 3.
"""

from forest_skein.errors import DomainError, FsgError, ParseError, SkeinError, TransducerError
from forest_skein.groups import GroupElement, equals, inverse, is_identity, multiply
from forest_skein.skein import SkeinContext

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FsgError",
    "GroupElement",
    "ParseError",
    "SkeinContext",
    "SkeinError",
    "TransducerError",
    "equals",
    "inverse",
    "is_identity",
    "multiply",
]
