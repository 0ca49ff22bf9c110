"""Exact computations of flag and Schubert classes for oriented cohomology
theories given by formal group laws."""
from .classes import (ClassError, ClassExpression, bott_samelson, flag_class, schubert,
                      schubert_ck, schubert_embedded, specialize, to_geometric)
from .divdiff import (DividedDifferenceOperator, apply, apply_ck, apply_word, braid_report,
                      divided_difference)
from .fgl import FormalGroupLaw, make_additive, make_law, make_multiplicative, make_universal
from .ring import BetaRing, IntegerRing, RationalRing, SeriesError, TruncatedSeries
from .weyl import Permutation, SignedPermutation, parse_element, parse_word

__version__ = "0.1.0"

__all__ = [
    "BetaRing", "ClassError", "ClassExpression", "DividedDifferenceOperator", "FormalGroupLaw",
    "IntegerRing", "Permutation", "RationalRing", "SeriesError", "SignedPermutation",
    "TruncatedSeries", "apply", "apply_ck", "apply_word", "bott_samelson", "braid_report",
    "divided_difference", "flag_class", "make_additive", "make_law", "make_multiplicative",
    "make_universal", "parse_element", "parse_word", "schubert", "schubert_ck",
    "schubert_embedded", "specialize", "to_geometric",
]
