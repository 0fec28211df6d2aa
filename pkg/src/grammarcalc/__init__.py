"""Context-free grammar calculus for permutations and increasing trees."""

from .bijection import code_to_perm, perm_code, phi, phi_trace, psi
from .grammar import Grammar, builtin, check_morphism, derive_n, formal_derivative, parse_grammar
from .laurent import LaurentPoly, Monomial, evaluate, parse_poly, substitute, var
from .series import TruncatedSeries, egf

__version__ = "0.1.0"

__all__ = [
    "Grammar",
    "LaurentPoly",
    "Monomial",
    "TruncatedSeries",
    "builtin",
    "check_morphism",
    "code_to_perm",
    "derive_n",
    "egf",
    "evaluate",
    "formal_derivative",
    "parse_grammar",
    "parse_poly",
    "perm_code",
    "phi",
    "phi_trace",
    "psi",
    "substitute",
    "var",
]
