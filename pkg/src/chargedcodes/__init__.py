"""Substitution languages, bifix codes and charged decodings."""

__version__ = "0.1.0"

from .errors import AnalysisError, InvalidInput, NotApplicable, NotInStar, ResourceLimit
from .words import Alphabet
from .substitution import Substitution, factor_language
from .language import FactorSet
from .code import FiniteCode, PowerCode, parse_code_spec
from .charging import charged_verdict, procyclic_fingerprint, compare_fingerprints
from .decoding import decode, higher_power, theorem_consistency_report

__all__ = [
    "AnalysisError", "InvalidInput", "NotApplicable", "NotInStar", "ResourceLimit",
    "Alphabet", "Substitution", "factor_language", "FactorSet",
    "FiniteCode", "PowerCode", "parse_code_spec",
    "charged_verdict", "procyclic_fingerprint", "compare_fingerprints",
    "decode", "higher_power", "theorem_consistency_report",
]
