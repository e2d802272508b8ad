"""Gödel numbering, finite-model definability checks and a small field algebra
for the abelian Higgs mechanism."""

from .codec import (
    CodeClass,
    CodeKind,
    InvalidCode,
    classify,
    decode,
    encode_derivation,
    encode_formula,
    encode_symbol,
)
from .fields import NormalForm, d_mu, dagger, normalize, numeric_eval, parse_expr, print_expr
from .gnumber import GoedelNumber
from .higgs import (
    DerivationRecord,
    Verdict,
    has_mass_term,
    verify_chain,
    verify_higgs_chain,
    verify_step,
)
from .kernel import (
    DefinabilityReport,
    FactBase,
    Interpretation,
    ModelVerdict,
    build_breaking_formula,
    build_gauge_formula,
    check_massiveness_definable,
    check_massiveness_indefinable,
    check_nonequivalence,
    evaluate,
    goedel_sentence_demo,
    instantiate_breaking,
    instantiate_gauge,
    tarski_sentence_demo,
)
from .primes import factor, nth_prime
from .syntax import (
    Derivation,
    Formula,
    Numeral,
    SymbolEntry,
    SymbolTable,
    parse_formula,
    print_formula,
    read_derivation,
    register_symbol,
    substitute,
)

__all__ = [
    "NormalForm",
    "d_mu",
    "dagger",
    "normalize",
    "numeric_eval",
    "parse_expr",
    "print_expr",
    "GoedelNumber",
    "factor",
    "nth_prime",
    "CodeClass",
    "CodeKind",
    "InvalidCode",
    "classify",
    "decode",
    "encode_derivation",
    "encode_formula",
    "encode_symbol",
    "DerivationRecord",
    "Verdict",
    "has_mass_term",
    "verify_chain",
    "verify_higgs_chain",
    "verify_step",
    "DefinabilityReport",
    "FactBase",
    "Interpretation",
    "ModelVerdict",
    "build_breaking_formula",
    "build_gauge_formula",
    "check_massiveness_definable",
    "check_massiveness_indefinable",
    "check_nonequivalence",
    "evaluate",
    "goedel_sentence_demo",
    "instantiate_breaking",
    "instantiate_gauge",
    "tarski_sentence_demo",
    "Derivation",
    "Formula",
    "Numeral",
    "SymbolEntry",
    "SymbolTable",
    "parse_formula",
    "print_formula",
    "read_derivation",
    "register_symbol",
    "substitute",
]
