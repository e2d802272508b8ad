"""Gödel numbering of symbols, formulas and derivations.

A symbol gets its odd table code; a formula ``e1 ... en`` gets
``q1^g(e1) ... qn^g(en)``; a derivation ``u1 ... um`` gets
``q1^g(u1) ... qm^g(um)``.  Decoding runs the factorization backwards.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .gnumber import GoedelNumber
from .primes import PRIME_INDEX_CEILING, FactorLimitExceeded, factor
from .syntax import (
    DEFAULT_TABLE,
    Derivation,
    Formula,
    ParseError,
    SymbolEntry,
    SymbolTable,
    parse_tokens,
)


class InvalidCode(ValueError):
    """A number that is not the code of any symbol, formula or derivation."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class CodeKind(enum.Enum):
    SYMBOL = "SymbolCode"
    FORMULA = "FormulaCode"
    DERIVATION = "DerivationCode"
    INVALID = "Invalid"


@dataclass(frozen=True)
class CodeClass:
    kind: CodeKind
    reason: str | None = None

    @property
    def valid(self) -> bool:
        return self.kind is not CodeKind.INVALID

    def __str__(self) -> str:
        if self.reason:
            return f"{self.kind.value}({self.reason})"
        return self.kind.value


def _table(table: SymbolTable | None) -> SymbolTable:
    return table or DEFAULT_TABLE


def _pick_form(g: GoedelNumber, form: str | None) -> GoedelNumber:
    if form is None:
        return g.auto()
    if form == "exact":
        return g.to_exact()
    if form == "factored":
        return g.to_factored()
    raise ValueError(f"form must be 'exact' or 'factored', got {form!r}")


def encode_symbol(symbol: Union[SymbolEntry, str], table: SymbolTable | None = None) -> GoedelNumber:
    if isinstance(symbol, SymbolEntry):
        return GoedelNumber(exact=symbol.code)
    return GoedelNumber(exact=_table(table)[symbol].code)


def formula_codes(f: Formula, table: SymbolTable | None = None) -> list[int]:
    table = _table(table)
    codes = []
    for tok in f.tokens:
        if tok.startswith("#") and len(tok) > 1:
            codes.append(table.ensure(tok, "numeral-abbrev").code)
        else:
            codes.append(table[tok].code)
    return codes


def encode_formula(f: Formula, table: SymbolTable | None = None, form: str | None = None) -> GoedelNumber:
    """Code of ``f``: exact when it fits in 4096 bits, factored otherwise
    (or the requested ``form``)."""
    g = GoedelNumber.from_exponents(formula_codes(f, table))
    return _pick_form(g, form)


def encode_derivation(d: Derivation, table: SymbolTable | None = None, form: str = "factored") -> GoedelNumber:
    g = GoedelNumber.from_exponents(encode_formula(step, table) for step in d.steps)
    return _pick_form(g, form)


def _factor_pairs(g: GoedelNumber, ceiling: int) -> list[tuple[int, GoedelNumber]]:
    if g.factors is not None:
        return list(g.factors)
    return [(i, GoedelNumber(exact=e)) for i, e in factor(g.exact, ceiling)]


def _is_symbol_code(e: GoedelNumber, table: SymbolTable) -> bool:
    return e.exact is not None and e.exact % 2 == 1 and table.by_code(e.exact) is not None


def classify(g: Union[GoedelNumber, int], table: SymbolTable | None = None,
             ceiling: int = PRIME_INDEX_CEILING) -> CodeClass:
    """Decide whether ``g`` codes a symbol, a formula, a derivation, or nothing."""
    table = _table(table)
    g = GoedelNumber.of(g)
    if not g.is_even():
        if table.by_code(g.exact) is not None:
            return CodeClass(CodeKind.SYMBOL)
        return CodeClass(CodeKind.INVALID, "unregistered")
    try:
        pairs = _factor_pairs(g, ceiling)
    except FactorLimitExceeded:
        return CodeClass(CodeKind.INVALID, "too-long")
    for pos, (idx, _) in enumerate(pairs, start=1):
        if idx != pos:
            return CodeClass(CodeKind.INVALID, f"gap at prime index {pos}")
    exps = [e for _, e in pairs]
    odd = [not e.is_even() for e in exps]
    if all(odd):
        if all(_is_symbol_code(e, table) for e in exps):
            return CodeClass(CodeKind.FORMULA)
        return CodeClass(CodeKind.INVALID, "unregistered symbol code")
    if any(odd):
        return CodeClass(CodeKind.INVALID, "mixed-parity")
    for e in exps:
        sub = classify(e, table, ceiling)
        if sub.kind is not CodeKind.FORMULA:
            return CodeClass(CodeKind.INVALID, "exponent is not a formula code")
    return CodeClass(CodeKind.DERIVATION)


def _decode_formula(g: GoedelNumber, table: SymbolTable) -> Formula:
    names = [table.by_code(e.exact).name for e in g.to_factored().exponents]
    try:
        return parse_tokens(names, table)
    except ParseError:
        return Formula(tokens=names)


def decode(g: Union[GoedelNumber, int], table: SymbolTable | None = None
           ) -> Union[SymbolEntry, Formula, Derivation]:
    """Recover the symbol, formula or derivation coded by ``g``.

    Formula codes come back as :class:`Formula` objects; when the symbol
    string is not well formed the result has ``tree is None``.  Raises
    :class:`InvalidCode` when ``classify`` rejects the number.
    """
    table = _table(table)
    g = GoedelNumber.of(g)
    cls = classify(g, table)
    if cls.kind is CodeKind.INVALID:
        raise InvalidCode(cls.reason)
    if cls.kind is CodeKind.SYMBOL:
        return table.by_code(g.exact)
    if cls.kind is CodeKind.FORMULA:
        return _decode_formula(g, table)
    steps = tuple(_decode_formula(e, table) for e in g.to_factored().exponents)
    return Derivation(steps)
