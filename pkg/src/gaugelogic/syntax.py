"""First-order alphabet, symbol table, and formula/derivation syntax.

Formulas use only negation, implication and universal quantification over
the variables ``x, y, z``; terms are variables and closed numerals.  The
concrete text grammar is::

    formula := 'forall' VAR '.' formula
             | '!' formula
             | '(' formula '->' formula ')'
             | PRED '(' term {',' term} ')'
    term    := VAR | '#' NAT | '0' | term "'"

A formula is stored as a tree; its token string (the thing that gets a
Gödel number) is derived from the tree.  One extra formula shape,
``NAME = <tokens>``, carries an opaque token run such as a printed
Lagrangian.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Sequence, Union

from .gnumber import GoedelNumber

NEG, IMP, ALL = "¬", "→", "∀"
LPAREN, RPAREN, COMMA, EQUALS = "(", ")", ",", "="
ZERO, SUCC = "0", "'"
VARIABLES = ("x", "y", "z")

KINDS = frozenset({"logical", "punctuation", "variable", "predicate", "function", "numeral-abbrev"})

# Fixed order; the p-th entry gets code 2p - 1.
BUILTIN_SYMBOLS: tuple[tuple[str, str], ...] = (
    (NEG, "logical"),
    (IMP, "logical"),
    (ALL, "logical"),
    (LPAREN, "punctuation"),
    (RPAREN, "punctuation"),
    (COMMA, "punctuation"),
    (EQUALS, "logical"),
    ("x", "variable"),
    ("y", "variable"),
    ("z", "variable"),
    (ZERO, "function"),
    (SUCC, "function"),
    ("G", "predicate"),
    ("M", "predicate"),
    ("D", "predicate"),
    ("T", "predicate"),
    ("P", "predicate"),
    ("S", "predicate"),
)


class DuplicateSymbol(ValueError):
    pass


class UnknownSymbol(LookupError):
    pass


class NoFreeOccurrence(ValueError):
    pass


class ParseError(ValueError):
    """Malformed formula text.  ``position`` is a character offset (or token
    index when parsing a token sequence); ``expected`` lists what would have
    been accepted there."""

    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


@dataclass(frozen=True)
class SymbolEntry:
    name: str
    code: int
    kind: str


class SymbolTable:
    """Append-only table assigning odd codes 1, 3, 5, ... in registration order."""

    def __init__(self) -> None:
        self._by_name: dict[str, SymbolEntry] = {}
        self._by_code: dict[int, SymbolEntry] = {}
        self._lock = threading.Lock()
        for name, kind in BUILTIN_SYMBOLS:
            self.register(name, kind)

    def register(self, name: str, kind: str) -> SymbolEntry:
        if kind not in KINDS:
            raise ValueError(f"unknown symbol kind {kind!r}")
        if not name or any(ch.isspace() for ch in name):
            raise ValueError(f"symbol names are non-empty and contain no whitespace: {name!r}")
        with self._lock:
            if name in self._by_name:
                raise DuplicateSymbol(name)
            entry = SymbolEntry(name, 2 * len(self._by_name) + 1, kind)
            self._by_name[name] = entry
            self._by_code[entry.code] = entry
        return entry

    def ensure(self, name: str, kind: str) -> SymbolEntry:
        """Existing entry for ``name``, registering it with ``kind`` if new."""
        entry = self._by_name.get(name)
        if entry is not None:
            return entry
        try:
            return self.register(name, kind)
        except DuplicateSymbol:
            return self._by_name[name]

    def __getitem__(self, name: str) -> SymbolEntry:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def by_code(self, code: int) -> SymbolEntry | None:
        return self._by_code.get(code)

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self._by_name)

    def __iter__(self) -> Iterator[SymbolEntry]:
        return iter(list(self._by_name.values()))

    def is_predicate(self, name: str) -> bool:
        entry = self._by_name.get(name)
        return entry is not None and entry.kind == "predicate"


#: Process-wide table used when no table is passed explicitly.
DEFAULT_TABLE = SymbolTable()


def register_symbol(name: str, kind: str, table: SymbolTable | None = None) -> SymbolEntry:
    return (table or DEFAULT_TABLE).register(name, kind)


# ---------------------------------------------------------------- trees

NumeralValue = Union[int, GoedelNumber]


def _norm_value(value: NumeralValue) -> NumeralValue:
    if isinstance(value, GoedelNumber):
        small = value.auto()
        return small.exact if small.is_exact else small
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValueError(f"numerals denote naturals, got {value!r}")
    return value


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Abbrev:
    """A numeral written as one symbol ``#n``."""

    value: NumeralValue

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _norm_value(self.value))

    @property
    def token(self) -> str:
        if isinstance(self.value, GoedelNumber):
            return "#" + self.value.compact()
        return f"#{self.value}"


@dataclass(frozen=True)
class Succ:
    base: "Term"
    count: int


Term = Union[Var, Zero, Abbrev, Succ]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    body: "Node"


@dataclass(frozen=True)
class Implies:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Node"


@dataclass(frozen=True)
class Equation:
    """``name = t1 t2 ...`` with an uninterpreted right-hand token run."""

    name: str
    rhs: tuple[str, ...]


Node = Union[Atom, Not, Implies, Forall, Equation]


@dataclass(frozen=True)
class Numeral:
    """The numeral for ``value``, either as ``0'''...`` or as a single ``#n``."""

    value: NumeralValue
    abbreviated: bool = True

    #: Successor form beyond this many symbols is refused.
    MAX_SUCCESSOR_FORM = 10_000

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _norm_value(self.value))
        if not self.abbreviated:
            if not isinstance(self.value, int) or self.value > self.MAX_SUCCESSOR_FORM:
                raise ValueError("successor form is only built for values up to "
                                 f"{self.MAX_SUCCESSOR_FORM}; use the abbreviated form")

    @property
    def term(self) -> Term:
        if self.abbreviated:
            return Abbrev(self.value)
        return Succ(Zero(), self.value) if self.value else Zero()

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(_term_tokens(self.term))


def _term_tokens(t: Term) -> list[str]:
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, Zero):
        return [ZERO]
    if isinstance(t, Abbrev):
        return [t.token]
    return _term_tokens(t.base) + [SUCC] * t.count


def _tokens(n: Node, out: list[str]) -> None:
    if isinstance(n, Atom):
        out += [n.pred, LPAREN]
        for pos, arg in enumerate(n.args):
            if pos:
                out.append(COMMA)
            out += _term_tokens(arg)
        out.append(RPAREN)
    elif isinstance(n, Not):
        out.append(NEG)
        _tokens(n.body, out)
    elif isinstance(n, Implies):
        out.append(LPAREN)
        _tokens(n.left, out)
        out.append(IMP)
        _tokens(n.right, out)
        out.append(RPAREN)
    elif isinstance(n, Forall):
        out += [ALL, n.var]
        _tokens(n.body, out)
    elif isinstance(n, Equation):
        out += [n.name, EQUALS, *n.rhs]
    else:
        raise TypeError(f"not a formula node: {n!r}")


def _term_free(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Succ):
        return _term_free(t.base)
    return set()


def _free(n: Node) -> set[str]:
    if isinstance(n, Atom):
        return set().union(*(_term_free(a) for a in n.args))
    if isinstance(n, Not):
        return _free(n.body)
    if isinstance(n, Implies):
        return _free(n.left) | _free(n.right)
    if isinstance(n, Forall):
        return _free(n.body) - {n.var}
    return set()


@dataclass(frozen=True, init=False)
class Formula:
    """A finite string of symbols, with its parse tree when it is well formed.

    ``Formula(tree)`` builds from a tree; ``Formula(tokens=...)`` wraps a
    bare symbol string (what decoding an arbitrary code can produce).
    Equality compares symbol strings.
    """

    tokens: tuple[str, ...]
    tree: Node | None = field(compare=False, repr=False)

    def __init__(self, tree: Node | None = None, tokens: Sequence[str] | None = None):
        if tree is not None:
            out: list[str] = []
            _tokens(tree, out)
            if tokens is not None and tuple(tokens) != tuple(out):
                raise ValueError("tokens do not match tree")
            tokens = out
        elif tokens is None:
            raise ValueError("a formula needs a tree or a symbol string")
        if not tokens:
            raise ValueError("a formula has at least one symbol")
        object.__setattr__(self, "tokens", tuple(tokens))
        object.__setattr__(self, "tree", tree)

    @property
    def well_formed(self) -> bool:
        return self.tree is not None

    @cached_property
    def free_vars(self) -> frozenset[str]:
        if self.tree is None:
            raise ValueError("free variables are only defined for well-formed formulas")
        return frozenset(_free(self.tree))

    @property
    def is_closed(self) -> bool:
        return not self.free_vars

    def __str__(self) -> str:
        return print_formula(self)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Derivation:
    """A non-empty sequence of formulas.

    ``kind`` says what justifies each step: ``"opaque-justified"`` (taken on
    trust) or ``"cas-verified"``, which requires a verification certificate.
    Equality looks at the steps only.  Steps need not be well formed
    (decoding an arbitrary code can yield bare symbol strings), but a
    ``"cas-verified"`` derivation must consist of well-formed formulas.
    """

    steps: tuple[Formula, ...]
    kind: str = field(default="opaque-justified", compare=False)
    certificate: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a derivation has at least one step")
        if not all(isinstance(s, Formula) for s in self.steps):
            raise TypeError("derivation steps must be Formula instances")
        if self.kind not in ("opaque-justified", "cas-verified"):
            raise ValueError(f"unknown derivation kind {self.kind!r}")
        if self.kind == "cas-verified":
            if self.certificate is None:
                raise ValueError("a cas-verified derivation needs its certificate")
            if not self.well_formed:
                raise ValueError("a cas-verified derivation has well-formed steps only")

    @property
    def well_formed(self) -> bool:
        return all(s.well_formed for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.steps)


# ---------------------------------------------------------------- printing

def _print_term(t: Term) -> str:
    return "".join(_term_tokens(t))


def _print(n: Node) -> str:
    if isinstance(n, Atom):
        return f"{n.pred}({','.join(_print_term(a) for a in n.args)})"
    if isinstance(n, Not):
        return "!" + _print(n.body)
    if isinstance(n, Implies):
        return f"({_print(n.left)} -> {_print(n.right)})"
    if isinstance(n, Forall):
        return f"forall {n.var}. {_print(n.body)}"
    if isinstance(n, Equation):
        return f"{n.name} = {' '.join(n.rhs)}"
    raise TypeError(f"not a formula node: {n!r}")


def print_formula(f: Formula) -> str:
    """Canonical text for ``f``; ``parse_formula`` inverts it.

    A symbol string that is not well formed prints as its space-separated
    symbols, which does not re-parse.
    """
    if f.tree is None:
        return " ".join(f.tokens)
    return _print(f.tree)


# ---------------------------------------------------------------- parsing

_SURFACE = re.compile(
    r"""\s*(?:
        (?P<kw>forall\b)
      | (?P<arrow>->)
      | (?P<num>\#\d+)
      | (?P<fnum>\#\[)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<punct>[!().,'0])
    )""",
    re.VERBOSE,
)
_EQUATION = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=(?!=)(.*)\Z", re.DOTALL)
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RHS_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[A-Za-z_][A-Za-z0-9_]*|\S)")
_SURFACE_TO_SYMBOL = {"forall": ALL, "!": NEG, "->": IMP}
_SYMBOL_TO_SURFACE = {ALL: "forall", NEG: "!", IMP: "->"}


def _scan_json_numeral(text: str, start: int) -> int:
    depth = 0
    for pos in range(start, len(text)):
        if text[pos] == "[":
            depth += 1
        elif text[pos] == "]":
            depth -= 1
            if depth == 0:
                return pos + 1
    raise ParseError("unterminated factored numeral", start)


def _lex(text: str) -> list[tuple[str, int]]:
    toks: list[tuple[str, int]] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return toks
        m = _SURFACE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.lastgroup == "fnum":
            end = _scan_json_numeral(text, start + 1)
            toks.append((text[start:end], start))
            pos = end
            continue
        word = m.group(m.lastgroup)
        toks.append((_SURFACE_TO_SYMBOL.get(word, word), start))
        pos = m.end()


def _numeral_value(token: str, position: int) -> NumeralValue:
    body = token[1:]
    if body.isdigit():
        return int(body)
    try:
        return GoedelNumber.from_json(json.loads(body))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad numeral {token!r}: {exc}", position) from None


class _Parser:
    def __init__(self, toks: Sequence[tuple[str, int]], table: SymbolTable, dotted: bool, end: int):
        self.toks = toks
        self.i = 0
        self.table = table
        self.dotted = dotted
        self.end = end

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def where(self) -> int:
        return self.toks[self.i][1] if self.i < len(self.toks) else self.end

    def fail(self, what: str, expected: Iterable[str]) -> ParseError:
        shown = [_SYMBOL_TO_SURFACE.get(e, e) if self.dotted else e for e in expected]
        tok = self.peek()
        found = "end of input" if tok is None else repr(tok)
        return ParseError(f"{what}: found {found}", self.where(), shown)

    def expect(self, sym: str) -> None:
        if self.peek() != sym:
            raise self.fail("unexpected token", [sym])
        self.i += 1

    def formula(self) -> Node:
        tok = self.peek()
        if tok == ALL:
            self.i += 1
            var = self.peek()
            if var not in VARIABLES:
                raise self.fail("quantifier needs a variable", VARIABLES)
            self.i += 1
            if self.dotted:
                self.expect(".")
            return Forall(var, self.formula())
        if tok == NEG:
            self.i += 1
            return Not(self.formula())
        if tok == LPAREN:
            self.i += 1
            left = self.formula()
            self.expect(IMP)
            right = self.formula()
            self.expect(RPAREN)
            return Implies(left, right)
        if tok is not None and self.table.is_predicate(tok):
            self.i += 1
            self.expect(LPAREN)
            args = [self.term()]
            while self.peek() == COMMA:
                self.i += 1
                args.append(self.term())
            self.expect(RPAREN)
            return Atom(tok, tuple(args))
        preds = [e.name for e in self.table if e.kind == "predicate"]
        raise self.fail("expected a formula", [ALL, NEG, LPAREN, *preds])

    def term(self) -> Term:
        tok = self.peek()
        if tok in VARIABLES:
            base: Term = Var(tok)
        elif tok == ZERO:
            base = Zero()
        elif tok is not None and tok.startswith("#") and len(tok) > 1:
            base = Abbrev(_numeral_value(tok, self.where()))
        else:
            raise self.fail("expected a term", [*VARIABLES, ZERO, "#n"])
        self.i += 1
        count = 0
        while self.peek() == SUCC:
            self.i += 1
            count += 1
        return Succ(base, count) if count else base


def _equation(name: str, rhs_tokens: Sequence[str], table: SymbolTable) -> Formula:
    known = table._by_name.get(name)
    if (not _NAME.fullmatch(name) or name in VARIABLES
            or (known is not None and known.kind != "function")):
        raise ParseError(f"{name!r} cannot name an equation", 0)
    if not rhs_tokens:
        raise ParseError("empty right-hand side", 0)
    for tok in (name, *rhs_tokens):
        table.ensure(tok, "function")
    return Formula(Equation(name, tuple(rhs_tokens)))


def parse_formula(text: str, table: SymbolTable | None = None) -> Formula:
    """Parse formula text.  Raises :class:`ParseError` with position and expected set."""
    table = table or DEFAULT_TABLE
    m = _EQUATION.match(text)
    if m:
        rhs = _RHS_TOKEN.findall(m.group(2))
        return _equation(m.group(1), rhs, table)
    toks = _lex(text)
    for tok, _ in toks:
        if tok.startswith("#"):
            table.ensure(tok, "numeral-abbrev")
    p = _Parser(toks, table, dotted=True, end=len(text))
    tree = p.formula()
    if p.peek() is not None:
        raise p.fail("trailing input", [])
    return Formula(tree)


def parse_tokens(tokens: Sequence[str], table: SymbolTable | None = None) -> Formula:
    """Rebuild a formula from its symbol-name string (the inverse of ``Formula.tokens``)."""
    table = table or DEFAULT_TABLE
    tokens = list(tokens)
    if len(tokens) >= 2 and tokens[1] == EQUALS:
        return _equation(tokens[0], tokens[2:], table)
    p = _Parser([(t, i) for i, t in enumerate(tokens)], table, dotted=False, end=len(tokens))
    tree = p.formula()
    if p.peek() is not None:
        raise p.fail("trailing tokens", [])
    return Formula(tree)


# ---------------------------------------------------------------- substitution

def _sub_term(t: Term, var: str, repl: Term) -> Term:
    if isinstance(t, Var):
        return repl if t.name == var else t
    if isinstance(t, Succ):
        base = _sub_term(t.base, var, repl)
        if isinstance(base, Succ):
            return Succ(base.base, base.count + t.count)
        return Succ(base, t.count)
    return t


def _sub(n: Node, var: str, repl: Term) -> Node:
    if isinstance(n, Atom):
        return Atom(n.pred, tuple(_sub_term(a, var, repl) for a in n.args))
    if isinstance(n, Not):
        return Not(_sub(n.body, var, repl))
    if isinstance(n, Implies):
        return Implies(_sub(n.left, var, repl), _sub(n.right, var, repl))
    if isinstance(n, Forall):
        return n if n.var == var else Forall(n.var, _sub(n.body, var, repl))
    return n


def substitute(f: Formula, var: str, numeral: Numeral, table: SymbolTable | None = None) -> Formula:
    """Replace the free occurrences of ``var`` by ``numeral``.

    Numerals are closed, so no capture can happen.
    """
    if f.tree is None:
        raise ValueError("cannot substitute into a string that is not a formula")
    if var not in f.free_vars:
        raise NoFreeOccurrence(f"{var} does not occur free in {print_formula(f)}")
    if numeral.abbreviated:
        (table or DEFAULT_TABLE).ensure(numeral.term.token, "numeral-abbrev")
    return Formula(_sub(f.tree, var, numeral.term))


# ---------------------------------------------------------------- derivation files

def read_derivation(text: str, table: SymbolTable | None = None) -> Derivation:
    """One formula per line; blank lines and lines starting with ``#`` are skipped."""
    steps = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        steps.append(parse_formula(stripped, table))
    return Derivation(tuple(steps))


def format_derivation(d: Derivation) -> str:
    return "".join(print_formula(s) + "\n" for s in d.steps)
