"""Symbolic algebra for abelian-Higgs scalar field expressions.

Expressions are small immutable trees over a fixed set of atoms:

    fields      rho theta chi A B F
    derivatives drho dtheta dchi            (one abstract spacetime index)
    constants   e mu lambda v M sqrt2 sqrtlambda i
    phases      E = exp(i theta), Ebar = exp(-i theta)

``phi`` is accepted by the parser as shorthand for ``rho * E``.  Lorentz
indices are erased: ``d(...)`` is a single formal derivative, ``A`` and ``B``
are single atoms and ``F`` stands for the whole ``F_{mu nu} F^{mu nu}``.

Equality of expressions is decided by :func:`normalize`, which expands to
a Laurent polynomial with rational coefficients after eliminating the
derived atoms::

    v      -> mu / sqrtlambda
    M      -> v e
    rho    -> (v + chi) / sqrt2
    drho   -> dchi / sqrt2
    B      -> A - dtheta / e
    lambda -> sqrtlambda^2

together with ``i^2 = -1``, ``sqrt2^2 = 2`` and ``E Ebar = 1``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

FIELD_ATOMS = ("rho", "theta", "chi", "A", "B", "F")
DERIVATIVE_ATOMS = ("drho", "dtheta", "dchi")
CONSTANT_ATOMS = ("e", "mu", "lambda", "v", "M", "sqrt2", "sqrtlambda", "i")
PHASE_ATOMS = ("E", "Ebar")
ATOMS = FIELD_ATOMS + DERIVATIVE_ATOMS + CONSTANT_ATOMS + PHASE_ATOMS

# atoms that may carry a negative exponent
INVERTIBLE_ATOMS = frozenset({"e", "mu", "lambda", "sqrtlambda", "sqrt2"})

_DERIVATIVE_OF = {"rho": "drho", "theta": "dtheta", "chi": "dchi"}


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class DerivativeError(ValueError):
    pass


class SecondDerivative(DerivativeError):
    """Only first derivatives are representable."""


class UnsupportedDerivative(DerivativeError):
    """The derivative of this atom has no representation (e.g. d(A))."""


class DivisionByZero(ZeroDivisionError):
    pass


# ---------------------------------------------------------------- trees

class Expr:
    """Base class; supports ``+ - * **`` for building expressions in code."""

    def __add__(self, other: "ExprLike") -> "Expr":
        return Add((self, as_expr(other)))

    def __radd__(self, other: "ExprLike") -> "Expr":
        return Add((as_expr(other), self))

    def __sub__(self, other: "ExprLike") -> "Expr":
        return Add((self, Neg(as_expr(other))))

    def __rsub__(self, other: "ExprLike") -> "Expr":
        return Add((as_expr(other), Neg(self)))

    def __mul__(self, other: "ExprLike") -> "Expr":
        return Mul((self, as_expr(other)))

    def __rmul__(self, other: "ExprLike") -> "Expr":
        return Mul((as_expr(other), self))

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __pow__(self, n: int) -> "Expr":
        return Pow(self, n)

    def __str__(self) -> str:
        return print_expr(self)


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction


@dataclass(frozen=True)
class Sym(Expr):
    name: str

    def __post_init__(self) -> None:
        if self.name not in ATOMS:
            raise ValueError(f"unknown atom {self.name!r}")


@dataclass(frozen=True)
class Add(Expr):
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Mul(Expr):
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int


@dataclass(frozen=True)
class Dagger(Expr):
    arg: Expr


@dataclass(frozen=True)
class Deriv(Expr):
    arg: Expr


ExprLike = Union[Expr, int, Fraction]


def as_expr(x: ExprLike) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Num(Fraction(x))
    raise TypeError(f"cannot use {x!r} in a field expression")


def atom(name: str) -> Sym:
    return Sym(name)


def phi() -> Expr:
    """The complex scalar in polar form, ``rho * E``."""
    return Mul((Sym("rho"), Sym("E")))


# ---------------------------------------------------------------- printing

_ADD, _MUL, _UNARY, _POW, _ATOM = range(1, 6)


def _literal(q: Fraction) -> str:
    q = abs(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _level(x: Expr) -> int:
    if isinstance(x, Add):
        return _ADD
    if isinstance(x, Mul):
        return _MUL
    if isinstance(x, Neg):
        return _UNARY
    if isinstance(x, Num):
        return _UNARY if x.value < 0 else _ATOM
    if isinstance(x, Pow):
        return _POW
    return _ATOM


def _p(x: Expr, need: int) -> str:
    text = _print(x)
    return f"({text})" if _level(x) < need else text


def _print(x: Expr) -> str:
    if isinstance(x, Num):
        return ("-" if x.value < 0 else "") + _literal(x.value)
    if isinstance(x, Sym):
        return x.name
    if isinstance(x, Add):
        parts = [_p(x.args[0], _MUL)]
        for arg in x.args[1:]:
            if isinstance(arg, Neg):
                parts.append(f"- {_p(arg.arg, _MUL)}")
            else:
                parts.append(f"+ {_p(arg, _MUL)}")
        return " ".join(parts)
    if isinstance(x, Mul):
        return " * ".join(_p(a, _UNARY) for a in x.args)
    if isinstance(x, Neg):
        inner = x.arg
        if isinstance(inner, Num) and inner.value >= 0:
            return f"-({_print(inner)})"
        return "-" + _p(inner, _UNARY)
    if isinstance(x, Pow):
        return f"{_p(x.base, _ATOM)}^{x.exp}"
    if isinstance(x, Dagger):
        return f"dagger({_print(x.arg)})"
    if isinstance(x, Deriv):
        return f"d({_print(x.arg)})"
    raise TypeError(f"not a field expression: {x!r}")


def print_expr(x: Expr) -> str:
    """Text that :func:`parse_expr` turns back into the same tree."""
    return _print(x)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+/\d+|\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """``(kind, text, position)`` triples; kind is ``num``, ``ident`` or ``op``."""
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return out
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()


def _invertible(x: Expr) -> bool:
    if isinstance(x, Num):
        return x.value != 0
    if isinstance(x, Sym):
        return x.name in INVERTIBLE_ATOMS
    if isinstance(x, Mul):
        return all(_invertible(a) for a in x.args)
    if isinstance(x, (Neg, Pow)):
        return _invertible(x.arg if isinstance(x, Neg) else x.base)
    return False


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int] | None:
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def is_op(self, op: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok is not None and tok[0] == "op" and tok[1] == op

    def where(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def expect(self, op: str) -> None:
        if not self.is_op(op):
            raise ParseError(f"expected {op!r}", self.where())
        self.i += 1

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.is_op("+") or self.is_op("-"):
            minus = self.is_op("-")
            self.i += 1
            t = self.term()
            terms.append(Neg(t) if minus else t)
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self) -> Expr:
        factors = [self.unary()]
        while self.is_op("*") or self.is_op("/"):
            divide = self.is_op("/")
            pos = self.where()
            self.i += 1
            f = self.unary()
            if divide:
                if not _invertible(f):
                    raise ParseError("can only divide by numbers and coupling constants", pos)
                f = Pow(f, -1)
            factors.append(f)
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def unary(self) -> Expr:
        if self.is_op("-"):
            nxt = self.peek(1)
            if nxt is not None and nxt[0] == "num" and not self.is_op("^", 2):
                self.i += 2
                return Num(-Fraction(nxt[1]))
            self.i += 1
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if not self.is_op("^"):
            return base
        self.i += 1
        pos = self.where()
        sign = 1
        if self.is_op("-"):
            sign = -1
            self.i += 1
        tok = self.peek()
        if tok is None or tok[0] != "num" or "/" in tok[1]:
            raise ParseError("exponents must be integers", pos)
        self.i += 1
        n = sign * int(tok[1])
        if n < 0 and not _invertible(base):
            raise ParseError("negative exponents only on numbers and coupling constants", pos)
        return Pow(base, n)

    def primary(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", len(self.text))
        kind, text, pos = tok
        if kind == "num":
            self.i += 1
            return Num(Fraction(text))
        if kind == "ident":
            self.i += 1
            if text in ("dagger", "d"):
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return Dagger(inner) if text == "dagger" else Deriv(inner)
            if text == "phi":
                return phi()
            if text not in ATOMS:
                raise ParseError(f"unknown identifier {text!r}", pos)
            return Sym(text)
        if self.is_op("("):
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {text!r}", pos)


def parse_expr(text: str) -> Expr:
    p = _ExprParser(text)
    x = p.expr()
    if p.peek() is not None:
        raise ParseError(f"unexpected {p.peek()[1]!r}", p.where())
    return x


# ---------------------------------------------------------------- dagger and derivative

def dagger(x: ExprLike) -> Expr:
    """Complex conjugate: ``i -> -i``, ``E <-> Ebar``, real atoms fixed."""
    x = as_expr(x)
    if isinstance(x, Num):
        return x
    if isinstance(x, Sym):
        if x.name == "i":
            return Neg(x)
        if x.name == "E":
            return Sym("Ebar")
        if x.name == "Ebar":
            return Sym("E")
        return x
    if isinstance(x, Add):
        return Add(tuple(dagger(a) for a in x.args))
    if isinstance(x, Mul):
        return Mul(tuple(dagger(a) for a in x.args))
    if isinstance(x, Neg):
        return Neg(dagger(x.arg))
    if isinstance(x, Pow):
        return Pow(dagger(x.base), x.exp)
    if isinstance(x, Dagger):
        return x.arg
    if isinstance(x, Deriv):
        return Deriv(dagger(x.arg))
    raise TypeError(f"not a field expression: {x!r}")


ZERO = Num(Fraction(0))


def d_mu(x: ExprLike) -> Expr:
    """Formal first derivative, by linearity, Leibniz and the chain rule.

    ``d(E) = i E dtheta`` and ``d(Ebar) = -i Ebar dtheta``; constants
    (including ``v``) differentiate to zero.
    """
    x = as_expr(x)
    if isinstance(x, Num):
        return ZERO
    if isinstance(x, Sym):
        n = x.name
        if n in _DERIVATIVE_OF:
            return Sym(_DERIVATIVE_OF[n])
        if n == "E":
            return Mul((Sym("i"), Sym("E"), Sym("dtheta")))
        if n == "Ebar":
            return Neg(Mul((Sym("i"), Sym("Ebar"), Sym("dtheta"))))
        if n in CONSTANT_ATOMS:
            return ZERO
        if n in DERIVATIVE_ATOMS:
            raise SecondDerivative(f"d({n}) would be a second derivative")
        raise UnsupportedDerivative(f"no derivative atom for {n}")
    if isinstance(x, Add):
        return Add(tuple(d_mu(a) for a in x.args))
    if isinstance(x, Neg):
        return Neg(d_mu(x.arg))
    if isinstance(x, Mul):
        terms = []
        for k, a in enumerate(x.args):
            da = d_mu(a)
            if da == ZERO:
                continue
            terms.append(Mul(x.args[:k] + (da,) + x.args[k + 1:]))
        if not terms:
            return ZERO
        return terms[0] if len(terms) == 1 else Add(tuple(terms))
    if isinstance(x, Pow):
        db = d_mu(x.base)
        if x.exp == 0 or db == ZERO:
            return ZERO
        if x.exp == 1:
            return db
        return Mul((Num(Fraction(x.exp)), Pow(x.base, x.exp - 1), db))
    if isinstance(x, Dagger):
        return d_mu(dagger(x.arg))
    if isinstance(x, Deriv):
        raise SecondDerivative("nested derivative")
    raise TypeError(f"not a field expression: {x!r}")


# ---------------------------------------------------------------- normal form

# Fixed atom order for monomials; Ebar is E with a negative exponent.
POLY_ATOMS = ("F", "A", "B", "M", "drho", "dtheta", "dchi", "rho", "chi", "theta",
              "E", "i", "e", "mu", "lambda", "v", "sqrtlambda", "sqrt2")
_IDX = {name: k for k, name in enumerate(POLY_ATOMS)}
_I, _SQRT2 = _IDX["i"], _IDX["sqrt2"]
_UNIT = (0,) * len(POLY_ATOMS)

Monomial = tuple[int, ...]


def _reduce(mono: list[int], coeff: Fraction) -> tuple[Monomial, Fraction]:
    k = mono[_I]
    coeff *= (1, 1, -1, -1)[k % 4]
    mono[_I] = k % 2
    k = mono[_SQRT2]
    coeff *= Fraction(2) ** (k // 2)
    mono[_SQRT2] = k % 2
    return tuple(mono), coeff


class Poly:
    """Laurent polynomial in POLY_ATOMS with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: Fraction | int) -> "Poly":
        return cls({_UNIT: Fraction(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        mono = [0] * len(POLY_ATOMS)
        mono[_IDX[name]] = power
        m, c = _reduce(mono, Fraction(1))
        return cls({m: c})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m, c = _reduce([a + b for a, b in zip(m1, m2)], c1 * c2)
                out[m] = out.get(m, 0) + c
        return Poly(out)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (m, c), = self.terms.items()
            inv, c2 = _reduce([-a for a in m], 1 / c)
            return Poly({inv: c2}) ** (-n)
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))


@lru_cache(maxsize=None)
def _eliminated(name: str) -> Poly:
    v = Poly.var("mu") * Poly.var("sqrtlambda", -1)
    rules = {
        "v": lambda: v,
        "M": lambda: v * Poly.var("e"),
        "rho": lambda: (v + Poly.var("chi")) * Poly.var("sqrt2", -1),
        "drho": lambda: Poly.var("dchi") * Poly.var("sqrt2", -1),
        "B": lambda: Poly.var("A") - Poly.var("dtheta") * Poly.var("e", -1),
        "lambda": lambda: Poly.var("sqrtlambda", 2),
    }
    return rules[name]()


ELIMINATED_ATOMS = ("v", "M", "rho", "drho", "B", "lambda")


def _to_poly(x: Expr, eliminate: bool) -> Poly:
    if isinstance(x, Num):
        return Poly.const(x.value)
    if isinstance(x, Sym):
        if x.name == "Ebar":
            return Poly.var("E", -1)
        if eliminate and x.name in ELIMINATED_ATOMS:
            return _eliminated(x.name)
        return Poly.var(x.name)
    if isinstance(x, Add):
        out = Poly()
        for a in x.args:
            out = out + _to_poly(a, eliminate)
        return out
    if isinstance(x, Mul):
        out = Poly.const(1)
        for a in x.args:
            out = out * _to_poly(a, eliminate)
        return out
    if isinstance(x, Neg):
        return -_to_poly(x.arg, eliminate)
    if isinstance(x, Pow):
        return _to_poly(x.base, eliminate) ** x.exp
    if isinstance(x, Dagger):
        return _to_poly(dagger(x.arg), eliminate)
    if isinstance(x, Deriv):
        return _to_poly(d_mu(x.arg), eliminate)
    raise TypeError(f"not a field expression: {x!r}")


def _mono_text(m: Monomial) -> list[str]:
    parts = []
    for name, k in zip(POLY_ATOMS, m):
        if not k:
            continue
        if name == "E" and k < 0:
            name, k = "Ebar", -k
        parts.append(name if k == 1 else f"{name}^{k}")
    return parts


class NormalForm:
    """Canonical expanded form of an expression.

    Monomials are ordered lexicographically by their exponent vectors over
    ``POLY_ATOMS`` (largest first), so the text and JSON forms are stable.
    """

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        self.poly = poly

    @property
    def terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.poly.terms.items(), key=lambda mc: mc[0], reverse=True)

    def is_zero(self) -> bool:
        return not self.poly.terms

    def coefficient(self, powers: Mapping[str, int]) -> Fraction:
        mono = [0] * len(POLY_ATOMS)
        for name, k in powers.items():
            if name == "Ebar":
                name, k = "E", -k
            mono[_IDX[name]] += k
        return self.poly.terms.get(tuple(mono), Fraction(0))

    def atoms(self) -> set[str]:
        return {name for m in self.poly.terms for name, k in zip(POLY_ATOMS, m) if k}

    def lines(self) -> list[str]:
        return [" * ".join([_literal_signed(c)] + _mono_text(m)) for m, c in self.terms]

    def __str__(self) -> str:
        return "\n".join(self.lines()) if self.poly.terms else "0"

    def to_json(self) -> list[dict]:
        out = []
        for m, c in self.terms:
            powers = {}
            for name, k in zip(POLY_ATOMS, m):
                if k:
                    powers[name] = k
            out.append({"coeff": _literal_signed(c), "powers": powers})
        return out

    def to_expr(self) -> Expr:
        terms = []
        for m, c in self.terms:
            factors: list[Expr] = [Num(c)]
            for name, k in zip(POLY_ATOMS, m):
                if k:
                    factors.append(Pow(Sym(name), k) if k != 1 else Sym(name))
            terms.append(Mul(tuple(factors)))
        if not terms:
            return ZERO
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NormalForm) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return NormalForm(self.poly - other.poly)

    def __repr__(self) -> str:
        return f"NormalForm({' + '.join(self.lines()) or '0'})"


def _literal_signed(c: Fraction) -> str:
    return ("-" if c < 0 else "") + _literal(c)


def normalize(x: Union[Expr, NormalForm, str], eliminate: bool = True) -> NormalForm:
    """Expand ``x`` to its canonical polynomial.

    With ``eliminate=False`` the derived atoms (v, M, rho, drho, B, lambda)
    are kept as they are, which is how one inspects the shape of a
    Lagrangian before substituting the vacuum expansion.
    """
    if isinstance(x, str):
        x = parse_expr(x)
    if isinstance(x, NormalForm):
        x = x.to_expr()
    return NormalForm(_to_poly(as_expr(x), eliminate))


# ---------------------------------------------------------------- numeric oracle

@dataclass(frozen=True)
class _Dual:
    """Value plus its derivative along the single abstract direction."""

    val: complex
    der: complex | None

    def __add__(self, o: "_Dual") -> "_Dual":
        der = None if self.der is None or o.der is None else self.der + o.der
        return _Dual(self.val + o.val, der)

    def __mul__(self, o: "_Dual") -> "_Dual":
        der = None if self.der is None or o.der is None else self.der * o.val + self.val * o.der
        return _Dual(self.val * o.val, der)

    def __neg__(self) -> "_Dual":
        return _Dual(-self.val, None if self.der is None else -self.der)

    def pow(self, n: int) -> "_Dual":
        if n < 0 and self.val == 0:
            raise DivisionByZero("negative power of zero")
        val = self.val ** n
        der = None if self.der is None else (n * self.val ** (n - 1) * self.der if n else 0j)
        return _Dual(val, der)

    def conj(self) -> "_Dual":
        return _Dual(self.val.conjugate(), None if self.der is None else self.der.conjugate())


def _atom_duals(a: Mapping[str, float]) -> dict[str, _Dual]:
    def get(name: str) -> float:
        if name not in a:
            raise KeyError(f"assignment is missing {name!r}")
        return a[name]

    lazy = {}

    e = a.get("e")
    lam = a.get("lambda")
    if e is not None and e == 0:
        raise DivisionByZero("e = 0")
    if lam is not None and lam <= 0:
        if lam == 0:
            raise DivisionByZero("lambda = 0")
        raise ValueError("lambda must be positive")

    def const(value: complex) -> _Dual:
        return _Dual(complex(value), 0j)

    lazy["i"] = lambda: const(1j)
    lazy["sqrt2"] = lambda: const(math.sqrt(2))
    lazy["e"] = lambda: const(get("e"))
    lazy["mu"] = lambda: const(get("mu"))
    lazy["lambda"] = lambda: const(get("lambda"))
    lazy["sqrtlambda"] = lambda: const(math.sqrt(get("lambda")))
    lazy["v"] = lambda: const(get("mu") / math.sqrt(get("lambda")))
    lazy["M"] = lambda: const(get("mu") / math.sqrt(get("lambda")) * get("e"))
    def rate(name: str, scale: complex = 1) -> complex | None:
        # a missing rate only matters if d(...) actually needs it
        return None if name not in a else complex(a[name]) * scale

    def phase(sign: int) -> _Dual:
        value = cmath.exp(sign * 1j * get("theta"))
        r = rate("dtheta")
        return _Dual(value, None if r is None else sign * 1j * value * r)

    lazy["chi"] = lambda: _Dual(complex(get("chi")), rate("dchi"))
    lazy["theta"] = lambda: _Dual(complex(get("theta")), rate("dtheta"))
    lazy["rho"] = lambda: _Dual(
        complex((get("mu") / math.sqrt(get("lambda")) + get("chi")) / math.sqrt(2)),
        rate("dchi", 1 / math.sqrt(2)))
    lazy["drho"] = lambda: _Dual(complex(get("dchi") / math.sqrt(2)), None)
    lazy["dchi"] = lambda: _Dual(complex(get("dchi")), None)
    lazy["dtheta"] = lambda: _Dual(complex(get("dtheta")), None)
    lazy["A"] = lambda: _Dual(complex(get("A")), None)
    lazy["F"] = lambda: _Dual(complex(get("F")), None)
    lazy["B"] = lambda: _Dual(complex(get("A") - get("dtheta") / get("e")), None)
    lazy["E"] = lambda: phase(1)
    lazy["Ebar"] = lambda: phase(-1)

    class _Atoms(dict):
        def __missing__(self, name: str) -> _Dual:
            value = lazy[name]()
            self[name] = value
            return value

    return _Atoms()


def _eval(x: Expr, env: dict[str, _Dual]) -> _Dual:
    if isinstance(x, Num):
        return _Dual(complex(x.value), 0j)
    if isinstance(x, Sym):
        return env[x.name]
    if isinstance(x, Add):
        out = _Dual(0j, 0j)
        for a in x.args:
            out = out + _eval(a, env)
        return out
    if isinstance(x, Mul):
        out = _Dual(1 + 0j, 0j)
        for a in x.args:
            out = out * _eval(a, env)
        return out
    if isinstance(x, Neg):
        return -_eval(x.arg, env)
    if isinstance(x, Pow):
        return _eval(x.base, env).pow(x.exp)
    if isinstance(x, Dagger):
        return _eval(x.arg, env).conj()
    if isinstance(x, Deriv):
        inner = _eval(x.arg, env)
        if inner.der is None:
            raise DerivativeError(f"no known derivative for {print_expr(x.arg)}")
        return _Dual(inner.der, None)
    raise TypeError(f"not a field expression: {x!r}")


def numeric_eval(x: Union[Expr, str], assignment: Mapping[str, float]) -> complex:
    """Evaluate ``x`` in floating point, independently of :func:`normalize`.

    ``assignment`` gives values for the independent quantities ``A, dtheta,
    dchi, chi, theta, e, mu, lambda, F`` (only those the expression needs;
    the rates ``dchi`` and ``dtheta`` are needed only under ``d(...)``).
    Derived atoms are computed from them; ``d(...)`` is evaluated by
    forward-mode differentiation along fields that change at rates
    ``dchi`` and ``dtheta``.
    """
    if isinstance(x, str):
        x = parse_expr(x)
    return _eval(x, _atom_duals(assignment)).val
