"""The abelian Higgs mechanism, step by step, checked by normalization.

Four displayed Lagrangians are compared pairwise.  The first is the
massless Lagrangian of a complex scalar coupled to a U(1) gauge field;
the last, after expanding around the vacuum, carries the gauge-boson mass
term ``1/2 M^2 B^2`` with ``M = v e``.

Conventions (see the module docs of :mod:`gaugelogic.fields`): the
potential is ``+mu^2 phi^dag phi - lambda (phi^dag phi)^2``, the covariant
derivative is ``d(phi) - i e A phi`` and its conjugate acts on
``phi^dag``, and the unitary-gauge field is ``B = A - dtheta / e``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .fields import Expr, NormalForm, normalize, parse_expr, print_expr
from .syntax import DEFAULT_TABLE, Derivation, Formula, SymbolTable, parse_formula

LAGRANGIAN_SYMBOL = "L"

Term = tuple[Fraction, str]

# (coefficient, monomial text) per displayed Lagrangian
_COV = "(d(phi) - i*e*A*phi)"
CHAIN_TERMS: dict[str, tuple[Term, ...]] = {
    "H1": (
        (Fraction(-1, 4), "F"),
        (Fraction(1), f"dagger{_COV} * {_COV}"),
        (Fraction(1), "mu^2 * dagger(phi) * phi"),
        (Fraction(-1), "lambda * (dagger(phi) * phi)^2"),
    ),
    "H2": (
        (Fraction(-1, 4), "F"),
        (Fraction(1), "rho^2 * (dtheta - e*A)^2"),
        (Fraction(1), "drho^2"),
        (Fraction(1), "mu^2 * rho^2"),
        (Fraction(-1), "lambda * rho^4"),
    ),
    "H3": (
        (Fraction(-1, 4), "F"),
        (Fraction(1, 2), "M^2 * B^2"),
        (Fraction(1), "e^2 * v * chi * B^2"),
        (Fraction(1, 2), "e^2 * chi^2 * B^2"),
        (Fraction(1, 2), "dchi^2"),
        (Fraction(1), "mu^2 * rho^2"),
        (Fraction(-1), "lambda * rho^4"),
    ),
    "H4": (
        (Fraction(-1, 4), "F"),
        (Fraction(1, 2), "M^2 * B^2"),
        (Fraction(1), "e^2 * v * chi * B^2"),
        (Fraction(1, 2), "e^2 * chi^2 * B^2"),
        (Fraction(1, 2), "dchi^2"),
        (Fraction(1, 4), "mu^4 / lambda"),
        (Fraction(-1, 4), "lambda * chi^4"),
        (Fraction(-1), "sqrtlambda * mu * chi^3"),
        (Fraction(-1), "mu^2 * chi^2"),
    ),
}

# The massless Lagrangian with the opposite potential signs, kept only as
# a string to be Gödel-numbered by the indefinability example.
MASSLESS_VARIANT_TERMS: tuple[Term, ...] = (
    (Fraction(-1, 4), "F"),
    (Fraction(1), f"dagger{_COV} * {_COV}"),
    (Fraction(-1), "mu^2 * dagger(phi) * phi"),
    (Fraction(1), "lambda * (dagger(phi) * phi)^2"),
)

# Intermediate equalities displayed between the chain steps.
LEMMAS: tuple[tuple[str, str, str], ...] = (
    ("modulus", "dagger(phi) * phi", "rho^2"),
    ("covariant derivative", "d(phi) - i*e*A*phi", "E * (drho + i*rho*(dtheta - e*A))"),
    ("kinetic term", f"dagger{_COV} * {_COV}", "drho^2 + rho^2 * (dtheta - e*A)^2"),
    ("quartic term", "lambda * (dagger(phi) * phi)^2", "lambda * rho^4"),
    ("radial kinetic term", "drho^2", "1/2 * dchi^2"),
    ("gauge field shift", "rho^2 * (dtheta - e*A)^2", "rho^2 * e^2 * B^2"),
    ("radial square", "rho^2", "1/2*v^2 + v*chi + 1/2*chi^2"),
    ("mass expansion", "rho^2 * e^2 * B^2", "1/2*M^2*B^2 + e^2*v*chi*B^2 + 1/2*e^2*chi^2*B^2"),
    ("quadratic potential", "mu^2 * rho^2", "1/2*mu^2*chi^2 + 1/2*mu^4/lambda + mu^3*chi/sqrtlambda"),
    ("quartic potential", "lambda * rho^4",
     "mu^4/(4*lambda) + lambda/4*chi^4 + 1/2*mu^2*chi^2 + mu^3*chi/sqrtlambda"
     " + sqrtlambda*mu*chi^3 + mu^2*chi^2"),
    ("potential", "mu^2 * rho^2 - lambda * rho^4",
     "mu^4/(4*lambda) - lambda/4*chi^4 - sqrtlambda*mu*chi^3 - mu^2*chi^2"),
)


def _coeff_text(c: Fraction) -> str:
    c = abs(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def build_lagrangian(terms: Sequence[Term]) -> Expr:
    """Sum of ``coefficient * monomial`` terms, parsed into one expression."""
    parts = []
    for k, (c, body) in enumerate(terms):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else _coeff_text(c) + " * "
        if c < 0:
            parts.append(f"- {mag}{body}" if parts else f"-{mag}{body}")
        else:
            parts.append(f"+ {mag}{body}" if parts else f"{mag}{body}")
    return parse_expr(" ".join(parts))


def chain_steps() -> dict[str, Expr]:
    return {label: build_lagrangian(terms) for label, terms in CHAIN_TERMS.items()}


class Verdict(enum.Enum):
    VERIFIED = "Verified"
    MISMATCH = "Mismatch"


@dataclass(frozen=True)
class StepCheck:
    lhs: str
    rhs: str
    verdict: Verdict
    residual: NormalForm

    @property
    def verified(self) -> bool:
        return self.verdict is Verdict.VERIFIED

    def to_dict(self) -> dict[str, Any]:
        return {"lhs": self.lhs, "rhs": self.rhs, "verdict": self.verdict.value,
                "residual": self.residual.to_json()}


def verify_step(lhs: Expr | str, rhs: Expr | str, labels: tuple[str, str] = ("lhs", "rhs")) -> StepCheck:
    """Verified iff ``lhs - rhs`` normalizes to zero; otherwise carries the residual."""
    if isinstance(lhs, str):
        lhs = parse_expr(lhs)
    if isinstance(rhs, str):
        rhs = parse_expr(rhs)
    residual = normalize(lhs - rhs)
    verdict = Verdict.VERIFIED if residual.is_zero() else Verdict.MISMATCH
    return StepCheck(labels[0], labels[1], verdict, residual)


def lagrangian_formula(x: Expr, table: SymbolTable | None = None) -> Formula:
    """``L = <printed expression>`` as a symbol string, registering its tokens."""
    return parse_formula(f"{LAGRANGIAN_SYMBOL} = {print_expr(x)}", table or DEFAULT_TABLE)


def massless_lagrangian_formula(table: SymbolTable | None = None) -> Formula:
    """The massless Lagrangian in its opposite-sign form, as a formula."""
    return lagrangian_formula(build_lagrangian(MASSLESS_VARIANT_TERMS), table)


@dataclass
class DerivationRecord:
    """Outcome of checking a chain of Lagrangians.

    ``checks`` holds every adjacent pair plus the end-to-end pair.  When all
    of them verify, ``derivation`` is the chain as a cas-verified
    :class:`~gaugelogic.syntax.Derivation` ready for Gödel numbering.
    """

    labels: tuple[str, ...]
    steps: tuple[Expr, ...]
    checks: tuple[StepCheck, ...]
    derivation: Derivation | None = field(default=None, repr=False)

    @property
    def verdict(self) -> Verdict:
        ok = all(c.verified for c in self.checks)
        return Verdict.VERIFIED if ok else Verdict.MISMATCH

    @property
    def verified(self) -> bool:
        return self.verdict is Verdict.VERIFIED

    def to_dict(self) -> dict[str, Any]:
        return {
            "overall": self.verdict.value,
            "steps": [{"label": lab, "expr": print_expr(x)} for lab, x in zip(self.labels, self.steps)],
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict[str, Any], table: SymbolTable | None = None) -> "DerivationRecord":
        """Rebuild a record from its JSON form by re-running every check.

        Verdicts stored in ``data`` are ignored; only the step expressions
        are trusted as input.
        """
        try:
            labels = [s["label"] for s in data["steps"]]
            exprs = [parse_expr(s["expr"]) for s in data["steps"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed derivation record: {exc}") from None
        return verify_chain(exprs, labels, table)


def verify_chain(steps: Sequence[Expr], labels: Sequence[str] | None = None,
                 table: SymbolTable | None = None) -> DerivationRecord:
    """Check each adjacent pair and the first-to-last pair of ``steps``."""
    steps = tuple(steps)
    if len(steps) < 2:
        raise ValueError("a chain needs at least two steps")
    labels = tuple(labels or (f"H{k}" for k in range(1, len(steps) + 1)))
    pairs = [(k, k + 1) for k in range(len(steps) - 1)] + [(0, len(steps) - 1)]
    checks = tuple(verify_step(steps[a], steps[b], (labels[a], labels[b])) for a, b in pairs)
    record = DerivationRecord(labels, steps, checks)
    if record.verified:
        formulas = tuple(lagrangian_formula(x, table) for x in steps)
        record.derivation = Derivation(formulas, kind="cas-verified", certificate=record)
    return record


def verify_higgs_chain(table: SymbolTable | None = None) -> DerivationRecord:
    """Check the massless-to-massive chain H1 -> H2 -> H3 -> H4 and H1 -> H4."""
    steps = chain_steps()
    return verify_chain(list(steps.values()), list(steps), table)


def verify_lemmas() -> list[StepCheck]:
    return [verify_step(lhs, rhs, (name, name)) for name, lhs, rhs in LEMMAS]


def has_mass_term(x: Expr) -> bool:
    """True when ``x`` contains ``1/2 M^2 B^2`` before any substitution."""
    return normalize(x, eliminate=False).coefficient({"M": 2, "B": 2}) == Fraction(1, 2)


def mutated_chain(label: str, term_index: int, delta: Fraction = Fraction(1, 2)) -> dict[str, Expr]:
    """The chain with one coefficient of step ``label`` shifted by ``delta``."""
    steps = dict(CHAIN_TERMS)
    terms = list(steps[label])
    c, body = terms[term_index]
    terms[term_index] = (c + delta, body)
    steps[label] = tuple(terms)
    return {lab: build_lagrangian(t) for lab, t in steps.items()}
