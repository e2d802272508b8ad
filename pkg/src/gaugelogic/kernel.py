"""Finite-model checks for the definability of the mass predicate.

The two schemas under study are

    gauge:     forall y. forall z. (!G(x,y) -> !M(z))
    breaking:  forall y. forall z. (D(x,y) -> M(z))

``G`` expresses "there is a derivation coded by y from the formula coded by
x", ``D`` relates a massless Lagrangian's code to a massive one's, and
``M`` is the predicate "being massive".  Arithmetic facts such as
``G(i, j)`` are not proved here; they come in as a :class:`FactBase`.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Union

from .codec import decode, encode_derivation, encode_formula
from .gnumber import GoedelNumber
from .higgs import DerivationRecord, verify_chain
from .syntax import (
    Abbrev,
    Atom,
    DEFAULT_TABLE,
    Equation,
    Forall,
    Formula,
    Implies,
    Not,
    Numeral,
    Succ,
    SymbolTable,
    Term,
    Var,
    Zero,
    parse_formula,
    print_formula,
    substitute,
)

GAUGE_SCHEMA = "forall y. forall z. (!G(x,y) -> !M(z))"
BREAKING_SCHEMA = "forall y. forall z. (D(x,y) -> M(z))"
PROVABILITY_TEMPLATE = "forall y. !G(x,y)"
TRUTH_TEMPLATE = "forall y. (D(x,y) -> !T(y))"

Code = Union[int, GoedelNumber]


class UnknownPredicate(LookupError):
    pass


class PreconditionViolated(ValueError):
    pass


class UnverifiedDerivation(ValueError):
    pass


class NoCounterexample(RuntimeError):
    pass


def _value(code: Code) -> Code:
    """Plain int when the code is small, otherwise the GoedelNumber itself."""
    if isinstance(code, GoedelNumber):
        small = code.auto()
        return small.exact if small.is_exact else small
    return code


def _coerce(code: Any) -> Code:
    """Accepts ints, GoedelNumbers and their JSON forms (decimal string or factor list)."""
    if isinstance(code, list):
        return _value(GoedelNumber.from_json(code))
    return _value(GoedelNumber.of(code))


def _show(code: Code) -> str:
    return str(code)


# ---------------------------------------------------------------- interpretations

@dataclass(frozen=True)
class Interpretation:
    """A finite domain plus extensions for G, D (binary) and M, T (unary).

    An extension left as ``None`` means the predicate is uninterpreted, and
    evaluating a formula that uses it raises :class:`UnknownPredicate`.
    Numerals denote their values whether or not those lie in the domain;
    quantifiers range over the domain only.
    """

    domain: frozenset
    ext_G: frozenset | None = None
    ext_D: frozenset | None = None
    ext_M: frozenset | None = None
    ext_T: frozenset | None = None

    def __post_init__(self) -> None:
        for name in ("domain", "ext_G", "ext_D", "ext_M", "ext_T"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, frozenset(_value(v) if not isinstance(v, tuple)
                                                         else tuple(_value(c) for c in v)
                                                         for v in value))
        if not self.domain:
            raise ValueError("the domain must be non-empty")
        for name in ("ext_G", "ext_D"):
            for pair in getattr(self, name) or ():
                if len(pair) != 2 or not set(pair) <= self.domain:
                    raise ValueError(f"{name} member {pair!r} is not a pair from the domain")
        for name in ("ext_M", "ext_T"):
            ext = getattr(self, name) or frozenset()
            if not ext <= self.domain:
                raise ValueError(f"{name} has members outside the domain")

    def extension(self, pred: str) -> frozenset:
        ext = getattr(self, f"ext_{pred}", None)
        if ext is None:
            raise UnknownPredicate(pred)
        return ext

    def to_dict(self) -> dict[str, Any]:
        def show(ext):
            if ext is None:
                return None
            items = [list(map(_show, m)) if isinstance(m, tuple) else _show(m) for m in ext]
            return sorted(items, key=str)
        return {"domain": show(self.domain), "G": show(self.ext_G), "D": show(self.ext_D),
                "M": show(self.ext_M), "T": show(self.ext_T)}


def _term_value(t: Term, env: dict[str, Any]) -> Any:
    if isinstance(t, Var):
        if t.name not in env:
            raise ValueError(f"free variable {t.name}")
        return env[t.name]
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Abbrev):
        return t.value
    if isinstance(t, Succ):
        base = _term_value(t.base, env)
        if not isinstance(base, int):
            raise ValueError("successor of a factored numeral")
        return base + t.count
    raise TypeError(f"not a term: {t!r}")


def _holds(n, itp: Interpretation, env: dict[str, Any]) -> bool:
    if isinstance(n, Atom):
        ext = itp.extension(n.pred)
        args = tuple(_term_value(a, env) for a in n.args)
        return (args[0] if len(args) == 1 else args) in ext
    if isinstance(n, Not):
        return not _holds(n.body, itp, env)
    if isinstance(n, Implies):
        return (not _holds(n.left, itp, env)) or _holds(n.right, itp, env)
    if isinstance(n, Forall):
        return all(_holds(n.body, itp, {**env, n.var: d}) for d in itp.domain)
    if isinstance(n, Equation):
        raise TypeError("equations between field expressions have no truth value here")
    raise TypeError(f"not a formula node: {n!r}")


def evaluate(f: Formula, itp: Interpretation) -> bool:
    """Classical truth value of the closed formula ``f`` in ``itp``."""
    if f.tree is None:
        raise ValueError("not a well-formed formula")
    if not f.is_closed:
        raise ValueError(f"formula has free variables {sorted(f.free_vars)}")
    return _holds(f.tree, itp, {})


def universal_closure(f: Formula) -> Formula:
    tree = f.tree
    for var in sorted(f.free_vars, reverse=True):
        tree = Forall(var, tree)
    return Formula(tree)


# ---------------------------------------------------------------- formulas

def build_gauge_formula(table: SymbolTable | None = None) -> Formula:
    return parse_formula(GAUGE_SCHEMA, table)


def build_breaking_formula(table: SymbolTable | None = None) -> Formula:
    return parse_formula(BREAKING_SCHEMA, table)


def _numeral(code: Code) -> Numeral:
    return Numeral(_value(code))


def _instance_tree(pred_left: str, negated: bool, a: Code, b: Code, c: Code):
    left = Atom(pred_left, (_numeral(a).term, _numeral(b).term))
    right = Atom("M", (_numeral(c).term,))
    if negated:
        return Implies(Not(left), Not(right))
    return Implies(left, right)


def _register_numerals(f: Formula, table: SymbolTable | None) -> Formula:
    table = table or DEFAULT_TABLE
    for tok in f.tokens:
        if tok.startswith("#"):
            table.ensure(tok, "numeral-abbrev")
    return f


def instantiate_gauge(i: Code, j: Code, k: Code, table: SymbolTable | None = None) -> Formula:
    """``(!G(#i,#j) -> !M(#k))``."""
    return _register_numerals(Formula(_instance_tree("G", True, i, j, k)), table)


def instantiate_breaking(i: Code, k: Code, j: Code, table: SymbolTable | None = None,
                         mass_on: str = "derivation") -> Formula:
    """``(D(#i,#k) -> M(#j))``.

    The argument order is deliberate: ``D`` relates the two Lagrangian
    codes ``i`` and ``k`` while ``M`` applies to the derivation code ``j``.
    ``mass_on="lagrangian"`` gives the other reading, ``(D(#i,#k) -> M(#k))``.
    """
    if mass_on not in ("derivation", "lagrangian"):
        raise ValueError("mass_on must be 'derivation' or 'lagrangian'")
    target = j if mass_on == "derivation" else k
    return _register_numerals(Formula(_instance_tree("D", False, i, k, target)), table)


# ---------------------------------------------------------------- reports

class ModelVerdict(enum.Enum):
    NULL = "NullModel"
    NON_NULL = "NonNullModel"


@dataclass(frozen=True)
class FactBase:
    """Arithmetic facts taken as given: pairs for which G (resp. d) holds."""

    g_facts: frozenset = frozenset()
    d_facts: frozenset = frozenset()

    def __post_init__(self) -> None:
        for name in ("g_facts", "d_facts"):
            pairs = frozenset(tuple(_coerce(c) for c in p) for p in getattr(self, name))
            if any(len(p) != 2 for p in pairs):
                raise ValueError(f"{name} must contain pairs")
            object.__setattr__(self, name, pairs)

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FactBase":
        def pairs(key):
            return frozenset(tuple(_coerce(c) for c in p) for p in data.get(key, []))
        return cls(pairs("g_facts"), pairs("d_facts"))

    def to_json(self) -> dict[str, Any]:
        def enc(c):
            return GoedelNumber.of(c).to_json()
        return {"g_facts": sorted([[enc(a), enc(b)] for a, b in self.g_facts], key=str),
                "d_facts": sorted([[enc(a), enc(b)] for a, b in self.d_facts], key=str)}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    statement: str
    formula: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {"rule": self.rule, "statement": self.statement}
        if self.formula is not None:
            out["formula"] = self.formula
        return out


@dataclass(frozen=True)
class FixedPoint:
    """A template with free ``x``, its code ``m``, the instance at ``#m``, and that instance's code ``n``."""

    template: Formula
    m: GoedelNumber
    instance: Formula
    n: GoedelNumber
    numerals: str = "abbreviated"

    def to_dict(self) -> dict[str, Any]:
        return {"template": print_formula(self.template), "m": self.m.to_json(),
                "instance": print_formula(self.instance), "n": self.n.to_json(),
                "numerals": self.numerals}


@dataclass(frozen=True)
class DefinabilityReport:
    verdict: ModelVerdict
    witness: dict[str, Any]
    trace: tuple[TraceStep, ...]
    checks: dict[str, bool] = field(default_factory=dict)
    fixed_point: FixedPoint | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {"verdict": self.verdict.value, "witness": self.witness,
               "trace": [s.to_dict() for s in self.trace], "checks": self.checks}
        if self.fixed_point is not None:
            out["fixed_point"] = self.fixed_point.to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def __str__(self) -> str:
        lines = [f"verdict: {self.verdict.value}"]
        lines += [f"  {k}. [{s.rule}] {s.statement}" for k, s in enumerate(self.trace, 1)]
        return "\n".join(lines)


def _null_model_argument(pred: str, names: dict[str, Code], member: str, instance: Formula,
                         instance_text: str, premise_rule: str, premise_text: str, model_text: str,
                         itp_with: Interpretation, itp_without: Interpretation) -> DefinabilityReport:
    """Shared four-step schema: premise, modus ponens, assumed membership, contradiction.

    Statements name codes symbolically (``#i``); the values sit in the
    witness and in each step's ``formula`` field.
    """
    conclusion = Formula(instance.tree.right)
    premise = Formula(instance.tree.left)
    negated = f"!{pred}(#{member})"
    trace = (
        TraceStep(premise_rule, premise_text, print_formula(premise)),
        TraceStep("modus-ponens", f"from the instance {instance_text} and the premise, infer {negated}",
                  print_formula(conclusion)),
        TraceStep("assumption", f"suppose {pred} has a model {model_text}; then {member} ∈ X"),
        TraceStep("contradiction", f"{negated} gives {member} ∉ X, contradicting {member} ∈ X; "
                  "so X is empty"),
    )
    checks = {
        "instance_false_with_member": not evaluate(instance, itp_with),
        "instance_true_with_empty_model": evaluate(instance, itp_without),
    }
    if not all(checks.values()):
        raise AssertionError(f"finite-model check disagrees with the argument: {checks}")
    witness = {"member": GoedelNumber.of(names[member]).to_json(),
               "assumed": f"{member} ∈ X", "derived": f"{member} ∉ X",
               "values": {k: GoedelNumber.of(v).to_json() for k, v in names.items()}}
    return DefinabilityReport(ModelVerdict.NULL, witness, trace, checks)


def check_massiveness_indefinable(i: Code, j: Code, k: Code, facts: FactBase | None = None,
                                  table: SymbolTable | None = None) -> DefinabilityReport:
    """Run the null-model argument for ``M`` in the gauge-symmetric setting.

    Requires that ``G(i, j)`` is not among ``facts`` (no derivation ``j``
    leads from the massless Lagrangian ``i`` to a massive one).  The
    conclusion is double-checked on a finite interpretation: with ``k`` in
    the extension of ``M`` the instance is false, with ``M`` empty it holds.
    """
    facts = facts or FactBase()
    i, j, k = _value(i), _value(j), _value(k)
    if (i, j) in facts.g_facts:
        raise PreconditionViolated("G(i, j) is a supplied fact")
    instance = instantiate_gauge(i, j, k, table)
    domain = frozenset({i, j, k})
    ext_G = frozenset(p for p in facts.g_facts if set(p) <= domain)
    return _null_model_argument(
        "M", {"i": i, "j": j, "k": k}, "k", instance, "(!G(#i,#j) -> !M(#k))",
        "expressibility", "G(i, j) does not hold, so !G(#i,#j) is provable",
        "X = {k | k = g(L_m) and L_m satisfies M}",
        Interpretation(domain, ext_G=ext_G, ext_M=frozenset({k})),
        Interpretation(domain, ext_G=ext_G, ext_M=frozenset()),
    )


def check_massiveness_definable(record: DerivationRecord, table: SymbolTable | None = None
                                ) -> DefinabilityReport:
    """Turn a verified massless-to-massive chain into a member of M's model.

    The chain is re-checked from its expressions before anything is
    concluded; ``j`` is the Gödel number of the derivation, ``i`` and ``k``
    those of its first and last Lagrangians.
    """
    if not record.verified:
        raise UnverifiedDerivation("the derivation record is not Verified")
    recheck = verify_chain(record.steps, record.labels, table)
    if not recheck.verified or recheck.derivation is None:
        raise UnverifiedDerivation("re-checking the chain failed")
    deriv = recheck.derivation
    i = encode_formula(deriv.steps[0], table)
    k = encode_formula(deriv.steps[-1], table)
    j = encode_derivation(deriv, table)
    instance = instantiate_breaking(i, k, j, table)
    domain = frozenset({_value(i), _value(k), _value(j)})
    itp = Interpretation(domain, ext_D=frozenset({(_value(i), _value(k))}), ext_M=frozenset({_value(j)}))
    trace = (
        TraceStep("derivation", f"the chain {' -> '.join(record.labels)} is verified step by step "
                  f"and end to end, so Der(L, L_m) holds"),
        TraceStep("definition", "d(i, k) holds for i = g(L) and k = g(L_m), so D(#i, #k)",
                  print_formula(Formula(instance.tree.left))),
        TraceStep("modus-ponens", "from the instance and D(#i, #k), infer M(#j)",
                  print_formula(Formula(instance.tree.right))),
        TraceStep("model", "X = {j | j = g[Der(L, L_m)]} contains j, so the model of M is not null"),
    )
    checks = {"instance_true": evaluate(instance, itp),
              "witness_decodes_to_chain": decode(j, table) == deriv}
    if not all(checks.values()):
        raise AssertionError(f"finite-model check failed: {checks}")
    witness = {"member": j.to_json(), "lagrangian_codes": [i.to_json(), k.to_json()],
               "steps": len(deriv)}
    return DefinabilityReport(ModelVerdict.NON_NULL, witness, trace, checks)


def nonequivalence_candidates() -> Iterator[Interpretation]:
    """All interpretations over the one-element domain {0} for G, D and M."""
    pair, elem = frozenset({(0, 0)}), frozenset({0})
    for g, d, m in itertools.product((False, True), repeat=3):
        yield Interpretation(frozenset({0}), ext_G=pair if g else frozenset(),
                             ext_D=pair if d else frozenset(), ext_M=elem if m else frozenset())


def check_nonequivalence(table: SymbolTable | None = None) -> Interpretation:
    """First interpretation on which the closures of the two schemas disagree."""
    gauge = universal_closure(build_gauge_formula(table))
    breaking = universal_closure(build_breaking_formula(table))
    for itp in nonequivalence_candidates():
        if evaluate(gauge, itp) != evaluate(breaking, itp):
            return itp
    raise NoCounterexample("the two schemas agree on every one-element interpretation")


# ---------------------------------------------------------------- diagonal demos

def _fixed_point(template_text: str, table: SymbolTable | None, numerals: str) -> FixedPoint:
    if numerals not in ("abbreviated", "successor"):
        raise ValueError("numerals must be 'abbreviated' or 'successor'")
    template = parse_formula(template_text, table)
    m = encode_formula(template, table)
    numeral = Numeral(_value(m), abbreviated=(numerals == "abbreviated"))
    instance = substitute(template, "x", numeral, table)
    n = encode_formula(instance, table)
    return FixedPoint(template, m, instance, n, numerals)


@dataclass(frozen=True)
class Assumption:
    name: str
    statement: str
    status: str = "assumption-not-verified"

    def to_dict(self) -> dict[str, str]:
        return {"name": self.name, "statement": self.statement, "status": self.status}


@dataclass(frozen=True)
class SentenceDemoReport:
    fixed_point: FixedPoint
    facts: FactBase
    steps: tuple[TraceStep, ...]
    assumptions: tuple[Assumption, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"fixed_point": self.fixed_point.to_dict(), "facts": self.facts.to_json(),
                "steps": [s.to_dict() for s in self.steps],
                "assumptions": [a.to_dict() for a in self.assumptions]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def __str__(self) -> str:
        fp = self.fixed_point
        lines = [f"P(x) = {print_formula(fp.template)}", f"m = g(P(x)) = {fp.m}",
                 f"S = P(#m) = {print_formula(fp.instance)}", f"n = g(S) = {fp.n}", ""]
        lines += [f"[{s.rule}] {s.statement}" for s in self.steps]
        lines += [""] + [f"assumption ({a.status}): {a.name}: {a.statement}" for a in self.assumptions]
        return "\n".join(lines)


def goedel_sentence_demo(table: SymbolTable | None = None, numerals: str = "abbreviated") -> SentenceDemoReport:
    """Build the self-referential sentence for unprovability and narrate both halves.

    Nothing here proves anything about arithmetic; the fixed point is
    computed exactly and the argument's assumptions are listed as such.
    """
    fp = _fixed_point(PROVABILITY_TEMPLATE, table, numerals)
    steps = (
        TraceStep("construction", f"P(x) = {print_formula(fp.template)} has code m",
                  print_formula(fp.template)),
        TraceStep("diagonalization", "S = P(#m) = forall y. !G(#m,y) has code n; "
                  "S says that no y codes a proof of the formula coded by m",
                  print_formula(fp.instance)),
        TraceStep("S-unprovable",
                  "suppose S had a proof with code j; then G(m, j) holds, so by expressibility "
                  "G(#m, #j) is provable, while S yields !G(#m, #j); contradiction"),
        TraceStep("not-S-unprovable",
                  "suppose !S were provable; by consistency S has no proof, so G(m, j) fails for "
                  "every j and each !G(#m, #j) is provable; omega-consistency then gives "
                  "forall y. !G(#m,y), which is S; contradiction"),
        TraceStep("conclusion", "neither S nor !S is provable; S is true but unprovable"),
    )
    assumptions = (
        Assumption("expressibility", "G(#i,#j) is provable when G(i,j) holds and !G(#i,#j) "
                   "is provable when it fails"),
        Assumption("consistency", "no formula is provable together with its negation"),
        Assumption("omega-consistency", "if !G(#m,#j) is provable for every numeral j then "
                   "forall y. !G(#m,y) is provable"),
    )
    return SentenceDemoReport(fp, FactBase(d_facts=frozenset({(fp.m, fp.n)})), steps, assumptions)


def tarski_sentence_demo(table: SymbolTable | None = None, numerals: str = "abbreviated") -> DefinabilityReport:
    """Diagonalize ``forall y. (D(x,y) -> !T(y))`` and show T's model must be empty."""
    fp = _fixed_point(TRUTH_TEMPLATE, table, numerals)
    m, n = _value(fp.m), _value(fp.n)
    facts = FactBase(d_facts=frozenset({(m, n)}))
    # B(#m) instantiated at y := n, i.e. at its own code
    instance = substitute(Formula(fp.instance.tree.body), "y", Numeral(n), table)
    domain = frozenset({m, n})
    ext_D = frozenset(facts.d_facts)
    report = _null_model_argument(
        "T", {"m": m, "Lg": n}, "Lg", instance, "(D(#m,#Lg) -> !T(#Lg))",
        "definition", "Lg = g(B(#m)), so d(m, Lg) holds and D(#m,#Lg) is provable",
        "X = {Lg | L = B(#m) is presupposed true under X, Lg = g(L)}",
        Interpretation(domain, ext_D=ext_D, ext_T=frozenset({n})),
        Interpretation(domain, ext_D=ext_D, ext_T=frozenset()),
    )
    return DefinabilityReport(report.verdict, report.witness, report.trace, report.checks, fp)
