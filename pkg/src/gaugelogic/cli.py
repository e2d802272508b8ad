"""Command-line entry point.

Exit codes: 0 success, 1 a check failed (Mismatch, an unexpected verdict, or
a precondition of the argument not met), 2 malformed input, 3 a number
that is not a valid Gödel code.  ``--json`` output is deterministic; the
plain-text output is for people and may change.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import codec, fields, higgs, kernel, syntax
from .gnumber import GoedelNumber, NotRepresentable
from .primes import FactorLimitExceeded, factor, nth_prime

OK, CHECK_FAILED, BAD_INPUT, INVALID_CODE = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


def _emit(args: argparse.Namespace, text: str, data: Any) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def _read_code(text: str) -> GoedelNumber:
    text = text.strip()
    try:
        if text.startswith("["):
            return GoedelNumber.from_json(json.loads(text))
        return GoedelNumber.from_json(text)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"not a Gödel number: {exc}") from None


def _read_text(args: argparse.Namespace) -> str:
    if args.file:
        return Path(args.file).read_text(encoding="utf-8")
    if not args.text:
        raise ValueError("no input given")
    return "\n".join(args.text)


def _formula_json(f: syntax.Formula) -> dict[str, Any]:
    out: dict[str, Any] = {"text": syntax.print_formula(f), "tokens": list(f.tokens),
                           "well_formed": f.well_formed}
    if f.well_formed:
        out["free_vars"] = sorted(f.free_vars)
    return out


# ---------------------------------------------------------------- codec

def _cmd_encode(args, table) -> int:
    if args.kind == "symbol":
        if len(args.text or []) != 1:
            raise ValueError("encode --kind symbol takes exactly one symbol")
        g = codec.encode_symbol(args.text[0], table)
    elif args.kind == "formula":
        g = codec.encode_formula(syntax.parse_formula(_read_text(args), table), table, args.format)
    else:
        g = codec.encode_derivation(syntax.read_derivation(_read_text(args), table), table,
                                    args.format or "factored")
    _emit(args, str(g), {"kind": args.kind, "code": g.to_json()})
    return OK


def _cmd_decode(args, table) -> int:
    obj = codec.decode(_read_code(args.code), table)
    if isinstance(obj, syntax.SymbolEntry):
        _emit(args, f"{obj.name} ({obj.kind})",
              {"kind": "symbol", "name": obj.name, "code": obj.code, "symbol_kind": obj.kind})
    elif isinstance(obj, syntax.Formula):
        _emit(args, syntax.print_formula(obj), {"kind": "formula", **_formula_json(obj)})
    else:
        _emit(args, syntax.format_derivation(obj).rstrip("\n"),
              {"kind": "derivation", "steps": [_formula_json(s) for s in obj.steps]})
    return OK


def _cmd_classify(args, table) -> int:
    cls = codec.classify(_read_code(args.code), table)
    _emit(args, str(cls), {"kind": cls.kind.value, "reason": cls.reason})
    return OK if cls.valid else INVALID_CODE


def _cmd_factor(args, table) -> int:
    g = _read_code(args.number)
    n = g.to_exact().exact
    if n < 2:
        raise ValueError("factor needs a number >= 2")
    pairs = factor(n)
    text = " * ".join(f"{nth_prime(i)}^{e}" if e > 1 else str(nth_prime(i)) for i, e in pairs)
    _emit(args, text, [{"index": i, "prime": nth_prime(i), "exponent": e} for i, e in pairs])
    return OK


def _cmd_parse(args, table) -> int:
    f = syntax.parse_formula(_read_text(args), table)
    free = ", ".join(sorted(f.free_vars)) or "none"
    _emit(args, f"{syntax.print_formula(f)}\nfree variables: {free}", _formula_json(f))
    return OK


# ---------------------------------------------------------------- logic

def _cmd_check_indef(args, table) -> int:
    facts = kernel.FactBase()
    if args.facts:
        try:
            facts = kernel.FactBase.from_json(json.loads(Path(args.facts).read_text(encoding="utf-8")))
        except (json.JSONDecodeError, AttributeError) as exc:
            raise ValueError(f"bad facts file: {exc}") from None
    try:
        report = kernel.check_massiveness_indefinable(
            _read_code(args.i), _read_code(args.j), _read_code(args.k), facts, table)
    except kernel.PreconditionViolated as exc:
        _emit(args, f"precondition violated: {exc}", {"error": "PreconditionViolated", "detail": str(exc)})
        return CHECK_FAILED
    _emit(args, str(report), report.to_dict())
    return OK if report.verdict is kernel.ModelVerdict.NULL else CHECK_FAILED


def _cmd_check_def(args, table) -> int:
    if args.cert:
        try:
            data = json.loads(Path(args.cert).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad certificate file: {exc}") from None
        record = higgs.DerivationRecord.from_dict(data, table)
    else:
        record = higgs.verify_higgs_chain(table)
    try:
        report = kernel.check_massiveness_definable(record, table)
    except kernel.UnverifiedDerivation as exc:
        _emit(args, f"unverified derivation: {exc}\n{record.to_json()}",
              {"error": "UnverifiedDerivation", "detail": str(exc), "record": record.to_dict()})
        return CHECK_FAILED
    _emit(args, str(report), report.to_dict())
    return OK if report.verdict is kernel.ModelVerdict.NON_NULL else CHECK_FAILED


def _cmd_nonequiv(args, table) -> int:
    itp = kernel.check_nonequivalence(table)
    gauge = kernel.universal_closure(kernel.build_gauge_formula(table))
    breaking = kernel.universal_closure(kernel.build_breaking_formula(table))
    values = {"gauge": kernel.evaluate(gauge, itp), "breaking": kernel.evaluate(breaking, itp)}
    text = (f"interpretation: {json.dumps(itp.to_dict())}\n"
            f"{syntax.print_formula(gauge)}: {values['gauge']}\n"
            f"{syntax.print_formula(breaking)}: {values['breaking']}")
    _emit(args, text, {"interpretation": itp.to_dict(), "closures": {
        "gauge": syntax.print_formula(gauge), "breaking": syntax.print_formula(breaking)}, "values": values})
    return OK


def _cmd_demo(args, table) -> int:
    if args.which == "goedel":
        report = kernel.goedel_sentence_demo(table, args.numerals)
        _emit(args, str(report), report.to_dict())
        return OK
    report = kernel.tarski_sentence_demo(table, args.numerals)
    fp = report.fixed_point
    text = (f"A(x) = {syntax.print_formula(fp.template)}\nm = {fp.m}\n"
            f"B(#m) = {syntax.print_formula(fp.instance)}\nn = {fp.n}\n{report}")
    _emit(args, text, report.to_dict())
    return OK if report.verdict is kernel.ModelVerdict.NULL else CHECK_FAILED


# ---------------------------------------------------------------- field algebra

def _cmd_higgs(args, table) -> int:
    steps = higgs.chain_steps()
    labels = list(steps)
    if args.step is not None:
        a, b = labels[args.step - 1], labels[args.step]
        check = higgs.verify_step(steps[a], steps[b], (a, b))
        text = f"{a} -> {b}: {check.verdict.value}"
        if not check.verified:
            text += "\nresidual:\n" + str(check.residual)
        _emit(args, text, check.to_dict())
        return OK if check.verified else CHECK_FAILED
    record = higgs.verify_higgs_chain(table)
    lines = [f"{c.lhs} -> {c.rhs}: {c.verdict.value}" for c in record.checks]
    lines.append(f"overall: {record.verdict.value}")
    lines.append(f"mass term in {labels[-1]}: {higgs.has_mass_term(steps[labels[-1]])}")
    _emit(args, "\n".join(lines), record.to_dict())
    return OK if record.verified else CHECK_FAILED


def _cmd_normalize(args, table) -> int:
    nf = fields.normalize(fields.parse_expr(" ".join(args.expr)), eliminate=not args.raw)
    _emit(args, str(nf), nf.to_json())
    return OK


def _parse_assignment(text: str) -> dict[str, float]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected name=value, got {item!r}")
        out[name.strip()] = float(value)
    return out


def _cmd_eval(args, table) -> int:
    try:
        z = fields.numeric_eval(fields.parse_expr(" ".join(args.expr)), _parse_assignment(args.assign))
    except KeyError as exc:
        raise ValueError(str(exc.args[0])) from None
    _emit(args, f"{z.real!r} + {z.imag!r}i" if z.imag else repr(z.real), {"re": z.real, "im": z.imag})
    return OK


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="gaugelogic", description="Gödel numbering, definability checks and "
                     "Higgs-chain verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("encode", _cmd_encode, "Gödel number of a symbol, formula or derivation")
    p.add_argument("--kind", choices=("symbol", "formula", "derivation"), default="formula")
    p.add_argument("--format", choices=("exact", "factored"))
    p.add_argument("--file", help="read the input from a UTF-8 file")
    p.add_argument("text", nargs="*", help="input text; one formula per argument for derivations")

    p = add("decode", _cmd_decode, "recover what a Gödel number codes")
    p.add_argument("code", help="decimal string or JSON factor list")

    p = add("classify", _cmd_classify, "symbol, formula, derivation or invalid code")
    p.add_argument("code")

    p = add("factor", _cmd_factor, "prime factorization by trial division")
    p.add_argument("number")

    p = add("parse", _cmd_parse, "parse and print a formula in canonical form")
    p.add_argument("--file")
    p.add_argument("text", nargs="*")

    p = add("check-indef", _cmd_check_indef, "null-model argument for the mass predicate")
    p.add_argument("--i", required=True, help="code of the massless Lagrangian")
    p.add_argument("--j", required=True, help="code of the (absent) derivation")
    p.add_argument("--k", required=True, help="code of the massive Lagrangian")
    p.add_argument("--facts", help="JSON file with g_facts and d_facts pairs")

    p = add("check-def", _cmd_check_def, "definability witness from a verified chain")
    p.add_argument("--cert", help="DerivationRecord JSON (default: the built-in chain)")

    add("nonequiv", _cmd_nonequiv, "interpretation separating the two schemas")

    p = add("demo", _cmd_demo, "self-referential sentence constructions")
    p.add_argument("which", choices=("goedel", "tarski"))
    p.add_argument("--numerals", choices=("abbreviated", "successor"), default="abbreviated")

    p = add("higgs", _cmd_higgs, "verify the massless-to-massive Lagrangian chain")
    p.add_argument("action", choices=("verify",))
    p.add_argument("--step", type=int, choices=(1, 2, 3), help="check one adjacent pair only")
    p.add_argument("--all", action="store_true", help="check every pair (the default)")

    p = add("normalize", _cmd_normalize, "canonical polynomial form of a field expression")
    p.add_argument("--raw", action="store_true", help="keep v, M, rho, B, lambda unexpanded")
    p.add_argument("expr", nargs="+")

    p = add("eval", _cmd_eval, "evaluate a field expression numerically")
    p.add_argument("--assign", required=True, help="comma-separated name=value pairs")
    p.add_argument("expr", nargs="+")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return BAD_INPUT
    except SystemExit as exc:  # --help
        return OK if not exc.code else BAD_INPUT
    table = syntax.SymbolTable()
    try:
        return args.func(args, table)
    except codec.InvalidCode as exc:
        print(f"invalid code: {exc.reason}", file=sys.stderr)
        return INVALID_CODE
    except (syntax.ParseError, fields.ParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (ValueError, LookupError, OSError, NotRepresentable, FactorLimitExceeded,
            ZeroDivisionError, fields.DerivativeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


def main() -> None:
    sys.exit(run())
