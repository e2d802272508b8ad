"""Acceptance gate: one test per criterion, each reported as PASS/FAIL in the
terminal summary (see conftest)."""

import random
import time
from fractions import Fraction

import pytest
import sympy

from gaugelogic import codec, fields, higgs, kernel
from gaugelogic.codec import CodeKind
from gaugelogic.syntax import ALL, NEG, Derivation, Formula, SymbolTable, print_formula


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def relative_gap(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def random_assignment(rng: random.Random) -> dict[str, float]:
    return {
        "A": rng.uniform(-2, 2), "dtheta": rng.uniform(-2, 2), "dchi": rng.uniform(-2, 2),
        "chi": rng.uniform(-2, 2), "theta": rng.uniform(-3.2, 3.2), "F": rng.uniform(-2, 2),
        "e": rng.choice((-1, 1)) * rng.uniform(0.2, 2), "mu": rng.uniform(0.2, 2),
        "lambda": rng.uniform(0.2, 2),
    }


@criterion(1, "codec round-trip on 1000 formulas and 100 derivations in < 5 s")
def test_codec_round_trip(formulas, derivations):
    table = SymbolTable()
    start = time.perf_counter()
    bad_f = [f for f in formulas if codec.decode(codec.encode_formula(f, table), table) != f]
    bad_d = [d for d in derivations if codec.decode(codec.encode_derivation(d, table), table) != d]
    elapsed = time.perf_counter() - start
    print(f"\n  {len(formulas)} formulas, {len(derivations)} derivations in {elapsed:.2f} s")
    assert len(formulas) >= 1000 and max(len(f) for f in formulas) <= 12
    assert len(derivations) >= 100 and max(len(d) for d in derivations) <= 4
    assert not bad_f and not bad_d
    assert elapsed < 5.0


@criterion(2, "[∀, y, ¬] encodes to 2^5·3^17·5 = 20,662,426,080 and decodes back")
def test_hand_check():
    table = SymbolTable()
    expected = 2**5 * 3**17 * 5**1
    assert expected == 20_662_426_080
    assert sympy.factorint(expected) == {2: 5, 3: 17, 5: 1}
    f = Formula(tokens=(ALL, "y", NEG))
    g = codec.encode_formula(f, table)
    assert int(g) == expected
    back = codec.decode(expected, table)
    assert back.tokens == (ALL, "y", NEG)
    assert back == f


@criterion(3, "parity and classification laws on the corpus; Invalid on gaps and mixed parity")
def test_parity_and_classification(formulas, derivations):
    table = SymbolTable()
    for entry in table:
        g = codec.encode_symbol(entry)
        assert int(g) % 2 == 1
        assert codec.classify(g, table).kind is CodeKind.SYMBOL
    for f in formulas:
        g = codec.encode_formula(f, table)
        assert g.is_even()
        assert codec.classify(g, table).kind is CodeKind.FORMULA
    for d in derivations:
        g = codec.encode_derivation(d, table)
        assert g.is_even()
        assert codec.classify(g, table).kind is CodeKind.DERIVATION
    # 2·5 skips 3; 2^1·3^2 mixes an odd symbol exponent with an even one
    assert str(codec.classify(10, table)) == "Invalid(gap at prime index 2)"
    assert str(codec.classify(2 * 3**2, table)) == "Invalid(mixed-parity)"
    assert str(codec.classify(2**2 * 3 * 7, table)).startswith("Invalid(gap")


@criterion(4, "Higgs chain verified pairwise and end to end in < 10 s; final displays reproduced")
def test_higgs_chain():
    start = time.perf_counter()
    record = higgs.verify_higgs_chain(SymbolTable())
    elapsed = time.perf_counter() - start
    pairs = [(c.lhs, c.rhs) for c in record.checks]
    assert pairs == [("H1", "H2"), ("H2", "H3"), ("H3", "H4"), ("H1", "H4")]
    assert all(c.verdict is higgs.Verdict.VERIFIED for c in record.checks)
    assert record.verdict is higgs.Verdict.VERIFIED
    assert elapsed < 10.0

    cov = "(d(phi) - i*e*A*phi)"
    assert fields.normalize(f"dagger{cov} * {cov}") == fields.normalize("drho^2 + rho^2*(dtheta - e*A)^2")
    potential = fields.normalize("mu^2*rho^2 - lambda*rho^4")
    display = fields.normalize("mu^4/(4*lambda) - mu^2*chi^2 - sqrtlambda*mu*chi^3 - lambda/4*chi^4")
    assert potential == display

    # independent expansion of the same potential
    mu, lam, chi = sympy.symbols("mu lambda chi", positive=True)
    rho = (mu / sympy.sqrt(lam) + chi) / sympy.sqrt(2)
    lhs = sympy.expand(mu**2 * rho**2 - lam * rho**4)
    rhs = mu**4 / (4 * lam) - mu**2 * chi**2 - sympy.sqrt(lam) * mu * chi**3 - lam / 4 * chi**4
    assert sympy.simplify(lhs - rhs) == 0

    h4 = higgs.chain_steps()["H4"]
    assert higgs.has_mass_term(h4)
    assert fields.normalize(h4, eliminate=False).coefficient({"M": 2, "B": 2}) == Fraction(1, 2)


@criterion(5, "numeric oracle agrees on every chain pair at 20 random points (rel. < 1e-9)")
def test_oracle_agreement(seed):
    rng = random.Random(seed)
    steps = higgs.chain_steps()
    labels = list(steps)
    pairs = list(zip(labels, labels[1:])) + [(labels[0], labels[-1])]
    worst = 0.0
    for _ in range(20):
        a = random_assignment(rng)
        for x, y in pairs:
            gap = relative_gap(fields.numeric_eval(steps[x], a), fields.numeric_eval(steps[y], a))
            worst = max(worst, gap)
            assert gap < 1e-9, (x, y, a)
    print(f"\n  worst relative gap {worst:.2e}")


# (label, term index, delta): ten single-coefficient tamperings of H2, H3, H4
TAMPERINGS = [
    ("H2", 1, Fraction(1, 2)), ("H2", 2, Fraction(-1, 2)), ("H2", 3, Fraction(1, 3)),
    ("H3", 1, Fraction(1, 2)), ("H3", 2, Fraction(-1)), ("H3", 4, Fraction(-1, 4)),
    ("H4", 1, Fraction(1, 4)), ("H4", 5, Fraction(-1, 4)), ("H4", 7, Fraction(2)),
    ("H4", 8, Fraction(1, 2)),
]


@criterion(6, "10 single-coefficient tamperings each give Mismatch with nonzero residual")
def test_mutation_sensitivity():
    assert len(set(TAMPERINGS)) == 10
    false_verified = 0
    for label, index, delta in TAMPERINGS:
        steps = higgs.mutated_chain(label, index, delta)
        record = higgs.verify_chain(list(steps.values()), list(steps))
        touched = [c for c in record.checks if label in (c.lhs, c.rhs)]
        false_verified += record.verified
        assert touched and all(c.verdict is higgs.Verdict.MISMATCH for c in touched)
        assert all(not c.residual.is_zero() for c in touched)
    assert false_verified == 0

    # changing H3's (∂χ)² coefficient from 1/2 to 1/4 leaves exactly 1/4 (∂χ)²
    tampered = higgs.mutated_chain("H3", 4, Fraction(-1, 4))
    check = higgs.verify_step(tampered["H2"], tampered["H3"])
    assert check.verdict is higgs.Verdict.MISMATCH
    assert check.residual == fields.normalize("1/4 * dchi^2")


@criterion(7, "indefinability run: NullModel with the four-step trace")
def test_indefinability_run(seed):
    table = SymbolTable()
    i = codec.encode_formula(higgs.massless_lagrangian_formula(table), table)
    rng = random.Random(seed)
    j, k = 2 * rng.randrange(1, 10**9), 2 * rng.randrange(1, 10**9)
    report = kernel.check_massiveness_indefinable(i, j, k, kernel.FactBase(), table)
    assert report.verdict is kernel.ModelVerdict.NULL
    assert [s.rule for s in report.trace] == ["expressibility", "modus-ponens", "assumption",
                                              "contradiction"]
    assert report.trace[1].formula == f"!M(#{k})"
    assert report.witness["assumed"] == "k ∈ X" and report.witness["derived"] == "k ∉ X"
    assert all(report.checks.values())


@criterion(8, "definability run: NonNullModel whose witness is the chain's derivation code")
def test_definability_run():
    table = SymbolTable()
    record = higgs.verify_higgs_chain(table)
    report = kernel.check_massiveness_definable(record, table)
    assert report.verdict is kernel.ModelVerdict.NON_NULL
    j = codec.encode_derivation(record.derivation, table)
    assert report.witness["member"] == j.to_json()
    assert codec.classify(j, table).kind is CodeKind.DERIVATION
    decoded = codec.decode(j, table)
    assert isinstance(decoded, Derivation) and len(decoded) == 4
    assert decoded == record.derivation


@criterion(9, "non-equivalence: a one-element interpretation separates the two closures")
def test_nonequivalence():
    candidates = list(kernel.nonequivalence_candidates())
    assert len(candidates) == 8 and len(set(candidates)) == 8
    itp = kernel.check_nonequivalence(SymbolTable())
    assert itp.domain == {0}
    assert (itp.ext_G, itp.ext_D, itp.ext_M) == (frozenset(), frozenset(), frozenset({0}))

    gauge = kernel.universal_closure(kernel.build_gauge_formula(SymbolTable()))
    breaking = kernel.universal_closure(kernel.build_breaking_formula(SymbolTable()))
    assert kernel.evaluate(gauge, itp) is False
    assert kernel.evaluate(breaking, itp) is True

    # hand truth table over the single element: (¬G → ¬M) versus (D → M)
    def oracle(g, d, m):
        return (g or not m), (not d or m)
    separating = [c for c in candidates
                  if len(set(oracle((0, 0) in c.ext_G, (0, 0) in c.ext_D, 0 in c.ext_M))) == 2]
    assert separating[0] == itp
    for c in candidates:
        assert (kernel.evaluate(gauge, c), kernel.evaluate(breaking, c)) == oracle(
            (0, 0) in c.ext_G, (0, 0) in c.ext_D, 0 in c.ext_M)


@criterion(10, "self-reference demos: decode(n) is the substitution instance; Tarski gives NullModel")
def test_diagonal_demos():
    table = SymbolTable()
    goedel = kernel.goedel_sentence_demo(table)
    fp = goedel.fixed_point
    assert fp.m != fp.n
    assert codec.decode(fp.n, table) == fp.instance
    assert print_formula(fp.instance) == f"forall y. !G(#{fp.m},y)"
    assert (fp.m, fp.n) in {(a, b) for a, b in goedel.facts.d_facts}
    assert "omega-consistency" in {a.name for a in goedel.assumptions}
    assert all(a.status == "assumption-not-verified" for a in goedel.assumptions)

    tarski = kernel.tarski_sentence_demo(table)
    tp = tarski.fixed_point
    assert codec.decode(tp.n, table) == tp.instance
    assert print_formula(tp.instance) == f"forall y. (D(#{tp.m},y) -> !T(y))"
    assert tarski.verdict is kernel.ModelVerdict.NULL
    assert tarski.witness["assumed"] == "Lg ∈ X" and tarski.witness["derived"] == "Lg ∉ X"
