import json
import random
from fractions import Fraction

import pytest

from gaugelogic import higgs
from gaugelogic.codec import CodeKind, classify, decode, encode_derivation
from gaugelogic.fields import normalize, numeric_eval, parse_expr, print_expr
from gaugelogic.higgs import (
    CHAIN_TERMS,
    DerivationRecord,
    Verdict,
    build_lagrangian,
    chain_steps,
    has_mass_term,
    lagrangian_formula,
    massless_lagrangian_formula,
    mutated_chain,
    verify_chain,
    verify_higgs_chain,
    verify_lemmas,
    verify_step,
)
from gaugelogic.syntax import Derivation

POINT = {"A": 0.3, "dtheta": 0.7, "dchi": -0.2, "chi": 0.5, "theta": 1.1, "e": 0.9,
         "mu": 1.3, "lambda": 0.8, "F": 2.0}


@pytest.fixture(scope="module")
def steps():
    return chain_steps()


@pytest.mark.parametrize("a, b", [("H1", "H2"), ("H2", "H3"), ("H3", "H4"), ("H1", "H4")])
def test_adjacent_steps_verify(steps, a, b):
    check = verify_step(steps[a], steps[b], (a, b))
    assert check.verdict is Verdict.VERIFIED
    assert check.residual.is_zero()


def test_numeric_spot_check(steps):
    values = [numeric_eval(steps[k], POINT) for k in ("H1", "H2", "H3", "H4")]
    assert all(abs(v - values[0]) < 1e-9 for v in values)
    assert abs(values[0].imag) < 1e-12


@pytest.mark.parametrize("name, lhs, rhs", higgs.LEMMAS)
def test_lemmas(name, lhs, rhs):
    assert verify_step(lhs, rhs).verified, name


def test_verify_lemmas_all():
    assert all(c.verified for c in verify_lemmas())


def test_mass_term_only_after_breaking(steps):
    assert has_mass_term(steps["H3"]) and has_mass_term(steps["H4"])
    assert not has_mass_term(steps["H1"]) and not has_mass_term(steps["H2"])


def test_record_shape(steps):
    record = verify_higgs_chain()
    assert record.verified and record.labels == ("H1", "H2", "H3", "H4")
    d = record.derivation
    assert isinstance(d, Derivation) and len(d) == 4
    assert d.kind == "cas-verified" and d.certificate is record
    assert all(s.tokens[:2] == ("L", "=") for s in d.steps)


def test_exported_chain_is_a_derivation_code(table):
    record = verify_higgs_chain(table)
    g = encode_derivation(record.derivation, table)
    assert classify(g, table).kind is CodeKind.DERIVATION
    assert [i for i, _ in g.factors] == [1, 2, 3, 4]
    assert decode(g, table) == record.derivation


def test_printed_lagrangians_reparse(steps, table):
    for x in steps.values():
        f = lagrangian_formula(x, table)
        assert parse_expr(" ".join(f.tokens[2:])) == x
        assert parse_expr(print_expr(x)) == x


def test_record_json_round_trip(table):
    record = verify_higgs_chain(table)
    data = json.loads(record.to_json())
    assert data["overall"] == "Verified"
    assert [c["verdict"] for c in data["checks"]] == ["Verified"] * 4
    again = DerivationRecord.from_dict(data, table)
    assert again.verified and again.derivation == record.derivation


def test_record_ignores_stored_verdicts(table):
    data = json.loads(verify_higgs_chain(table).to_json())
    data["steps"][3]["expr"] = data["steps"][3]["expr"].replace("1/2", "1/3", 1)
    assert DerivationRecord.from_dict(data, table).verdict is Verdict.MISMATCH
    with pytest.raises(ValueError):
        DerivationRecord.from_dict({"steps": [{"label": "H1"}]}, table)


def test_single_mutation_residual():
    tampered = mutated_chain("H3", 4, Fraction(-1, 4))
    check = verify_step(tampered["H2"], tampered["H3"])
    assert check.verdict is Verdict.MISMATCH
    assert check.residual == normalize("1/4*dchi^2")
    assert check.to_dict()["residual"] == [{"coeff": "1/4", "powers": {"dchi": 2}}]


def test_every_coefficient_mutation_is_caught(seed):
    rng = random.Random(seed)
    for label in ("H2", "H3", "H4"):
        for index in range(len(CHAIN_TERMS[label])):
            delta = Fraction(rng.choice((-3, -1, 1, 2, 5)), rng.choice((1, 2, 4)))
            record = verify_chain(list(mutated_chain(label, index, delta).values()))
            assert not record.verified
            assert record.derivation is None


def test_massless_variant_has_opposite_potential(table):
    variant = build_lagrangian(higgs.MASSLESS_VARIANT_TERMS)
    h1 = chain_steps()["H1"]
    diff = normalize(h1 - variant, eliminate=False)
    assert diff == normalize("2*mu^2*dagger(phi)*phi - 2*lambda*(dagger(phi)*phi)^2", eliminate=False)
    assert massless_lagrangian_formula(table).well_formed


def test_chain_needs_two_steps(steps):
    with pytest.raises(ValueError):
        verify_chain([steps["H1"]])


def test_build_lagrangian_signs():
    x = build_lagrangian(((Fraction(-1, 4), "F"), (Fraction(1), "chi"), (Fraction(-2), "mu")))
    assert normalize(x) == normalize("-1/4*F + chi - 2*mu")
