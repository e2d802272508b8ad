import math

import pytest

from gaugelogic.codec import (
    CodeKind,
    InvalidCode,
    classify,
    decode,
    encode_derivation,
    encode_formula,
    encode_symbol,
)
from gaugelogic.gnumber import GoedelNumber
from gaugelogic.primes import nth_prime
from gaugelogic.syntax import ALL, NEG, Derivation, Formula, SymbolEntry, parse_formula

from corpus import derivation_corpus


def independent_code(codes):
    """Prime-power product computed without the codec."""
    return math.prod(nth_prime(i) ** c for i, c in enumerate(codes, start=1))


def test_encode_symbol_examples(table):
    assert encode_symbol(NEG, table) == 1
    assert encode_symbol(ALL, table) == 5
    assert encode_symbol("G", table) == 25
    assert encode_symbol(table["="]) == 13


@pytest.mark.parametrize("tokens, value", [
    ((NEG,), 2),
    ((NEG, NEG), 6),
    ((ALL, "y", NEG), 20_662_426_080),
])
def test_encode_formula_examples(table, tokens, value):
    assert encode_formula(Formula(tokens=tokens), table) == value
    assert decode(value, table).tokens == tokens


def test_encode_matches_independent_product(formulas, table):
    for f in formulas[:200]:
        codes = [table.ensure(t, "numeral-abbrev").code for t in f.tokens]
        assert encode_formula(f, table) == independent_code(codes)


def test_encode_derivation_examples(table):
    one, two = Formula(tokens=(NEG,)), Formula(tokens=(NEG, NEG))
    assert encode_derivation(Derivation((one, two)), table) == 2916
    assert encode_derivation(Derivation((one,)), table) == 4
    assert encode_derivation(Derivation((one, two)), table, form="exact").exact == 2916
    back = decode(2916, table)
    assert isinstance(back, Derivation) and back == Derivation((one, two))


def test_formula_forms(table):
    f = parse_formula("forall y. !G(x,y)", table)
    exact = encode_formula(f, table, form="exact")
    factored = encode_formula(f, table, form="factored")
    assert exact.is_exact and not factored.is_exact
    assert exact == factored
    assert [e.exact for e in factored.exponents] == [table[t].code for t in f.tokens]
    with pytest.raises(ValueError):
        encode_formula(f, table, form="roman")


def test_long_formula_switches_to_factored(table):
    f = parse_formula("(" * 30 + "M(z)" + " -> M(z))" * 30, table)
    g = encode_formula(f, table)
    assert not g.is_exact
    assert decode(g, table) == f


def test_decode_derivation_cross_checked_by_exact_factoring(table):
    a, b = Formula(tokens=(NEG,)), Formula(tokens=(NEG, "→"))
    d = Derivation((a, b))
    factored = encode_derivation(d, table)
    exact = factored.to_exact()
    assert exact.exact == 2 ** int(encode_formula(a, table)) * 3 ** int(encode_formula(b, table))
    assert decode(exact, table) == d


@pytest.mark.parametrize("n, text", [
    (7, "SymbolCode"),
    (13, "SymbolCode"),
    (6, "FormulaCode"),
    (2916, "DerivationCode"),
    (10, "Invalid(gap at prime index 2)"),
    (18, "Invalid(mixed-parity)"),
    (243, "Invalid(unregistered)"),
    (2 * 3**4, "Invalid(mixed-parity)"),
    (2**4, "Invalid(exponent is not a formula code)"),
    (2**37, "Invalid(unregistered symbol code)"),
    (1, "SymbolCode"),
])
def test_classify_examples(table, n, text):
    assert str(classify(n, table)) == text


def test_classify_too_long(table):
    n = math.prod(nth_prime(i) for i in range(1, 12))
    assert str(classify(n, table, ceiling=10)) == "Invalid(too-long)"
    assert classify(n, table).kind is CodeKind.FORMULA


def test_decode_invalid(table):
    with pytest.raises(InvalidCode) as info:
        decode(10, table)
    assert info.value.reason == "gap at prime index 2"


def test_decode_symbol(table):
    entry = decode(25, table)
    assert isinstance(entry, SymbolEntry) and entry.name == "G"


def test_injectivity_on_corpus(formulas, derivations, table):
    formula_codes = {}
    for f in formulas:
        formula_codes.setdefault(encode_formula(f, table), set()).add(f.tokens)
    assert all(len(v) == 1 for v in formula_codes.values())
    derivation_codes = {}
    for d in derivations:
        derivation_codes.setdefault(encode_derivation(d, table), set()).add(
            tuple(s.tokens for s in d.steps))
    assert all(len(v) == 1 for v in derivation_codes.values())


def test_parity_law(formulas, table):
    assert all(encode_symbol(e).exact % 2 == 1 for e in table)
    assert all(encode_formula(f, table).is_even() for f in formulas)


def test_derivation_round_trip_other_seed(seed, table):
    for d in derivation_corpus(seed + 99, 50):
        assert decode(encode_derivation(d, table), table) == d


def test_json_of_derivation_code(table):
    d = Derivation((Formula(tokens=(NEG,)), Formula(tokens=(NEG, NEG))))
    g = encode_derivation(d, table)
    assert g.to_json() == [[1, "2"], [2, "6"]]
    assert decode(GoedelNumber.from_json(g.to_json()), table) == d
