import json
import math

import pytest
from hypothesis import given, strategies as st

from gaugelogic.gnumber import EXACT_LIMIT_BITS, GoedelNumber, NotRepresentable
from gaugelogic.primes import nth_prime

exponent_lists = st.lists(st.integers(1, 60), min_size=1, max_size=8)


def product(exps):
    return math.prod(nth_prime(i) ** e for i, e in enumerate(exps, start=1))


@given(exponent_lists)
def test_exact_and_factored_agree(exps):
    g = GoedelNumber.from_exponents(exps)
    n = product(exps)
    assert g.to_exact().exact == n
    assert g == n and g == GoedelNumber.of(n)
    assert hash(g) == hash(GoedelNumber.of(n))
    assert GoedelNumber.of(n).to_factored().exponents == tuple(GoedelNumber.of(e) for e in exps)
    assert g.is_even()


@given(st.integers(1, 10**40))
def test_json_round_trip_exact(n):
    g = GoedelNumber.of(n)
    assert g.to_json() == str(n)
    assert GoedelNumber.from_json(json.loads(json.dumps(g.to_json()))) == g


@given(exponent_lists)
def test_json_round_trip_factored(exps):
    g = GoedelNumber.from_exponents(exps)
    data = json.loads(json.dumps(g.to_json()))
    assert data == [[i, str(e)] for i, e in enumerate(exps, start=1)]
    assert GoedelNumber.from_json(data) == g
    assert GoedelNumber.of(g.compact()) == g


def test_nested_factored_exponent():
    inner = GoedelNumber.from_exponents([5000, 3])
    g = GoedelNumber.from_exponents([inner, 1])
    assert g.log2() == math.inf
    with pytest.raises(NotRepresentable):
        g.to_exact()
    assert GoedelNumber.from_json(g.to_json()) == g
    assert g != GoedelNumber.from_exponents([inner, 3])


def test_auto_switches_form_at_limit():
    small = GoedelNumber.from_exponents([EXACT_LIMIT_BITS - 1])
    large = GoedelNumber.from_exponents([EXACT_LIMIT_BITS + 1])
    assert small.auto().is_exact
    assert not large.auto().is_exact
    # the same large value given exactly still compares equal to its factored form
    assert GoedelNumber.of(2 ** (EXACT_LIMIT_BITS + 1)) == large


def test_validation():
    with pytest.raises(ValueError):
        GoedelNumber(exact=0)
    with pytest.raises(ValueError):
        GoedelNumber(factors=((1, GoedelNumber.of(1)), (3, GoedelNumber.of(1))))
    with pytest.raises(ValueError):
        GoedelNumber()
    with pytest.raises(ValueError):
        GoedelNumber.of(10).to_factored()
    with pytest.raises(ValueError):
        GoedelNumber.from_json("12a")
    with pytest.raises(TypeError):
        GoedelNumber.of(True)


def test_int_and_str():
    g = GoedelNumber.from_exponents([2, 6])
    assert int(g) == 2916
    assert str(GoedelNumber.of(2916)) == "2916"
    assert str(g) == '[[1,"2"],[2,"6"]]'


def test_huge_exact_exponent_is_hashable():
    g = GoedelNumber.from_exponents([2**2000 + 1, 3])
    assert g.log2() == math.inf
    assert hash(g) == hash(GoedelNumber.from_json(g.to_json()))
    assert g != GoedelNumber.from_exponents([2**2000 + 3, 3])
