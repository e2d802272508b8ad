"""Gödel numbers held either exactly or as prime-power factorizations."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Union

from .primes import FactorLimitExceeded, factor, nth_prime

#: Codes up to this many bits are kept (and compared) as plain integers.
EXACT_LIMIT_BITS = 4096
#: Hard cap for an explicit request to materialize a factored number.
MAX_EXACT_BITS = 1 << 20


class NotRepresentable(OverflowError):
    """The exact value of a factored number is too large to materialize."""


@dataclass(frozen=True, eq=False)
class GoedelNumber:
    """A natural number >= 1, stored exactly or as ``q_1^e_1 ... q_n^e_n``.

    The factored form always uses contiguous prime indices ``1..n`` and each
    exponent is itself a :class:`GoedelNumber`, so derivation codes (whose
    exponents are formula codes) never have to be multiplied out.  Equality
    and hashing ignore the form: ``GoedelNumber.of(12) == 12`` and a
    factored ``[(1, 2), (2, 1)]`` compares equal to both.
    """

    exact: int | None = None
    factors: tuple[tuple[int, "GoedelNumber"], ...] | None = None

    def __post_init__(self) -> None:
        if (self.exact is None) == (self.factors is None):
            raise ValueError("give exactly one of exact or factors")
        if self.exact is not None:
            if self.exact < 1:
                raise ValueError(f"Gödel numbers are >= 1, got {self.exact}")
            return
        if not self.factors:
            raise ValueError("factored form needs at least one prime")
        for pos, (idx, exp) in enumerate(self.factors, start=1):
            if idx != pos:
                raise ValueError(f"prime indices must be 1..n contiguous, got {idx} at position {pos}")
            if not isinstance(exp, GoedelNumber):
                raise TypeError("exponents must be GoedelNumber instances")

    # construction

    @classmethod
    def of(cls, value: "GoedelNumber | int | str") -> "GoedelNumber":
        if isinstance(value, GoedelNumber):
            return value
        if isinstance(value, str):
            return cls.from_json(json.loads(value) if value.lstrip().startswith("[") else value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot make a Gödel number from {value!r}")
        return cls(exact=value)

    @classmethod
    def from_exponents(cls, exponents: Iterable["GoedelNumber | int"]) -> "GoedelNumber":
        """Factored number ``q_1^e_1 q_2^e_2 ...`` for the given exponents."""
        return cls(factors=tuple((i, cls.of(e)) for i, e in enumerate(exponents, start=1)))

    # form conversion

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def exponents(self) -> tuple["GoedelNumber", ...]:
        return tuple(e for _, e in self.to_factored().factors)

    def log2(self) -> float:
        """Base-2 logarithm of the value; ``inf`` when it is astronomically large."""
        if self.exact is not None:
            return math.log2(self.exact) if self.exact > 1 else 0.0
        total = 0.0
        for idx, exp in self.factors:
            if exp.exact is None or exp.exact.bit_length() > 1000:
                return math.inf
            total += exp.exact * math.log2(nth_prime(idx))
        return total

    def is_even(self) -> bool:
        if self.exact is not None:
            return self.exact % 2 == 0
        return True  # factored form always starts at q_1 = 2

    def to_exact(self, max_bits: int = MAX_EXACT_BITS) -> "GoedelNumber":
        if self.exact is not None:
            return self
        if self.log2() > max_bits + 1:
            raise NotRepresentable(f"value needs about {self.log2():.3g} bits (limit {max_bits})")
        value = 1
        for idx, exp in self.factors:
            value *= nth_prime(idx) ** exp.exact
        return GoedelNumber(exact=value)

    def to_factored(self) -> "GoedelNumber":
        """Factored form.  Raises ValueError for numbers with prime-index gaps."""
        if self.factors is not None:
            return self
        if self.exact == 1:
            raise ValueError("1 has no prime-power form")
        pairs = factor(self.exact)
        for pos, (idx, _) in enumerate(pairs, start=1):
            if idx != pos:
                raise ValueError(f"gap at prime index {pos}")
        return GoedelNumber(factors=tuple((i, GoedelNumber(exact=e)) for i, e in pairs))

    def auto(self) -> "GoedelNumber":
        """Exact form if it fits in EXACT_LIMIT_BITS, otherwise factored."""
        if self.exact is not None or self.log2() > EXACT_LIMIT_BITS + 1:
            return self
        exact = self.to_exact()
        return exact if exact.exact.bit_length() <= EXACT_LIMIT_BITS else self

    # identity

    @cached_property
    def _key(self) -> Any:
        if self.exact is not None:
            if self.exact.bit_length() <= EXACT_LIMIT_BITS:
                return self.exact
            try:
                return self.to_factored()._key
            except (ValueError, FactorLimitExceeded):
                return ("int", self.exact)
        small = self.auto()
        if small.exact is not None:
            return small.exact
        return tuple((idx, exp._key) for idx, exp in self.factors)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GoedelNumber):
            return self._key == other._key
        if isinstance(other, int) and not isinstance(other, bool):
            return self._key == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._key)

    def __int__(self) -> int:
        exact = self.to_exact()
        return exact.exact

    # serialization

    def to_json(self) -> Union[str, list]:
        """Decimal string for exact values, nested ``[index, exponent]`` arrays otherwise."""
        if self.exact is not None:
            return str(self.exact)
        return [[idx, exp.to_json()] for idx, exp in self.factors]

    @classmethod
    def from_json(cls, data: Union[str, int, list]) -> "GoedelNumber":
        if isinstance(data, bool):
            raise TypeError("booleans are not Gödel numbers")
        if isinstance(data, int):
            return cls(exact=data)
        if isinstance(data, str):
            if not data.strip().isdigit():
                raise ValueError(f"not a decimal natural: {data!r}")
            return cls(exact=int(data))
        if isinstance(data, list):
            pairs = []
            for item in data:
                if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
                    raise ValueError(f"factored entries are [index, exponent] pairs, got {item!r}")
                pairs.append((item[0], cls.from_json(item[1])))
            return cls(factors=tuple(pairs))
        raise TypeError(f"cannot decode Gödel number from {data!r}")

    def compact(self) -> str:
        """One-token text form: decimal, or compact JSON for factored values."""
        if self.exact is not None:
            return str(self.exact)
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __str__(self) -> str:
        return self.compact()

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"GoedelNumber({self.exact})"
        return f"GoedelNumber(factors={[(i, e) for i, e in self.factors]!r})"
