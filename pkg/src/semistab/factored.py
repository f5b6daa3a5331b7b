"""Positive integers stored as prime-exponent maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import prod

from sympy import factorint, isprime

from .errors import PreconditionError


@dataclass(frozen=True)
class FactoredInt:
    """``prod p^e`` over ``factors``; the empty product is 1."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for p, e in self.factors:
            if e < 0:
                raise PreconditionError(f"negative exponent for {p}")
            if e == 0:
                continue
            if not isprime(p):
                raise PreconditionError(f"{p} is not prime")
            merged[p] = merged.get(p, 0) + e
        object.__setattr__(self, "factors", tuple(sorted(merged.items())))

    @classmethod
    def of(cls, n: int) -> FactoredInt:
        if n < 1:
            raise PreconditionError(f"cannot factor {n}")
        return cls(tuple(factorint(n).items()))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> FactoredInt:
        return cls(tuple(d.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def value(self) -> int:
        return prod(p**e for p, e in self.factors)

    def __int__(self) -> int:
        return self.value

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        return self.as_dict().get(p, 0)

    def __mul__(self, other: FactoredInt) -> FactoredInt:
        return FactoredInt(self.factors + _coerce(other).factors)

    def __pow__(self, k: int) -> FactoredInt:
        return FactoredInt(tuple((p, e * k) for p, e in self.factors))

    def gcd(self, other: FactoredInt) -> FactoredInt:
        o = _coerce(other).as_dict()
        return FactoredInt(tuple((p, min(e, o.get(p, 0))) for p, e in self.factors))

    def lcm(self, other: FactoredInt) -> FactoredInt:
        a, b = self.as_dict(), _coerce(other).as_dict()
        return FactoredInt(tuple((p, max(a.get(p, 0), b.get(p, 0))) for p in a.keys() | b.keys()))

    def divides(self, other: FactoredInt) -> bool:
        o = _coerce(other).as_dict()
        return all(o.get(p, 0) >= e for p, e in self.factors)

    def part(self, keep) -> FactoredInt:
        """Sub-product over primes for which ``keep(p)`` holds."""
        return FactoredInt(tuple((p, e) for p, e in self.factors if keep(p)))

    def prime_power_parts(self) -> list[int]:
        return [p**e for p, e in self.factors]

    def divisors(self) -> list[FactoredInt]:
        ranges = [range(e + 1) for _, e in self.factors]
        out = [FactoredInt(tuple(zip(self.primes, exps))) for exps in product(*ranges)]
        return sorted(out, key=int)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)

    def to_json(self) -> dict:
        return {"factored": str(self), "decimal": str(self.value)}


def _coerce(x) -> FactoredInt:
    return x if isinstance(x, FactoredInt) else FactoredInt.of(x)


def product_of(items) -> FactoredInt:
    return reduce(lambda a, b: a * b, items, FactoredInt())
