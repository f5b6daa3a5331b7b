"""Coefficient rings: the integers, Z localized at a prime, and Z/ell^k.

Elements are plain Python numbers so that all arithmetic is exact:
``int`` for the integers and for Z/ell^k (canonical residues in
``[0, ell^k)``), ``fractions.Fraction`` for the localization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational

from sympy import isprime

from .errors import PreconditionError

DEFAULT_PRECISION = 8


class RingKind(str, Enum):
    INTEGERS = "integers"
    LOCALIZED = "localized"
    MOD_PRIME_POWER = "mod_prime_power"


def parse_number(x) -> Fraction | int:
    """Parse an int, Fraction or decimal string such as ``"-3"`` or ``"5/7"``."""
    if isinstance(x, bool):
        raise PreconditionError(f"not a number: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, str):
        s = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", s):
            raise PreconditionError(f"malformed exact number: {x!r}")
        f = Fraction(s)
        return f.numerator if f.denominator == 1 else f
    raise PreconditionError(f"unsupported number type: {type(x).__name__}")


def ell_valuation(x, ell: int) -> int | None:
    """ell-adic valuation of a nonzero rational; ``None`` for zero."""
    f = Fraction(x)
    if f == 0:
        return None
    num, den = f.numerator, f.denominator
    v = 0
    while num % ell == 0:
        num //= ell
        v += 1
    while den % ell == 0:
        den //= ell
        v -= 1
    return v


@dataclass(frozen=True)
class LocalRing:
    kind: RingKind
    ell: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind is RingKind.INTEGERS:
            if self.ell is not None or self.k is not None:
                raise PreconditionError("the integer ring takes no prime or precision")
            return
        if self.ell is None or not isprime(self.ell):
            raise PreconditionError(f"ell must be prime, got {self.ell!r}")
        if self.kind is RingKind.MOD_PRIME_POWER:
            if self.k is None or self.k < 1:
                raise PreconditionError(f"precision k must be positive, got {self.k!r}")
        elif self.k is not None:
            raise PreconditionError("the localized ring takes no precision")

    @classmethod
    def integers(cls) -> LocalRing:
        return cls(RingKind.INTEGERS)

    @classmethod
    def localized(cls, ell: int) -> LocalRing:
        return cls(RingKind.LOCALIZED, ell)

    @classmethod
    def mod_prime_power(cls, ell: int, k: int = DEFAULT_PRECISION) -> LocalRing:
        return cls(RingKind.MOD_PRIME_POWER, ell, k)

    @property
    def is_integers(self) -> bool:
        return self.kind is RingKind.INTEGERS

    @property
    def is_localized(self) -> bool:
        return self.kind is RingKind.LOCALIZED

    @property
    def is_modular(self) -> bool:
        return self.kind is RingKind.MOD_PRIME_POWER

    @property
    def modulus(self) -> int:
        if not self.is_modular:
            raise PreconditionError(f"{self} has no modulus")
        return self.ell**self.k

    # -- elements -------------------------------------------------------

    def coerce(self, x):
        """Map an exact number into the ring, rejecting non-members."""
        x = parse_number(x)
        if self.is_integers:
            if isinstance(x, Fraction):
                raise PreconditionError(f"{x} is not an integer")
            return x
        if self.is_localized:
            f = Fraction(x)
            if f.denominator % self.ell == 0:
                raise PreconditionError(f"{x} is not ell-integral for ell={self.ell}")
            return f.numerator if f.denominator == 1 else f
        m = self.modulus
        f = Fraction(x)
        if f.denominator % self.ell == 0:
            raise PreconditionError(f"{x} is not ell-integral for ell={self.ell}")
        return f.numerator * pow(f.denominator, -1, m) % m

    def contains(self, x) -> bool:
        try:
            self.coerce(x)
        except PreconditionError:
            return False
        return True

    def reduce(self, x):
        if self.is_modular:
            return x % self.modulus
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def is_zero(self, x) -> bool:
        if self.is_modular:
            return x % self.modulus == 0
        return x == 0

    def eq(self, a, b) -> bool:
        return self.is_zero(a - b)

    def valuation(self, x) -> int | None:
        """ell-adic valuation; ``None`` for zero (``k`` is never reached mod ell^k)."""
        if self.is_integers:
            raise PreconditionError("valuation is undefined on the integer ring")
        if self.is_zero(x):
            return None
        return ell_valuation(x, self.ell)

    def norm(self, x) -> int | None:
        """Euclidean size used for pivoting; ``None`` for zero."""
        if self.is_zero(x):
            return None
        if self.is_integers:
            return abs(x)
        return self.valuation(x)

    def is_unit(self, x) -> bool:
        if self.is_integers:
            return x in (1, -1)
        return not self.is_zero(x) and self.valuation(x) == 0

    def inverse(self, x):
        if not self.is_unit(x):
            raise PreconditionError(f"{x} is not a unit in {self}")
        if self.is_integers:
            return x
        if self.is_localized:
            return self.reduce(1 / Fraction(x))
        return pow(x, -1, self.modulus)

    def quo(self, a, b):
        """Euclidean quotient: ``a - quo(a, b) * b`` is zero or smaller than ``b``."""
        if self.is_integers:
            return a // b
        va, vb = self.valuation(a), self.valuation(b)
        if va is None:
            return 0
        if va < vb:
            return 0
        if self.is_localized:
            return self.reduce(Fraction(a) / Fraction(b))
        m = self.modulus
        ub = (b // self.ell**vb) % m
        return (a // self.ell**vb) * pow(ub, -1, m) % m

    def divides(self, a, b) -> bool:
        """True iff ``b = q * a`` for some ring element ``q``."""
        if self.is_zero(b):
            return True
        if self.is_zero(a):
            return False
        if self.is_integers:
            return b % a == 0
        return self.valuation(a) <= self.valuation(b)

    def unit_part(self, x):
        """Unit ``u`` with ``x / u`` canonical: ``|x|`` over Z, ``ell^v`` locally."""
        if self.is_zero(x):
            return 1
        if self.is_integers:
            return -1 if x < 0 else 1
        v = self.valuation(x)
        if self.is_localized:
            return self.reduce(Fraction(x) / self.ell**v)
        m = self.modulus
        return (x // self.ell**v) % m

    # -- serialization --------------------------------------------------

    def __str__(self) -> str:
        if self.is_integers:
            return "Z"
        if self.is_localized:
            return f"Z_({self.ell})"
        return f"Z/{self.ell}^{self.k}"

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.ell is not None:
            out["ell"] = self.ell
        if self.k is not None:
            out["k"] = self.k
        return out

    @classmethod
    def from_json(cls, obj) -> LocalRing:
        """Accept ``{"kind": ..., "ell": ..., "k": ...}`` or ``"Z"``, ``"Z_(3)"``, ``"Z/3^8"``."""
        if isinstance(obj, str):
            s = obj.replace(" ", "")
            if s in ("Z", "ZZ"):
                return cls.integers()
            m = re.fullmatch(r"ZZ?_\((\d+)\)", s)
            if m:
                return cls.localized(int(m.group(1)))
            m = re.fullmatch(r"ZZ?/(\d+)\^(\d+)", s)
            if m:
                return cls.mod_prime_power(int(m.group(1)), int(m.group(2)))
            raise PreconditionError(f"unrecognized ring: {obj!r}")
        if not isinstance(obj, dict) or "kind" not in obj:
            raise PreconditionError(f"unrecognized ring: {obj!r}")
        try:
            kind = RingKind(obj["kind"])
        except ValueError:
            raise PreconditionError(f"unknown ring kind {obj['kind']!r}") from None
        return cls(kind, obj.get("ell"), obj.get("k"))


ZZ = LocalRing.integers()
