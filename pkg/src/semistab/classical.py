"""Element-order criteria and order formulas for GL_n and Sp_2m over F_ell."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from sympy import Poly, cyclotomic_poly as _sympy_cyclotomic, factorint, isprime, symbols
from sympy.ntheory import n_order

from .errors import PreconditionError
from .factored import FactoredInt, product_of

_x = symbols("x")


@dataclass(frozen=True)
class PrimePower:
    q: int
    r: int

    def __post_init__(self):
        if not isprime(self.q):
            raise PreconditionError(f"{self.q} is not prime")
        if self.r < 1:
            raise PreconditionError(f"exponent must be positive, got {self.r}")

    @property
    def value(self) -> int:
        return self.q**self.r

    @classmethod
    def of(cls, n: int) -> PrimePower:
        f = factorint(n) if n > 1 else {}
        if len(f) != 1:
            raise PreconditionError(f"{n} is not a prime power")
        ((q, r),) = f.items()
        return cls(q, r)

    def __str__(self) -> str:
        return f"{self.q}^{self.r}" if self.r > 1 else str(self.q)


def prime_powers_up_to(bound: int) -> list[PrimePower]:
    return [PrimePower.of(n) for n in range(2, bound + 1) if len(factorint(n)) == 1]


def _require_prime(ell: int):
    if not isprime(ell):
        raise PreconditionError(f"ell must be prime, got {ell}")


def mult_order(ell: int, n: int) -> int:
    """Least ``d >= 1`` with ``ell^d = 1 (mod n)``."""
    if n < 1:
        raise PreconditionError(f"modulus must be positive, got {n}")
    if gcd(ell, n) != 1:
        raise PreconditionError(f"gcd({ell}, {n}) != 1")
    if n == 1:
        return 1
    return n_order(ell, n)


def minus_one_is_power(ell: int, n: int) -> bool:
    """Whether ``-1`` lies in the cyclic subgroup generated by ``ell`` mod ``n``."""
    d = mult_order(ell, n)
    return any(pow(ell, i, n) == (-1) % n for i in range(d))


def _as_prime_power(pp) -> PrimePower:
    return pp if isinstance(pp, PrimePower) else PrimePower.of(pp)


def gl_has_element_of_order(n: int, pp, ell: int) -> bool:
    """Whether GL_n(F_ell) has an element of exact order ``pp`` (a power of a prime q != ell)."""
    pp = _as_prime_power(pp)
    _require_prime(ell)
    if pp.q == ell:
        raise PreconditionError("criterion needs q != ell")
    return mult_order(ell, pp.value) <= n


def sp_has_element_of_order(m: int, pp, ell: int) -> bool:
    """Whether Sp_2m(F_ell) has an element of exact order ``pp`` (q != ell).

    Such an element is semisimple and its eigenvalues are closed under
    inversion. A primitive ``q^r``-th root of unity with degree ``d`` over
    F_ell fits in a ``d``-dimensional nondegenerate block when its inverse is
    one of its Frobenius conjugates, and otherwise needs ``2d`` dimensions.
    """
    pp = _as_prime_power(pp)
    _require_prime(ell)
    if pp.q == ell:
        raise PreconditionError("criterion needs q != ell")
    if m < 0:
        raise PreconditionError(f"half-rank must be nonnegative, got {m}")
    d = mult_order(ell, pp.value)
    if minus_one_is_power(ell, pp.value):
        return d <= 2 * m
    return 2 * d <= 2 * m


def sp_group_order(m: int, ell: int) -> FactoredInt:
    """``ell^(m^2) * prod_{i<=m} (ell^(2i) - 1)`` in factored form."""
    _require_prime(ell)
    if m < 1:
        raise PreconditionError(f"half-rank must be at least 1, got {m}")
    parts = [FactoredInt(((ell, m * m),))]
    parts += [FactoredInt.of(ell ** (2 * i) - 1) for i in range(1, m + 1)]
    return product_of(parts)


def sp_group_order_int(m: int, ell: int) -> int:
    return ell ** (m * m) * prod(ell ** (2 * i) - 1 for i in range(1, m + 1))


def gl_group_order_int(n: int, ell: int) -> int:
    return prod(ell**n - ell**i for i in range(n))


def sl_group_order_int(n: int, ell: int) -> int:
    return gl_group_order_int(n, ell) // (ell - 1)


def cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    coeffs = Poly(_sympy_cyclotomic(n, _x), _x).all_coeffs()
    return [int(c) for c in reversed(coeffs)]


def poly_str(coeffs: list[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' + mono if mono else ''}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class CyclotomicFactor:
    coeffs: tuple[int, ...]  # monic, residues mod ell, constant term first
    mate: int  # index of the factor whose roots are the inverses of these roots
    self_reciprocal: bool

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class CyclotomicProfile:
    n: int
    ell: int
    factors: tuple[CyclotomicFactor, ...]

    @property
    def degrees(self) -> list[int]:
        return [f.degree for f in self.factors]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "factors": [
                {
                    "coefficients": list(f.coeffs),
                    "degree": f.degree,
                    "self_reciprocal": f.self_reciprocal,
                    "mate": f.mate,
                }
                for f in self.factors
            ],
        }


def _reciprocal(coeffs: tuple[int, ...], ell: int) -> tuple[int, ...]:
    rev = coeffs[::-1]
    lead_inv = pow(rev[-1], -1, ell)
    return tuple(c * lead_inv % ell for c in rev)


def cyclotomic_factor_profile(n: int, ell: int) -> CyclotomicProfile:
    """Irreducible factors of the n-th cyclotomic polynomial over F_ell, with reciprocal pairing."""
    _require_prime(ell)
    if gcd(n, ell) != 1:
        raise PreconditionError(f"gcd({n}, {ell}) != 1")
    poly = Poly(_sympy_cyclotomic(n, _x), _x, modulus=ell)
    raw = []
    for f, mult in poly.factor_list()[1]:
        if mult != 1:
            raise AssertionError("cyclotomic polynomial is separable when ell does not divide n")
        raw.append(tuple(int(c) % ell for c in reversed(f.all_coeffs())))
    raw.sort()
    index = {c: i for i, c in enumerate(raw)}
    factors = []
    for i, c in enumerate(raw):
        j = index[_reciprocal(c, ell)]
        factors.append(CyclotomicFactor(c, j, i == j))
    return CyclotomicProfile(n, ell, tuple(factors))
