"""Bounds on the semistable-reduction obstruction group from numeric reduction data.

Given the toric and abelian ranks of an abelian variety before and after
semistable reduction, compute the Minkowski-type bound ``J(n)``, the
certified multiple ``N`` of the obstruction group's order, the prime
bound ``Q``, a refined list of admissible orders, and advice findings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from sympy import isprime, prime, primerange, totient

from .classical import PrimePower, sp_has_element_of_order
from .errors import PreconditionError
from .factored import FactoredInt

DEFAULT_PRIME_SAMPLE_SIZE = 50
DEFAULT_PRIME_BOUND = 100


@dataclass(frozen=True)
class ReductionData:
    d: int
    p: int
    t: int
    a: int
    t_v: int
    a_v: int
    deg_lambda: int | None = None

    def __post_init__(self):
        for name in ("d", "p", "t", "a", "t_v", "a_v"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise PreconditionError(f"{name} must be an integer, got {v!r}")
        if self.d < 1:
            raise PreconditionError(f"d must be at least 1, got {self.d}")
        if self.p != 0 and not isprime(self.p):
            raise PreconditionError(f"p must be 0 or prime, got {self.p}")
        if self.a + self.t != self.d:
            raise PreconditionError(f"a + t = {self.a + self.t} != d = {self.d}")
        if not 0 <= self.t_v <= self.t:
            raise PreconditionError(f"need 0 <= t_v <= t, got t_v={self.t_v}, t={self.t}")
        if not 0 <= self.a_v <= self.a:
            raise PreconditionError(f"need 0 <= a_v <= a, got a_v={self.a_v}, a={self.a}")
        if self.deg_lambda is not None and (isinstance(self.deg_lambda, bool) or not isinstance(self.deg_lambda, int) or self.deg_lambda < 1):
            raise PreconditionError(f"deg_lambda must be a positive integer, got {self.deg_lambda!r}")

    @property
    def semistable(self) -> bool:
        return (self.t_v, self.a_v) == (self.t, self.a)

    @property
    def gl_rank(self) -> int:
        """``t - t_v``: the rank of the integral GL factor."""
        return self.t - self.t_v

    @property
    def sp_rank(self) -> int:
        """``2(a - a_v)``: the rank of the symplectic factor."""
        return 2 * (self.a - self.a_v)

    @property
    def unipotent_rank(self) -> int:
        return self.d - self.a_v - self.t_v

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in ("d", "p", "t", "a", "t_v", "a_v")}
        if self.deg_lambda is not None:
            out["deg_lambda"] = self.deg_lambda
        return out

    @classmethod
    def from_json(cls, obj) -> ReductionData:
        if not isinstance(obj, dict):
            raise PreconditionError("reduction data must be a JSON object")
        missing = [k for k in ("d", "p", "t", "a", "t_v", "a_v") if k not in obj]
        if missing:
            raise PreconditionError(f"missing fields: {', '.join(missing)}")
        extra = set(obj) - {"d", "p", "t", "a", "t_v", "a_v", "deg_lambda"}
        if extra:
            raise PreconditionError(f"unknown fields: {', '.join(sorted(extra))}")
        return cls(**obj)


def s(n: int, q: int) -> int:
    """``sum_j floor(n / (q^j (q - 1)))``."""
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    if not isprime(q):
        raise PreconditionError(f"{q} is not prime")
    total, step = 0, q - 1
    while step <= n:
        total += n // step
        step *= q
    return total


def J(n: int) -> FactoredInt:
    """``prod_q q^s(n, q)``; only primes ``q <= n + 1`` contribute."""
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    return FactoredInt(tuple((q, s(n, q)) for q in primerange(2, n + 2)))


def M_of(data: ReductionData) -> int:
    return max(data.gl_rank, data.sp_rank)


def r_q(M: int, q: int) -> int:
    """``1 + floor(log_q(M / (q - 1)))``, by exact integer comparison; 0 if ``q - 1 > M``."""
    if q - 1 > M:
        return 0
    e = 0
    while q ** (e + 1) * (q - 1) <= M:
        e += 1
    return 1 + e


def r_p(data: ReductionData) -> int:
    return s(data.gl_rank, data.p) + s(data.sp_rank, data.p)


def N_of(data: ReductionData) -> FactoredInt:
    """Certified multiple of the obstruction group's order.

    At ``q = p`` the exponent is ``s(t - t_v, p) + s(2(a - a_v), p)``; at any
    other prime ``q <= M + 1`` it is :func:`r_q`.
    """
    if data.semistable:
        return FactoredInt()
    M = M_of(data)
    return FactoredInt(tuple((q, r_p(data) if q == data.p else r_q(M, q)) for q in primerange(2, M + 2)))


def Q_bound(data: ReductionData) -> int:
    return 1 if data.semistable else M_of(data) + 1


# -- admissible orders ----------------------------------------------------------


def _cyclotomic_cost(parts: list[int], lone_two: int) -> int:
    """Least total degree of a product of cyclotomic polynomials whose roots'
    orders have lcm equal to ``prod(parts)`` (pairwise coprime prime powers).

    Each part gets its own cyclotomic factor, except that a part 2 rides
    along with any other part for free since ``phi(2k) = phi(k)`` for odd k.
    A part 2 on its own costs ``lone_two``.
    """
    if not parts:
        return 0
    if parts == [2]:
        return lone_two
    return sum(int(totient(x)) for x in parts if x != 2)


def gl_min_dim(parts: list[int]) -> int:
    """Least n such that GL_n(Z) has an element of order ``prod(parts)``."""
    return _cyclotomic_cost(sorted(parts), 1)


def sp_min_dim(parts: list[int]) -> int:
    """Least 2m such that Sp_2m(Z) has an element of order ``prod(parts)``.

    Eigenvalues ``+1`` and ``-1`` of a symplectic matrix come in pairs, so a
    lone order-2 part costs 2.
    """
    return _cyclotomic_cost(sorted(parts), 2)


def default_prime_sample(size: int = DEFAULT_PRIME_SAMPLE_SIZE) -> list[int]:
    return [prime(i) for i in range(1, size + 1)]


def _sp_passes(parts: list[int], m: int, primes: list[int], p: int, n: int) -> bool:
    for ell in primes:
        if ell == p or n % ell == 0:
            continue
        for part in parts:
            if not sp_has_element_of_order(m, PrimePower.of(part), ell):
                return False
    return True


def realizable(n: int, data: ReductionData, primes: list[int]) -> bool:
    """Whether a cyclic group of order ``n`` (prime to p) fits in GL_(t-t_v) x Sp_2(a-a_v).

    The prime-power parts of ``n`` are split between the two factors; the GL
    side must fit its rational cyclotomic dimension, the Sp side must fit its
    dimension and pass the finite-field criterion at every sampled prime.
    """
    parts = FactoredInt.of(n).prime_power_parts()
    m = data.a - data.a_v
    for k in range(len(parts) + 1):
        for gl_parts in combinations(parts, k):
            sp_parts = [x for x in parts if x not in gl_parts]
            if gl_min_dim(list(gl_parts)) > data.gl_rank:
                continue
            if sp_min_dim(sp_parts) > data.sp_rank:
                continue
            if _sp_passes(sp_parts, m, primes, data.p, n):
                return True
    return False


def admissible_orders(data: ReductionData, prime_sample: list[int] | None = None) -> list[FactoredInt]:
    """Divisors of ``N_of(data)`` whose prime-to-p part is cyclically realizable.

    The p-part is left unconstrained because the obstruction group may be
    an extension of a cyclic prime-to-p group by a p-group.
    """
    primes = default_prime_sample() if prime_sample is None else list(prime_sample)
    if not primes:
        raise PreconditionError("prime sample must be nonempty")
    for ell in primes:
        if not isprime(ell):
            raise PreconditionError(f"{ell} in the prime sample is not prime")
    out = []
    for n in N_of(data).divisors():
        tame = n.part(lambda q: q != data.p)
        if realizable(int(tame), data, primes):
            out.append(n)
    return out


def safe_primes(data: ReductionData, bound: int) -> list[int]:
    """Primes ``ell <= bound`` with ``ell != p`` and ``ell`` not dividing ``deg_lambda * N``."""
    if data.deg_lambda is None:
        raise PreconditionError("safe primes need deg_lambda")
    if bound < 2:
        raise PreconditionError(f"bound must be at least 2, got {bound}")
    avoid = data.deg_lambda * int(N_of(data))
    return [ell for ell in primerange(2, bound + 1) if ell != data.p and avoid % ell]


# -- advice ---------------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    kind: str
    statement: str
    condition: str
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "statement": self.statement,
            "condition": self.condition,
            "parameters": self.parameters,
        }


def advice(data: ReductionData, prime_sample: list[int] | None = None) -> list[Finding]:
    if data.semistable:
        return [
            Finding(
                "no-extension",
                "X already has semistable reduction at v; no extension is needed.",
                "(t_v, a_v) = (t, a)",
            )
        ]
    Q = Q_bound(data)
    out = [
        Finding(
            "inertia-prime-divisor",
            f"For any finite separable L/F with X semistable at w | v, the inertia index "
            f"[I_v : I_w] has a prime divisor q <= {Q}; this index divides the local degree [L_w : F_v].",
            "X does not have semistable reduction at v",
            {"Q_bound": Q},
        ),
        Finding(
            "prime-power-degree",
            f"If [L:F] is a power of a prime q and X acquires semistable reduction over L, then q <= {Q}.",
            "F complete at v or L/F Galois; X not semistable at v",
            {"Q_bound": Q},
        ),
    ]
    p = data.p
    for n in admissible_orders(data, prime_sample):
        r = int(n)
        if r == 1 or (p and r % p == 0):
            continue
        out.append(
            Finding(
                "cyclic-recipe",
                f"If #G_v = {r}, let L = F(zeta_{r})(pi^(1/{r})) for a uniformizer pi at v. Then L is cyclic "
                f"of degree {r} over F(zeta_{r}), totally ramified above v, and X acquires semistable reduction over L.",
                f"#G_v = {r} and p does not divide {r}",
                {"r": r, "root_of_unity": f"zeta_{r}"},
            )
        )
    if p > Q:
        out.append(
            Finding(
                "tame",
                f"Since p = {p} > {Q}, the obstruction group has order prime to p and is cyclic; "
                "X acquires semistable reduction over a finite Galois extension of degree prime to p.",
                f"p > Q_bound = {Q}",
                {"p": p, "Q_bound": Q},
            )
        )
    return out


# -- report ---------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    data: ReductionData
    M: int
    N: FactoredInt
    Q_bound: int
    J_gl: FactoredInt
    J_sp: FactoredInt
    J_2d: FactoredInt
    admissible_orders: list[FactoredInt]
    advice: list[Finding]
    safe_primes: list[int] | None
    prime_sample: list[int]

    def to_json(self) -> dict:
        return {
            "input": self.data.to_json(),
            "semistable": self.data.semistable,
            "M": self.M,
            "N": self.N.to_json(),
            "Q_bound": self.Q_bound,
            "J_gl": self.J_gl.to_json(),
            "J_sp": self.J_sp.to_json(),
            "J_2d": self.J_2d.to_json(),
            "admissible_orders": {
                "label": "oracle-validated refinement",
                "orders": [int(n) for n in self.admissible_orders],
                "prime_sample": {
                    "count": len(self.prime_sample),
                    "largest": max(self.prime_sample),
                    "note": "a finite prime sample stands in for a density-one set of primes",
                },
            },
            "advice": [f.to_json() for f in self.advice],
            "safe_primes": self.safe_primes,
        }


def bound_report(
    data: ReductionData,
    prime_sample: list[int] | None = None,
    prime_bound: int = DEFAULT_PRIME_BOUND,
) -> BoundReport:
    primes = default_prime_sample() if prime_sample is None else list(prime_sample)
    M, N, Q = M_of(data), N_of(data), Q_bound(data)
    J_gl, J_sp = J(data.gl_rank), J(data.sp_rank)
    J_2d = J(2 * data.d)
    if not Q <= M + 1 <= 2 * data.d + 1:
        raise AssertionError("Q_bound <= M + 1 <= 2d + 1 failed")
    if not N.divides(J_gl * J_sp) or not (J_gl * J_sp).divides(J_2d):
        raise AssertionError("N | J(t - t_v) J(2(a - a_v)) | J(2d) failed")
    if any(q > M + 1 for q in N.primes):
        raise AssertionError("N has a prime divisor above M + 1")
    return BoundReport(
        data,
        M,
        N,
        Q,
        J_gl,
        J_sp,
        J_2d,
        admissible_orders(data, primes),
        advice(data, primes),
        safe_primes(data, prime_bound) if data.deg_lambda is not None else None,
        primes,
    )
