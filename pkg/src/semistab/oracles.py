"""Brute-force oracles that share no code with the criteria they check."""

from __future__ import annotations

from itertools import combinations, product
from math import gcd, lcm

from sympy import Matrix, factorint, primerange, totient
from sympy.utilities.iterables import multiset_partitions


def _mat2_mul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


_I2 = ((1, 0), (0, 1))


def _finite_order_2x2(A, max_order: int = 12) -> int | None:
    """Order of an integral 2x2 matrix if it is at most ``max_order``.

    Finite-order integral 2x2 matrices have eigenvalues that are roots of
    unity of degree at most 2 over Q, so their order divides 4 or 6 and
    ``max_order = 12`` misses none.
    """
    P = A
    for k in range(1, max_order + 1):
        if P == _I2:
            return k
        P = _mat2_mul(P, A)
    return None


def integral_2x2_finite_orders(symplectic: bool, bound: int = 3) -> set[int]:
    """Finite element orders in SL_2(Z) (``symplectic``) or GL_2(Z), found by
    enumerating matrices with entries in ``[-bound, bound]`` and ``|trace| <= 2``."""
    out = set()
    for a, b, c, d in product(range(-bound, bound + 1), repeat=4):
        det = a * d - b * c
        if det != 1 and (symplectic or det != -1):
            continue
        if abs(a + d) > 2:
            continue
        k = _finite_order_2x2(((a, b), (c, d)))
        if k is not None:
            out.add(k)
    return out


def gl1_orders() -> set[int]:
    """GL_1(Z) = {1, -1}."""
    return {1, 2}


def product_orders(*order_sets: set[int]) -> set[int]:
    """Element orders of a direct product: lcms of one order from each factor."""
    out = {1}
    for s in order_sets:
        out = {lcm(a, b) for a in out for b in s}
    return out


def gcd_of_sp_orders(m: int, lo: int, hi: int) -> int:
    """gcd of ``|Sp_2m(F_ell)|`` over primes ``lo <= ell <= hi``, from the plain product formula."""
    g = 0
    for ell in primerange(lo, hi + 1):
        order = ell ** (m * m)
        for i in range(1, m + 1):
            order *= ell ** (2 * i) - 1
        g = gcd(g, order)
    return g


def minkowski_exponent(n: int, q: int) -> int:
    """Exponent of q in J(n), summing floors of rationals term by term."""
    total, j = 0, 0
    while q**j * (q - 1) <= n:
        total += n // (q**j * (q - 1))
        j += 1
    return total


def cyclotomic_cost_by_partition(parts: list[int], lone_two: int) -> int:
    """Least total degree of a product of cyclotomic polynomials ``Phi_k``
    whose ``k``'s have lcm ``prod(parts)``, by trying every set partition."""
    if not parts:
        return 0
    best = None
    for blocks in multiset_partitions(list(parts)):
        cost = 0
        for blk in blocks:
            k = 1
            for x in blk:
                k *= x
            cost += lone_two if k == 2 else int(totient(k))
        best = cost if best is None else min(best, cost)
    return best


def is_saturated_bruteforce(basis: list[list[int]]) -> bool:
    """Whether ``Z^n / span(columns)`` is torsion-free, by searching for
    ``c`` in ``{0..ell-1}^k``, ``c != 0``, with ``(B c) / ell`` integral for
    each prime ``ell`` dividing the gcd of the maximal minors."""
    B = Matrix(basis)
    n, k = B.shape
    if k == 0:
        return True
    g = 0
    for rows in combinations(range(n), k):
        g = gcd(g, int(B.extract(list(rows), list(range(k))).det()))
    if g == 0:
        raise ValueError("columns are dependent")
    for ell in factorint(g):
        for c in product(range(ell), repeat=k):
            if any(c) and all(sum(B[i, j] * c[j] for j in range(k)) % ell == 0 for i in range(n)):
                return False
    return True
