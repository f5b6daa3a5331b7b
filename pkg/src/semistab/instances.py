"""Seeded random instances for the perfect-form and quotient-pairing checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import close_group
from .linalg import det, identity, inverse, matmul, matrix, zeros
from .pairings import FormKind, GramForm, Sublattice, standard_symplectic
from .rings import ZZ, LocalRing

PERFECTIZE_PRIMES = (3, 5, 7)
GROUP_ORDERS = (1, 2, 3, 4)
MAX_RANK = 6


def random_unimodular(n: int, rng: np.random.Generator, steps: int | None = None) -> np.ndarray:
    """A product of random elementary matrices, signed permutations included."""
    U = identity(n)
    if n == 0:
        return U
    perm = rng.permutation(n)
    U = U[:, perm]
    for i in range(n):
        if rng.integers(2):
            U[:, i] = -U[:, i]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.choice(n, size=2, replace=False)
        c = int(rng.integers(-2, 3))
        U[:, j] = U[:, j] + c * U[:, i]
    return U


# -- finite groups ----------------------------------------------------------------

_ROT3 = [[0, -1], [1, -1]]
_ROT4 = [[0, -1], [1, 0]]
_SWAP = [[0, 1], [1, 0]]


def _cycle(k: int) -> list[list[int]]:
    return [[1 if i == (j + 1) % k else 0 for j in range(k)] for i in range(k)]


def _block_diag(blocks: list, n: int) -> np.ndarray:
    out = zeros(n, n)
    at = 0
    for b in blocks:
        b = matrix(b)
        k = b.shape[0]
        out[at : at + k, at : at + k] = b
        at += k
    for i in range(at, n):
        out[i, i] = 1
    return out


def _cyclic_generator(order: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """A block matrix of exact order ``order`` on ``Z^n``."""
    if order == 1:
        return identity(n)
    choices = {
        2: [([[-1]], 1), (_SWAP, 2)],
        3: [(_ROT3, 2), (_cycle(3), 3)],
        4: [(_ROT4, 2), (_cycle(4), 4)],
    }[order]
    blocks, used = [], 0
    while True:
        fits = [(b, k) for b, k in choices if used + k <= n]
        if not fits or (blocks and rng.integers(2)):
            break
        b, k = fits[rng.integers(len(fits))]
        blocks.append(b)
        used += k
    if not blocks:
        raise ValueError(f"no element of order {order} in block form on Z^{n}")
    return _block_diag(blocks, n)


def random_group(order: int, n: int, rng: np.random.Generator):
    """Generators of an abelian group of the given order (<= 4) acting on Z^n,
    conjugated by a random unimodular matrix."""
    if order == 4 and n >= 2 and rng.integers(2):
        gens = [_block_diag([[[-1]]], n), -identity(n)]  # Klein four
    else:
        gens = [_cyclic_generator(order, n, rng)]
    W = random_unimodular(n, rng)
    Winv = inverse(W, ZZ)
    gens = [matmul(matmul(W, g), Winv) for g in gens]
    G = close_group(gens, rank=n)
    if G.order != order:
        raise AssertionError(f"built a group of order {G.order}, wanted {order}")
    return G


# -- perfectize instances ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PerfectizeInstance:
    form: GramForm
    group: object
    ell: int
    scale: int


def _base_form(kind: FormKind, n: int, rng: np.random.Generator) -> np.ndarray:
    if kind is FormKind.ALTERNATING:
        return standard_symplectic(n // 2)
    D = zeros(n, n)
    for i in range(n):
        D[i, i] = int(rng.choice([-3, -2, -1, 1, 2, 3]))
    return D


def random_perfectize_instance(rng: np.random.Generator, ell: int | None = None) -> PerfectizeInstance:
    """A non-degenerate G-invariant form over Z_(ell), usually not perfect.

    The form is ``ell^scale * sum_g g^T A^T e0 A g`` for a random integer
    matrix ``A``: invariant by construction, and ``A`` or the scale often
    makes it non-perfect at ``ell``.
    """
    ell = ell or int(rng.choice(PERFECTIZE_PRIMES))
    orders = [o for o in GROUP_ORDERS if o % ell]
    while True:
        kind = FormKind.ALTERNATING if rng.integers(2) else FormKind.SYMMETRIC
        n = int(rng.integers(1, MAX_RANK + 1))
        if kind is FormKind.ALTERNATING:
            n = max(2, n - n % 2)
        order = int(rng.choice(orders))
        if order in (3, 4) and n < 2:
            continue
        G = random_group(order, n, rng)
        A = matrix(rng.integers(-2, 3, size=(n, n)).tolist())
        if rng.integers(3) == 0:
            A[:, 0] = A[:, 0] * ell
        base = matmul(matmul(A.T, _base_form(kind, n, rng)), A)
        total = zeros(n, n)
        for g in G:
            total = total + matmul(matmul(g.T, base), g)
        if det(total) == 0:
            continue
        scale = int(rng.integers(-1, 3))
        gram = total * Fraction(ell) ** scale
        return PerfectizeInstance(GramForm(LocalRing.localized(ell), kind, gram), G, ell, scale)


# -- quotient instances ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientInstance:
    form: GramForm
    N: Sublattice
    L: Sublattice
    functional: list[int]
    quotient_rank: int


def random_quotient_instance(rng: np.random.Generator) -> QuotientInstance:
    """A perfect form with a saturated ``N`` satisfying ``N^perp in N``, and a
    random saturated ``L`` with an integral functional on it.

    Built in a hyperbolic basis ``e_1..e_m, f_1..f_m`` (plus a diagonal unit
    part for symmetric forms), where ``N = <e_1..e_m, f_i (i in S), rest>``
    has ``N^perp = <e_i (i not in S)>``, then moved by a random unimodular
    change of basis.
    """
    kind = FormKind.ALTERNATING if rng.integers(2) else FormKind.SYMMETRIC
    m = int(rng.integers(1, 4))
    extra = int(rng.integers(0, MAX_RANK - 2 * m + 1)) if kind is FormKind.SYMMETRIC else 0
    n = 2 * m + extra
    e0 = zeros(n, n)
    for i in range(m):
        e0[i, m + i] = 1
        e0[m + i, i] = -1 if kind is FormKind.ALTERNATING else 1
    for i in range(2 * m, n):
        e0[i, i] = int(rng.choice([-1, 1]))
    S = [i for i in range(m) if rng.integers(2)]
    cols = list(range(m)) + [m + i for i in S] + list(range(2 * m, n))
    N0 = zeros(n, len(cols))
    for j, c in enumerate(cols):
        N0[c, j] = 1

    ring = ZZ if rng.integers(3) else LocalRing.localized(int(rng.choice(PERFECTIZE_PRIMES)))
    U = random_unimodular(n, rng)
    Uinv = inverse(U, ZZ)
    gram = matmul(matmul(U.T, e0), U)
    N_basis = matmul(matmul(Uinv, N0), random_unimodular(len(cols), rng))

    k = int(rng.integers(0, n + 1))
    picked = sorted(rng.choice(n, size=k, replace=False).tolist())
    L0 = zeros(n, k)
    for j, c in enumerate(picked):
        L0[c, j] = 1
    L_basis = matmul(matmul(Uinv, L0), random_unimodular(k, rng))
    functional = [int(x) for x in rng.integers(-5, 6, size=k)]
    return QuotientInstance(
        GramForm(ring, kind, gram),
        Sublattice(n, N_basis),
        Sublattice(n, L_basis),
        functional,
        2 * len(S) + extra,
    )
