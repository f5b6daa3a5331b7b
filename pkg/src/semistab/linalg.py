"""Exact dense linear algebra over Z, Z_(ell) and Z/ell^k.

Matrices are numpy arrays of ``dtype=object`` holding Python ints or
Fractions, so products and sums never leave exact arithmetic.  Ring
context (reduction mod ell^k, unit tests, Euclidean quotients) comes from
a :class:`~semistab.rings.LocalRing`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import PreconditionError, RankDeficiencyError
from .rings import ZZ, LocalRing, parse_number


def zeros(m: int, n: int) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def matrix(data, ring: LocalRing | None = None, cols: int | None = None) -> np.ndarray:
    """Build an exact matrix from nested rows of ints, Fractions or strings.

    ``cols`` fixes the width of an empty row list.
    """
    if isinstance(data, np.ndarray) and data.ndim == 2:
        rows = data.tolist()
        cols = data.shape[1] if cols is None else cols
    else:
        rows = [list(r) for r in data]
    width = len(rows[0]) if rows else (cols or 0)
    if any(len(r) != width for r in rows):
        raise PreconditionError("matrix rows have unequal lengths")
    out = zeros(len(rows), width)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = ring.coerce(x) if ring is not None else parse_number(x)
    return out


def column(vec) -> np.ndarray:
    return matrix([[x] for x in vec])


def to_ring(A, ring: LocalRing) -> np.ndarray:
    return matrix(A, ring, cols=np.shape(A)[1] if np.ndim(A) == 2 else None)


def reduce(A: np.ndarray, ring: LocalRing) -> np.ndarray:
    if ring.is_modular:
        return A % ring.modulus
    return np.vectorize(ring.reduce, otypes=[object])(A) if A.size else A.copy()


def matmul(A: np.ndarray, B: np.ndarray, ring: LocalRing | None = None) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise PreconditionError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    out = A.dot(B)
    return reduce(out, ring) if ring is not None else out


def mat_equal(A: np.ndarray, B: np.ndarray, ring: LocalRing | None = None) -> bool:
    if A.shape != B.shape:
        return False
    if ring is not None and ring.is_modular:
        return bool(np.all((A - B) % ring.modulus == 0)) if A.size else True
    return bool(np.all(A == B)) if A.size else True


def to_json(A: np.ndarray) -> list[list[str]]:
    return [[str(x) for x in row] for row in A.tolist()]


def from_json(obj, ring: LocalRing | None = None) -> np.ndarray:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise PreconditionError("matrix must be a JSON array of arrays")
    return matrix(obj, ring)


# -- determinants and inverses over the rationals ----------------------------


def _gauss_jordan(A: np.ndarray):
    """Row reduce a copy of ``A`` over Q.  Returns (reduced, pivot columns, det sign*product)."""
    M = [[Fraction(x) for x in row] for row in A.tolist()]
    m = len(M)
    n = len(M[0]) if m else 0
    pivots = []
    scale = Fraction(1)
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            scale = -scale
        pv = M[r][c]
        scale *= pv
        M[r] = [x / pv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots, scale


def det(A: np.ndarray):
    """Exact determinant over Q (an int when the result is integral)."""
    n, n2 = A.shape
    if n != n2:
        raise PreconditionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    _, pivots, scale = _gauss_jordan(A)
    if len(pivots) < n:
        return 0
    return scale.numerator if scale.denominator == 1 else scale


def rank(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(_gauss_jordan(A)[1])


def inverse(A: np.ndarray, ring: LocalRing | None = None) -> np.ndarray:
    """Inverse over Q, coerced into ``ring`` (which fails unless ``det A`` is a unit)."""
    n = A.shape[0]
    if n == 0:
        return zeros(0, 0)
    aug = np.concatenate([A, identity(n)], axis=1)
    M, pivots, _ = _gauss_jordan(aug)
    if pivots[:n] != list(range(n)):
        raise PreconditionError("matrix is singular")
    inv = matrix([row[n:] for row in M])
    return to_ring(inv, ring) if ring is not None else inv


def is_unimodular(A: np.ndarray, ring: LocalRing = ZZ) -> bool:
    if A.shape[0] != A.shape[1]:
        return False
    d = det(A)
    return ring.contains(d) and ring.is_unit(ring.coerce(d))


# -- Smith normal form --------------------------------------------------------


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` invertible over ``ring``."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    ring: LocalRing = ZZ

    @property
    def diagonal(self) -> list:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if not self.ring.is_zero(d))


def _select_pivot(A, t, ring):
    best = None
    m, n = A.shape
    for i in range(t, m):
        for j in range(t, n):
            s = ring.norm(A[i, j])
            if s is not None and (best is None or s < best[0]):
                best = (s, i, j)
    return None if best is None else best[1:]


def snf(A, ring: LocalRing = ZZ) -> SnfDecomposition:
    """Smith normal form with smallest-norm pivoting.

    Norm is ``|x|`` over Z and the ell-adic valuation otherwise; ties go
    to the lowest row, then lowest column.  Diagonal entries are
    normalized to be nonnegative (Z) or exact powers of ell (local rings).
    """
    A = to_ring(A, ring)
    m, n = A.shape
    U, V = identity(m), identity(n)

    def red(x):
        return reduce(x, ring) if ring.is_modular else x

    for t in range(min(m, n)):
        while True:
            piv = _select_pivot(A, t, ring)
            if piv is None:
                return SnfDecomposition(reduce(U, ring), reduce(A, ring), reduce(V, ring), ring)
            i, j = piv
            if i != t:
                A[[t, i], :] = A[[i, t], :]
                U[[t, i], :] = U[[i, t], :]
            if j != t:
                A[:, [t, j]] = A[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                if not ring.is_zero(A[i, t]):
                    q = ring.quo(A[i, t], p)
                    A[i, :] = red(A[i, :] - q * A[t, :])
                    U[i, :] = red(U[i, :] - q * U[t, :])
                    clean = clean and ring.is_zero(A[i, t])
            for j in range(t + 1, n):
                if not ring.is_zero(A[t, j]):
                    q = ring.quo(A[t, j], p)
                    A[:, j] = red(A[:, j] - q * A[:, t])
                    V[:, j] = red(V[:, j] - q * V[:, t])
                    clean = clean and ring.is_zero(A[t, j])
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if not ring.divides(p, A[i, j])),
                None,
            )
            if bad is not None:
                A[t, :] = red(A[t, :] + A[bad, :])
                U[t, :] = red(U[t, :] + U[bad, :])
                continue
            break
        u = ring.unit_part(A[t, t])
        if u != 1:
            inv = ring.inverse(u)
            A[t, :] = red(A[t, :] * inv)
            U[t, :] = red(U[t, :] * inv)
    return SnfDecomposition(reduce(U, ring), reduce(A, ring), reduce(V, ring), ring)


# -- kernels, spans, solving -------------------------------------------------


def rref_mod(A, ell: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the field with ``ell`` elements."""
    M = to_ring(A, LocalRing.mod_prime_power(ell, 1))
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i, c] % ell), None)
        if p is None:
            continue
        M[[r, p], :] = M[[p, r], :]
        M[r, :] = M[r, :] * pow(int(M[r, c]), -1, ell) % ell
        for i in range(m):
            if i != r and M[i, c] % ell:
                M[i, :] = (M[i, :] - M[i, c] * M[r, :]) % ell
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def rank_mod(A, ell: int) -> int:
    if np.size(A) == 0:
        return 0
    return len(rref_mod(A, ell)[1])


def kernel_mod(A, ell: int) -> np.ndarray:
    """Columns form a basis of ``{x : A x = 0 mod ell}``, entries in ``[0, ell)``."""
    A = matrix(A) if not isinstance(A, np.ndarray) else A
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    R, pivots = rref_mod(A, ell)
    free = [j for j in range(n) if j not in pivots]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-R[r, f]) % ell
    return basis


def kernel(A, ring: LocalRing = ZZ) -> np.ndarray:
    """Saturated basis (columns) of the right kernel of ``A`` over ``ring``."""
    A = to_ring(A, ring)
    dec = snf(A, ring)
    return dec.V[:, dec.rank:].copy()


def solve(A, B, ring: LocalRing = ZZ) -> np.ndarray | None:
    """Some ``X`` over ``ring`` with ``A X = B``, or ``None`` if none exists."""
    A = to_ring(A, ring)
    B = to_ring(B, ring)
    m, n = A.shape
    dec = snf(A, ring)
    C = matmul(dec.U, B, ring)
    r = dec.rank
    Y = zeros(n, B.shape[1])
    for i in range(m):
        for c in range(B.shape[1]):
            if i < r:
                d = dec.D[i, i]
                if not ring.divides(d, C[i, c]):
                    return None
                Y[i, c] = ring.quo(C[i, c], d)
            elif not ring.is_zero(C[i, c]):
                return None
    return matmul(dec.V, Y, ring)


def span_contains(basis, vectors, ring: LocalRing = ZZ) -> bool:
    """True iff every column of ``vectors`` lies in the ring-span of ``basis``."""
    basis = to_ring(basis, ring)
    if basis.shape[1] == 0:
        return all(ring.is_zero(x) for x in to_ring(vectors, ring).flat)
    return solve(basis, vectors, ring) is not None


def same_span(A, B, ring: LocalRing = ZZ) -> bool:
    return span_contains(A, B, ring) and span_contains(B, A, ring)


def is_torsion_free_quotient(N_basis, ambient_rank: int, ring: LocalRing = ZZ) -> bool:
    """Whether ``R^ambient_rank / span(N_basis)`` is torsion-free (``N`` saturated)."""
    N = to_ring(N_basis, ring) if np.size(N_basis) else zeros(ambient_rank, 0)
    if N.shape[0] != ambient_rank:
        raise PreconditionError(f"basis has {N.shape[0]} rows, ambient rank is {ambient_rank}")
    if N.shape[1] == 0:
        return True
    dec = snf(N, ring)
    if dec.rank < N.shape[1]:
        raise RankDeficiencyError(f"basis columns are dependent (rank {dec.rank} < {N.shape[1]})")
    return all(ring.is_unit(d) for d in dec.diagonal if not ring.is_zero(d))


# -- arithmetic mod ell^k ---------------------------------------------------


def inverse_mod(A: np.ndarray, modulus: int) -> np.ndarray:
    """Inverse modulo a prime power by Gauss-Jordan with unit pivots."""
    n = A.shape[0]
    M = np.concatenate([A % modulus, identity(n)], axis=1)
    for c in range(n):
        p = next((i for i in range(c, n) if _is_unit_mod(M[i, c], modulus)), None)
        if p is None:
            raise PreconditionError("matrix is not invertible modulo %d" % modulus)
        M[[c, p], :] = M[[p, c], :]
        M[c, :] = M[c, :] * pow(int(M[c, c]), -1, modulus) % modulus
        for i in range(n):
            if i != c and M[i, c] % modulus:
                M[i, :] = (M[i, :] - M[i, c] * M[c, :]) % modulus
    return M[:, n:].copy()


def _is_unit_mod(x, modulus: int) -> bool:
    return gcd(int(x), modulus) == 1
