"""Element-order spectra of GL_n, SL_n and Sp_2m over F_ell by brute force.

Matrices are batched as ``(count, n, n)`` int64 arrays with entries in
``[0, ell)``, so a whole batch is multiplied at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np
from sympy import factorint, isprime, primitive_root

from .classical import gl_group_order_int, sl_group_order_int, sp_group_order_int
from .errors import BudgetExceededError, PreconditionError

FAMILIES = ("GL", "SL", "Sp")
DEFAULT_BUDGET = 10**6
DEFAULT_SAMPLES = 10**5
_CHUNK = 20_000


# -- batched arithmetic mod ell ----------------------------------------------


def bmul(A: np.ndarray, B: np.ndarray, ell: int) -> np.ndarray:
    return np.matmul(A, B) % ell


def bpow(A: np.ndarray, e: int, ell: int) -> np.ndarray:
    n = A.shape[-1]
    out = np.broadcast_to(np.eye(n, dtype=np.int64), A.shape).copy()
    base = A
    while e:
        if e & 1:
            out = bmul(out, base, ell)
        e >>= 1
        if e:
            base = bmul(base, base, ell)
    return out


def is_identity(A: np.ndarray) -> np.ndarray:
    n = A.shape[-1]
    return np.all(A == np.eye(n, dtype=np.int64), axis=(1, 2))


def bdet(A: np.ndarray, ell: int) -> np.ndarray:
    """Determinants mod ell by batched Gaussian elimination."""
    A = A % ell
    N, n, _ = A.shape
    inv = np.zeros(ell, dtype=np.int64)
    inv[1:] = [pow(i, -1, ell) for i in range(1, ell)]
    det = np.ones(N, dtype=np.int64)
    rows = np.arange(N)
    for c in range(n):
        nz = A[:, c:, c] != 0
        has = nz.any(axis=1)
        piv = np.argmax(nz, axis=1) + c
        det[~has] = 0
        top, other = A[rows, c].copy(), A[rows, piv].copy()
        A[rows, c], A[rows, piv] = other, top
        det = np.where(piv != c, -det % ell, det)
        p = A[:, c, c]
        det = det * p % ell
        factors = A[:, c + 1 :, c] * inv[p][:, None] % ell
        A[:, c + 1 :, :] = (A[:, c + 1 :, :] - factors[:, :, None] * A[:, None, c, :]) % ell
    return det


def exponent_bound(n: int, ell: int) -> int:
    """A multiple of the order of every element of GL_n(F_ell).

    The semisimple part has order dividing ``ell^i - 1`` for the degrees
    ``i <= n`` of its eigenvalue fields; the unipotent part has order
    ``ell^c`` with ``ell^c >= n``.
    """
    c = 0
    while ell**c < n:
        c += 1
    return lcm(*(ell**i - 1 for i in range(1, n + 1))) * ell**c


def element_orders(A: np.ndarray, ell: int) -> np.ndarray:
    """Exact multiplicative order of each matrix in the batch."""
    N, n, _ = A.shape
    E = exponent_bound(n, ell)
    orders = np.ones(N, dtype=np.int64)
    for q, e in factorint(E).items():
        cur = bpow(A, E // q**e, ell)
        j = np.zeros(N, dtype=np.int64)
        for _ in range(e):
            pending = ~is_identity(cur)
            if not pending.any():
                break
            j[pending] += 1
            cur[pending] = bpow(cur[pending], q, ell)
        if not is_identity(cur).all():
            raise AssertionError("exponent bound is not a multiple of some element order")
        orders *= q**j
    return orders


# -- groups --------------------------------------------------------------------


def symplectic_gram(m: int) -> np.ndarray:
    J = np.zeros((2 * m, 2 * m), dtype=np.int64)
    J[:m, m:] = np.eye(m, dtype=np.int64)
    J[m:, :m] = -np.eye(m, dtype=np.int64)
    return J


def matrix_size(family: str, size: int) -> int:
    return 2 * size if family == "Sp" else size


def group_order(family: str, size: int, ell: int) -> int:
    if family == "GL":
        return gl_group_order_int(size, ell)
    if family == "SL":
        return sl_group_order_int(size, ell)
    return sp_group_order_int(size, ell)


def _elementary(n: int, i: int, j: int) -> np.ndarray:
    E = np.eye(n, dtype=np.int64)
    E[i, j] = 1
    return E


def standard_generators(family: str, size: int, ell: int) -> np.ndarray:
    """Generators of the group: elementary matrices, plus a diagonal one for GL,
    and for Sp the unipotent block matrices with a symmetric corner together
    with the Levi elements ``diag(A, A^-T)``."""
    gens = []
    if family in ("GL", "SL"):
        n = size
        gens += [_elementary(n, i, j) for i in range(n) for j in range(n) if i != j]
        if family == "GL" and ell > 2:
            D = np.eye(n, dtype=np.int64)
            D[0, 0] = primitive_root(ell)
            gens.append(D)
        if not gens:
            gens.append(np.eye(n, dtype=np.int64))
    else:
        m = size
        n = 2 * m
        for i in range(m):
            for j in range(i, m):
                S = np.zeros((m, m), dtype=np.int64)
                S[i, j] = S[j, i] = 1
                up = np.eye(n, dtype=np.int64)
                up[:m, m:] = S
                gens += [up, up.T.copy()]
        for i in range(m):
            for j in range(m):
                if i != j:
                    A = _elementary(m, i, j)
                    L = np.eye(n, dtype=np.int64)
                    L[:m, :m] = A
                    L[m:, m:] = (2 * np.eye(m, dtype=np.int64) - A).T % ell  # (I + E_ij)^-1 = I - E_ij
                    gens.append(L)
    return np.stack(gens) % ell


def _keys(A: np.ndarray, ell: int):
    flat = A.reshape(A.shape[0], -1)
    if ell ** flat.shape[1] < 2**63:
        weights = ell ** np.arange(flat.shape[1], dtype=np.int64)
        return flat @ weights
    return np.array([row.tobytes() for row in flat.astype(np.int64)], dtype=object)


def enumerate_group(gens: np.ndarray, ell: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All elements of the group generated by ``gens``, by breadth-first closure."""
    n = gens.shape[-1]
    ident = np.eye(n, dtype=np.int64)[None]
    frontier = ident
    found = [ident]
    seen = set(_keys(ident, ell).tolist())
    total = 1
    while len(frontier):
        cand = np.concatenate([bmul(frontier, g, ell) for g in gens])
        keys = _keys(cand, ell)
        _, first = np.unique(keys, return_index=True)
        fresh = [i for i in first if keys[i] not in seen]
        frontier = cand[fresh]
        seen.update(keys[fresh].tolist())
        total += len(fresh)
        if total > budget:
            raise BudgetExceededError(
                f"group has more than {budget} elements; use sampled mode or raise the budget"
            )
        found.append(frontier)
    return np.concatenate(found)


def random_gl(count: int, n: int, ell: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from GL_n(F_ell) by rejection."""
    out = []
    have = 0
    while have < count:
        A = rng.integers(0, ell, size=(max(count - have, 64) * 2, n, n), dtype=np.int64)
        A = A[bdet(A, ell) != 0][: count - have]
        out.append(A)
        have += len(A)
    return np.concatenate(out)


def random_sl(count: int, n: int, ell: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from SL_n(F_ell): rescale the first row of a GL sample."""
    A = random_gl(count, n, ell, rng)
    inv = np.zeros(ell, dtype=np.int64)
    inv[1:] = [pow(i, -1, ell) for i in range(1, ell)]
    A[:, 0, :] = A[:, 0, :] * inv[bdet(A, ell)][:, None] % ell
    return A


def random_sp(count: int, m: int, ell: int, rng: np.random.Generator, length: int | None = None) -> np.ndarray:
    """Samples from Sp_2m(F_ell) as products of random symplectic transvections
    ``x -> x + c (v^T J x) v``."""
    n = 2 * m
    J = symplectic_gram(m)
    length = length or 4 * n + 8
    out = np.broadcast_to(np.eye(n, dtype=np.int64), (count, n, n)).copy()
    for _ in range(length):
        v = rng.integers(0, ell, size=(count, n, 1), dtype=np.int64)
        c = rng.integers(1, ell, size=(count, 1, 1), dtype=np.int64)
        T = (np.eye(n, dtype=np.int64) + c * (v @ (v.transpose(0, 2, 1) @ J % ell))) % ell
        out = bmul(out, T, ell)
    return out


_SAMPLERS = {"GL": random_gl, "SL": random_sl, "Sp": random_sp}


@dataclass(frozen=True)
class OrderSpectrum:
    family: str
    size: int
    ell: int
    orders: tuple[int, ...]
    method: str
    group_order: int
    samples: int | None = None
    seed: int | None = None
    counts: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if 1 not in self.orders:
            raise AssertionError("identity missing from spectrum")
        bad = [o for o in self.orders if self.group_order % o]
        if bad:
            raise AssertionError(f"orders {bad} do not divide the group order")

    def has_multiple_of(self, k: int) -> bool:
        """Whether some element has order divisible by ``k`` (so a power has order exactly ``k``)."""
        return any(o % k == 0 for o in self.orders)

    def max_power(self, q: int) -> int:
        """Largest ``q^r`` dividing some observed order."""
        best = 1
        for o in self.orders:
            while o % (best * q) == 0:
                best *= q
        return best

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "size": self.size,
            "ell": self.ell,
            "group_order": str(self.group_order),
            "method": self.method,
            "orders": list(self.orders),
        }
        if self.method == "sampled":
            out["samples"] = self.samples
            out["seed"] = self.seed
        return out


def brute_force_spectrum(
    family: str,
    size: int,
    ell: int,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    mode: str = "auto",
) -> OrderSpectrum:
    """Observed element orders of GL_size, SL_size or Sp_(2*size) over F_ell.

    ``mode="exhaustive"`` enumerates the group and is complete; it raises
    :class:`BudgetExceededError` when the group is larger than ``budget``.
    ``mode="sampled"`` draws ``samples`` seeded random elements.
    ``mode="auto"`` picks exhaustive whenever the group fits the budget.
    """
    if family not in FAMILIES:
        raise PreconditionError(f"family must be one of {FAMILIES}, got {family!r}")
    if not isprime(ell):
        raise PreconditionError(f"ell must be prime, got {ell}")
    if size < 1:
        raise PreconditionError(f"size must be positive, got {size}")
    if mode not in ("auto", "exhaustive", "sampled"):
        raise PreconditionError(f"unknown mode {mode!r}")
    order = group_order(family, size, ell)
    if mode == "auto":
        mode = "exhaustive" if order <= budget else "sampled"
    if mode == "exhaustive":
        if order > budget:
            raise BudgetExceededError(
                f"|{family}| = {order} exceeds the budget {budget}; use sampled mode"
            )
        elements = enumerate_group(standard_generators(family, size, ell), ell, budget)
        if len(elements) != order:
            raise AssertionError(f"enumerated {len(elements)} elements, expected {order}")
        orders = np.concatenate([element_orders(elements[i : i + _CHUNK], ell) for i in range(0, len(elements), _CHUNK)])
        values, counts = np.unique(orders, return_counts=True)
        return OrderSpectrum(
            family, size, ell, tuple(int(v) for v in values), "exhaustive", order,
            counts=dict(zip(values.tolist(), counts.tolist())),
        )
    if samples < 1:
        raise PreconditionError("sampled mode needs at least one sample")
    rng = np.random.default_rng(seed)
    sampler = _SAMPLERS[family]
    found: dict[int, int] = {}
    for start in range(0, samples, _CHUNK):
        batch = sampler(min(_CHUNK, samples - start), size, ell, rng)
        values, counts = np.unique(element_orders(batch, ell), return_counts=True)
        for v, c in zip(values.tolist(), counts.tolist()):
            found[v] = found.get(v, 0) + c
    found.setdefault(1, 0)
    return OrderSpectrum(
        family, size, ell, tuple(sorted(found)), "sampled", order, samples, seed, counts=found
    )
