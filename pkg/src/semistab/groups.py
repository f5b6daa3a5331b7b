"""Finite matrix groups: closure, averaging, invariant splittings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import CapExceededError, PreconditionError
from .linalg import (
    identity,
    inverse_mod,
    is_unimodular,
    kernel,
    mat_equal,
    matmul,
    rank_mod,
    reduce,
    to_ring,
    zeros,
)
from .rings import ZZ, LocalRing

DEFAULT_CAP = 10**6


def _key(A: np.ndarray) -> tuple:
    return tuple(A.flat)


class MatrixGroup:
    """A finite group of invertible matrices over ``ring``, given by generators.

    The element list is the breadth-first closure of the generators and is
    computed on first access.
    """

    def __init__(self, generators, ring: LocalRing = ZZ, cap: int = DEFAULT_CAP, rank: int | None = None):
        if cap < 1:
            raise PreconditionError("cap must be at least 1")
        gens = [to_ring(g, ring) for g in generators]
        if not gens and rank is None:
            raise PreconditionError("an empty generator list needs an explicit rank")
        n = gens[0].shape[0] if gens else rank
        for g in gens:
            if g.shape != (n, n):
                raise PreconditionError(f"generator of shape {g.shape}, expected {(n, n)}")
            if not is_unimodular(g, ring):
                raise PreconditionError(f"generator is not invertible over {ring}")
        self.ring = ring
        self.cap = cap
        self.ambient_rank = n
        self.generators = gens

    @cached_property
    def elements(self) -> list[np.ndarray]:
        ident = reduce(identity(self.ambient_rank), self.ring)
        seen = {_key(ident)}
        out = [ident]
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = matmul(x, g, self.ring)
                k = _key(y)
                if k not in seen:
                    if len(out) >= self.cap:
                        raise CapExceededError(
                            f"closure exceeds cap {self.cap}; the generators may not generate a finite group"
                        )
                    seen.add(k)
                    out.append(y)
                    queue.append(y)
        return out

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def over(self, ring: LocalRing) -> MatrixGroup:
        """The same group with entries coerced into ``ring``."""
        G = MatrixGroup(self.generators, ring, self.cap, self.ambient_rank)
        G.__dict__["elements"] = [to_ring(g, ring) for g in self.elements]
        return G


def close_group(generators, cap: int = DEFAULT_CAP, ring: LocalRing = ZZ, rank: int | None = None) -> MatrixGroup:
    """Enumerate the group generated by ``generators``; raises if it exceeds ``cap``."""
    G = MatrixGroup(generators, ring, cap, rank)
    G.elements
    return G


def as_group(G, ring: LocalRing, rank: int | None = None) -> MatrixGroup:
    if isinstance(G, MatrixGroup):
        return G if G.ring == ring else G.over(ring)
    return close_group(list(G), ring=ring, rank=rank)


def _require_tame(order: int, ring: LocalRing):
    if ring.ell is not None and order % ring.ell == 0:
        raise PreconditionError(f"group order {order} is divisible by ell={ring.ell}")


@dataclass(frozen=True)
class AveragingOperator:
    """``u = (1/|G|) sum g``: the G-equivariant projection onto invariants."""

    matrix: np.ndarray
    ring: LocalRing

    def is_idempotent(self) -> bool:
        return mat_equal(matmul(self.matrix, self.matrix, self.ring), self.matrix, self.ring)

    def absorbs(self, G: MatrixGroup) -> bool:
        """``g u = u = u g`` for every element."""
        u = self.matrix
        return all(
            mat_equal(matmul(g, u, self.ring), u, self.ring) and mat_equal(matmul(u, g, self.ring), u, self.ring)
            for g in as_group(G, self.ring)
        )


def average(G: MatrixGroup, ring: LocalRing | None = None) -> AveragingOperator:
    ring = ring or G.ring
    G = as_group(G, ring)
    _require_tame(G.order, ring)
    n = G.ambient_rank
    if ring.is_modular:
        total = zeros(n, n)
        for g in G:
            total = total + g
        u = total * pow(G.order, -1, ring.modulus) % ring.modulus
        return AveragingOperator(u, ring)
    total = zeros(n, n)
    for g in G:
        total = total + g
    u = total * Fraction(1, G.order)
    return AveragingOperator(to_ring(u, ring), ring)


def fixed_sublattice(G: MatrixGroup, ring: LocalRing | None = None) -> np.ndarray:
    """Saturated basis of ``{x : g x = x for every generator g}``."""
    ring = ring or G.ring
    n = G.ambient_rank
    if not G.generators:
        return identity(n)
    stacked = np.concatenate([to_ring(g, ring) - identity(n) for g in G.generators], axis=0)
    return kernel(stacked, ring)


def check_invariance(e, G) -> bool:
    """Whether ``g^T gram g == gram`` for every ``g`` in ``G`` (over ``e.ring``).

    Checking generators suffices, so a plain matrix list is tested as given
    without closing it into a group.
    """
    ring = e.ring
    gram = e.gram
    if isinstance(G, MatrixGroup):
        mats = G.generators if G.generators else G.elements
    else:
        mats = list(G)
    for g in mats:
        g = to_ring(g, ring) if ring.is_modular else np.asarray(g, dtype=object)
        if g.shape != gram.shape:
            raise PreconditionError("group and form have different ranks")
        if not mat_equal(matmul(matmul(g.T, gram, ring), g, ring), gram, ring):
            return False
    return True


# -- splittings mod ell^k ---------------------------------------------------


def lift_idempotent(E: np.ndarray, modulus: int, max_iter: int = 64) -> np.ndarray:
    """Lift an idempotent mod ell to one mod ``modulus`` via ``E <- 3E^2 - 2E^3``."""
    E = E % modulus
    for _ in range(max_iter):
        E2 = E.dot(E) % modulus
        if not np.any((E2 - E) % modulus):
            return E
        E = (3 * E2 - 2 * E2.dot(E)) % modulus
    raise PreconditionError("idempotent iteration did not converge; input is not idempotent mod ell")


def _extend_to_basis(B: np.ndarray, ell: int) -> np.ndarray:
    """Standard basis vectors completing the columns of ``B`` to a basis mod ell."""
    n = B.shape[0]
    cur = B
    extra = []
    r = rank_mod(cur, ell)
    for i in range(n):
        e_i = zeros(n, 1)
        e_i[i, 0] = 1
        cand = np.concatenate([cur, e_i], axis=1)
        if rank_mod(cand, ell) > r:
            cur, r = cand, r + 1
            extra.append(i)
    C = zeros(n, len(extra))
    for j, i in enumerate(extra):
        C[i, j] = 1
    return C


def invariant_splitting(subspace, G: MatrixGroup, ell: int, k: int = 8):
    """Lift a G-stable subspace of ``M/ell M`` to a G-stable splitting mod ell^k.

    ``subspace`` has columns spanning a G-stable subspace of ``F_ell^n``.
    Returns ``(B1, B2)``: column bases (entries mod ell^k) of G-stable
    sublattices with ``M = M1 + M2`` directly, ``M1`` reducing to
    ``subspace`` and ``M2`` to a G-stable complement.
    """
    ring = LocalRing.mod_prime_power(ell, k)
    m = ring.modulus
    G = as_group(G, ring)
    _require_tame(G.order, ring)
    n = G.ambient_rank
    S = to_ring(subspace, ZZ) % ell if np.size(subspace) else zeros(n, 0)
    s = rank_mod(S, ell)
    if s != S.shape[1]:
        raise PreconditionError("subspace columns are dependent mod ell")
    for g in G.generators:
        if rank_mod(np.concatenate([S, matmul(g, S) % ell], axis=1), ell) != s:
            raise PreconditionError("subspace is not G-stable mod ell")
    C = _extend_to_basis(S, ell)
    basis = np.concatenate([S, C], axis=1)
    # projection onto span(S) along span(C), mod ell
    pi = matmul(matmul(basis, _block_projector(s, n)), inverse_mod(basis, ell)) % ell
    inv_order = pow(G.order, -1, m)
    avg = zeros(n, n)
    for g in G:
        avg = avg + matmul(matmul(g, pi), inverse_mod(g, m))
    E = lift_idempotent(avg * inv_order % m, m)
    B1 = matmul(E, S) % m
    B2 = matmul(identity(n) - E, C) % m
    return B1, B2


def _block_projector(s: int, n: int) -> np.ndarray:
    P = zeros(n, n)
    for i in range(s):
        P[i, i] = 1
    return P
