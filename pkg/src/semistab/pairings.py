"""Bilinear forms on lattices: perfectness, orthogonal complements, quotient
pairings, and the inductive construction of perfect invariant forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import PrecisionError, PreconditionError, SemistabError
from .groups import MatrixGroup, as_group, check_invariance, invariant_splitting
from .linalg import (
    det,
    identity,
    inverse,
    inverse_mod,
    is_torsion_free_quotient,
    kernel,
    kernel_mod,
    mat_equal,
    matmul,
    matrix,
    rank,
    rank_mod,
    same_span,
    snf,
    solve,
    span_contains,
    to_json,
    to_ring,
    zeros,
)
from .rings import DEFAULT_PRECISION, LocalRing, ell_valuation, parse_number


class FormKind(str, Enum):
    ALTERNATING = "alternating"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True, eq=False)
class GramForm:
    """A bilinear form ``e(x, y) = x^T gram y`` on ``ring^n``.

    Entries need not lie in ``ring``: a form on ``V = M tensor Q`` is
    allowed (``is_integral`` tells whether ``e(M, M)`` lands in the ring).
    """

    ring: LocalRing
    kind: FormKind
    gram: np.ndarray

    def __post_init__(self):
        g = self.gram
        if not isinstance(g, np.ndarray) or g.dtype != object:
            g = matrix(g)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise PreconditionError("Gram matrix must be square")
        if self.ring.is_modular:
            g = to_ring(g, self.ring)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "kind", FormKind(self.kind))
        ring = self.ring if self.ring.is_modular else None
        if self.kind is FormKind.ALTERNATING:
            ok = mat_equal(g.T, -g, ring) and all(
                (self.ring.is_zero(g[i, i]) if ring else g[i, i] == 0) for i in range(g.shape[0])
            )
        else:
            ok = mat_equal(g.T, g, ring)
        if not ok:
            raise PreconditionError(f"Gram matrix is not {self.kind.value}")

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    def is_integral(self) -> bool:
        return all(self.ring.contains(x) for x in self.gram.flat)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=object).reshape(-1, 1)
        y = np.asarray(y, dtype=object).reshape(-1, 1)
        val = matmul(matmul(x.T, self.gram), y)[0, 0]
        return self.ring.reduce(val)

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(), "kind": self.kind.value, "gram": to_json(self.gram)}

    @classmethod
    def from_json(cls, obj: dict) -> GramForm:
        try:
            ring = LocalRing.from_json(obj["ring"])
            kind = FormKind(obj["kind"])
            gram = obj["gram"]
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed GramForm: {exc}") from None
        if not isinstance(gram, list):
            raise PreconditionError("gram must be an array of arrays")
        return cls(ring, kind, matrix(gram, cols=0 if not gram else None))


def standard_symplectic(n: int) -> np.ndarray:
    """Block matrix ``[[0, I], [-I, 0]]`` of size ``2n``: ``e_i`` pairs with ``e_{n+i}``."""
    J = zeros(2 * n, 2 * n)
    for i in range(n):
        J[i, n + i] = 1
        J[n + i, i] = -1
    return J


@dataclass(frozen=True, eq=False)
class Sublattice:
    """The span of the columns of ``basis`` inside ``R^ambient_rank``."""

    ambient_rank: int
    basis: np.ndarray

    def __post_init__(self):
        b = self.basis
        if not isinstance(b, np.ndarray) or b.dtype != object:
            b = matrix(b, cols=0) if np.size(b) == 0 else matrix(b)
        if b.size == 0:
            b = zeros(self.ambient_rank, 0)
        if b.shape[0] != self.ambient_rank:
            raise PreconditionError(f"basis has {b.shape[0]} rows, expected {self.ambient_rank}")
        if rank(b) != b.shape[1]:
            raise PreconditionError("sublattice basis columns are dependent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def spanned_by(cls, *vectors) -> Sublattice:
        n = len(vectors[0])
        B = zeros(n, len(vectors))
        for j, v in enumerate(vectors):
            for i, x in enumerate(v):
                B[i, j] = parse_number(x)
        return cls(n, B)

    @classmethod
    def zero(cls, n: int) -> Sublattice:
        return cls(n, zeros(n, 0))

    @classmethod
    def full(cls, n: int) -> Sublattice:
        return cls(n, identity(n))

    @property
    def rank(self) -> int:
        return self.basis.shape[1]


def _gram_in_ring(e: GramForm) -> np.ndarray:
    if not e.is_integral():
        raise PreconditionError(f"form is not {e.ring}-valued on the lattice")
    return to_ring(e.gram, e.ring)


def is_perfect(e: GramForm) -> bool:
    """True iff ``det(gram)`` is a unit of the ring."""
    if e.rank == 0:
        return True
    if not e.is_integral():
        return False
    d = det(to_ring(e.gram, e.ring))
    return e.ring.is_unit(e.ring.coerce(d))


def orthogonal_complement(e: GramForm, L: Sublattice) -> Sublattice:
    """``{x : e(x, l) = 0 for all l in L}``, returned as a saturated sublattice."""
    if L.ambient_rank != e.rank:
        raise PreconditionError("sublattice and form live in different ranks")
    G = _gram_in_ring(e)
    B = to_ring(L.basis, e.ring)
    A = matmul(B.T, G.T, e.ring)
    return Sublattice(e.rank, kernel(A, e.ring))


def _require_perfect_saturated(e: GramForm, L: Sublattice):
    if not is_perfect(e):
        raise PreconditionError("hypothesis failed: the form is not perfect")
    if not is_torsion_free_quotient(L.basis, e.rank, e.ring):
        raise PreconditionError("hypothesis failed: ambient/sublattice quotient is not torsion-free")


def double_perp_check(e: GramForm, L: Sublattice) -> bool:
    """Whether ``(L^perp)^perp == L`` for a perfect ``e`` and saturated ``L``."""
    _require_perfect_saturated(e, L)
    back = orthogonal_complement(e, orthogonal_complement(e, L))
    return same_span(back.basis, L.basis, e.ring)


def functional_preimage(e: GramForm, L: Sublattice, values) -> np.ndarray:
    """An ``x`` in the ambient lattice with ``e(x, l_j) = values[j]`` on the basis of ``L``.

    Raises if no such ``x`` exists (it always does for perfect ``e`` and saturated ``L``).
    """
    G = _gram_in_ring(e)
    B = to_ring(L.basis, e.ring)
    A = matmul(B.T, G.T, e.ring)
    rhs = matrix([[v] for v in values], e.ring, cols=1)
    x = solve(A, rhs, e.ring)
    if x is None:
        raise PreconditionError("functional does not extend to the ambient lattice")
    return x


def quotient_representatives(N: Sublattice, sub: Sublattice, ring: LocalRing) -> np.ndarray:
    """Columns in ``N`` whose classes form a basis of ``N / sub`` (``sub`` saturated in ``N``)."""
    Nb = to_ring(N.basis, ring)
    coords = solve(Nb, to_ring(sub.basis, ring), ring) if sub.rank else zeros(N.rank, 0)
    if coords is None:
        raise PreconditionError("sub is not contained in N")
    dec = snf(coords, ring)
    if any(not ring.is_unit(d) for d in dec.diagonal):
        raise PreconditionError("N/sub has torsion")
    Uinv = inverse(dec.U, ring)
    return matmul(Nb, Uinv[:, dec.rank:], ring)


def induced_quotient_form(e: GramForm, N: Sublattice) -> GramForm:
    """The form ``(a + N^perp, b + N^perp) -> e(a, b)`` on ``N / N^perp``.

    A rank-zero quotient gives the empty form.
    """
    _require_perfect_saturated(e, N)
    Np = orthogonal_complement(e, N)
    if not span_contains(N.basis, Np.basis, e.ring):
        raise PreconditionError("hypothesis failed: N^perp is not contained in N")
    R = quotient_representatives(N, Np, e.ring)
    G = to_ring(e.gram, e.ring)
    return GramForm(e.ring, e.kind, matmul(matmul(R.T, G, e.ring), R, e.ring))


# -- perfect invariant forms ----------------------------------------------------


@dataclass(frozen=True)
class PerfectizeBlock:
    """One orthogonal summand: basis columns ``offset:offset+size`` of the
    adapted basis, on which the output form is ``ell^shift * e``."""

    offset: int
    size: int
    shift: int


@dataclass(frozen=True, eq=False)
class PerfectizeResult:
    form: GramForm
    basis_change: np.ndarray
    block_form: GramForm
    blocks: list[PerfectizeBlock] = field(default_factory=list)
    precision: int = DEFAULT_PRECISION

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "basis_change": to_json(self.basis_change),
            "block_form": self.block_form.to_json(),
            "blocks": [{"offset": b.offset, "size": b.size, "shift": b.shift} for b in self.blocks],
            "precision": self.precision,
        }


def _elements_group(elements, ring: LocalRing, n: int) -> MatrixGroup:
    G = MatrixGroup([], ring, rank=n)
    G.__dict__["elements"] = list(elements)
    return G


def _perfectize_mod(W, elements, ell, prec, shift):
    """Recursive step on ``ring^n`` with the form ``W`` known mod ``ell^prec``.

    Returns (P, D, blocks, prec): columns of ``P`` are an adapted basis,
    ``D = P^T (ell^-v W) P`` is block diagonal and perfect mod ell.
    """
    n = W.shape[0]
    if n == 0:
        return identity(0), zeros(0, 0), [], prec
    m = ell**prec
    vals = [ell_valuation(int(x), ell) for x in W.flat if x % m]
    if not vals:
        raise PrecisionError(f"form vanishes modulo {ell}^{prec}; increase the precision")
    v = min(vals)
    if v:
        W = W // ell**v
        prec -= v
        shift -= v
        m = ell**prec
        W = W % m
        elements = [g % m for g in elements]
    if rank_mod(W, ell) == n:
        return identity(n), W, [PerfectizeBlock(0, n, shift)], prec

    ring = LocalRing.mod_prime_power(ell, prec)
    radical = kernel_mod(W, ell)
    B1, B2 = invariant_splitting(radical, _elements_group(elements, ring, n), ell, prec)
    E2 = matmul(matmul(B2.T, W), B2) % m
    proj = matmul(matmul(B2, inverse_mod(E2, m)), matmul(B2.T, W)) % m
    C1 = matmul(identity(n) - proj, B1) % m
    P = np.concatenate([C1, B2], axis=1)
    Pinv = inverse_mod(P, m)
    r1 = C1.shape[1]
    if np.any(matmul(matmul(C1.T, W), B2) % m):
        raise SemistabError("internal: complement is not orthogonal")
    W1 = matmul(matmul(C1.T, W), C1) % m
    restricted = []
    for g in elements:
        h = matmul(matmul(Pinv, g), P) % m
        if np.any(h[:r1, r1:] % m) or np.any(h[r1:, :r1] % m):
            raise SemistabError("internal: splitting is not G-stable")
        restricted.append(h[:r1, :r1].copy())
    P1, D1, blocks1, prec1 = _perfectize_mod(W1, restricted, ell, prec, shift)
    m1 = ell**prec1
    total = np.concatenate([matmul(C1, P1) % m1, B2 % m1], axis=1)
    D = zeros(n, n)
    D[:r1, :r1] = D1 % m1
    D[r1:, r1:] = E2 % m1
    return total, D, blocks1 + [PerfectizeBlock(r1, n - r1, shift)], prec1


def _symmetrized_lift(A: np.ndarray, kind: FormKind) -> np.ndarray:
    n = A.shape[0]
    out = zeros(n, n)
    sign = -1 if kind is FormKind.ALTERNATING else 1
    for i in range(n):
        if kind is FormKind.SYMMETRIC:
            out[i, i] = int(A[i, i])
        for j in range(i + 1, n):
            out[i, j] = int(A[i, j])
            out[j, i] = sign * int(A[i, j])
    return out


def perfectize(e: GramForm, G, kind: FormKind | str | None = None, precision: int = DEFAULT_PRECISION) -> PerfectizeResult:
    """A perfect G-invariant form of the same kind on the lattice of ``e``.

    ``e`` is a non-degenerate G-invariant form over ``Z_(ell)`` (entries
    may have ``ell`` in the denominator) or over ``Z/ell^k``; ``G`` is a
    :class:`MatrixGroup` (or generator list) of ell-integral matrices with
    ``ell`` not dividing its order.  Splittings are lifted mod
    ``ell^precision``; the final form is then averaged over ``G`` so that
    invariance is exact over ``Z_(ell)``.
    """
    ring = e.ring
    if ring.is_integers:
        raise PreconditionError("perfectize needs a local ring (Z_(ell) or Z/ell^k)")
    if kind is not None and FormKind(kind) is not e.kind:
        raise PreconditionError(f"form is {e.kind.value}, requested {FormKind(kind).value}")
    ell = ring.ell
    n = e.rank
    prec = ring.k if ring.is_modular else precision
    group_ring = ring if ring.is_modular else LocalRing.localized(ell)
    try:
        G = as_group(G, group_ring, rank=n)
    except PreconditionError as exc:
        raise PreconditionError(f"group does not preserve the lattice: {exc}") from None
    if G.ambient_rank != n:
        raise PreconditionError("group and form have different ranks")
    if G.order % ell == 0:
        raise PreconditionError(f"group order {G.order} is divisible by ell={ell}")
    d = det(e.gram)
    if ring.is_modular and d % ring.modulus == 0 or d == 0:
        raise PreconditionError("form is degenerate")
    wring = ring if ring.is_modular else None
    for g in G.elements:
        if not mat_equal(matmul(matmul(g.T, e.gram, wring), g, wring), e.gram, wring):
            raise PreconditionError("form is not G-invariant")

    shift = 0
    gram = e.gram
    if ring.is_localized:
        shift = -min(ell_valuation(x, ell) for x in gram.flat if x != 0)
        gram = gram * Fraction(ell) ** shift
    W = to_ring(gram, LocalRing.mod_prime_power(ell, prec)) if n else zeros(0, 0)
    elements = [to_ring(g, LocalRing.mod_prime_power(ell, prec)) for g in G.elements]
    P, D, blocks, final_prec = _perfectize_mod(W, elements, ell, prec, shift)
    mf = ell**final_prec
    work = LocalRing.mod_prime_power(ell, final_prec)
    Pinv = inverse_mod(P, mf)
    in_original = matmul(matmul(Pinv.T, D), Pinv) % mf
    lifted = _symmetrized_lift(in_original, e.kind)

    if ring.is_modular:
        out_ring = work
        total = zeros(n, n)
        for g in G.elements:
            g = to_ring(g, work)
            total = total + matmul(matmul(g.T, lifted), g)
        avg = total * pow(G.order, -1, mf) % mf
    else:
        out_ring = ring
        total = zeros(n, n)
        for g in G.elements:
            total = total + matmul(matmul(g.T, lifted), g)
        avg = to_ring(total * Fraction(1, G.order), ring)
    out = GramForm(out_ring, e.kind, avg)
    if not is_perfect(out) or not check_invariance(out, G):
        raise SemistabError("internal: perfectize output failed validation")
    return PerfectizeResult(
        form=out,
        basis_change=P,
        block_form=GramForm(work, e.kind, D),
        blocks=blocks,
        precision=final_prec,
    )
