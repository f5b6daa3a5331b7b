from fractions import Fraction

import numpy as np
import pytest

from semistab.errors import PrecisionError, PreconditionError
from semistab.groups import check_invariance, close_group
from semistab.instances import random_perfectize_instance, random_quotient_instance
from semistab.linalg import identity, mat_equal, matrix, same_span, zeros
from semistab.pairings import (
    FormKind,
    GramForm,
    Sublattice,
    double_perp_check,
    functional_preimage,
    induced_quotient_form,
    is_perfect,
    orthogonal_complement,
    perfectize,
    standard_symplectic,
)
from semistab.rings import ZZ, LocalRing

ALT = FormKind.ALTERNATING
SYM = FormKind.SYMMETRIC
J4 = GramForm(ZZ, ALT, standard_symplectic(2))


def unit(n, *idx):
    return Sublattice(n, matrix([[1 if r == i else 0 for i in idx] for r in range(n)]))


def test_gram_form_validation():
    with pytest.raises(PreconditionError):
        GramForm(ZZ, ALT, matrix([[1, 0], [0, -1]]))
    with pytest.raises(PreconditionError):
        GramForm(ZZ, SYM, matrix([[0, 1], [2, 0]]))
    e = GramForm.from_json({"ring": "Z_(3)", "kind": "symmetric", "gram": [["1", "1/3"], ["1/3", "2"]]})
    assert not e.is_integral()
    assert GramForm.from_json(e.to_json()).gram.tolist() == e.gram.tolist()


def test_is_perfect_examples():
    assert is_perfect(GramForm(ZZ, ALT, standard_symplectic(1)))
    assert not is_perfect(GramForm(LocalRing.localized(3), ALT, matrix([[0, 3], [-3, 0]])))
    assert is_perfect(GramForm(LocalRing.localized(3), ALT, matrix([[0, 2], [-2, 0]])))
    assert not is_perfect(GramForm(ZZ, ALT, matrix([[0, 2], [-2, 0]])))


def test_orthogonal_complement_examples():
    assert same_span(orthogonal_complement(J4, unit(4, 0, 1, 2)).basis, unit(4, 1).basis)
    assert same_span(orthogonal_complement(J4, unit(4, 0)).basis, unit(4, 0, 1, 3).basis)
    assert orthogonal_complement(J4, Sublattice.full(4)).rank == 0
    assert orthogonal_complement(J4, Sublattice.zero(4)).rank == 4


def test_double_perp_examples():
    assert double_perp_check(J4, unit(4, 0))
    assert double_perp_check(J4, Sublattice.full(4))
    with pytest.raises(PreconditionError, match="torsion-free"):
        double_perp_check(J4, Sublattice(4, matrix([[2], [0], [0], [0]])))
    with pytest.raises(PreconditionError, match="not perfect"):
        double_perp_check(GramForm(ZZ, ALT, matrix([[0, 2], [-2, 0]])), unit(2, 0))


def test_induced_quotient_examples():
    q = induced_quotient_form(J4, unit(4, 0, 1, 2))
    assert q.rank == 2 and is_perfect(q)
    assert q.kind is ALT
    full = induced_quotient_form(J4, Sublattice.full(4))
    assert full.rank == 4 and is_perfect(full)
    J2 = GramForm(ZZ, ALT, standard_symplectic(1))
    assert induced_quotient_form(J2, unit(2, 0)).rank == 0
    with pytest.raises(PreconditionError, match="not contained"):
        induced_quotient_form(J4, unit(4, 0))


def test_functional_preimage():
    L = unit(4, 0, 1)
    x = functional_preimage(J4, L, [3, -2])
    assert J4(x, L.basis[:, 0]) == 3 and J4(x, L.basis[:, 1]) == -2


def test_perfectize_scaling_only():
    e = GramForm(LocalRing.localized(3), ALT, matrix([[0, 3], [-3, 0]]))
    r = perfectize(e, [identity(2)])
    assert mat_equal(r.form.gram, standard_symplectic(1))
    assert [b.shift for b in r.blocks] == [-1]


def test_perfectize_already_perfect_keeps_form():
    e = GramForm(LocalRing.localized(5), SYM, matrix([[2, 1], [1, 4]]))
    G = close_group([-identity(2)])
    r = perfectize(e, G)
    assert mat_equal(r.form.gram, e.gram)
    assert r.blocks[0].shift == 0


def test_perfectize_rank4_block():
    gram = zeros(4, 4)
    gram[0, 2], gram[2, 0] = 1, -1
    gram[1, 3], gram[3, 1] = 3, -3
    e = GramForm(LocalRing.localized(3), ALT, gram)
    G = close_group([-identity(4)])
    r = perfectize(e, G)
    assert is_perfect(r.form) and check_invariance(r.form, G) and r.form.kind is ALT


def test_perfectize_negative_valuation_and_modular_ring():
    e = GramForm(LocalRing.localized(5), SYM, matrix([[Fraction(1, 5), 0], [0, 5]]))
    r = perfectize(e, [identity(2)])
    assert is_perfect(r.form)
    m = GramForm(LocalRing.mod_prime_power(3, 6), ALT, matrix([[0, 9], [-9, 0]]))
    rm = perfectize(m, [identity(2)])
    assert is_perfect(rm.form)


def test_perfectize_preconditions():
    R = LocalRing.localized(3)
    with pytest.raises(PreconditionError, match="divisible"):
        perfectize(GramForm(R, SYM, identity(3)), [matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])])
    with pytest.raises(PreconditionError, match="degenerate"):
        perfectize(GramForm(R, SYM, matrix([[1, 0], [0, 0]])), [identity(2)])
    with pytest.raises(PreconditionError, match="invariant"):
        perfectize(GramForm(R, SYM, matrix([[1, 0], [0, 2]])), [matrix([[0, 1], [1, 0]])])
    with pytest.raises(PreconditionError):
        perfectize(GramForm(ZZ, SYM, identity(2)), [identity(2)])


@pytest.mark.parametrize("seed", range(5))
def test_perfectize_random(seed):
    rng = np.random.default_rng(100 + seed)
    for _ in range(20):
        inst = random_perfectize_instance(rng)
        out = perfectize(inst.form, inst.group).form
        assert is_perfect(out)
        assert check_invariance(out, inst.group)
        assert out.kind is inst.form.kind


@pytest.mark.parametrize("seed", range(5))
def test_quotient_random(seed):
    rng = np.random.default_rng(200 + seed)
    for _ in range(20):
        inst = random_quotient_instance(rng)
        q = induced_quotient_form(inst.form, inst.N)
        assert is_perfect(q) and q.rank == inst.quotient_rank
        assert double_perp_check(inst.form, inst.L)


def test_perfectize_runs_out_of_precision():
    e = GramForm(LocalRing.localized(3), SYM, matrix([[1, 0], [0, 27]]))
    with pytest.raises(PrecisionError):
        perfectize(e, [identity(2)], precision=2)
    assert is_perfect(perfectize(e, [identity(2)], precision=4).form)
