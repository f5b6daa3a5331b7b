from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semistab.bounds import (
    J,
    M_of,
    N_of,
    Q_bound,
    ReductionData,
    admissible_orders,
    advice,
    bound_report,
    gl_min_dim,
    r_q,
    s,
    safe_primes,
    sp_min_dim,
)
from semistab.errors import PreconditionError
from semistab.factored import FactoredInt
from semistab.oracles import cyclotomic_cost_by_partition, gl1_orders, integral_2x2_finite_orders, product_orders
from semistab.verify import growth_holds

GOOD = ReductionData(1, 0, 0, 1, 0, 0)
MULT = ReductionData(1, 0, 1, 0, 0, 0)


def test_s_examples():
    assert s(2, 2) == 3
    assert s(2, 3) == 1
    assert s(4, 2) == 7
    assert s(0, 2) == 0
    assert s(3, 5) == 0
    with pytest.raises(PreconditionError):
        s(3, 4)


def test_classical_j_values():
    # Minkowski's bound for small n
    want = {0: 1, 1: 2, 2: 24, 3: 48, 4: 5760, 5: 11520, 6: 2903040}
    for n, v in want.items():
        assert int(J(n)) == v
    assert str(J(2)) == "2^3 * 3"


def test_growth_examples():
    assert all(growth_holds(n) for n in range(1, 21))


def test_reduction_data_validation():
    for bad in (
        dict(d=0, p=0, t=0, a=0, t_v=0, a_v=0),
        dict(d=2, p=4, t=1, a=1, t_v=0, a_v=0),
        dict(d=2, p=0, t=1, a=0, t_v=0, a_v=0),
        dict(d=2, p=0, t=1, a=1, t_v=2, a_v=0),
        dict(d=2, p=0, t=1, a=1, t_v=0, a_v=-1),
        dict(d=True, p=0, t=1, a=0, t_v=0, a_v=0),
        dict(d=1, p=0, t=1, a=0, t_v=0, a_v=0, deg_lambda=0),
    ):
        with pytest.raises(PreconditionError):
            ReductionData(**bad)
    with pytest.raises(PreconditionError, match="missing"):
        ReductionData.from_json({"d": 1})
    with pytest.raises(PreconditionError, match="unknown"):
        ReductionData.from_json({**GOOD.to_json(), "x": 1})
    assert ReductionData.from_json(GOOD.to_json()) == GOOD


def test_elliptic_bounds():
    assert int(N_of(GOOD)) == 12 and Q_bound(GOOD) == 3 and M_of(GOOD) == 2
    assert int(N_of(MULT)) == 2 and Q_bound(MULT) == 2
    assert [int(n) for n in admissible_orders(GOOD)] == sorted(integral_2x2_finite_orders(True))
    assert [int(n) for n in admissible_orders(MULT)] == sorted(product_orders(gl1_orders()))


def test_semistable_data():
    data = ReductionData(3, 5, 1, 2, 1, 2)
    assert int(N_of(data)) == 1 and Q_bound(data) == 1
    assert [f.kind for f in advice(data)] == ["no-extension"]


def test_wild_prime_exponent():
    data = ReductionData(1, 2, 0, 1, 0, 0)
    assert str(N_of(data)) == "2^3 * 3"
    assert str(N_of(ReductionData(1, 3, 0, 1, 0, 0))) == "2^2 * 3"


def test_r_q():
    assert r_q(2, 2) == 2 and r_q(2, 3) == 1 and r_q(2, 5) == 0
    assert r_q(8, 2) == 4 and r_q(8, 3) == 2


def test_safe_primes():
    data = ReductionData(1, 0, 1, 0, 0, 0, deg_lambda=35)
    assert safe_primes(data, 20) == [3, 11, 13, 17, 19]
    with pytest.raises(PreconditionError):
        safe_primes(MULT, 20)
    good = ReductionData(1, 0, 0, 1, 0, 0, deg_lambda=1)
    assert safe_primes(good, 20) == [5, 7, 11, 13, 17, 19]


def test_advice_kinds():
    kinds = [f.kind for f in advice(GOOD)]
    assert kinds[:2] == ["inertia-prime-divisor", "prime-power-degree"]
    recipes = [f.parameters["r"] for f in advice(GOOD) if f.kind == "cyclic-recipe"]
    assert recipes == [2, 3, 4, 6]
    assert "tame" not in kinds
    tame = advice(ReductionData(1, 5, 0, 1, 0, 0))
    assert tame[-1].kind == "tame"
    wild = advice(ReductionData(1, 3, 0, 1, 0, 0))
    assert all(f.parameters.get("r", 1) % 3 for f in wild)


def test_cost_matches_partition_oracle():
    pool = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25]
    for k in range(0, 4):
        for parts in combinations(pool, k):
            primes = [FactoredInt.of(x).primes[0] for x in parts]
            if len(set(primes)) < len(primes):
                continue
            assert gl_min_dim(list(parts)) == cyclotomic_cost_by_partition(list(parts), 1)
            assert sp_min_dim(list(parts)) == cyclotomic_cost_by_partition(list(parts), 2)


def test_larger_prime_sample_only_removes_orders():
    data = ReductionData(2, 0, 0, 2, 0, 0)
    small = {int(n) for n in admissible_orders(data, [3, 5, 7])}
    large = {int(n) for n in admissible_orders(data, [3, 5, 7, 11, 13, 17, 19, 23])}
    assert large <= small
    with pytest.raises(PreconditionError):
        admissible_orders(data, [])
    with pytest.raises(PreconditionError):
        admissible_orders(data, [4])


def test_report_json():
    out = bound_report(GOOD).to_json()
    assert out["N"] == {"factored": "2^2 * 3", "decimal": "12"}
    assert out["admissible_orders"]["orders"] == [1, 2, 3, 4, 6]
    assert out["safe_primes"] is None


reduction_data = st.integers(1, 5).flatmap(
    lambda d: st.integers(0, d).flatmap(
        lambda t: st.tuples(
            st.just(d),
            st.sampled_from([0, 2, 3, 5, 7, 11]),
            st.just(t),
            st.integers(0, t),
            st.integers(0, d - t),
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(reduction_data)
def test_report_invariants(args):
    d, p, t, t_v, a_v = args
    data = ReductionData(d, p, t, d - t, t_v, a_v, deg_lambda=6)
    rep = bound_report(data, [3, 5, 7, 11, 13], prime_bound=40)
    N = rep.N
    assert N.divides(rep.J_gl * rep.J_sp) and (rep.J_gl * rep.J_sp).divides(rep.J_2d)
    assert rep.Q_bound <= 2 * d + 1
    assert all(n.divides(N) for n in rep.admissible_orders)
    assert rep.admissible_orders[0] == FactoredInt()
    assert all(ell not in (2, 3, p) and int(N) % ell for ell in rep.safe_primes)
