"""The ten acceptance criteria, each at its stated tolerance and time limit.

Each test prints one ``PASS``/``FAIL`` line, visible even under output capture.
"""

import time
from fractions import Fraction

import pytest

from semistab.bounds import J, N_of, ReductionData, admissible_orders
from semistab.classical import sp_group_order
from semistab.oracles import gl1_orders, integral_2x2_finite_orders, product_orders
from semistab.spectra import brute_force_spectrum
from semistab.verify import all_reduction_data, run_suite


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, seconds, limit, detail=""):
        within = seconds < limit
        status = "PASS" if ok and within else "FAIL"
        line = f"[{status}] criterion {number:2d}: {title} ({seconds:.3f}s, limit {limit}s){' ' + detail if detail else ''}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        assert within, line

    return emit


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_01_j_values(report):
    J(0), J(1), J(2)  # first call pays for sympy's prime tables
    values, secs = timed(lambda: (int(J(0)), int(J(1)), int(J(2))))
    report(1, "J(0)=1, J(1)=2, J(2)=24", values == (1, 2, 24), secs, 0.001, str(values))


def test_criterion_02_gcd_of_group_orders(report):
    from math import gcd

    from sympy import primerange

    def check():
        bad = []
        for m in (1, 2, 3):
            for lo, hi in ((3, 503), (11, 511), (101, 601)):
                g = 0
                for ell in primerange(lo, hi + 1):
                    g = gcd(g, int(sp_group_order(m, ell)))
                if g != int(J(2 * m)):
                    bad.append((m, lo, hi, g))
        return bad

    bad, secs = timed(check)
    report(2, "gcd of |Sp_2m(F_ell)| equals J(2m)", not bad, secs, 1, str(bad) if bad else "")


def test_criterion_03_growth_bound(report):
    def check():
        bad = []
        for n in range(1, 21):
            base = Fraction(4462 * n, 1000) ** n
            j = int(J(n))
            ok = j < base if n % 2 == 0 else j * j < 2 * base * base
            if not ok:
                bad.append(n)
        return bad

    bad, secs = timed(check)
    report(3, "J(n) < (4.462n)^n, times sqrt(2) for odd n", not bad, secs, 1, str(bad) if bad else "")


def test_criterion_04_two_power_orders(report):
    def check():
        bad = []
        for ell in (5, 13):
            for m, mode in ((1, "exhaustive"), (2, "sampled")):
                spec = brute_force_spectrum("Sp", m, ell, seed=0, samples=10**5, mode=mode)
                top = spec.max_power(2)
                if top // 2 > 2 * m:
                    bad.append((m, ell, top))
        return bad

    bad, secs = timed(check)
    report(4, "no 2-power order beyond 2^(r-1) <= 2m in Sp over F_5, F_13", not bad, secs, 60, str(bad) if bad else "")


def test_criterion_05_sp_criterion(report):
    res, secs = timed(lambda: run_suite("sp-criterion"))
    report(5, f"Sp criterion vs exhaustive spectra ({res.checked} checks)", res.passed, secs, 300, "; ".join(res.failures[:3]))


def test_criterion_06_gl_criterion(report):
    res, secs = timed(lambda: run_suite("gl-criterion", seed=0, samples=10**5))
    report(6, f"GL criterion vs sampled/exhaustive spectra ({res.checked} checks)", res.passed, secs, 120, "; ".join(res.failures[:3]))


def test_criterion_07_elliptic_curves(report):
    def check():
        good = ReductionData(1, 0, 0, 1, 0, 0)
        mult = ReductionData(1, 0, 1, 0, 0, 0)
        return (
            int(N_of(good)) == 12
            and int(N_of(mult)) == 2
            and [int(n) for n in admissible_orders(good)] == sorted(integral_2x2_finite_orders(True)) == [1, 2, 3, 4, 6]
            and [int(n) for n in admissible_orders(mult)] == sorted(product_orders(gl1_orders())) == [1, 2]
        )

    ok, secs = timed(check)
    report(7, "elliptic N = 12 and 2, admissible orders match the 2x2 oracle", ok, secs, 1)


def test_criterion_08_divisibility_chain(report):
    def check():
        bad, count = [], 0
        for data in all_reduction_data(6):
            count += 1
            mid = J(data.gl_rank) * J(data.sp_rank)
            if not (N_of(data).divides(mid) and mid.divides(J(2 * data.d))):
                bad.append(data)
        return bad, count

    (bad, count), secs = timed(check)
    report(8, f"N | J(t-t_v)J(2(a-a_v)) | J(2d) over {count} tuples", not bad, secs, 10, str(bad[:3]) if bad else "")


def test_criterion_09_perfectize(report):
    res, secs = timed(lambda: run_suite("perfectize", seed=0, instances=500))
    ok = res.passed and res.checked == 500
    report(9, "perfectize: 500 instances perfect, invariant, kind-preserving", ok, secs, 120, "; ".join(res.failures[:3]))


def test_criterion_10_quotient_pairing(report):
    res, secs = timed(lambda: run_suite("quotient", seed=0, instances=500))
    ok = res.passed and res.checked == 1500
    report(10, "quotient pairing, double perp and functional extension on 500 instances", ok, secs, 60, "; ".join(res.failures[:3]))
