import math
from fractions import Fraction

import numpy as np
import pytest

from mobcorr import (
    AffineSkew,
    Observable,
    TorusRotation,
    cubic_weighted_average,
    kbsz_quantity,
    orbit_value,
    sieve_liouville,
    sieve_mobius,
    vdc_check,
    weighted_birkhoff,
    ww_sup,
)
from mobcorr.errors import CapacityError


@pytest.fixture(scope="module")
def mu():
    return sieve_mobius(4096)


@pytest.fixture(scope="module")
def lam():
    return sieve_liouville(4096)


def test_rotation_orbit():
    rot = TorusRotation(0.125)
    ns = np.arange(0, 20)
    orb = rot.orbit(0.5, ns)
    assert orb.shape == (20, 1)
    assert orb[0, 0] == 0.5
    assert orb[4, 0] == pytest.approx(0.0, abs=1e-15)
    assert orbit_value(rot, 0.5, 9) == pytest.approx(0.625)


def test_skew_orbit_matches_stepwise_iteration():
    # exact reference: iterate the one-step map in Fraction arithmetic
    alpha = 0.3178710937  # not dyadic-round, still a finite binary fraction
    skew = AffineSkew(alpha)
    fa = Fraction(alpha)
    x, y = Fraction(1, 4), Fraction(1, 8)
    ref = [(float(x), float(y))]
    for _ in range(2000):
        x, y = (x + fa) % 1, (y + 2 * x + fa) % 1
        ref.append((float(x), float(y)))
    orb = skew.orbit((0.25, 0.125), np.arange(0, 2001))
    for i, (rx, ry) in enumerate(ref):
        assert abs(orb[i, 0] - rx) <= 1e-12
        assert abs(orb[i, 1] - ry) <= 1e-12


def test_skew_orbit_large_n_no_drift():
    skew = AffineSkew(0.3178710937)
    pt = orbit_value(skew, (0.0, 0.0), 10**4)
    fa = Fraction(0.3178710937)
    ex = (float((10**4 * fa) % 1), float((10**8 * fa) % 1))
    assert abs(pt[0] - ex[0]) <= 1e-12
    assert abs(pt[1] - ex[1]) <= 1e-12


def test_observable_characters():
    f = Observable.character(1)
    pts = np.array([[0.0], [0.25], [0.5]])
    vals = f.evaluate(pts)
    assert vals[0] == pytest.approx(1.0)
    assert vals[1] == pytest.approx(1j)
    assert vals[2] == pytest.approx(-1.0)
    assert Observable.one(2).evaluate(np.array([[0.3, 0.7]]))[0] == pytest.approx(1.0)
    g = Observable(((0.5, (1,)), (0.5, (-1,))))  # cos(2 pi x)
    assert g.evaluate(np.array([[0.25]]))[0] == pytest.approx(0.0, abs=1e-15)
    assert g.sup_bound() == pytest.approx(1.0)


def test_weighted_birkhoff_direct(mu):
    rot = TorusRotation(math.sqrt(2) - 1)
    f = Observable.character(1)
    N = 300
    got = weighted_birkhoff(mu, f, rot, 0.1, N)
    acc = 0.0 + 0.0j
    for n in range(1, N + 1):
        acc += mu[n] * np.exp(2j * np.pi * ((0.1 + n * (math.sqrt(2) - 1)) % 1.0))
    assert got == pytest.approx(acc / N, abs=1e-10)


def test_cubic_weighted_fft_vs_naive(mu, lam):
    rng = np.random.default_rng(9)
    for seq in (mu, lam):
        for _ in range(3):
            alpha = float(rng.uniform(0.1, 0.9))
            systems = (TorusRotation(alpha), TorusRotation(0.7 * alpha), AffineSkew(alpha))
            fs = (Observable.character(1), Observable.character(2),
                  Observable.character(0, 1))
            x0s = (0.25, 0.5, (0.1, 0.2))
            fast = cubic_weighted_average(seq, fs, systems, None, 200, "fft", x0s=x0s)
            slow = cubic_weighted_average(seq, fs, systems, None, 200, "naive", x0s=x0s)
            assert abs(fast - slow) <= 1e-9


def test_cubic_weighted_trivial_reduces_to_plain(lam):
    from mobcorr import cubic_average

    rot = TorusRotation(0.3)
    fs = (Observable.one(), Observable.one(), Observable.one())
    got = cubic_weighted_average(lam, fs, (rot, rot, rot), 0.0, 128)
    assert got.real == pytest.approx(cubic_average(lam, 128), abs=1e-10)
    assert got.imag == pytest.approx(0.0, abs=1e-10)


def test_cubic_weighted_bad_method(lam):
    rot = TorusRotation(0.3)
    fs = (Observable.one(),) * 3
    with pytest.raises(ValueError):
        cubic_weighted_average(lam, fs, (rot, rot, rot), 0.0, 64, "magic")


def test_ww_sup_bracket(mu):
    rot = TorusRotation(math.sqrt(3) - 1)
    lo, hi = ww_sup(mu, Observable.character(1), rot, 0.0, 500)
    assert 0.0 < lo <= hi
    assert hi / lo <= 1.05
    assert hi <= 1.0 + 1e-9


def test_kbsz_constant_observable():
    rot = TorusRotation(0.1)
    rep = kbsz_quantity(Observable.one(), rot, 0.0, 0.5, 200)
    # exp(2) ~ 7.39: primes 2, 3, 5, 7 give 6 unordered pairs
    assert rep.prime_bound == pytest.approx(math.exp(2.0))
    assert len(rep.pairs) == 6
    assert {(r.p, r.q) for r in rep.pairs} == {
        (2, 3), (2, 5), (2, 7), (3, 5), (3, 7), (5, 7)}
    # f == 1 makes every pair sum the full Dirichlet kernel: sup = 1
    for r in rep.pairs:
        assert r.sup_lower == pytest.approx(1.0, rel=1e-6)
        assert r.sup_upper >= r.sup_lower
    assert rep.hypothesis_met is False
    assert rep.bound == pytest.approx(2.0 * math.sqrt(0.5 * math.log(2.0)))


def test_kbsz_guards():
    rot = TorusRotation(0.1)
    with pytest.raises(ValueError):
        kbsz_quantity(Observable.one(), rot, 0.0, -1.0, 100)
    big = Observable(((2.0, (1,)),))
    with pytest.raises(ValueError):
        kbsz_quantity(big, rot, 0.0, 0.5, 100)
    with pytest.raises(CapacityError):
        kbsz_quantity(Observable.one(), rot, 0.0, 0.05, 50)  # exp(20) primes
    empty = kbsz_quantity(Observable.one(), rot, 0.0, 2.0, 100)  # exp(0.5) < 3
    assert empty.pairs == [] and empty.hypothesis_met is None


def test_vdc_inequality_random():
    rng = np.random.default_rng(13)
    N = 257
    for _ in range(50):
        u = rng.uniform(-1, 1, N) + 1j * rng.uniform(-1, 1, N)
        for H in (0, 1, int(math.isqrt(N)), N - 1):
            lhs, rhs = vdc_check(u, H)
            assert lhs <= rhs + 1e-12


def test_vdc_constant_is_tight_at_H0():
    u = np.ones(100)
    lhs, rhs = vdc_check(u, 0)
    assert lhs == pytest.approx(1.0)
    assert rhs == pytest.approx(1.0)
    with pytest.raises(ValueError):
        vdc_check(u, 100)
    with pytest.raises(ValueError):
        vdc_check(u, -1)
