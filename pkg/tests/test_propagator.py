from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from pnkinetic.bigfloat import DOUBLE, extended
from pnkinetic.moment_system import ModelConfig, SpectralState, assemble_generator, zeros_array
from pnkinetic.propagator import PropagatorCache, evolve, expm, propagator_blocks, propagator_matrix
from pnkinetic.theory_bounds import energy

X = extended(200)


def to_mpc(z):
    if hasattr(z, "re"):
        re, im = z.re.as_fraction(), z.im.as_fraction()
        return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator,
                          mpmath.mpf(im.numerator) / im.denominator)
    return mpmath.mpc(complex(z))


def mp_expm(A, t, prec=400):
    with mpmath.workprec(prec):
        M = mpmath.matrix([[to_mpc(z) for z in row] for row in A])
        return mpmath.expm(M * (mpmath.mpf(t.numerator) / t.denominator))


def max_rel_diff(got, ref, prec=400):
    with mpmath.workprec(prec):
        n = ref.rows
        scale = max(abs(ref[i, j]) for i in range(n) for j in range(n))
        worst = max(abs(to_mpc(got[i, j]) - ref[i, j]) for i in range(n) for j in range(n))
        return worst / scale


@given(st.integers(min_value=0, max_value=2 ** 31), st.integers(min_value=1, max_value=8),
       st.floats(min_value=0.01, max_value=20))
def test_double_expm_matches_scipy(seed, n, tau):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    got = expm(A, Fraction(tau), DOUBLE)
    ref = scipy.linalg.expm(float(Fraction(tau)) * A)
    assert np.max(np.abs(got - ref)) <= 1e-11 * max(1.0, np.max(np.abs(ref)))


def test_extended_expm_matches_high_precision_reference():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    got = expm(A, Fraction(3, 2), X)
    ref = mp_expm(A, Fraction(3, 2))
    assert max_rel_diff(got, ref) < mpmath.mpf(2) ** -190


@pytest.mark.parametrize("order,k,eps,t", [(5, 3, "1/8", 1), (8, -2, "1/32", "1/10"), (3, 7, "1/2", 10)])
def test_moment_propagator_extended_matches_reference(order, k, eps, t):
    cfg = ModelConfig(1, eps, 10, precision=200)
    got = propagator_matrix(order, k, eps, Fraction(t), X)
    exact = assemble_generator(cfg, order, k, X).matrix
    ref = mp_expm(exact, Fraction(t))
    assert max_rel_diff(got, ref) < mpmath.mpf(2) ** -185


def test_double_propagator_matches_scipy():
    cfg = ModelConfig(1, "1/8", 10, precision=None)
    for k in (3, -3):
        A = assemble_generator(cfg, 5, k, DOUBLE).matrix
        got = propagator_matrix(5, k, "1/8", 1, DOUBLE)
        ref = scipy.linalg.expm(A)
        assert np.max(np.abs(got - ref)) <= 1e-13 * np.max(np.abs(ref))


def random_state(seed, K, order, arith=DOUBLE):
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal((2 * K + 1, order + 1)) + 1j * rng.standard_normal((2 * K + 1, order + 1))
    if arith.is_double:
        return SpectralState(vals, arith)
    out = zeros_array(K, order, arith)
    for idx, z in np.ndenumerate(vals):
        out[idx] = arith.cplx(z)
    return SpectralState(out, arith)


def test_zero_time_is_identity():
    s = random_state(0, 4, 3)
    assert evolve(s, "1/8", 0) is s


@given(st.integers(min_value=0, max_value=1000), st.sampled_from(["1/2", "1/8", "1/32"]),
       st.sampled_from([Fraction(1, 10), Fraction(1, 2), Fraction(1)]))
def test_semigroup_property(seed, eps, t):
    s = random_state(seed, 6, 4)
    once = evolve(s, eps, 2 * t)
    twice = evolve(evolve(s, eps, t), eps, t)
    assert np.allclose(once.coeffs, twice.coeffs, rtol=0, atol=1e-12 * max(1, np.abs(s.coeffs).max()))


@given(st.integers(min_value=0, max_value=1000), st.sampled_from(["1", "1/2", "1/8", "1/32"]),
       st.sampled_from([Fraction(1, 10), Fraction(1), Fraction(10)]))
def test_energy_never_increases(seed, eps, t):
    s = random_state(seed, 5, 3)
    later = evolve(s, eps, t)
    for k in s.wavenumbers():
        assert energy(later, k) <= energy(s, k) * (1 + 1e-13)


def test_extended_evolution_agrees_with_double():
    s = random_state(3, 5, 4)
    sx = random_state(3, 5, 4, X)
    d = evolve(s, "1/8", 1).coeffs
    x = np.vectorize(complex, otypes=[complex])(evolve(sx, "1/8", 1).coeffs)
    assert np.allclose(d, x, rtol=0, atol=1e-13)


def test_thread_count_does_not_change_results(monkeypatch):
    s = random_state(4, 8, 6, X)
    monkeypatch.setenv("PNK_THREADS", "1")
    one = evolve(s, "1/32", 1, cache=PropagatorCache())
    monkeypatch.setenv("PNK_THREADS", "4")
    many = evolve(s, "1/32", 1, cache=PropagatorCache())
    assert one == many


def test_cache_reuse_and_eviction():
    cache = PropagatorCache(max_bytes=1)
    propagator_blocks(4, range(3), "1/8", 1, DOUBLE, cache)
    assert len(cache) == 1  # everything beyond the newest entry is evicted
    big = PropagatorCache(max_bytes=10 ** 7)
    first = propagator_blocks(4, range(3), "1/8", 1, DOUBLE, big)
    again = propagator_blocks(4, range(3), "1/8", 1, DOUBLE, big)
    assert len(big) == 3
    assert all(first[k][1] is again[k][1] for k in range(3))


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        evolve(random_state(0, 2, 2), "1/8", -1)
    with pytest.raises(ValueError):
        expm(np.eye(2), -1)
