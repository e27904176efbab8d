import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from pnkinetic import theory_bounds as tb
from pnkinetic.bigfloat import DOUBLE, extended
from pnkinetic.moment_system import SpectralState, zeros_array
from pnkinetic.solver import Study

# A = 2 / (sqrt(3) (1 - 1/45)), evaluated with mpmath at 400 bits and frozen
A_VALUE = "1.18094373243332542740507705103"
# F(g3, 2, 1): sqrt(24 (pi/2) sum_{k>0} (A k)^4 exp(-8 k^2 / 45)), mpmath nsum over all k
F_G3_2_1 = "60.4756062980605242982703895638"
S_GRID = [Fraction(8, 450), Fraction(8, 45), Fraction(80, 45), Fraction(5), Fraction(10), Fraction(15)]


def random_state(seed, K=3, order=3):
    rng = np.random.default_rng(seed)
    vals = rng.standard_normal((2 * K + 1, order + 1)) + 1j * rng.standard_normal((2 * K + 1, order + 1))
    return SpectralState(vals, DOUBLE)


def test_constants():
    assert tb.LAMBDA1 == Fraction(1, 45) and tb.LAMBDA2 == Fraction(4, 45)
    assert abs(tb.A_constant() - mpmath.mpf(A_VALUE)) < 1e-15
    # "A ~ 1.2": strictly between 1.18 and 1.2
    assert 1.18 < tb.A_constant() < 1.2


def test_energy_basics():
    s = random_state(0)
    zero = SpectralState(np.zeros((7, 4), dtype=complex), DOUBLE)
    assert tb.energy(zero, 2) == 0
    assert tb.energy(s, 1, 5) == 0  # empty sum beyond the order
    assert tb.energy(s, 1) == pytest.approx(0.5 * np.sum(np.abs(s.mode(1)) ** 2))
    g = Study("g2", DOUBLE, modes=16).initial_state(3)
    assert tb.energy(g, 0) == pytest.approx(0.5 * abs(g.coefficient(0, 0)) ** 2)


@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=-3, max_value=3))
def test_energy_telescoping(seed, k):
    s = random_state(seed, order=5)
    lhs = tb.energy(s, k, 1)
    rhs = tb.energy(s, k, 3) + 0.5 * abs(s.coefficient(1, k)) ** 2 + 0.5 * abs(s.coefficient(2, k)) ** 2
    assert lhs == pytest.approx(rhs, rel=1e-13)


def test_compensating_vanishes_for_real_moments():
    s = SpectralState(np.array([[1.0, 2.0], [3.0, -1.0], [0.5, 4.0]], dtype=complex), DOUBLE)
    assert tb.compensating(s, 0, Fraction(16, 29)) == 0
    with pytest.raises(ValueError):
        tb.compensating(s, 0, 0)


@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=-3, max_value=3),
       st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(32, 29)))
def test_compensating_sandwich(seed, k, gamma):
    s = random_state(seed)
    h = tb.compensating(s, k, gamma)
    H = tb.energy(s, k)
    g = float(gamma)
    assert abs(h) <= g / 2 * H * (1 + 1e-14)
    assert (1 - g / 2) * H <= H + h + 1e-14 * H <= (1 + g / 2) * H * (1 + 1e-14) + 1e-14 * H


def test_compensating_extended_matches_double():
    x = extended(128)
    d = random_state(7)
    out = zeros_array(3, 3, x)
    for idx, z in np.ndenumerate(d.coeffs):
        out[idx] = x.cplx(z)
    s = SpectralState(out, x)
    assert float(tb.compensating(s, 2, Fraction(1, 3))) == pytest.approx(
        tb.compensating(d, 2, Fraction(1, 3)), rel=1e-14)


def test_gamma_select():
    assert tb.gamma_select(16, Fraction(1, 32)) == Fraction(32, 29)
    assert tb.gamma_select(32, Fraction(1, 32)) == Fraction(16, 29)
    assert tb.gamma_select(1, 1) == Fraction(16, 29)
    with pytest.raises(ValueError):
        tb.gamma_select(0, Fraction(1, 2))


def test_dissipation_coefficients_above_floor_on_grid():
    eps_grid = [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 8), Fraction(1, 32),
                Fraction(1, 128), Fraction(1, 512)]
    for eps in eps_grid:
        for k in range(1, 1200):
            gamma = tb.gamma_select(k, eps)
            assert 0 < gamma <= Fraction(32, 29)
            floor = tb.dissipation_floor(k, eps)
            assert all(c >= floor for c in tb.dissipation_coefficients(k, eps))


def test_F_coefficient_reference_value_and_monotonicity():
    g = Study("g3", DOUBLE).initial_state(3)
    assert abs(tb.F_coefficient(g, 2, 1) - mpmath.mpf(F_G3_2_1)) < 1e-11
    values = [tb.F_coefficient(g, 3, t) for t in (Fraction(1, 10), Fraction(1, 2), 1, 2, 5, 10)]
    assert all(a > b for a, b in zip(values, values[1:]))
    g00 = abs(g.coefficient(0, 0))
    assert tb.F_coefficient(g, 0, 2000) == pytest.approx(g00, rel=1e-14)
    assert tb.F_coefficient(g, 2, 2000) < 1e-60
    low = tb.F_coefficient(g, 2, 1, eps=Fraction(1, 8), low_only=True)
    assert low <= tb.F_coefficient(g, 2, 1)
    with pytest.raises(ValueError):
        tb.F_coefficient(g, 2, 0)


def test_moment_bound_exponents():
    g = Study("g3", DOUBLE, modes=32).initial_state(4)
    N, t = 4, 50  # initial layer negligible
    for l, power in [(0, 2 * N), (1, 2 * N + 1), (N, N + 2)]:
        big = tb.moment_error_bound(g, N, l, t, Fraction(1, 32))
        small = tb.moment_error_bound(g, N, l, t, Fraction(1, 128))
        assert float(big / small) == pytest.approx(4.0 ** power, rel=1e-9)
    with pytest.raises(ValueError):
        tb.moment_error_bound(g, N, N + 1, t, Fraction(1, 32))


def test_total_bound_tends_to_D_term():
    g = Study("g3", DOUBLE, modes=32).initial_state(3)
    eps = Fraction(1, 32)
    bound = tb.total_error_bound(g, 3, 10, eps)  # initial layer below 1e-90 at t = 10
    d = tb.D_coefficient(g, 3, 10) * tb.mp(eps) ** 4
    assert float(bound / d) == pytest.approx(1.0, rel=1e-12)


def test_superconvergence_constants():
    A = tb.A_constant()
    assert tb.growth_factor(1) == pytest.approx(2 / (math.sqrt(3) * (1 - 1 / 45)))
    assert tb.growth_factor(1) == A
    H = 0.7
    c = [tb.superconvergence_constants(6, l, 2, 4, H) for l in range(1, 7)]
    ratios = [float(c[i] / c[i + 1]) for i in range(5)]
    assert ratios == pytest.approx([2 * float(A)] * 5, rel=1e-14)  # M(4) = 2A
    assert tb.superconvergence_constants(3, 0, 1, 1, H) == tb.superconvergence_constants(3, 2, 1, 1, H)
    with pytest.raises(ValueError):
        tb.superconvergence_constants(1, 0, 1, 1, H)


def test_pointwise_superconvergence_holds_on_solution():
    study = Study("g3", DOUBLE)
    N, eps, t = 3, Fraction(1, 32), 1
    ref, approx = study.reference(eps, t), study.solve(N, eps, t)
    H1 = tb.energy(study.initial_state(N), 1)
    xi0 = abs(ref.coefficient(0, 1) - approx.coefficient(0, 1))
    assert xi0 <= tb.moment_pointwise_bound(N, 0, 1, t, eps, H1)


def test_a_n_values():
    assert float(tb.a_n(50, 0, 1000) / mpmath.exp(-50)) == pytest.approx(1.0, rel=1e-15)
    for s in S_GRID:
        for n in (0, 5, 40, 120):
            a1, a2 = tb.a_n(s, n, 1000), tb.a_n(s, n, 2000)
            assert abs(a1 - a2) / a2 < 1e-12
    assert tb.log_a_n(Fraction(8, 450), 120) > 709  # far beyond double range, still finite
    with pytest.raises(ValueError):
        tb.a_n(0, 1)


def test_a_n_ratio_follows_n_over_s():
    s = Fraction(80, 45)
    for n in range(10, 121, 10):
        r = tb.a_n(s, n + 1) / tb.a_n(s, n)
        assert 1.0 <= float(r / ((n + 1) / tb.mp(s))) <= 1.5


def test_b_n():
    assert tb.b_n(2, 0) == Fraction(1, 2)
    assert tb.b_n(1, 1) == 2
    for s in (Fraction(1, 10), Fraction(1), Fraction(10)):
        for n in range(21):
            assert tb.b_n(s, n) == tb.b_n_direct(s, n)


def test_riemann_envelope_and_b_ratio():
    for s in S_GRID:
        for n in range(31):
            assert tb.a_n(s, n) <= tb.riemann_envelope(s, n)
            ratio = (tb.b_n(s, n + 1) + 2) / (tb.b_n(s, n) + 2)
            assert ratio <= Fraction(n + 1) / s + 1


def test_envelope_ratio_identity_and_alpha():
    H = 0.9
    for N in (1, 3, 7):
        for t in (Fraction(1, 10), 1, 10):
            got = tb.error_envelope(N + 1, t, Fraction(1, 8), H) / tb.error_envelope(N, t, Fraction(1, 8), H)
            assert float(got / tb.envelope_ratio(N, t, Fraction(1, 8))) == pytest.approx(1, rel=1e-12)
            assert tb.envelope_ratio(N, t, 1) <= tb.alpha_bound(N, t)
    A = float(tb.A_constant())
    assert float(tb.alpha_bound(3, 10)) == pytest.approx(2 * A * math.sqrt(6 / (2 * 4 / 45 * 10) + 1))


def test_moment_envelope_ratio_below_beta():
    H = 0.9
    for N in (2, 4):
        for l in (0, 1, 2):
            for t in (Fraction(1, 10), 1, 10):
                r = tb.moment_envelope(N + 1, l, t, 1, H) / tb.moment_envelope(N, l, t, 1, H)
                assert r <= tb.beta_bound(N, l, t)


def test_bound_envelopes_keys():
    g = Study("g2", DOUBLE, modes=16).initial_state(3)
    out = tb.bound_envelopes(g, 3, 1, Fraction(1, 8), l=1)
    assert set(out) == {"E", "E_ratio", "alpha", "E_l", "beta"}
    assert tb.ratio_constant(Fraction(1, 10)) == 13
    assert tb.ratio_constant(10, "m0") == 20


def test_report_pass_rule_and_row():
    ok = tb.BoundReport("total", mpmath.mpf(1), mpmath.mpf(1) * (1 - mpmath.mpf(10) ** -13))
    assert ok.passed
    bad = tb.BoundReport("total", mpmath.mpf(1), mpmath.mpf(1) * (1 - mpmath.mpf(10) ** -11))
    assert not bad.passed
    row = tb.BoundReport("moment0", mpmath.mpf(2), mpmath.mpf(8), False).to_row(3)
    assert row == "moment0[hypothesis_unmet],2.0,8.0,4.0,true"


@pytest.mark.parametrize("ic,met", [("g1", False), ("g2", True), ("g3", True)])
def test_theorem_bounds_hypothesis_flag(ic, met):
    study = Study(ic, DOUBLE)
    reports = tb.theorem_bounds(study, 3, 1, Fraction(1, 32))
    assert [r.quantity for r in reports] == ["total", "moment0", "moment1", "moment2", "moment3"]
    assert all(r.hypothesis_met == met for r in reports)
    assert all(r.passed for r in reports)
    assert all(r.passed for r in tb.lemma_checks(study, 3, 1, Fraction(1, 32)))
