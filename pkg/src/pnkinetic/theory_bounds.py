"""Numeric evaluators for the energy estimates and error bounds of the P_N
approximation, and checks of those bounds against computed solutions.

All evaluators work in mpmath at the binary precision of the solution's
arithmetic (53 bits in double mode), so quantities such as (A k)^(2n) never
overflow and margins are compared at the precision the errors were computed in.

Notation: lambda1 = 1/45 and lambda2 = 4/45 are the decay rates of the high
and low frequency energies, A = 2 / (sqrt(3) (1 - lambda2/4)).  H0_k(g) is the
energy 1/2 sum_l |g_lk|^2 of one Fourier mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .bigfloat import DOUBLE, ExtendedReal
from .error_analysis import l2_error, moment_error
from .initial_conditions import regularity_report
from .moment_system import as_fraction, is_low_frequency

LAMBDA1 = Fraction(1, 45)
LAMBDA2 = Fraction(4, 45)
SERIES_CUTOFF = 1000
PASS_SLACK = Fraction(1, 10 ** 12)

# observed ratio constants of the error-ratio study, keyed by t
RATIO_CONSTANT_TOTAL = {Fraction(1, 10): 13, Fraction(1): Fraction(9, 2), Fraction(10): Fraction(11, 10)}
RATIO_CONSTANT_MOMENT = {Fraction(1, 10): 400, Fraction(1): 50, Fraction(10): 20}


def mp(x):
    """Exact conversion of a real scalar (float, Fraction, ExtendedReal) to mpf."""
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, ExtendedReal):
        return mpmath.mpf((x.sign * x.mantissa, x.exponent))
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return mp(as_fraction(x))
    return mpmath.mpf(x)


def _q(x):
    return as_fraction(x)


@dataclass(frozen=True)
class BoundConstants:
    lambda1: Fraction = LAMBDA1
    lambda2: Fraction = LAMBDA2

    @property
    def A(self):
        return 2 / (mpmath.sqrt(3) * (1 - mp(self.lambda2) / 4))


CONSTANTS = BoundConstants()


def A_constant():
    return CONSTANTS.A


@dataclass(frozen=True)
class BoundReport:
    quantity: str
    computed: object
    bound: object
    hypothesis_met: bool = True

    @property
    def margin(self):
        if self.computed == 0:
            return mpmath.inf
        return self.bound / self.computed

    @property
    def passed(self):
        return mp(self.computed) <= mp(self.bound) * (1 + mp(PASS_SLACK))

    def to_row(self, digits=6):
        flag = "true" if self.passed else "false"
        name = self.quantity if self.hypothesis_met else self.quantity + "[hypothesis_unmet]"
        margin = self.margin
        margin_s = "inf" if margin == mpmath.inf else mpmath.nstr(margin, digits, min_fixed=1, max_fixed=0)
        return (f"{name},{mpmath.nstr(mp(self.computed), digits, min_fixed=1, max_fixed=0)},"
                f"{mpmath.nstr(mp(self.bound), digits, min_fixed=1, max_fixed=0)},{margin_s},{flag}")


REPORT_HEADER = "quantity,computed,bound,margin,pass"


def reports_to_text(reports, digits=6):
    return REPORT_HEADER + "\n" + "\n".join(r.to_row(digits) for r in reports) + "\n"


# -- energy and compensating function ---------------------------------------------

def energy(state, k, j=0, i=None):
    """H^{j,i}_k = 1/2 sum_{l=j..i} |u_lk|^2 (i defaults to the state order)."""
    if abs(k) > state.K:
        raise ValueError("wavenumber outside the stored range")
    if j < 0:
        raise ValueError("lower index must be nonnegative")
    arith = state.arith
    i = state.order if i is None else min(i, state.order)
    acc = arith.zero()
    for l in range(j, i + 1):
        acc = acc + arith.abs2(state.coefficient(l, k))
    return acc / 2


def compensating(state, k, gamma):
    """h^gamma_k = -(gamma / (4 a0)) Im(u_0k conj(u_1k)), a0 = 1/sqrt(3)."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    arith = state.arith
    if state.order < 1:
        return arith.zero()
    cross = state.coefficient(0, k) * state.coefficient(1, k).conjugate()
    im = cross.imag if arith.is_double else cross.im
    g = arith.real(gamma if isinstance(gamma, float) else _q(gamma))
    return -(g * arith.sqrt(arith.real(3))) / 4 * im


def gamma_select(k, eps):
    """16/(29 k eps) for high frequencies (k eps > 1/2), 64 k eps / 29 otherwise."""
    if k == 0:
        raise ValueError("the compensating function is not used at k = 0")
    ke = abs(k) * _q(eps)
    if ke > Fraction(1, 2):
        return Fraction(16, 29) / ke
    return Fraction(64, 29) * ke


def dissipation_coefficients(k, eps, gamma=None):
    """(c0, c1, c2): weights of |u_0k|^2, |u_1k|^2, |u_2k|^2 in the dissipation
    of the modified energy.  Exact for rational inputs."""
    k = abs(k)
    eps = _q(eps)
    gamma = gamma_select(k, eps) if gamma is None else _q(gamma)
    c0 = gamma * k / (16 * eps)
    c1 = 1 / eps ** 2 - gamma * k / (4 * eps) - 3 * gamma / (8 * eps ** 3 * k)
    c2 = 1 / eps ** 2 - gamma * k / (5 * eps)
    return c0, c1, c2


def dissipation_floor(k, eps):
    """Lower bound on all dissipation coefficients: 1/(29 eps^2) or 4k^2/29."""
    eps = _q(eps)
    if abs(k) * eps > Fraction(1, 2):
        return Fraction(1, 29) / eps ** 2
    return Fraction(4 * k * k, 29)


# -- F(g, l, t) and friends -----------------------------------------------------------

def max_energy(g_state):
    """max over the represented 0 < k <= K of H0_k(g)."""
    best = None
    for k in range(1, g_state.K + 1):
        h = mp(energy(g_state, k, 0))
        if best is None or h > best:
            best = h
    return best if best is not None else mpmath.mpf(0)


def _prec(arith):
    return (arith or DOUBLE).precision


def F_coefficient(g_state, l, t, eps=None, low_only=False, cutoff=SERIES_CUTOFF):
    """F(g,l,t) = [24 max_k H0_k(g) sum_k (A k)^(2l) e^(-2 lambda2 k^2 t)
    + delta_l0 |g_00|^2]^(1/2).

    The sum runs over 0 < k <= ``cutoff`` (the full series, truncated where
    its terms are negligible), or over the low frequencies 0 < k eps <= 1/2
    when ``low_only`` is set.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    t = _q(t)
    if t <= 0:
        raise ValueError("t must be positive")
    with mpmath.workprec(_prec(g_state.arith)):
        if low_only:
            if eps is None:
                raise ValueError("low_only needs eps")
            kmax = int(Fraction(1, 2) / _q(eps))
        else:
            kmax = cutoff
        series = _power_gauss_sum(l, 2 * LAMBDA2 * t, kmax)
        val = 24 * max_energy(g_state) * series
        if l == 0:
            val += mp(g_state.arith.abs2(g_state.coefficient(0, 0)))
        return mpmath.sqrt(val)


def _power_gauss_sum(n, s, kmax):
    """sum_{0<k<=kmax} (A k)^(2n) e^(-k^2 s) at the current mpmath precision."""
    A = CONSTANTS.A
    s = mp(s)
    acc = mpmath.mpf(0)
    for k in range(1, kmax + 1):
        acc += (A * k) ** (2 * n) * mpmath.exp(-k * k * s)
    return acc


def norm_and_gradient(g_state):
    """(||g||, ||d_x g||) in L2(dmu dx), computed spectrally."""
    arith = g_state.arith
    n2 = mpmath.mpf(0)
    d2 = mpmath.mpf(0)
    for k in g_state.wavenumbers():
        row = mp(sum((arith.abs2(g_state.coefficient(l, k)) for l in range(g_state.order + 1)),
                     arith.zero()))
        n2 += row
        d2 += k * k * row
    return mpmath.sqrt(n2), mpmath.sqrt(d2)


def moment_index(l):
    """n_l: 2 for the zeroth moment, l otherwise."""
    return 2 if l == 0 else l


def c_bar(N, l):
    """C_bar(N, l) = 2 A^(N-l+1) ((N-l+2)/lambda2)^((N-l+2)/2) e^(-(N-l)/2 + lambda2/2 - 1)."""
    A = CONSTANTS.A
    m = N - l + 2
    return (2 * A ** (N - l + 1) * (m / mp(LAMBDA2)) ** (mpmath.mpf(m) / 2)
            * mpmath.exp(-mpmath.mpf(N - l) / 2 + mp(LAMBDA2) / 2 - 1))


def E_coefficient(g_state, N, l, t, **kw):
    """E(g,N,l,t) = C_bar(N,l) A^(-2N-3+2l) F(g, 3N+4-2l, t/2)."""
    t = _q(t)
    with mpmath.workprec(_prec(g_state.arith)):
        return (c_bar(N, l) * CONSTANTS.A ** (-2 * N - 3 + 2 * l)
                * F_coefficient(g_state, 3 * N + 4 - 2 * l, t / 2, **kw))


def D_coefficient(g_state, N, t, **kw):
    """D(g,N,t) = sqrt(2) F(g,N+1,t) + (sqrt(t)/A) F(g,N+2,t)."""
    t = _q(t)
    with mpmath.workprec(_prec(g_state.arith)):
        return (mpmath.sqrt(2) * F_coefficient(g_state, N + 1, t, **kw)
                + mpmath.sqrt(mp(t)) / CONSTANTS.A * F_coefficient(g_state, N + 2, t, **kw))


def total_error_bound(g_state, N, t, eps, **kw):
    """B e^(-lambda1 t/eps^2) + C sqrt(t) e^(-lambda1 t/eps^2) + D eps^(N+1)."""
    t, eps = _q(t), _q(eps)
    with mpmath.workprec(_prec(g_state.arith)):
        norm, grad = norm_and_gradient(g_state)
        layer = mpmath.exp(-mp(LAMBDA1 * t / eps ** 2))
        B = mpmath.sqrt(6) * norm
        C = mpmath.sqrt(6) * grad
        return (B * layer + C * mpmath.sqrt(mp(t)) * layer
                + D_coefficient(g_state, N, t, **kw) * mp(eps) ** (N + 1))


def moment_error_bound(g_state, N, l, t, eps, **kw):
    """sqrt(6t) e^(-lambda1 t/eps^2) ||d_x g|| + E(g,N,n_l,t) eps^(2N+2-n_l)."""
    if not 0 <= l <= N:
        raise ValueError(f"moment index {l} outside 0..{N}")
    t, eps = _q(t), _q(eps)
    n = moment_index(l)
    with mpmath.workprec(_prec(g_state.arith)):
        _, grad = norm_and_gradient(g_state)
        layer = mpmath.exp(-mp(LAMBDA1 * t / eps ** 2))
        return (mpmath.sqrt(6 * mp(t)) * layer * grad
                + E_coefficient(g_state, N, n, t, **kw) * mp(eps) ** (2 * N + 2 - n))


def _hypothesis_met(ic):
    try:
        return regularity_report(ic) > 1
    except ValueError:
        return False


def theorem_bounds(study, N, t, eps, which=None, ref=None, approx=None, **kw):
    """Reports comparing computed errors with the theorem's right-hand sides.

    ``which`` lists 'total' and/or moment indices; default is the total error
    and every moment 0..N.  Errors use the raw L2(dmu dx) norm.  Data without
    a square-integrable derivative are flagged as not meeting the hypothesis.
    """
    t, eps = _q(t), _q(eps)
    if t <= 0:
        raise ValueError("bounds need t > 0")
    if which is None:
        which = ["total"] + list(range(N + 1))
    ref = ref if ref is not None else study.reference(eps, t)
    approx = approx if approx is not None else study.solve(N, eps, t)
    g = study.initial_state(N)
    met = _hypothesis_met(study.ic)
    out = []
    with mpmath.workprec(study.arith.precision):
        for w in which:
            if w == "total":
                comp = l2_error(ref, approx, normalized=False)
                bound = total_error_bound(g, N, t, eps, **kw)
                out.append(BoundReport("total", mp(comp), bound, met))
            else:
                l = int(w)
                comp = moment_error(ref, approx, l, normalized=False)
                bound = moment_error_bound(g, N, l, t, eps, **kw)
                out.append(BoundReport(f"moment{l}", mp(comp), bound, met))
    return out


# -- pointwise lemmas on the P_N solution --------------------------------------------

def coefficient_bound(H0k, l, k, t, eps):
    """Pointwise bound on |f_lk|(t): sqrt(12 H0_k) e^(-lambda1 t/eps^2) for high
    k, C_l^k eps^l k^l e^(-lambda2 k^2 t) with C_l^k = sqrt(12 H0_k) A^l for low k."""
    t, eps = _q(t), _q(eps)
    base = mpmath.sqrt(12 * mp(H0k))
    if not is_low_frequency(k, eps):
        return base * mpmath.exp(-mp(LAMBDA1 * t / eps ** 2))
    k = abs(k)
    return base * CONSTANTS.A ** l * mp(eps) ** l * mpmath.mpf(k) ** l * mpmath.exp(-mp(LAMBDA2 * k * k * t))


def energy_decay_bound(H0k, k, t, eps):
    """6 e^(-2 lambda1 t/eps^2) H0_k(g) (high k) or 6 e^(-2 lambda2 k^2 t) H0_k(g) (low k)."""
    t, eps = _q(t), _q(eps)
    rate = LAMBDA1 * t / eps ** 2 if not is_low_frequency(k, eps) else LAMBDA2 * k * k * t
    return 6 * mp(H0k) * mpmath.exp(-2 * mp(rate))


def growth_factor(t):
    """M(t) = 2 max(1, sqrt t) / (sqrt(3) (1 - lambda2/4))."""
    return CONSTANTS.A * max(mpmath.mpf(1), mpmath.sqrt(mp(_q(t))))


def c_hat(k, t):
    """C_hat(t) = (2 sqrt(t) + 1/k) / (sqrt(3) (1 - lambda2/4))."""
    return (2 * mpmath.sqrt(mp(_q(t))) + mpmath.mpf(1) / abs(k)) * CONSTANTS.A / 2


def superconvergence_constants(N, l, k, t, H0k):
    """C_tilde^k_{N+1-l}(t) (or C_tilde^k_{N-1} for l = 0), from
    C_tilde_1 = max(1, sqrt t) C_hat(t) C^k_{N+1} and C_tilde_{n+1} = M(t) C_tilde_n."""
    if k == 0:
        raise ValueError("k must be nonzero")
    if not 0 <= l <= N:
        raise ValueError(f"moment index {l} outside 0..{N}")
    index = N - 1 if l == 0 else N + 1 - l
    if index < 1:
        raise ValueError("the zeroth-moment constant needs N >= 2")
    t = _q(t)
    c_k = mpmath.sqrt(12 * mp(H0k)) * CONSTANTS.A ** (N + 1)
    first = max(mpmath.mpf(1), mpmath.sqrt(mp(t))) * c_hat(k, t) * c_k
    return first * growth_factor(t) ** (index - 1)


def moment_pointwise_bound(N, l, k, t, eps, H0k):
    """Low-frequency bound on |xi_lk|(t): C_tilde eps^e k^p e^(-lambda2 k^2 t) with
    (e, p) = (2N, 3N) for l = 0 and (2N+2-l, 3N+4-2l) otherwise."""
    t, eps = _q(t), _q(eps)
    k = abs(k)
    e, p = (2 * N, 3 * N) if l == 0 else (2 * N + 2 - l, 3 * N + 4 - 2 * l)
    return (superconvergence_constants(N, l, k, t, H0k) * mp(eps) ** e
            * mpmath.mpf(k) ** p * mpmath.exp(-mp(LAMBDA2 * k * k * t)))


def _worst(name, pairs, met=True):
    """Collapse (label, computed, bound) triples to the report with the
    smallest margin."""
    worst = None
    for label, comp, bound in pairs:
        comp, bound = mp(comp), mp(bound)
        slack = bound * (1 + mp(PASS_SLACK)) - comp
        if comp == 0:
            key = mpmath.inf
        else:
            key = slack / bound if bound > 0 else -mpmath.inf
        if worst is None or key < worst[0]:
            worst = (key, label, comp, bound)
    if worst is None:
        return None
    return BoundReport(f"{name}[{worst[1]}]", worst[2], worst[3], met)


def lemma_checks(study, N, t, eps, ref=None, approx=None):
    """Worst-case spot checks of the pointwise estimates on the P_N solution:
    energy decay per mode, coefficient bounds per (l, k), and the low-frequency
    superconvergence bounds on xi_lk (N >= 2 for the zeroth moment)."""
    t, eps = _q(t), _q(eps)
    approx = approx if approx is not None else study.solve(N, eps, t)
    g = study.initial_state(N)
    arith = study.arith
    reports = []
    with mpmath.workprec(arith.precision):
        H0 = {k: mp(energy(g, k, 0)) for k in range(0, g.K + 1)}
        decay, coeff = [], []
        for k in range(-g.K, g.K + 1):
            if k == 0:
                continue
            hk = H0[abs(k)]
            decay.append((f"k={k}", energy(approx, k, 0), energy_decay_bound(hk, k, t, eps)))
            for l in range(N + 1):
                comp = mpmath.sqrt(mp(arith.abs2(approx.coefficient(l, k))))
                coeff.append((f"l={l},k={k}", comp, coefficient_bound(hk, l, k, t, eps)))
        reports.append(_worst("energy_decay", decay))
        reports.append(_worst("coefficient_bound", coeff))
        ref = ref if ref is not None else study.reference(eps, t)
        xi = []
        for k in range(1, g.K + 1):
            if not is_low_frequency(k, eps):
                break
            for l in range(N + 1):
                if l == 0 and N < 2:
                    continue
                d = arith.abs2(ref.coefficient(l, k) - approx.coefficient(l, k))
                xi.append((f"l={l},k={k}", mpmath.sqrt(mp(d)),
                           moment_pointwise_bound(N, l, k, t, eps, H0[k])))
        if xi:
            reports.append(_worst("moment_pointwise", xi))
    return [r for r in reports if r is not None]


# -- coefficient growth in N: a_n, b_n, envelopes ----------------------------------

def a_n(s, n, K=SERIES_CUTOFF, prec=53):
    """a_n^K(s) = sum_{0<k<=K} (A k)^(2n) e^(-k^2 s), as an mpf (no overflow)."""
    s = mp(_q(s)) if not isinstance(s, mpmath.mpf) else s
    if s <= 0:
        raise ValueError("s must be positive")
    if K < 1 or n < 0:
        raise ValueError("need K >= 1 and n >= 0")
    with mpmath.workprec(prec + 16):
        # sum smallest terms first around the peak for a stable reduction
        terms = [(mpmath.mpf(2 * n) * mpmath.log(CONSTANTS.A * k) - k * k * s) for k in range(1, K + 1)]
        top = max(terms)
        acc = mpmath.fsum(mpmath.exp(x - top) for x in sorted(terms))
        val = acc * mpmath.exp(top)
    return +val


def log_a_n(s, n, K=SERIES_CUTOFF, prec=53):
    """ln a_n^K(s) as a float."""
    return float(mpmath.log(a_n(s, n, K, prec)))


def b_n(s, n):
    """b_0 = 1/s, b_{n+1} = ((n+1)/s) b_n + 1/s; exact for rational s."""
    s = _q(s) if not isinstance(s, mpmath.mpf) else s
    if s <= 0 or n < 0:
        raise ValueError("need s > 0 and n >= 0")
    b = 1 / s
    for m in range(n):
        b = (m + 1) / s * b + 1 / s
    return b


def b_n_direct(s, n):
    """sum_{k=0..n} (1/s)^(k+1) n!/(n-k)!."""
    s = _q(s)
    total = Fraction(0)
    falling = 1
    for k in range(n + 1):
        total += falling / s ** (k + 1)
        falling *= n - k
    return total


def riemann_envelope(s, n):
    """(2A)^(2n) (e^-s + 1/2 e^-s b_n(s)), the integral bound on a_n(s)."""
    s = _q(s)
    return (2 * CONSTANTS.A) ** (2 * n) * mpmath.exp(-mp(s)) * (1 + mp(b_n(s, n)) / 2)


def c_tilde(t, Hmax):
    """2 (sqrt 2 + sqrt(t)/A) (24 max_k H0_k)^(1/2)."""
    return 2 * (mpmath.sqrt(2) + mpmath.sqrt(mp(_q(t))) / CONSTANTS.A) * mpmath.sqrt(24 * mp(Hmax))


def d_tilde(Hmax):
    """8 (6 e^lambda2 max_k H0_k)^(1/2)."""
    return 8 * mpmath.sqrt(6 * mpmath.exp(mp(LAMBDA2)) * mp(Hmax))


def error_envelope(N, t, eps, Hmax):
    """E^N(t) = c_tilde (2A)^(N+2) e^(-lambda2 t) (b_{N+2}(2 lambda2 t)/2 + 1)^(1/2) eps^(N+1)."""
    t, eps = _q(t), _q(eps)
    A = CONSTANTS.A
    b = mp(b_n(2 * LAMBDA2 * t, N + 2))
    return (c_tilde(t, Hmax) * (2 * A) ** (N + 2) * mpmath.exp(-mp(LAMBDA2 * t))
            * mpmath.sqrt(b / 2 + 1) * mp(eps) ** (N + 1))


def moment_envelope(N, l, t, eps, Hmax):
    """E_l^N(t) = d_tilde ((N-n+2)/(e A^2 lambda2))^((N-n+2)/2) (2A)^(3N+4-2n)
    e^(-lambda2 t/2) (b_{3N+4-2n}(lambda2 t)/2 + 1)^(1/2) eps^(2N+2-n), n = n_l."""
    t, eps = _q(t), _q(eps)
    A = CONSTANTS.A
    n = moment_index(l)
    m = N - n + 2
    b = mp(b_n(LAMBDA2 * t, 3 * N + 4 - 2 * n))
    return (d_tilde(Hmax) * (m / (mpmath.e * A ** 2 * mp(LAMBDA2))) ** (mpmath.mpf(m) / 2)
            * (2 * A) ** (3 * N + 4 - 2 * n) * mpmath.exp(-mp(LAMBDA2 * t) / 2)
            * mpmath.sqrt(b / 2 + 1) * mp(eps) ** (2 * N + 2 - n))


def envelope_ratio(N, t, eps):
    """E^{N+1}/E^N in closed form: 2A ((b_{N+3}+2)/(b_{N+2}+2))^(1/2) eps, s = 2 lambda2 t."""
    s = 2 * LAMBDA2 * _q(t)
    return (2 * CONSTANTS.A * mpmath.sqrt(mp((b_n(s, N + 3) + 2) / (b_n(s, N + 2) + 2)))
            * mp(_q(eps)))


def alpha_bound(N, t):
    """2A ((N+3)/(2 lambda2 t) + 1)^(1/2)."""
    return 2 * CONSTANTS.A * mpmath.sqrt(mp(Fraction(N + 3) / (2 * LAMBDA2 * _q(t)) + 1))


def beta_bound(N, l, t):
    """8A^2 ((N-n+3)/lambda2^2)^(1/2) ((3N+7-2n)/(lambda2 t) + 1)^(3/2), n = n_l."""
    n = moment_index(l)
    A = CONSTANTS.A
    return (8 * A ** 2 * mpmath.sqrt(mp(Fraction(N - n + 3) / LAMBDA2 ** 2))
            * mp(Fraction(3 * N + 7 - 2 * n) / (LAMBDA2 * _q(t)) + 1) ** mpmath.mpf(1.5))


def bound_envelopes(g_state, N, t, eps, l=None):
    """E^N, E_l^N (when ``l`` is given) and the ratio bounds alpha, beta."""
    with mpmath.workprec(_prec(g_state.arith)):
        Hmax = max_energy(g_state)
        out = {
            "E": error_envelope(N, t, eps, Hmax),
            "E_ratio": envelope_ratio(N, t, eps),
            "alpha": alpha_bound(N, t),
        }
        if l is not None:
            out["E_l"] = moment_envelope(N, l, t, eps, Hmax)
            out["beta"] = beta_bound(N, l, t)
    return out


def ratio_constant(t, quantity="total"):
    """Observed bound G1(t) (total) or G2(t) (moments) on the normalized error ratios."""
    table = RATIO_CONSTANT_TOTAL if quantity == "total" else RATIO_CONSTANT_MOMENT
    t = _q(t)
    if t not in table:
        raise ValueError(f"no stored ratio constant for t={t}")
    return table[t]

