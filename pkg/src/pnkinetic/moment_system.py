"""P_N moment systems in Fourier space and the state container.

For each wavenumber k the Legendre-Fourier coefficients u_k = (u_0k .. u_Nk)
obey u_k' = A_k u_k with

    A_k = -(i k / eps) M - R / eps**2,

M symmetric tridiagonal with off-diagonal a_l = (l+1)/sqrt((2l+1)(2l+3)) and
R = diag(0, 1, ..., 1).  Truncation drops the coupling to u_{N+1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bigfloat import DOUBLE, Arithmetic, ExtendedComplex, ExtendedReal


def as_fraction(x):
    """Exact rational value of an int, Fraction, float, decimal string or
    ExtendedReal; strings like '1/512' are accepted."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    if isinstance(x, ExtendedReal):
        return x.as_fraction()
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(as_fraction(num.strip())) / as_fraction(den.strip())
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True)
class ModelConfig:
    """Discretization parameters: moment order N, scaling eps, Fourier cutoff K
    (modes k = -K..K), reference order and working precision (None = double)."""

    N: int
    eps: Fraction
    K: int
    N_ref: int = 65
    precision: int | None = 256
    times: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "eps", as_fraction(self.eps))
        object.__setattr__(self, "times", tuple(as_fraction(t) for t in self.times))
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if self.N_ref <= self.N:
            raise ValueError("reference order must exceed N")
        if not 0 < self.eps <= 1:
            raise ValueError("eps must lie in (0, 1]")
        if self.K < 1:
            raise ValueError("K must be positive")
        if any(t <= 0 for t in self.times):
            raise ValueError("times must be positive")

    @property
    def arith(self):
        return Arithmetic(self.precision)


def coupling(l, arith=DOUBLE):
    """a_l = (l+1)/sqrt((2l+1)(2l+3))."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    if arith.is_double:
        return (l + 1) / math.sqrt((2 * l + 1) * (2 * l + 3))
    return arith.real(l + 1) / arith.sqrt(arith.real((2 * l + 1) * (2 * l + 3)))


def coupling_coefficients(N, arith=DOUBLE):
    """[a_0, ..., a_N]."""
    return [coupling(l, arith) for l in range(N + 1)]


def coupling_scaled_int(l, scale, frac_bits):
    """round(scale * a_l * 2**frac_bits) for a rational ``scale``, exact."""
    scale = Fraction(scale)
    sign = -1 if scale < 0 else 1
    sq = scale * scale * (l + 1) ** 2 / ((2 * l + 1) * (2 * l + 3))
    val = (sq.numerator << (2 * frac_bits + 2)) // sq.denominator
    r = math.isqrt(val)  # floor(2 * |scale a_l| 2**F)
    return sign * ((r + 1) >> 1)


@dataclass(frozen=True)
class WaveGenerator:
    """Dense (order+1)x(order+1) generator A_k in the chosen arithmetic."""

    k: int
    order: int
    eps: Fraction
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)


def assemble_generator(cfg, order, k, arith=None):
    """A_k = -(ik/eps) M - R/eps**2 for the P_order system."""
    if order < 1:
        raise ValueError("order must be at least 1")
    if abs(k) > cfg.K:
        raise ValueError(f"|k|={abs(k)} exceeds the Fourier cutoff {cfg.K}")
    arith = arith or cfg.arith
    n = order + 1
    eps = arith.real(cfg.eps)
    damp = -(arith.real(1) / (eps * eps))
    mat = np.empty((n, n), dtype=arith.dtype)
    zero = arith.czero()
    for i in range(n):
        for j in range(n):
            mat[i, j] = zero
    for l in range(1, n):
        mat[l, l] = arith.complex(damp, 0)
    if k != 0:
        for l in range(order):
            off = arith.real(k) / eps * coupling(l, arith)
            entry = arith.complex(0, -off)
            mat[l, l + 1] = entry
            mat[l + 1, l] = entry
    return WaveGenerator(k=k, order=order, eps=cfg.eps, matrix=mat)


def real_generator_norm1(order, k, eps, tau):
    """1-norm of tau * A_k (float estimate), used to pick the squaring count."""
    a = [coupling(l) for l in range(order)]
    kk = abs(k) / float(eps)
    best = 0.0
    for col in range(order + 1):
        s = 0.0 if col == 0 else 1.0 / float(eps) ** 2
        if col > 0:
            s += kk * a[col - 1]
        if col < order:
            s += kk * a[col]
        best = max(best, s)
    return best * float(tau)


@dataclass(frozen=True, eq=False)
class SpectralState:
    """Legendre-Fourier coefficients u[k + K, l] for k = -K..K, l = 0..order.

    ``coeffs`` is complex128 in double mode, an object array of ExtendedComplex
    otherwise.  Instances are read-only.
    """

    coeffs: np.ndarray
    arith: Arithmetic = field(default=DOUBLE)

    def __post_init__(self):
        c = self.coeffs
        if c.ndim != 2 or c.shape[0] % 2 != 1:
            raise ValueError("coefficient array must have shape (2K+1, order+1)")
        c.setflags(write=False)

    @property
    def K(self):
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def order(self):
        return self.coeffs.shape[1] - 1

    def wavenumbers(self):
        return range(-self.K, self.K + 1)

    def mode(self, k):
        """Copy of the moment vector at wavenumber k."""
        if abs(k) > self.K:
            raise ValueError("wavenumber outside the stored range")
        return self.coeffs[k + self.K].copy()

    def coefficient(self, l, k):
        return self.coeffs[k + self.K, l]

    def padded(self, order):
        """Same state viewed in a higher moment order (zero padding in l)."""
        if order < self.order:
            raise ValueError("cannot pad to a lower order")
        if order == self.order:
            return self
        out = zeros_array(self.K, order, self.arith)
        out[:, :self.order + 1] = self.coeffs
        return SpectralState(out, self.arith)

    def truncated(self, order):
        return SpectralState(self.coeffs[:, :order + 1].copy(), self.arith)

    def norm(self):
        """L2(dmu dx) norm: sqrt(sum |u_lk|^2)."""
        return self.arith.sqrt(sum_abs2(self.coeffs, self.arith))

    def with_coeffs(self, coeffs):
        return SpectralState(coeffs, self.arith)

    def __eq__(self, other):
        if not isinstance(other, SpectralState) or other.coeffs.shape != self.coeffs.shape:
            return False
        return bool(np.all(self.coeffs == other.coeffs))

    __hash__ = None


def zeros_array(K, order, arith):
    shape = (2 * K + 1, order + 1)
    if arith.is_double:
        return np.zeros(shape, dtype=complex)
    out = np.empty(shape, dtype=object)
    zero = arith.czero()
    out.fill(zero)
    return out


def ordered_index(K, order):
    """Summation order used by all reductions: ascending l, then ascending
    |k| with k > 0 before k < 0."""
    ks = [0]
    for m in range(1, K + 1):
        ks.extend((m, -m))
    return [(k + K, l) for l in range(order + 1) for k in ks]


def sum_abs2(coeffs, arith):
    """sum |c|^2 over a (2K+1, n) coefficient array in the fixed order."""
    if arith.is_double:
        return float(np.sum(coeffs.real ** 2 + coeffs.imag ** 2))
    K = (coeffs.shape[0] - 1) // 2
    acc = arith.zero()
    for i, l in ordered_index(K, coeffs.shape[1] - 1):
        acc = acc + coeffs[i, l].abs2()
    return acc


def project_isotropic(G_hat, K, arith=DOUBLE, order=1):
    """Isotropic data: u_{0,k} = sqrt(2) G_hat[k], higher moments zero.

    ``G_hat`` maps k -> coefficient for |k| <= K and must be Hermitian.
    """
    out = zeros_array(K, order, arith)
    root2 = arith.sqrt(arith.real(2))
    for k in range(-K, K + 1):
        if k not in G_hat:
            raise ValueError(f"missing Fourier coefficient for k={k}")
    for k in range(0, K + 1):
        a = arith.cplx(G_hat[k])
        b = arith.cplx(G_hat[-k])
        if not _conj_close(a, b, arith):
            raise ValueError(f"coefficients are not Hermitian at k={k}")
    for k in range(-K, K + 1):
        out[k + K, 0] = arith.cplx(G_hat[k]) * root2
    return SpectralState(out, arith)


def _conj_close(a, b, arith):
    if arith.is_double:
        scale = max(abs(a), abs(b), 1e-300)
        return abs(a - b.conjugate()) <= 1e-12 * scale
    d = (a - b.conjugate()).abs2()
    s = a.abs2() + b.abs2()
    return d <= s * arith.real(2) ** (-2 * arith.precision + 8) or d.is_zero()


def is_low_frequency(k, eps):
    return abs(k) * as_fraction(eps) <= Fraction(1, 2)


def split_frequencies(state, eps):
    """(high, low) parts: low keeps |k| eps <= 1/2, high keeps the rest."""
    K = state.K
    low_rows = np.array([is_low_frequency(k, eps) for k in range(-K, K + 1)])
    zero = zeros_array(K, state.order, state.arith)
    high = np.where(low_rows[:, None], zero, state.coeffs)
    low = np.where(low_rows[:, None], state.coeffs, zero)
    return SpectralState(high, state.arith), SpectralState(low, state.arith)


def add_states(a, b):
    if a.coeffs.shape != b.coeffs.shape:
        raise ValueError("state shapes differ")
    return SpectralState(a.coeffs + b.coeffs, a.arith)


# -- serialization ------------------------------------------------------------

STATE_HEADER = "k,l,re,im"


def write_state(state, path, digits=None):
    """Write a state as a CSV table (k, l, re, im) in scientific notation."""
    arith = state.arith
    lines = [STATE_HEADER]
    for k in state.wavenumbers():
        for l in range(state.order + 1):
            z = state.coefficient(l, k)
            if arith.is_double:
                re, im = arith.fmt(z.real, digits), arith.fmt(z.imag, digits)
            else:
                re, im = z.re.to_string(digits), z.im.to_string(digits)
            lines.append(f"{k},{l},{re},{im}")
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    return text


def read_state(path, arith=DOUBLE):
    rows = []
    with open(path, encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != STATE_HEADER:
            raise ValueError(f"unexpected header {header!r}")
        for line in fh:
            line = line.strip()
            if line:
                k, l, re, im = line.split(",")
                rows.append((int(k), int(l), re, im))
    K = max(abs(r[0]) for r in rows)
    order = max(r[1] for r in rows)
    out = zeros_array(K, order, arith)
    for k, l, re, im in rows:
        out[k + K, l] = arith.complex(arith.real(re), arith.real(im))
    return SpectralState(out, arith)


def state_to_complex(state):
    """complex128 copy of the coefficients (for plotting or quick checks)."""
    if state.arith.is_double:
        return state.coeffs.copy()
    return np.vectorize(complex, otypes=[complex])(state.coeffs)


def state_from_complex(values, arith):
    if arith.is_double:
        return SpectralState(np.asarray(values, dtype=complex).copy(), arith)
    out = np.empty(values.shape, dtype=object)
    for idx, z in np.ndenumerate(values):
        out[idx] = arith.cplx(complex(z))
    return SpectralState(out, arith)


def extended_complex_array(values, precision):
    out = np.empty(np.shape(values), dtype=object)
    for idx, z in np.ndenumerate(np.asarray(values)):
        out[idx] = z if isinstance(z, ExtendedComplex) else ExtendedComplex(complex(z), precision=precision)
    return out
