"""Exact-in-time propagation by scaling-and-squaring Taylor matrix exponentials.

The P_N generator is similar to a real matrix: with D = diag(i**l),
D^-1 A_k D = B_k where B_k has +(k/eps) a_l above the diagonal, -(k/eps) a_l
below and -1/eps**2 on the diagonal for l >= 1.  So exp(t A_k) =
D exp(t B_k) D^-1 and only real exponentials are needed.  In extended mode
those are evaluated in batched fixed-point arithmetic (see fixedpoint.py);
in double mode the same algorithm runs on float64 arrays.
"""

from __future__ import annotations

import math
import os
import threading
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .bigfloat import DOUBLE, Arithmetic, ExtendedComplex, ExtendedReal
from .fixedpoint import LimbFormat
from .moment_system import (SpectralState, as_fraction, coupling, coupling_scaled_int,
                            real_generator_norm1, zeros_array)

# the scaled matrix satisfies ||tau A / 2**s||_1 <= theta; any theta <= 1/2 is
# admissible, smaller values trade Taylor terms for squarings
DOUBLE_THETA = 0.5
EXTENDED_THETA = 2.0 ** -10
BATCH = 48


class PropagationError(ArithmeticError):
    """Fixed-point range exceeded or other numerical failure."""


def squaring_count(norm, theta):
    if norm <= theta:
        return 0
    return max(0, math.ceil(math.log2(norm / theta)))


def _threads():
    try:
        return max(1, int(os.environ.get("PNK_THREADS", "1")))
    except ValueError:
        return 1


# -- kernels -------------------------------------------------------------------

class _DoubleKernel:
    precision = 53

    def identity(self, batch, n):
        return np.broadcast_to(np.eye(n), (batch, n, n)).copy()

    def matmul(self, x, y):
        return x @ y

    def add(self, x, y):
        return x + y

    def div_int(self, x, d):
        return x / d

    def norm1(self, x):
        return np.abs(x).sum(axis=-2).max(axis=-1)

    def check(self, x):
        if not np.all(np.isfinite(x)):
            raise PropagationError("non-finite values in double-mode exponential")


class _FixedKernel:
    def __init__(self, fmt):
        self.fmt = fmt

    def identity(self, batch, n):
        return self.fmt.identity(batch, n)

    def matmul(self, x, y):
        return self.fmt.matmul(x, y)

    def add(self, x, y):
        return self.fmt.add(x, y)

    def div_int(self, x, d):
        return self.fmt.div_int(x, d)

    def norm1(self, x):
        return self.fmt.norm1(x)

    def check(self, x):
        if self.fmt.max_abs_top(x) > 2.0 ** (self.fmt.width - 4):
            raise PropagationError("fixed-point range exceeded in matrix exponential")


_fmt_cache = {}
_fmt_lock = threading.Lock()


def limb_format(frac_bits, n):
    key = (frac_bits, n)
    with _fmt_lock:
        fmt = _fmt_cache.get(key)
        if fmt is None:
            fmt = _fmt_cache[key] = LimbFormat(frac_bits, n)
        return fmt


def _taylor_square(kernel, x, squarings, tol):
    """exp(x)^(2**squarings) for a batch of scaled matrices x."""
    batch, n = x.shape[-3], x.shape[-1]
    total = kernel.add(kernel.identity(batch, n), x)
    term = x
    j = 1
    while True:
        j += 1
        term = kernel.div_int(kernel.matmul(term, x), j)
        total = kernel.add(total, term)
        if float(np.max(kernel.norm1(term))) < tol or j > 400:
            break
    kernel.check(total)
    for _ in range(squarings):
        total = kernel.matmul(total, total)
        kernel.check(total)
    return total


# -- generic complex exponential -------------------------------------------------

def expm(A, tau, arith=DOUBLE, theta=None):
    """exp(tau * A) for a square complex matrix.

    Double mode takes a complex128 array; extended mode accepts ExtendedComplex,
    ExtendedReal or Python numbers and returns an object array of
    ExtendedComplex.  Scaling-and-squaring with a Taylor series summed until
    the next term's 1-norm drops below 2**-(p+16).
    """
    A = np.asarray(A, dtype=object if not arith.is_double else complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expm needs a square matrix")
    tau_q = as_fraction(tau)
    if tau_q < 0:
        raise ValueError("tau must be nonnegative")
    n = A.shape[0]
    approx = np.array([[complex(z) for z in row] for row in A], dtype=complex) if not arith.is_double else A
    if tau_q == 0 or n == 0:
        eye = np.eye(n, dtype=complex)
        return eye if arith.is_double else _to_extended(eye, arith)
    # shift by the largest eigenvalue of the Hermitian part so the shifted
    # exponential is a 2-norm contraction (entries stay bounded by 1)
    herm = (approx + approx.conj().T) / 2
    mu = max(0.0, float(np.linalg.eigvalsh(herm).max()))
    if mu > 0:
        mu *= 1 + 1e-12
    p = arith.precision
    if arith.is_double:
        theta = theta or DOUBLE_THETA
        m = tau_q.numerator / tau_q.denominator * (approx - mu * np.eye(n))
        s = squaring_count(float(np.abs(m).sum(axis=0).max()), theta)
        x = (m / 2.0 ** s)[None]
        # complex arithmetic directly in double mode
        out = _taylor_square(_DoubleKernel(), x, s, 2.0 ** -(p + 16))[0]
        return out * math.exp(float(tau_q) * mu)
    theta = theta or EXTENDED_THETA
    shifted_norm = float(tau_q) * float(np.abs(approx - mu * np.eye(n)).sum(axis=0).max())
    s = squaring_count(shifted_norm, theta)
    fmt = limb_format(p + 40 + s, 2 * n)
    F = fmt.frac_bits
    mu_q = Fraction(mu)
    big = np.empty((2 * n, 2 * n), dtype=object)
    for i in range(n):
        for j in range(n):
            z = A[i, j]
            re, im = _parts(z)
            if i == j:
                re = re - mu_q
            re_i = _round_scaled(re * tau_q, F - s)
            im_i = _round_scaled(im * tau_q, F - s)
            big[i, j] = re_i
            big[i + n, j + n] = re_i
            big[i, j + n] = -im_i
            big[i + n, j] = im_i
    x = fmt.from_ints(big[None])
    res = _taylor_square(_FixedKernel(fmt), x, s, 2.0 ** -(p + 16))
    z = fmt.to_ints(res[:, 0])
    scale = arith.exp(arith.real(tau_q * mu_q)) if mu else arith.real(1)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            re = ExtendedReal.from_parts(int(z[i, j]), -F, p) * scale
            im = ExtendedReal.from_parts(int(z[i + n, j]), -F, p) * scale
            out[i, j] = ExtendedComplex(re, im, p)
    return out


def _parts(z):
    if isinstance(z, ExtendedComplex):
        return z.re.as_fraction(), z.im.as_fraction()
    if isinstance(z, ExtendedReal):
        return z.as_fraction(), Fraction(0)
    z = complex(z)
    return Fraction(z.real), Fraction(z.imag)


def _round_scaled(q, bits):
    v = q * (Fraction(2) ** bits)
    return math.floor(v + Fraction(1, 2))


def _to_extended(arr, arith):
    out = np.empty(arr.shape, dtype=object)
    for idx, z in np.ndenumerate(arr):
        out[idx] = arith.cplx(z)
    return out


# -- cached real propagators for the P_N system ------------------------------------

class PropagatorCache:
    """Thread-safe LRU of exp(t B_k) blocks keyed by (order, k, eps, t, precision)."""

    def __init__(self, max_bytes=None):
        if max_bytes is None:
            max_bytes = int(float(os.environ.get("PNK_CACHE_MB", "1024")) * 2 ** 20)
        self.max_bytes = max_bytes
        self._data = OrderedDict()
        self._bytes = 0
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            hit = self._data.get(key)
            if hit is not None:
                self._data.move_to_end(key)
            return hit

    def put(self, key, value):
        size = value[1].nbytes
        with self._lock:
            if key in self._data:
                return
            self._data[key] = value
            self._bytes += size
            while self._bytes > self.max_bytes and len(self._data) > 1:
                _, old = self._data.popitem(last=False)
                self._bytes -= old[1].nbytes

    def clear(self):
        with self._lock:
            self._data.clear()
            self._bytes = 0

    def __len__(self):
        return len(self._data)


CACHE = PropagatorCache()


def _real_generator_double(order, ks, eps, tau, s):
    n = order + 1
    a = np.array([coupling(l) for l in range(order)])
    out = np.zeros((len(ks), n, n))
    e = float(eps)
    scale = float(tau) / 2.0 ** s
    for b, k in enumerate(ks):
        off = (k / e) * a * scale
        idx = np.arange(order)
        out[b, idx, idx + 1] = off
        out[b, idx + 1, idx] = -off
        out[b, np.arange(1, n), np.arange(1, n)] = -scale / e ** 2
    return out


def _real_generator_fixed(fmt, order, ks, eps, tau, s):
    n = order + 1
    F = fmt.frac_bits
    z = np.zeros((len(ks), n, n), dtype=object)
    damp = -(Fraction(tau) / (eps * eps)) / (1 << s)
    damp_i = math.floor(damp * (1 << F) + Fraction(1, 2))
    for b, k in enumerate(ks):
        c = Fraction(k) * tau / eps / (1 << s)
        for l in range(order):
            v = coupling_scaled_int(l, c, F)
            z[b, l, l + 1] = v
            z[b, l + 1, l] = -v
        for l in range(1, n):
            z[b, l, l] = damp_i
    return fmt.from_ints(z)


def _compute_blocks(order, ks, eps, t, arith, theta):
    """exp(t B_k) for k in ks (all sharing one squaring count)."""
    norms = real_generator_norm1(order, max(ks), eps, t)
    if arith.is_double:
        s = squaring_count(norms, theta or DOUBLE_THETA)
        x = _real_generator_double(order, ks, eps, t, s)
        res = _taylor_square(_DoubleKernel(), x, s, 2.0 ** -(53 + 16))
        return [(None, res[b]) for b in range(len(ks))]
    p = arith.precision
    s = squaring_count(norms, theta or EXTENDED_THETA)
    fmt = limb_format(p + 40 + s, order + 1)
    x = _real_generator_fixed(fmt, order, ks, eps, t, s)
    res = _taylor_square(_FixedKernel(fmt), x, s, 2.0 ** -(p + 16))
    res = res.astype(np.int32)
    return [(fmt, np.ascontiguousarray(res[:, b])) for b in range(len(ks))]


def propagator_blocks(order, ks, eps, t, arith=DOUBLE, cache=CACHE, theta=None):
    """Map k -> (limb format or None, exp(t B_|k|)) for the requested |k|."""
    eps = as_fraction(eps)
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    key_prec = None if arith.is_double else arith.precision
    want = sorted(set(abs(int(k)) for k in ks))
    found = {}
    missing = []
    for k in want:
        hit = cache.get((order, k, eps, t, key_prec)) if cache is not None else None
        if hit is None:
            missing.append(k)
        else:
            found[k] = hit
    if missing:
        theta_v = theta or (DOUBLE_THETA if arith.is_double else EXTENDED_THETA)
        groups = {}
        for k in missing:
            s = squaring_count(real_generator_norm1(order, k, eps, t), theta_v)
            groups.setdefault(s, []).append(k)
        jobs = []
        for s in sorted(groups):
            grp = groups[s]
            for i in range(0, len(grp), BATCH):
                jobs.append(grp[i:i + BATCH])
        workers = _threads()
        if workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(lambda g: _compute_blocks(order, g, eps, t, arith, theta), jobs))
        else:
            results = [_compute_blocks(order, g, eps, t, arith, theta) for g in jobs]
        for grp, res in zip(jobs, results):
            for k, val in zip(grp, res):
                found[k] = val
                if cache is not None:
                    cache.put((order, k, eps, t, key_prec), val)
    return found


def _block_float(fmt, block):
    if fmt is None:
        return block
    return fmt.to_float(block.astype(np.float64))


def evolve(state, cfg, t, theta=None, cache=CACHE):
    """Advance every wavenumber block of ``state`` by time t.

    ``cfg`` supplies eps (a ModelConfig, or eps itself); the moment order is
    the state's order.
    """
    eps = as_fraction(getattr(cfg, "eps", cfg))
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return state
    arith = state.arith
    order = state.order
    K = state.K
    n = order + 1
    coeffs = state.coeffs
    blocks = propagator_blocks(order, range(0, K + 1), eps, t, arith, cache, theta)
    parity = np.array([(-1) ** l for l in range(n)])
    sign_flip = np.outer(parity, parity)
    out = zeros_array(K, order, arith)
    if arith.is_double:
        ipow = np.array([1j ** l for l in range(n)])
        for k in range(-K, K + 1):
            _, e = blocks[abs(k)]
            if k < 0:
                e = e * sign_flip
            v = coeffs[k + K] / ipow
            out[k + K] = ipow * (e @ v)
        return SpectralState(out, arith)
    p = arith.precision
    for k in range(-K, K + 1):
        u = coeffs[k + K]
        v = [u[l].mul_i_power(-l) for l in range(n)]
        cols = [l for l in range(n) if not (v[l].re.is_zero() and v[l].im.is_zero())]
        if not cols:
            continue
        fmt, e = blocks[abs(k)]
        z = fmt.to_ints(e[:, :, cols].astype(np.float64))
        if k < 0:
            z = z * sign_flip[:, cols]
        top = max(max(_top(v[c].re), _top(v[c].im)) for c in cols)
        scale_exp = top - (p + 40)
        vr = np.array([v[c].re.scaled_int(-scale_exp) for c in cols], dtype=object)
        vi = np.array([v[c].im.scaled_int(-scale_exp) for c in cols], dtype=object)
        wr = z.dot(vr)
        wi = z.dot(vi)
        F = fmt.frac_bits
        for l in range(n):
            w = ExtendedComplex(ExtendedReal.from_parts(int(wr[l]), scale_exp - F, p),
                                ExtendedReal.from_parts(int(wi[l]), scale_exp - F, p), p)
            out[k + K, l] = w.mul_i_power(l)
    return SpectralState(out, arith)


def _top(x):
    if x.is_zero():
        return -(1 << 62)
    return x.exponent + x.mantissa.bit_length()


def propagator_matrix(order, k, eps, t, arith=DOUBLE, theta=None):
    """exp(t A_k) as a dense complex matrix (complex128 or ExtendedComplex)."""
    blocks = propagator_blocks(order, [k], eps, t, arith, theta=theta)
    fmt, e = blocks[abs(k)]
    n = order + 1
    ipow = [1j ** l for l in range(n)]
    if arith.is_double:
        if k < 0:
            e = e * np.outer([(-1) ** l for l in range(n)], [(-1) ** l for l in range(n)])
        return np.outer(ipow, np.conj(ipow)) * e
    z = fmt.to_ints(e.astype(np.float64))
    out = np.empty((n, n), dtype=object)
    p = arith.precision
    for i in range(n):
        for j in range(n):
            v = int(z[i, j]) * (1 if k >= 0 else (-1) ** (i + j))
            out[i, j] = ExtendedComplex(ExtendedReal.from_parts(v, -fmt.frac_bits, p),
                                        ExtendedReal(0, p), p).mul_i_power(i - j)
    return out
