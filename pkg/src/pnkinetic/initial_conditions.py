"""Benchmark isotropic initial data and their Fourier coefficients.

    g1(x) = 1 + 1_{[-pi/2, pi/2]}(x)
    g2(x) = 1 + cos(x) 1_{[-pi/2, pi/2]}(x)
    g3(x) = 1 + cos(x)

Coefficients use the normalization G_k = (2 pi)^-1/2 int G(x) e^{-ikx} dx.
Two discretizations are offered: the exact integrals ("exact") and the
discrete Fourier transform of samples on the uniform grid
x_j = -pi + 2 pi j / M ("grid"), which is what an FFT-based solver sees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .bigfloat import DOUBLE, ExtendedComplex, ExtendedReal

KINDS = ("g1", "g2", "g3", "sampled")
METHODS = ("exact", "grid")


@dataclass(frozen=True)
class InitialCondition:
    kind: str
    samples: tuple | None = None  # (x, value) pairs for kind="sampled"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown initial condition {self.kind!r}")
        if self.kind == "sampled":
            if not self.samples:
                raise ValueError("sampled initial condition needs samples")
            _check_grid(self.samples)
        elif self.samples is not None:
            raise ValueError("samples are only meaningful for kind='sampled'")

    @classmethod
    def named(cls, name):
        return cls(name)

    @classmethod
    def from_file(cls, path):
        """Two-column text file: x value, one pair per line ('#' comments)."""
        pairs = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.replace(",", " ").split()
                if len(parts) != 2:
                    raise ValueError(f"expected two columns: {line!r}")
                pairs.append((parts[0], parts[1]))
        return cls("sampled", tuple(pairs))

    @property
    def label(self):
        return self.kind

    def __call__(self, x):
        """Pointwise value (float) for the analytic kinds."""
        x = np.asarray(x, dtype=float)
        inside = np.abs(x) <= np.pi / 2
        if self.kind == "g1":
            return 1.0 + inside
        if self.kind == "g2":
            return 1.0 + np.cos(x) * inside
        if self.kind == "g3":
            return 1.0 + np.cos(x)
        raise ValueError("pointwise evaluation needs an analytic kind")


def _check_grid(samples):
    m = len(samples)
    if m < 2 or m & (m - 1):
        raise ValueError("sample count must be a power of two")
    for j, (x, _) in enumerate(samples):
        want = -math.pi + 2 * math.pi * j / m
        if abs(float(x) - want) > 1e-9 * max(1.0, abs(want)):
            raise ValueError("samples must lie on the uniform grid -pi + 2 pi j / M")


def regularity_report(ic):
    """Sobolev index q below which the data lie in H^q (inf when smooth)."""
    if ic.kind == "g1":
        return 0.5
    if ic.kind == "g2":
        return 1.5
    if ic.kind == "g3":
        return math.inf
    raise ValueError("regularity of sampled data is unknown")


def fourier_coefficients(ic, K, arith=DOUBLE, method="exact", grid_points=None):
    """Map k -> G_k for |k| <= K.

    ``method='grid'`` samples the analytic data on ``grid_points`` (default
    2K) points; sampled data always use their own grid.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    if method not in METHODS:
        raise ValueError(f"unknown coefficient method {method!r}")
    if ic.kind == "sampled":
        m = len(ic.samples)
        if 2 * K > m:
            raise ValueError(f"K={K} exceeds the sample resolution ({m} points)")
        return _dft_coefficients(lambda arr: _sample_values(ic, arr), m, K, arith)
    if method == "grid":
        m = grid_points or 2 * K
        if 2 * K > m:
            raise ValueError(f"K={K} exceeds the grid resolution ({m} points)")
        return _dft_coefficients(lambda arr: _analytic_samples(ic.kind, m, arr), m, K, arith)
    return {k: _exact_coefficient(ic.kind, k, arith) for k in range(-K, K + 1)}


def _exact_coefficient(kind, k, arith):
    """Closed-form integral (1/sqrt(2 pi)) int G e^{-ikx} dx; real for even G."""
    pi = arith.pi()
    root = arith.sqrt(pi * 2)
    k = abs(k)
    if kind == "g3":
        if k == 0:
            val = root
        elif k == 1:
            val = arith.sqrt(pi / 2)
        else:
            val = arith.zero()
    elif kind == "g1":
        if k == 0:
            val = pi * 3 / root
        else:
            val = arith.real(2 * _sin_half_pi(k)) / (root * k)
    elif kind == "g2":
        if k == 0:
            val = (pi * 2 + 2) / root
        elif k == 1:
            val = pi / 2 / root
        else:
            num = Fraction(_sin_half_pi(k - 1), k - 1) + Fraction(_sin_half_pi(k + 1), k + 1)
            val = arith.real(num) / root
    else:
        raise ValueError(kind)
    return arith.complex(val, 0)


def _sin_half_pi(n):
    """sin(n pi / 2) for an integer n, exactly."""
    return (0, 1, 0, -1)[n % 4]


# -- grid sampling and DFT ---------------------------------------------------------

def _analytic_samples(kind, m, arith_tables):
    """Sample values on x_j = pi (2j/m - 1) as fixed-point ints or floats.

    ``arith_tables`` is a callable giving cos(pi r / m) for integer r.
    """
    cos_pi = arith_tables
    vals = []
    for j in range(m):
        r = 2 * j - m  # x_j = pi r / m
        inside = 2 * abs(r) <= m  # |x_j| <= pi/2, endpoints included
        c = cos_pi(r)
        if kind == "g1":
            v = cos_pi.one + (cos_pi.one if inside else 0)
        elif kind == "g2":
            v = cos_pi.one + (c if inside else 0)
        else:
            v = cos_pi.one + c
        vals.append(v)
    return vals


def _sample_values(ic, tables):
    return [tables.value(v) for _, v in ic.samples]


class _DoubleTables:
    one = 1.0

    def __init__(self, m):
        self.m = m

    def __call__(self, r):
        return math.cos(math.pi * r / self.m)

    def value(self, text):
        return float(text)


class _FixedTables:
    """cos(pi r / m) and sin(pi r / m) as ints scaled by 2**bits."""

    def __init__(self, m, bits):
        self.m = m
        self.bits = bits
        self.one = 1 << bits
        with mpmath.workprec(bits + 32):
            self.cos = [int(mpmath.nint(mpmath.cospi(mpmath.mpf(r) / m) * mpmath.mpf(2) ** bits))
                        for r in range(2 * m)]
            self.sin = [int(mpmath.nint(mpmath.sinpi(mpmath.mpf(r) / m) * mpmath.mpf(2) ** bits))
                        for r in range(2 * m)]

    def __call__(self, r):
        return self.cos[r % (2 * self.m)]

    def value(self, text):
        q = Fraction(text)
        return math.floor(q * self.one + Fraction(1, 2))


def _dft_coefficients(sampler, m, K, arith):
    """G_k = sqrt(2 pi)/m sum_j g(x_j) e^{-i k x_j}, with the Nyquist mode
    split evenly between k = +-m/2 when K reaches it."""
    if arith.is_double:
        tables = _DoubleTables(m)
        g = np.array(sampler(tables), dtype=float)
        spec = np.fft.fft(g) / m
        out = {}
        for k in range(0, K + 1):
            c = spec[k % m] * (-1) ** (k % 2)  # phase of x_0 = -pi
            if 2 * k == m:
                c = c / 2
            out[k] = complex(c) * math.sqrt(2 * math.pi)
            out[-k] = out[k].conjugate()
        return out
    p = arith.precision
    bits = p + 32 + m.bit_length()
    tables = _FixedTables(m, bits)
    g = np.array(sampler(tables), dtype=object)
    cos_t = np.array(tables.cos, dtype=object)
    sin_t = np.array(tables.sin, dtype=object)
    j = np.arange(m, dtype=np.int64)
    root = arith.sqrt(arith.pi() * 2)
    half = {}
    for k in range(0, K + 1):
        idx = (k * (2 * j - m)) % (2 * m)
        re = int(np.dot(g, cos_t[idx]))
        im = -int(np.dot(g, sin_t[idx]))
        denom = m * (2 if 2 * k == m else 1)
        re_x = ExtendedReal.from_parts(re, -2 * bits, p) / denom * root
        im_x = ExtendedReal.from_parts(im, -2 * bits, p) / denom * root
        half[k] = (re_x, im_x)
    out = {}
    for k in range(-K, K + 1):
        re_x, im_x = half[abs(k)]
        out[k] = ExtendedComplex(re_x, im_x if k >= 0 else -im_x, p)
    return out
