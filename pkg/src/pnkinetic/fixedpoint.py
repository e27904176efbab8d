"""Batched fixed-point matrix arithmetic carried in float64 limbs.

A value x is stored as integers ``x_i`` with ``x = sum_i x_i 2**(B*i - F)``,
``F = B*(L-1)``.  Limbs 0..L-2 are normalized to [0, 2**B); the top limb holds
the signed integer part.  Limb products are exact in float64 because every
partial sum of a limb convolution stays below 2**51, so ordinary BLAS matmul
does the heavy lifting and the result is bit-reproducible regardless of the
summation order BLAS picks.
"""

from __future__ import annotations

import math

import numpy as np

_SAFE_BITS = 51


class LimbFormat:
    """Limb width B and count L for at least ``frac_bits`` fractional bits and
    matrix products with inner dimension up to ``inner``."""

    def __init__(self, frac_bits, inner):
        if frac_bits < 8 or inner < 1:
            raise ValueError("bad limb format request")
        for width in range(25, 7, -1):
            count = -(-frac_bits // width) + 1
            if 2 * width + math.log2(count * inner) + 1 <= _SAFE_BITS:
                break
        else:
            raise ValueError("inner dimension too large for float64 limbs")
        self.width = width
        self.count = count
        self.frac_bits = width * (count - 1)
        self.base = float(1 << width)
        self.inv_base = 1.0 / self.base
        self.inner = inner

    def __repr__(self):
        return f"LimbFormat(B={self.width}, L={self.count}, F={self.frac_bits})"

    # -- conversion ----------------------------------------------------------
    def from_ints(self, z):
        """Limbs of an object array of Python ints scaled by 2**F."""
        z = np.asarray(z, dtype=object)
        out = np.empty((self.count,) + z.shape)
        mask = (1 << self.width) - 1
        for i in range(self.count - 1):
            out[i] = (z & mask).astype(np.float64)
            z = z >> self.width
        out[-1] = z.astype(np.float64)
        return out

    def to_ints(self, x):
        """Exact Python-int object array equal to value * 2**F."""
        z = x[-1].astype(np.int64).astype(object)
        for i in range(self.count - 2, -1, -1):
            z = (z << self.width) + x[i].astype(np.int64).astype(object)
        return z

    def to_float(self, x):
        acc = np.zeros(x.shape[1:])
        for i in range(self.count):
            acc += np.ldexp(x[i], self.width * i - self.frac_bits)
        return acc

    def zeros(self, shape):
        return np.zeros((self.count,) + tuple(shape))

    def identity(self, batch, n):
        out = self.zeros((batch, n, n))
        out[-1, :, np.arange(n), np.arange(n)] = 1.0
        return out

    # -- arithmetic ----------------------------------------------------------
    def _carry(self, c, shift, round_half):
        """Propagate carries through ``c`` (limb axis first) and return the L
        limbs starting at index ``shift``; ``round_half`` adds half a unit at
        index shift-1 so the dropped part rounds to nearest."""
        m = c.shape[0]
        out = np.empty((self.count,) + c.shape[1:])
        if round_half:
            c[shift - 1] += self.base * 0.5
        carry = None
        for j in range(m):
            v = c[j] if carry is None else c[j] + carry
            if j == m - 1:
                top = v
                if j >= shift:
                    out[j - shift] = top
                break
            carry = np.floor(v * self.inv_base)
            if j >= shift:
                out[j - shift] = v - carry * self.base
        return out

    def normalize(self, x):
        return self._carry(x.copy(), 0, False)

    def add(self, x, y):
        return self._carry(x + y, 0, False)

    def sub(self, x, y):
        return self._carry(x - y, 0, False)

    def div_int(self, x, d):
        """x / d for a positive integer d < 2**20, rounded to nearest."""
        out = np.empty_like(x)
        q = np.floor(x[-1] / d)
        rem = x[-1] - q * d
        out[-1] = q
        for i in range(self.count - 2, -1, -1):
            cur = x[i] + rem * self.base
            q = np.floor(cur / d)
            rem = cur - q * d
            out[i] = q
        out[0] += (2.0 * rem >= d)
        return self._carry(out, 0, False)

    def matmul(self, x, y, guard=3):
        """Rounded product of batched matrices x @ y (limb axis first)."""
        L = self.count
        lo = max(L - 1 - guard, 0)
        n = x.shape[-2]
        r = y.shape[-1]
        batch = x.shape[1:-2]
        width = 2 * L - 1 - lo
        c = np.zeros((width,) + batch + (n, r))
        ycat = np.concatenate([y[j] for j in range(L)], axis=-1)
        for i in range(L):
            j0 = max(lo - i, 0)
            prod = np.matmul(x[i], ycat[..., j0 * r:])
            prod = prod.reshape(batch + (n, L - j0, r))
            prod = np.moveaxis(prod, -2, 0)
            c[i + j0 - lo:i + L - lo] += prod
        return self._carry(c, L - 1 - lo, True)

    def matvec_ints(self, x, v):
        """Exact integer product of the matrix limbs x (L, n, m) with an
        integer vector v; returns Python ints scaled by 2**F."""
        z = self.to_ints(x)
        return z.dot(np.asarray(v, dtype=object))

    def max_abs_top(self, x):
        return float(np.max(np.abs(x[-1]))) if x.size else 0.0

    def norm1(self, x):
        """Per-batch 1-norm estimate (float)."""
        v = np.abs(self.to_float(x))
        return v.sum(axis=-2).max(axis=-1)
