"""Configurable-precision binary floating point.

ExtendedReal stores a signed integer mantissa of exactly ``precision`` bits and
a binary exponent, so the value is ``mantissa * 2**exponent``.  Every operation
is correctly rounded to nearest, ties to even.  There are no NaNs or infinities:
invalid operations raise.

ExtendedComplex is a pair of ExtendedReal.  Arithmetic wraps either native
doubles or ExtendedReal behind one small scalar interface so the solver code can
run in both modes.
"""

from __future__ import annotations

import math
import re
import sys
import threading
from fractions import Fraction

DEFAULT_PRECISION = 256
# bound on the binary exponent of the leading bit, in either direction
EXPONENT_LIMIT = 1 << 40

_HASH_MODULUS = sys.hash_info.modulus
_LOG10_2 = math.log10(2.0)


class BigFloatError(ArithmeticError):
    """Base class for extended-precision arithmetic failures."""


class ExponentRangeError(BigFloatError, OverflowError):
    """Result exponent outside the representable range."""


class DivisionByZeroError(BigFloatError, ZeroDivisionError):
    pass


class DomainError(BigFloatError, ValueError):
    """Argument outside the domain of the operation (e.g. sqrt of a negative)."""


class PrecisionMismatchError(BigFloatError, ValueError):
    pass


def _round_man(man, exp, prec, sticky=False):
    """Round ``man * 2**exp`` to ``prec`` bits, nearest-even.

    ``sticky`` flags nonzero bits below ``man`` (the exact value is slightly
    larger in magnitude); callers that use it supply at least prec+2 bits.
    """
    if man == 0:
        return 0, 0
    neg = man < 0
    m = -man if neg else man
    shift = m.bit_length() - prec
    if shift > 0:
        q = m >> shift
        rem = m & ((1 << shift) - 1)
        half = 1 << (shift - 1)
        if rem > half or (rem == half and (sticky or q & 1)):
            q += 1
            if q.bit_length() > prec:
                q >>= 1
                shift += 1
        m = q
        exp += shift
    elif shift < 0:
        m <<= -shift
        exp += shift
    top = exp + prec
    if top > EXPONENT_LIMIT:
        raise ExponentRangeError("exponent overflow")
    if top < -EXPONENT_LIMIT:
        raise ExponentRangeError("exponent underflow")
    return (-m if neg else m), exp


def _ratio_to_man(num, den, prec):
    """Correctly rounded (mantissa, exponent) of num/den, den > 0."""
    if num == 0:
        return 0, 0
    neg = num < 0
    num = abs(num)
    shift = prec + 2 - (num.bit_length() - den.bit_length())
    if shift >= 0:
        q, r = divmod(num << shift, den)
    else:
        q, r = divmod(num, den << -shift)
    m, e = _round_man(q, -shift, prec, sticky=r != 0)
    return (-m if neg else m), e


_DECIMAL_RE = re.compile(
    r"^\s*([+-]?)(\d+)?(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$")


def _parse_decimal(text):
    """Exact Fraction for a decimal literal; rejects inf/nan."""
    mt = _DECIMAL_RE.match(text)
    if not mt or (mt.group(2) is None and not mt.group(3)):
        raise DomainError(f"not a decimal number: {text!r}")
    sign, ipart, fpart, expo = mt.groups()
    digits = (ipart or "") + (fpart or "")
    scale = int(expo or 0) - len(fpart or "")
    num = int(digits) if digits else 0
    if sign == "-":
        num = -num
    if scale >= 0:
        return Fraction(num * 10 ** scale)
    return Fraction(num, 10 ** -scale)


class ExtendedReal:
    """Binary floating-point number with a configurable mantissa width."""

    __slots__ = ("_man", "_exp", "_prec")

    def __init__(self, value=0, precision=None):
        if precision is None:
            precision = value._prec if isinstance(value, ExtendedReal) else DEFAULT_PRECISION
        if precision < 2:
            raise ValueError("precision must be at least 2 bits")
        self._prec = precision
        if isinstance(value, ExtendedReal):
            self._man, self._exp = _round_man(value._man, value._exp, precision)
        elif isinstance(value, bool):
            self._man, self._exp = _round_man(int(value), 0, precision)
        elif isinstance(value, int):
            self._man, self._exp = _round_man(value, 0, precision)
        elif isinstance(value, float):
            if not math.isfinite(value):
                raise DomainError("non-finite float")
            n, d = value.as_integer_ratio()
            self._man, self._exp = _ratio_to_man(n, d, precision)
        elif isinstance(value, Fraction):
            self._man, self._exp = _ratio_to_man(value.numerator, value.denominator, precision)
        elif isinstance(value, str):
            fr = _parse_decimal(value)
            self._man, self._exp = _ratio_to_man(fr.numerator, fr.denominator, precision)
        else:
            raise TypeError(f"cannot convert {type(value).__name__} to ExtendedReal")

    @classmethod
    def _raw(cls, man, exp, prec):
        obj = object.__new__(cls)
        obj._man = man
        obj._exp = exp
        obj._prec = prec
        return obj

    @classmethod
    def _rounded(cls, man, exp, prec, sticky=False):
        m, e = _round_man(man, exp, prec, sticky)
        return cls._raw(m, e, prec)

    @classmethod
    def from_parts(cls, man, exp, precision=DEFAULT_PRECISION):
        """Round the exact value ``man * 2**exp``."""
        return cls._rounded(man, exp, precision)

    @classmethod
    def from_ratio(cls, num, den, precision=DEFAULT_PRECISION):
        if den == 0:
            raise DivisionByZeroError("zero denominator")
        if den < 0:
            num, den = -num, -den
        return cls._raw(*_ratio_to_man(num, den, precision), precision)

    # -- fields ------------------------------------------------------------
    @property
    def precision(self):
        return self._prec

    @property
    def sign(self):
        return -1 if self._man < 0 else 1

    @property
    def mantissa(self):
        """Unsigned p-bit mantissa (0 for zero)."""
        return abs(self._man)

    @property
    def exponent(self):
        return self._exp

    def is_zero(self):
        return self._man == 0

    def as_fraction(self):
        if self._exp >= 0:
            return Fraction(self._man << self._exp)
        return Fraction(self._man, 1 << -self._exp)

    def scaled_int(self, frac_bits):
        """round(self * 2**frac_bits) as a Python int (nearest, ties away)."""
        shift = self._exp + frac_bits
        if shift >= 0:
            return self._man << shift
        m = abs(self._man)
        q = (m + (1 << (-shift - 1))) >> -shift
        return -q if self._man < 0 else q

    def log2_abs(self):
        """Float approximation of log2|x| valid over the whole exponent range."""
        if self._man == 0:
            raise DomainError("log of zero")
        m = abs(self._man)
        drop = max(m.bit_length() - 60, 0)
        return math.log2(m >> drop) + drop + self._exp

    def ln_abs(self):
        return self.log2_abs() * math.log(2.0)

    # -- coercion ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ExtendedReal):
            if other._prec != self._prec:
                raise PrecisionMismatchError(
                    f"precision {self._prec} vs {other._prec}")
            return other
        if isinstance(other, (int, float, Fraction)):
            return ExtendedReal(other, self._prec)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        if a._man == 0:
            return b
        if b._man == 0:
            return a
        if a._exp < b._exp:
            a, b = b, a
        d = a._exp - b._exp
        p = a._prec
        if d > p + 3:
            # b lies entirely below the rounding position of a: keep a sticky unit
            m = (a._man << 3) + (1 if b._man > 0 else -1)
            return ExtendedReal._rounded(m, a._exp - 3, p)
        m = (a._man << d) + b._man
        if m == 0:
            return ExtendedReal._raw(0, 0, p)
        return ExtendedReal._rounded(m, b._exp, p)

    __radd__ = __add__

    def __neg__(self):
        return ExtendedReal._raw(-self._man, self._exp, self._prec)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self._man >= 0 else -self

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        if self._man == 0 or b._man == 0:
            return ExtendedReal._raw(0, 0, self._prec)
        return ExtendedReal._rounded(self._man * b._man, self._exp + b._exp, self._prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return _divide(self, b)

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return _divide(b, self)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ExtendedReal(1, self._prec) / (self ** -n)
        result = ExtendedReal(1, self._prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def ldexp(self, n):
        """Exact multiplication by 2**n."""
        if self._man == 0:
            return self
        return ExtendedReal._rounded(self._man, self._exp + n, self._prec)

    def sqrt(self):
        return sqrt(self)

    def exp(self):
        return exp(self)

    # -- comparison ----------------------------------------------------------
    def _cmp(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        if a._man == b._man and a._exp == b._exp:
            return 0
        sa = (a._man > 0) - (a._man < 0)
        sb = (b._man > 0) - (b._man < 0)
        if sa != sb:
            return 1 if sa > sb else -1
        ta = a._exp + abs(a._man).bit_length()
        tb = b._exp + abs(b._man).bit_length()
        if ta != tb:
            mag = 1 if ta > tb else -1
        else:
            d = a._exp - b._exp
            ma, mb = abs(a._man), abs(b._man)
            if d > 0:
                ma <<= d
            else:
                mb <<= -d
            mag = (ma > mb) - (ma < mb)
        return mag * sa

    def __eq__(self, other):
        if isinstance(other, ExtendedReal) and other._prec != self._prec:
            return self.as_fraction() == other.as_fraction()
        if isinstance(other, float) and not math.isfinite(other):
            return False
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        if self._man == 0:
            return 0
        h = abs(self._man) % _HASH_MODULUS * pow(2, self._exp, _HASH_MODULUS) % _HASH_MODULUS
        h = -h if self._man < 0 else h
        return -2 if h == -1 else h

    def __bool__(self):
        return self._man != 0

    def __float__(self):
        if self._man == 0:
            return 0.0
        m = self._man
        drop = max(abs(m).bit_length() - 64, 0)
        try:
            return math.ldexp(float(m >> drop if m > 0 else -((-m) >> drop)), self._exp + drop)
        except OverflowError:
            raise ExponentRangeError("value outside double range") from None

    def __int__(self):
        if self._exp >= 0:
            return self._man << self._exp
        q = abs(self._man) >> -self._exp
        return -q if self._man < 0 else q

    # -- decimal I/O ---------------------------------------------------------
    def to_string(self, digits=None):
        """Scientific notation with ``digits`` significant digits, e.g.
        ``-2.7182818284590452E+0``; rounding is nearest-even in decimal."""
        if digits is None:
            digits = default_digits(self._prec)
        if digits < 1:
            raise ValueError("digits must be positive")
        if self._man == 0:
            return "0." + "0" * (digits - 1) + "E+0" if digits > 1 else "0E+0"
        m = abs(self._man)
        e = self._exp
        e10 = math.floor((m.bit_length() - 1 + e) * _LOG10_2)
        while True:
            s = e10 - digits + 1
            num = m << e if e > 0 else m
            den = 1 << -e if e < 0 else 1
            if s > 0:
                den *= 10 ** s
            else:
                num *= 10 ** -s
            q, r = divmod(num, den)
            if 2 * r > den or (2 * r == den and q & 1):
                q += 1
            if q >= 10 ** digits:
                e10 += 1
                continue
            if q < 10 ** (digits - 1):
                e10 -= 1
                continue
            break
        ds = str(q)
        body = ds[0] + ("." + ds[1:] if digits > 1 else "")
        return ("-" if self._man < 0 else "") + f"{body}E{e10:+d}"

    @classmethod
    def from_string(cls, text, precision=DEFAULT_PRECISION):
        fr = _parse_decimal(text)
        return cls.from_ratio(fr.numerator, fr.denominator, precision)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"ExtendedReal('{self.to_string(min(default_digits(self._prec), 20))}', {self._prec})"

    def __format__(self, spec):
        if not spec:
            return str(self)
        return format(float(self), spec)


def default_digits(prec):
    """Decimal digits that make print/parse an exact round trip."""
    return int(math.ceil(prec * _LOG10_2)) + 2


def _divide(a, b):
    if b._man == 0:
        raise DivisionByZeroError("division by zero")
    p = a._prec
    if a._man == 0:
        return ExtendedReal._raw(0, 0, p)
    neg = (a._man < 0) != (b._man < 0)
    num = abs(a._man) << (p + 2)
    q, r = divmod(num, abs(b._man))
    m, e = _round_man(q, a._exp - b._exp - p - 2, p, sticky=r != 0)
    return ExtendedReal._raw(-m if neg else m, e, p)


def sqrt(a):
    """Correctly rounded square root."""
    if not isinstance(a, ExtendedReal):
        a = ExtendedReal(a)
    if a._man < 0:
        raise DomainError("square root of a negative number")
    if a._man == 0:
        return a
    p = a._prec
    m, e = a._man, a._exp
    s = 2 * p + 4 - m.bit_length()
    if (e - s) & 1:
        s += 1
    big = m << s
    r = math.isqrt(big)
    return ExtendedReal._rounded(r, (e - s) // 2, p, sticky=r * r != big)


# -- constants -------------------------------------------------------------

_const_lock = threading.Lock()
_const_cache = {}


def _atanh_inv_fixed(n, bits):
    """atanh(1/n) * 2**bits, truncated terms; error below (terms) units."""
    total = 0
    power = (1 << bits) // n
    n2 = n * n
    k = 1
    while power:
        total += power // k
        power //= n2
        k += 2
    return total


def _atan_inv_fixed(n, bits):
    total = 0
    power = (1 << bits) // n
    n2 = n * n
    k = 1
    sign = 1
    while power:
        total += sign * (power // k)
        power //= n2
        k += 2
        sign = -sign
    return total


def _fixed_constant(name, bits):
    """Constant * 2**bits with absolute error below 2**-(bits-?) units; the
    truncation of each series term contributes < 1 unit, the tail is bounded
    by the first omitted term, and 24 guard bits absorb both."""
    key = (name, bits)
    with _const_lock:
        hit = _const_cache.get(key)
        if hit is not None:
            return hit
        wb = bits + 24
        if name == "ln2":
            v = 2 * _atanh_inv_fixed(3, wb)
        elif name == "pi":
            v = 16 * _atan_inv_fixed(5, wb) - 4 * _atan_inv_fixed(239, wb)
        else:
            raise KeyError(name)
        v = (v + (1 << 23)) >> 24
        _const_cache[key] = v
        return v


def ln2(precision=DEFAULT_PRECISION):
    bits = precision + 8
    return ExtendedReal._rounded(_fixed_constant("ln2", bits), -bits, precision)


def pi(precision=DEFAULT_PRECISION):
    bits = precision + 8
    return ExtendedReal._rounded(_fixed_constant("pi", bits), -bits, precision)


def exp(a):
    """Exponential by ln2 range reduction, halving, Taylor series and squaring."""
    if not isinstance(a, ExtendedReal):
        a = ExtendedReal(a)
    p = a._prec
    if a._man == 0:
        return ExtendedReal(1, p)
    top = a._exp + abs(a._man).bit_length()
    if top > 42:
        if a._man > 0:
            raise ExponentRangeError("exp overflow")
        raise ExponentRangeError("exp underflow")
    if top < -(p + 8):
        # exp(a) = 1 + a + O(a^2); a is far below half an ulp of 1
        one = ExtendedReal._raw(1 << (p - 1), -(p - 1), p)
        return one + a
    approx = float(a)
    m = round(approx / math.log(2.0))
    if abs(m) > EXPONENT_LIMIT:
        raise ExponentRangeError("exp overflow" if m > 0 else "exp underflow")
    halvings = 8
    w = p + 40 + halvings
    lbits = w + max(abs(m).bit_length(), 1) + 4
    l2 = _fixed_constant("ln2", lbits)
    # r = a - m ln2, in fixed point with w fractional bits
    shift = a._exp + lbits
    big_a = a._man << shift if shift >= 0 else _shift_round(a._man, -shift)
    r = _shift_round(big_a - m * l2, lbits - w + halvings)
    one = 1 << w
    term = one
    total = one
    n = 1
    while term:
        t = term * r
        t = t >> w if t >= 0 else -((-t) >> w)
        term = t // n if t >= 0 else -((-t) // n)
        total += term
        n += 1
    for _ in range(halvings):
        total = (total * total) >> w
    return ExtendedReal._rounded(total, m - w, p)


def _shift_round(x, s):
    """round(x / 2**s) for s >= 0, ties away from zero."""
    if s <= 0:
        return x << -s
    half = 1 << (s - 1)
    return (x + half) >> s if x >= 0 else -((-x + half) >> s)


# -- complex -----------------------------------------------------------------

class ExtendedComplex:
    """Complex number with ExtendedReal parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0, precision=None):
        if precision is None:
            precision = re._prec if isinstance(re, ExtendedReal) else (
                im._prec if isinstance(im, ExtendedReal) else DEFAULT_PRECISION)
        if isinstance(re, complex):
            re, im = re.real, re.imag
        self.re = re if isinstance(re, ExtendedReal) and re._prec == precision else ExtendedReal(re, precision)
        self.im = im if isinstance(im, ExtendedReal) and im._prec == precision else ExtendedReal(im, precision)

    @classmethod
    def _pair(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @property
    def precision(self):
        return self.re._prec

    def _coerce(self, other):
        if isinstance(other, ExtendedComplex):
            return other
        if isinstance(other, (ExtendedReal, int, float, Fraction)):
            zero = ExtendedReal._raw(0, 0, self.re._prec)
            return ExtendedComplex._pair(self.re._coerce(other), zero)
        if isinstance(other, complex):
            return ExtendedComplex(other.real, other.imag, self.re._prec)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return ExtendedComplex._pair(self.re + b.re, self.im + b.im)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return ExtendedComplex._pair(self.re - b.re, self.im - b.im)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b - self

    def __neg__(self):
        return ExtendedComplex._pair(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, ExtendedReal):
            return ExtendedComplex._pair(self.re * other, self.im * other)
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return ExtendedComplex._pair(self.re * b.re - self.im * b.im,
                                     self.re * b.im + self.im * b.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        den = b.abs2()
        if den.is_zero():
            raise DivisionByZeroError("complex division by zero")
        return ExtendedComplex._pair((self.re * b.re + self.im * b.im) / den,
                                     (self.im * b.re - self.re * b.im) / den)

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b / self

    def conjugate(self):
        return ExtendedComplex._pair(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return sqrt(self.abs2())

    def mul_i_power(self, n):
        """Exact multiplication by i**n."""
        n %= 4
        if n == 0:
            return self
        if n == 1:
            return ExtendedComplex._pair(-self.im, self.re)
        if n == 2:
            return ExtendedComplex._pair(-self.re, -self.im)
        return ExtendedComplex._pair(self.im, -self.re)

    def __eq__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self.re == b.re and self.im == b.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExtendedComplex({self.re!r}, {self.im!r})"


# -- arithmetic modes --------------------------------------------------------

class Arithmetic:
    """Scalar factory for one working precision.

    ``Arithmetic(None)`` is the native double mode; ``Arithmetic(bits)`` uses
    ExtendedReal with that many mantissa bits.
    """

    def __init__(self, precision=None):
        if precision is not None and precision < 16:
            raise ValueError("precision below 16 bits is not supported")
        self._bits = precision

    @property
    def is_double(self):
        return self._bits is None

    @property
    def precision(self):
        return 53 if self._bits is None else self._bits

    @property
    def dtype(self):
        return complex if self._bits is None else object

    def __eq__(self, other):
        return isinstance(other, Arithmetic) and other._bits == self._bits

    def __hash__(self):
        return hash(("Arithmetic", self._bits))

    def __repr__(self):
        return "Arithmetic(double)" if self._bits is None else f"Arithmetic({self._bits})"

    def real(self, x):
        if self._bits is None:
            if isinstance(x, str):
                return float(_parse_decimal(x))
            return float(x)
        if isinstance(x, ExtendedReal) and x._prec == self._bits:
            return x
        if isinstance(x, str):
            return ExtendedReal.from_string(x, self._bits)
        return ExtendedReal(x, self._bits)

    def complex(self, re, im=0):
        if self._bits is None:
            return complex(float(re), float(im))
        return ExtendedComplex(self.real(re), self.real(im), self._bits)

    def cplx(self, z):
        """Convert an ExtendedComplex or Python complex to this mode."""
        if self._bits is None:
            return complex(z)
        if isinstance(z, ExtendedComplex):
            if z.precision == self._bits:
                return z
            return ExtendedComplex(z.re, z.im, self._bits)
        z = complex(z)
        return ExtendedComplex(z.real, z.imag, self._bits)

    def zero(self):
        return self.real(0)

    def czero(self):
        return self.complex(0, 0)

    def sqrt(self, x):
        if self._bits is None:
            return math.sqrt(x)
        return sqrt(self.real(x))

    def exp(self, x):
        if self._bits is None:
            return math.exp(x)
        return exp(self.real(x))

    def pi(self):
        return math.pi if self._bits is None else pi(self._bits)

    def ln2(self):
        return math.log(2.0) if self._bits is None else ln2(self._bits)

    def abs2(self, z):
        if self._bits is None:
            return z.real * z.real + z.imag * z.imag
        return z.abs2()

    def floor_level(self):
        """Relative size below which a computed quantity is rounding noise:
        10**(2 - p*log10(2))."""
        if self._bits is None:
            return 10.0 ** (2.0 - 53 * _LOG10_2)
        two = self.real(2)
        return exp(two * ln10(self._bits) - self.real(self._bits) * ln2(self._bits))

    def fmt(self, x, digits=None):
        """Scientific notation string for a real scalar of this mode."""
        if self._bits is None:
            x = ExtendedReal(float(x), 53)
            return x.to_string(digits or 17)
        return self.real(x).to_string(digits)


def ln10(precision=DEFAULT_PRECISION):
    """ln(10) to working precision via ln(10) = 3 ln2 + ln(1.25)."""
    bits = precision + 16
    l2 = _fixed_constant("ln2", bits)
    # ln(5/4) = 2 atanh(1/9)
    l54 = 2 * _atanh_inv_fixed(9, bits + 8) >> 8
    return ExtendedReal._rounded(3 * l2 + l54, -bits, precision)


DOUBLE = Arithmetic(None)


def extended(bits=DEFAULT_PRECISION):
    return Arithmetic(bits)


def log_abs(x):
    """Natural log of |x| as a float for any real scalar of either mode."""
    if isinstance(x, ExtendedReal):
        return x.ln_abs()
    if isinstance(x, Fraction):
        return math.log(abs(x.numerator)) - math.log(x.denominator)
    return math.log(abs(x))


def to_float(x):
    return float(x)
