"""Outward-rounded interval arithmetic over exact rationals.

Endpoints are `fractions.Fraction`, so the ring operations (+, -, *, /)
are exact and an enclosure only widens where genuine uncertainty enters:
a transcendental function, or an explicit dyadic rounding step used to
keep denominators small in long accumulations.

The transcendental kernel (exp, nth roots, rational powers, pi, sin,
cos, atan) is self-contained: every routine returns a certified
enclosure computed from integer fixed-point series with explicit
remainder and floor-division slop bounds.  mpmath is used only in the
test suite, as an independent oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rat = Union[Fraction, int]

DEFAULT_BITS = 128


def _floor_div(f: Fraction, shift: int) -> int:
    """floor(f * 2**shift) for signed rational f."""
    if shift >= 0:
        return (f.numerator << shift) // f.denominator
    return f.numerator // (f.denominator << -shift)


def _round_dir(f: Fraction, sig_bits: int, up: bool) -> Fraction:
    """Round to ~sig_bits significant bits toward -inf (up=False) or +inf."""
    if f == 0:
        return f
    mag = abs(f.numerator).bit_length() - f.denominator.bit_length()
    shift = sig_bits - mag
    if up:
        n = -_floor_div(-f, shift)
    else:
        n = _floor_div(f, shift)
    return Fraction(n, 1) / (1 << shift) if shift >= 0 else Fraction(n << -shift)


class IntervalValue:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Rat, hi: Rat | None = None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"invalid interval: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, *a):  # immutable after construction
        raise AttributeError("IntervalValue is immutable")

    # -- queries ----------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "IntervalValue") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntervalValue)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        if self.is_exact:
            return f"IV({self.lo})"
        return f"IV[{float(self.lo)!r}, {float(self.hi)!r}]"

    # -- exact arithmetic --------------------------------------------------

    def __add__(self, other) -> "IntervalValue":
        o = as_interval(other)
        return IntervalValue(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "IntervalValue":
        return IntervalValue(-self.hi, -self.lo)

    def __sub__(self, other) -> "IntervalValue":
        return self + (-as_interval(other))

    def __rsub__(self, other) -> "IntervalValue":
        return as_interval(other) + (-self)

    def __mul__(self, other) -> "IntervalValue":
        o = as_interval(other)
        products = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return IntervalValue(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "IntervalValue":
        o = as_interval(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"division by interval containing 0: {o}")
        inv = IntervalValue(Fraction(1) / o.hi, Fraction(1) / o.lo)
        return self * inv

    def __rtruediv__(self, other) -> "IntervalValue":
        return as_interval(other) / self

    def __abs__(self) -> "IntervalValue":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return IntervalValue(0, max(-self.lo, self.hi))

    def intpow(self, n: int) -> "IntervalValue":
        """Integer power; requires lo >= 0 when n < 0 or n even."""
        if n == 0:
            return IntervalValue(1)
        if n < 0:
            return IntervalValue(1) / self.intpow(-n)
        if self.lo < 0 and n % 2 == 0:
            m = abs(self)
            return IntervalValue(m.lo**n, m.hi**n)
        return IntervalValue(self.lo**n, self.hi**n)

    # -- rounding ----------------------------------------------------------

    def round_out(self, sig_bits: int = DEFAULT_BITS) -> "IntervalValue":
        """Widen outward so each endpoint has ~sig_bits significant bits."""
        return IntervalValue(
            _round_dir(self.lo, sig_bits, up=False),
            _round_dir(self.hi, sig_bits, up=True),
        )

    # -- lattice helpers ----------------------------------------------------

    def hull(self, other: "IntervalValue") -> "IntervalValue":
        return IntervalValue(min(self.lo, other.lo), max(self.hi, other.hi))

    def clip(self, lo: Rat, hi: Rat) -> "IntervalValue":
        return IntervalValue(
            min(max(self.lo, Fraction(lo)), Fraction(hi)),
            min(max(self.hi, Fraction(lo)), Fraction(hi)),
        )


def as_interval(x) -> IntervalValue:
    if isinstance(x, IntervalValue):
        return x
    return IntervalValue(Fraction(x))


def hull_all(items: Iterable[IntervalValue]) -> IntervalValue:
    out = None
    for it in items:
        out = it if out is None else out.hull(it)
    if out is None:
        raise ValueError("hull of empty collection")
    return out


def iv_min(a: IntervalValue, b: IntervalValue) -> IntervalValue:
    return IntervalValue(min(a.lo, b.lo), min(a.hi, b.hi))


def iv_max(a: IntervalValue, b: IntervalValue) -> IntervalValue:
    return IntervalValue(max(a.lo, b.lo), max(a.hi, b.hi))


# ---------------------------------------------------------------------------
# Transcendental kernel
# ---------------------------------------------------------------------------
#
# All series run in integer fixed point at a working scale 2**wbits.
# Floor divisions lose at most 1 ulp per term; the slop counter tracks an
# upper bound on the accumulated loss, and the truncation remainder is
# bounded by the first omitted term times a geometric factor.


def _exp_frac(x: Fraction, bits: int) -> IntervalValue:
    """Certified enclosure of exp(x) for rational x."""
    if x == 0:
        return IntervalValue(1)
    # halve the argument until |r| <= 1/2, square back afterwards
    k = 0
    t = abs(x)
    while t > Fraction(1, 2):
        t /= 2
        k += 1
    r = x / (1 << k) if k else x
    wbits = bits + 4 * k + 32
    scale = 1 << wbits
    num, den = r.numerator, r.denominator
    term = scale  # j = 0
    total = scale
    slop = 0
    j = 0
    while True:
        j += 1
        term = term * num // (den * j)
        total += term
        slop += 1
        if abs(term) <= 2:
            break
    # |r| <= 1/2 so the omitted tail is <= |t_{j+1}| * 2 <= |t_j|
    rem = abs(term) + 2 * slop + 4
    lo = Fraction(total - rem, scale)
    hi = Fraction(total + rem, scale)
    out = IntervalValue(lo, hi)
    for _ in range(k):
        if out.lo < 0:
            raise ArithmeticError("exp enclosure lost positivity")
        out = IntervalValue(out.lo * out.lo, out.hi * out.hi).round_out(wbits)
    return out.round_out(bits)


def exp_iv(x, bits: int = DEFAULT_BITS) -> IntervalValue:
    """Certified enclosure of exp over a rational point or interval."""
    xi = as_interval(x)
    if xi.is_exact:
        return _exp_frac(xi.lo, bits)
    return IntervalValue(_exp_frac(xi.lo, bits).lo, _exp_frac(xi.hi, bits).hi)


def _int_nthroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _root_frac(f: Fraction, k: int, bits: int) -> IntervalValue:
    """Certified enclosure of f**(1/k) for rational f >= 0."""
    if f < 0:
        raise ValueError("root of negative rational")
    if f == 0:
        return IntervalValue(0)
    if f == 1:
        return IntervalValue(1)
    scale = 1 << bits
    big = (f.numerator << (k * bits)) // f.denominator
    r = _int_nthroot(big, k)
    if r**k * f.denominator == f.numerator << (k * bits):
        return IntervalValue(Fraction(r, scale))
    return IntervalValue(Fraction(r, scale), Fraction(r + 1, scale))


def nth_root_iv(x, k: int, bits: int = DEFAULT_BITS) -> IntervalValue:
    """Certified k-th root of a nonnegative point or interval."""
    xi = as_interval(x)
    if xi.lo < 0:
        raise ValueError(f"nth_root_iv of interval with negative lower bound: {xi}")
    if xi.is_exact:
        return _root_frac(xi.lo, k, bits)
    return IntervalValue(
        _root_frac(xi.lo, k, bits).lo, _root_frac(xi.hi, k, bits).hi
    )


def sqrt_iv(x, bits: int = DEFAULT_BITS) -> IntervalValue:
    return nth_root_iv(x, 2, bits)


def pow_iv(x, alpha: Fraction, bits: int = DEFAULT_BITS) -> IntervalValue:
    """Certified x**alpha for x >= 0 and rational alpha.

    Exact when alpha is an integer and x is exact; otherwise goes through
    the certified denominator-th root.  alpha < 0 requires x > 0.
    """
    alpha = Fraction(alpha)
    xi = as_interval(x)
    if xi.lo < 0:
        raise ValueError("pow_iv requires a nonnegative base")
    if alpha == 0:
        return IntervalValue(1)
    if alpha < 0:
        return IntervalValue(1) / pow_iv(xi, -alpha, bits)
    a, b = alpha.numerator, alpha.denominator
    root = xi if b == 1 else nth_root_iv(xi, b, bits + a.bit_length())
    return root.intpow(a).round_out(bits) if b != 1 else root.intpow(a)


# 50 correct decimal digits; checked against mpmath in the test suite.
_PI_LO = Fraction("3.14159265358979323846264338327950288419716939937510")
PI = IntervalValue(_PI_LO, _PI_LO + Fraction(1, 10**50))


def _alt_series(x2: Fraction, first: Fraction, kind: str, bits: int) -> IntervalValue:
    """Sum of an alternating series with term recurrences, fixed point.

    kind 'sin':  t_{j+1} = -t_j * x2 / ((2j+2)(2j+3)), first = x
    kind 'cos':  t_{j+1} = -t_j * x2 / ((2j+1)(2j+2)), first = 1
    kind 'atan': t_{j+1} = -t_j * x2 * (2j+1)/(2j+3),  first = x,  |x| < 1/2

    Terms must be decreasing in magnitude from the start, which holds on
    the argument ranges used by the callers (|x| <= 1.6 for sin/cos after
    j >= 1; |x| <= 1/2 for atan).
    """
    wbits = bits + 32
    scale = 1 << wbits
    n2, d2 = x2.numerator, x2.denominator
    term = _floor_div(first, wbits)
    term_err = 1
    total = term
    slop = term_err
    j = 0
    while True:
        if kind == "sin":
            mul_n, mul_d = n2, d2 * (2 * j + 2) * (2 * j + 3)
        elif kind == "cos":
            mul_n, mul_d = n2, d2 * (2 * j + 1) * (2 * j + 2)
        else:
            mul_n, mul_d = n2 * (2 * j + 1), d2 * (2 * j + 3)
        term = (-term * mul_n) // mul_d
        j += 1
        total += term
        slop += 1
        if abs(term) <= 2:
            break
    rem = abs(term) + 2 * slop + 4
    return IntervalValue(Fraction(total - rem, scale), Fraction(total + rem, scale))


def _sin_frac(x: Fraction, bits: int) -> IntervalValue:
    if x == 0:
        return IntervalValue(0)
    if abs(x) > 2:
        raise ValueError("sin kernel restricted to |x| <= 2")
    return _alt_series(x * x, x, "sin", bits).clip(-1, 1)


def _cos_frac(x: Fraction, bits: int) -> IntervalValue:
    if abs(x) > 2:
        raise ValueError("cos kernel restricted to |x| <= 2")
    return _alt_series(x * x, Fraction(1), "cos", bits).clip(-1, 1)


def sin_iv(x, bits: int = DEFAULT_BITS) -> IntervalValue:
    """Certified sin over an interval within [-1.6, 1.6]."""
    xi = as_interval(x)
    out = _sin_frac(xi.lo, bits).hull(_sin_frac(xi.hi, bits))
    half_pi_lo = PI.lo / 2
    if xi.hi >= half_pi_lo:
        out = IntervalValue(out.lo, Fraction(1))
    if xi.lo <= -half_pi_lo:
        out = IntervalValue(Fraction(-1), out.hi)
    return out


def cos_iv(x, bits: int = DEFAULT_BITS) -> IntervalValue:
    """Certified cos over an interval within [-1.6, 1.6]."""
    xi = as_interval(x)
    out = _cos_frac(xi.lo, bits).hull(_cos_frac(xi.hi, bits))
    if xi.lo <= 0 <= xi.hi:
        out = IntervalValue(out.lo, Fraction(1))
    return out


def _atan_point(f: Fraction, bits: int) -> IntervalValue:
    if f == 0:
        return IntervalValue(0)
    if f < 0:
        return -_atan_point(-f, bits)
    if f > 1:
        return PI / 2 - atan_iv(IntervalValue(1) / IntervalValue(f), bits)
    if f <= Fraction(1, 2):
        return _alt_series(f * f, f, "atan", bits)
    # halve: atan(f) = 2 atan(f / (1 + sqrt(1 + f^2)))
    u = IntervalValue(f) / (IntervalValue(1) + sqrt_iv(1 + f * f, bits + 8))
    return 2 * atan_iv(u, bits)


def atan_iv(x, bits: int = DEFAULT_BITS) -> IntervalValue:
    """Certified arctangent of a point or interval (any real range)."""
    xi = as_interval(x)
    if xi.is_exact:
        return _atan_point(xi.lo, bits)
    return _atan_point(xi.lo, bits).hull(_atan_point(xi.hi, bits))


# ---------------------------------------------------------------------------
# Directed decimal formatting (for deterministic CSV / JSON output)
# ---------------------------------------------------------------------------


def _dec_dir(f: Fraction, sig: int, up: bool) -> str:
    if f == 0:
        return "0"
    neg = f < 0
    a = -f if neg else f
    # e10 = floor(log10(a))
    e10 = len(str(a.numerator)) - len(str(a.denominator))
    if 10**e10 * a.denominator > a.numerator:
        e10 -= 1
    shift = sig - 1 - e10
    scaled = a * Fraction(10) ** shift
    n = scaled.numerator // scaled.denominator
    exact = n * scaled.denominator == scaled.numerator
    round_up_mag = (up and not neg) or (not up and neg)
    if not exact and round_up_mag:
        n += 1
    digits = str(n)
    if len(digits) > sig:  # rounding bumped 999.. to 1000..
        digits = digits[:sig]
        e10 += 1
    mant = digits[0] + "." + digits[1:] if len(digits) > 1 else digits[0]
    sign = "-" if neg else ""
    if -4 <= e10 < sig + 4:
        return sign + _positional(digits, e10)
    return f"{sign}{mant}e{e10}"


def _positional(digits: str, e10: int) -> str:
    if e10 >= len(digits) - 1:
        return digits + "0" * (e10 - len(digits) + 1)
    if e10 >= 0:
        out = digits[: e10 + 1] + "." + digits[e10 + 1 :]
        return out.rstrip("0").rstrip(".") if "." in out else out
    out = "0." + "0" * (-e10 - 1) + digits
    return out.rstrip("0") if "." in out else out


def dec_lo(f: Rat, sig: int = 17) -> str:
    """Decimal string <= f with sig significant digits."""
    return _dec_dir(Fraction(f), sig, up=False)


def dec_hi(f: Rat, sig: int = 17) -> str:
    """Decimal string >= f with sig significant digits."""
    return _dec_dir(Fraction(f), sig, up=True)


def iv_repr(v: IntervalValue, sig: int = 17) -> dict:
    """JSON-friendly certified rendering of an interval."""
    return {"lo": dec_lo(v.lo, sig), "hi": dec_hi(v.hi, sig)}
