"""Exact Gaussian rationals, the scalar field for all structural computations.

A :class:`GaussianRational` is ``re + i*im`` with both parts stored as
``gmpy2.mpq``.  Mixing with ``int``, ``Fraction`` and ``mpq`` is exact;
mixing with ``float``/``complex`` is refused so that rank decisions never
silently pick up rounding.
"""

from fractions import Fraction
import numbers

from gmpy2 import mpq

_MPQ = type(mpq(0))
_ZERO_Q = mpq(0)


def _q(x):
    t = type(x)
    if t is _MPQ:
        return x
    if t is int or t is bool:
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, numbers.Integral):
        return mpq(int(x))
    if isinstance(x, float):
        # float -> exact binary rational, deliberate and lossless
        return mpq(x)
    raise TypeError(f"cannot make an exact rational from {x!r}")


def _new(re, im):
    z = object.__new__(GaussianRational)
    z.re = re
    z.im = im
    return z


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def from_quad(cls, quad):
        """Build from ``[re_num, re_den, im_num, im_den]``."""
        if len(quad) != 4:
            raise ValueError(f"expected a rational quadruple, got {quad!r}")
        rn, rd, inum, idn = (int(v) for v in quad)
        if rd == 0 or idn == 0:
            raise ZeroDivisionError("zero denominator in quadruple")
        return _new(mpq(rn, rd), mpq(inum, idn))

    @classmethod
    def from_complex(cls, z, max_denominator=1 << 20):
        z = complex(z)
        re = Fraction(z.real).limit_denominator(max_denominator)
        im = Fraction(z.imag).limit_denominator(max_denominator)
        return cls(re, im)

    def to_quad(self):
        return [int(self.re.numerator), int(self.re.denominator),
                int(self.im.numerator), int(self.im.denominator)]

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if type(other) is GaussianRational:
            return _new(self.re + other.re, self.im + other.im)
        try:
            return _new(self.re + _q(other), self.im)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is GaussianRational:
            return _new(self.re - other.re, self.im - other.im)
        try:
            return _new(self.re - _q(other), self.im)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return _new(_q(other) - self.re, -self.im)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return _new(a * c, _ZERO_Q)
            return _new(a * c - b * d, a * d + b * c)
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return _new(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            try:
                o = _q(other)
            except TypeError:
                return NotImplemented
            if not o:
                raise ZeroDivisionError("division by zero")
            return _new(self.re / o, self.im / o)
        c, d = other.re, other.im
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return _new((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        try:
            return GaussianRational(other) / self
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return _new(self.re, -self.im)

    def abs2(self):
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self):
        return not self.im

    # comparison / conversion ---------------------------------------------

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return not self.im and self.re == o

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError("non-real Gaussian rational has no float value")
        return float(self.re)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq(x):
    """Coerce ``x`` to a :class:`GaussianRational` (exactly)."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, complex):
        raise TypeError("complex floats are not exact; use GaussianRational.from_complex")
    return GaussianRational(x)


def parse_scalar(value):
    """Parse a JSON scalar: int, rational string, quadruple or ``[re, im]`` pair."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (list, tuple)):
        if len(value) == 4:
            return GaussianRational.from_quad(value)
        if len(value) == 2:
            re, im = value
            return GaussianRational(_json_part(re), _json_part(im))
        raise ValueError(f"bad scalar {value!r}")
    return GaussianRational(_json_part(value))


def _json_part(v):
    if isinstance(v, float):
        return Fraction(repr(v))
    return v
