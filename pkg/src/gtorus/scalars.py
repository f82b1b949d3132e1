"""Scalar fields: complex doubles, real doubles and exact Gaussian rationals.

Values are plain Python objects (``complex``, ``float`` or
:class:`GaussianRational`); a :class:`Field` knows how to coerce, compare
against zero, conjugate and sample them.  Everything else in the package
is written against the ``Field`` interface so the same code path serves
the complex, real and exact computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

DEFAULT_EPS = 1e-9


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class GaussianRational:
    """Exact element of Q(i), stored as two Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(_frac(x), 0)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_or_none(x):
    try:
        return GaussianRational.coerce(x)
    except TypeError:
        return None


@dataclass(frozen=True)
class Field:
    """A scalar realization.

    ``eps`` is the relative zero tolerance used by floating realizations;
    the exact realization ignores it.
    """

    name: str
    exact: bool
    real: bool
    eps: float = DEFAULT_EPS

    def with_eps(self, eps: float) -> Field:
        return Field(self.name, self.exact, self.real, eps)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        if self.exact:
            g = GaussianRational.coerce(x)
            if self.real and g.im != 0:
                raise ValueError(f"non-real value {g} in a real field")
            return g
        if self.real:
            if isinstance(x, GaussianRational):
                if x.im != 0:
                    raise ValueError(f"non-real value {x} in a real field")
                return float(x.re)
            if isinstance(x, complex):
                if x.imag != 0:
                    raise ValueError(f"non-real value {x} in a real field")
                return float(x.real)
            return float(x)
        if isinstance(x, GaussianRational):
            return complex(x)
        return complex(x)

    def abs2(self, x):
        if self.exact:
            return x.abs2()
        if self.real:
            return x * x
        return x.real * x.real + x.imag * x.imag

    def conj(self, x):
        if self.real:
            return x
        return x.conjugate()

    def is_zero(self, x, scale=1.0) -> bool:
        """Zero test; floating fields compare ``|x|`` against ``eps * scale``."""
        if self.exact:
            return x == 0
        return abs(x) <= self.eps * scale

    def to_complex(self, x) -> complex:
        return complex(x)

    def random(self, rng, bound: int = 10):
        """One random scalar: standard (complex) Gaussian or a bounded integer."""
        if self.exact:
            re = int(rng.integers(-bound, bound + 1))
            im = 0 if self.real else int(rng.integers(-bound, bound + 1))
            return GaussianRational(re, im)
        if self.real:
            return float(rng.standard_normal())
        return complex(rng.standard_normal(), rng.standard_normal()) / math.sqrt(2)

    def random_nonzero(self, rng, bound: int = 10):
        while True:
            x = self.random(rng, bound)
            if not self.is_zero(x):
                return x

    def random_unit(self, rng):
        """A random element of the compact torus factor (S^1, or {+1,-1})."""
        if self.real:
            return self.coerce(1 if rng.integers(0, 2) else -1)
        if self.exact:
            # Pythagorean points on the unit circle keep exactness.
            m, n = (int(v) for v in rng.integers(1, 6, size=2))
            r = m * m + n * n
            return GaussianRational(Fraction(m * m - n * n, r), Fraction(2 * m * n, r))
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        return complex(math.cos(theta), math.sin(theta))

    # JSON -----------------------------------------------------------------
    def to_json(self, x):
        if self.exact:
            return [_frac_str(x.re), _frac_str(x.im)]
        c = complex(x)
        return [c.real, c.imag]

    def from_json(self, v):
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ValueError(f"scalar must be [re, im], got {v!r}")
            re, im = v
        else:
            re, im = v, 0
        if self.exact:
            return self.coerce(GaussianRational(_frac(re), _frac(im)))
        return self.coerce(complex(float(re), float(im)))


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


COMPLEX = Field("complex-f64", exact=False, real=False)
REAL = Field("real-f64", exact=False, real=True)
GAUSSIAN = Field("gaussian-rational", exact=True, real=False)
# Real exact arithmetic; used for real-case runs that must be exact.
RATIONAL = Field("rational", exact=True, real=True)

FIELDS = {f.name: f for f in (COMPLEX, REAL, GAUSSIAN, RATIONAL)}


def get_field(name: str, eps: float | None = None) -> Field:
    try:
        f = FIELDS[name]
    except KeyError:
        raise ValueError(f"unknown scalar mode {name!r}; "
                         f"expected one of {sorted(FIELDS)}") from None
    return f.with_eps(eps) if eps is not None else f
