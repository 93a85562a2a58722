"""Exact Gaussian-rational scalars and the exact/float mode discipline.

Every coefficient in the engine lives in one of two scalar fields:

* ``exact``  -- Gaussian rationals, a pair of arbitrary-precision
  ``Fraction`` values for the real and imaginary parts.  All acceptance
  checks run here, so "equal" means equal.
* ``float`` -- plain Python ``complex``, used for large random sweeps and
  for comparing against the dense-matrix oracle.

The two kinds never mix silently.  A ``GaussianRational`` refuses
arithmetic with ``float``/``complex`` operands, so a mode error surfaces at
the first offending operation instead of as a quietly contaminated result.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


_ZERO_FRACTION = Fraction(0)


class GaussianRational:
    """A complex number with exact rational real and imaginary parts.

    Denominators are kept positive and fractions in lowest terms (the
    ``Fraction`` type guarantees both).  Instances are treated as
    immutable values.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else _as_fraction(re)
        self.im = im if type(im) is Fraction else _as_fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        out = object.__new__(cls)
        out.re = re
        out.im = im
        return out

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        if isinstance(other, (float, complex)):
            raise TypeError(
                "exact/float mode mixing: GaussianRational cannot combine "
                f"with {type(other).__name__}"
            )
        return None

    def __add__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational._raw(self.re + other.re, self.im + other.im)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is GaussianRational:
            o = other
        else:
            o = self._coerce(other)
            if o is None:
                return NotImplemented
        # purely real factors dominate; skip the full Gauss product then
        if not self.im:
            if not self.re:
                return self
            return GaussianRational._raw(self.re * o.re, self.re * o.im)
        if not o.im:
            return GaussianRational._raw(self.re * o.re, self.im * o.re)
        return GaussianRational._raw(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        return GaussianRational._raw(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # -- comparison / conversion --------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Inverse of ``str``: accepts "p/q", "p/q i", "a+b i" forms."""
        t = text.replace(" ", "")
        if t.endswith("i"):
            body = t[:-1]
            # split at the last +/- that is not a leading sign
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "+-/":
                    re_part, im_part = body[:k], body[k:]
                    if im_part in ("+", "-"):
                        im_part += "1"
                    return GaussianRational(Fraction(re_part), Fraction(im_part))
            if body in ("", "+", "-"):
                body += "1"
            return GaussianRational(0, Fraction(body))
        return GaussianRational(Fraction(t), 0)


class _ExactField:
    """Constructors and predicates for exact-mode scalars."""

    kind = "exact"

    zero = None  # type: GaussianRational
    one = None  # type: GaussianRational
    i = None  # type: GaussianRational

    def of(self, x):
        """Coerce an int/Fraction/str/GaussianRational into this field."""
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(_as_fraction(x))

    def complex_of(self, re, im=0):
        return GaussianRational(_as_fraction(re), _as_fraction(im))

    def is_zero(self, x, tol: float = 0.0) -> bool:
        return not bool(x)

    def mag(self, x) -> float:
        return abs(complex(x))

    def eq(self, a, b, tol: float = 0.0) -> bool:
        return a == b


class _FloatField:
    """Constructors and predicates for float-mode scalars."""

    kind = "float"

    zero = complex(0.0)
    one = complex(1.0)
    i = complex(0.0, 1.0)

    def of(self, x):
        if isinstance(x, GaussianRational):
            return complex(x)
        if isinstance(x, str):
            return complex(float(Fraction(x)))
        if isinstance(x, Fraction):
            return complex(float(x))
        return complex(x)

    def complex_of(self, re, im=0):
        return complex(self.of(re).real, self.of(im).real)

    def is_zero(self, x, tol: float = 1e-12) -> bool:
        return abs(complex(x)) <= tol

    def mag(self, x) -> float:
        return abs(complex(x))

    def eq(self, a, b, tol: float = 1e-12) -> bool:
        a, b = complex(a), complex(b)
        return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


_ExactField.zero = GaussianRational(0)
_ExactField.one = GaussianRational(1)
_ExactField.i = GaussianRational(0, 1)

EXACT = _ExactField()
FLOAT = _FloatField()


def field_for_mode(mode: str):
    if mode == "exact":
        return EXACT
    if mode == "float":
        return FLOAT
    raise ValueError(f"unknown scalar mode {mode!r}; expected 'exact' or 'float'")
