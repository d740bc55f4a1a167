"""Exact scalars: Gaussian rationals and univariate polynomials over them.

Real parts and imaginary parts are :class:`fractions.Fraction` (or plain
``int``, which is a canonical rational with denominator 1).  Nothing in this
module ever produces a float.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction

_RAT = r"-?\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^(?:(?P<real>{_RAT})|(?:(?P<re>{_RAT})(?P<sign>[+-]))?(?P<im>{_RAT}|-)?i)$"
)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(_RAT, text):
        raise ValueError(f"malformed rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def _rational_str(x) -> str:
    return str(Fraction(x))


class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Instances are immutable and hashable; equality with ``int`` and
    ``Fraction`` works the way you'd expect (``GaussianRational(2) == 2``).
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self._re, self._im = re._re, re._im
            return
        self._re = _as_rational(re)
        self._im = _as_rational(im)

    @classmethod
    def _raw(cls, re, im) -> GaussianRational:
        z = object.__new__(cls)
        z._re = re
        z._im = im
        return z

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse the textual form, e.g. ``"3/5"``, ``"-4/5i"``, ``"1+8i"``."""
        s = text.strip().replace(" ", "")
        m = _GAUSS_RE.match(s)
        if m is None:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        if m.group("real") is not None:
            return cls._raw(parse_rational(m.group("real")), Fraction(0))
        im_text = m.group("im")
        if im_text is None:
            im = Fraction(1)
        elif im_text == "-":
            im = Fraction(-1)
        else:
            im = parse_rational(im_text)
        real = Fraction(0)
        if m.group("re") is not None:
            real = parse_rational(m.group("re"))
            if m.group("sign") == "-":
                im = -im
        return cls._raw(real, im)

    @property
    def re(self) -> Fraction:
        return Fraction(self._re)

    @property
    def im(self) -> Fraction:
        return Fraction(self._im)

    def is_real(self) -> bool:
        return not self._im

    def conjugate(self) -> GaussianRational:
        if not self._im:
            return self
        return GaussianRational._raw(self._re, -self._im)

    def norm(self) -> Fraction:
        """Squared modulus ``|z|**2``, always a nonnegative rational."""
        return Fraction(self._re * self._re + self._im * self._im)

    def inverse(self) -> GaussianRational:
        n = self._re * self._re + self._im * self._im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational._raw(Fraction(self._re, 1) / n, Fraction(-self._im, 1) / n)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussianRational._raw(-self._re, -self._im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._re, self._im, o._re, o._im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o._im:
            if not o._re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._raw(
                Fraction(self._re, 1) / o._re, Fraction(self._im, 1) / o._re
            )
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        re_, im_ = self._re, self._im
        if not im_:
            return _rational_str(re_)
        if not re_:
            return f"{_rational_str(im_)}i"
        sign = "+" if im_ > 0 else "-"
        return f"{_rational_str(re_)}{sign}{_rational_str(abs(im_))}i"


Scalar = Union[GaussianRational, int, Fraction]


def _as_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational._raw(x, 0)
    return None


def gauss(x) -> GaussianRational:
    """Coerce ints, Fractions, and GAUSS strings into a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, float) or isinstance(x, complex):
        raise TypeError(f"inexact value {x!r} rejected; use a rational or string")
    return GaussianRational(x)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class UniPoly:
    """Polynomial in a formal real variable ``v`` with Gaussian-rational
    coefficients; ``coeffs[k]`` multiplies ``v**k``.

    Conjugation acts on coefficients only, so ``v`` behaves as a real
    parameter.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [gauss(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[GaussianRational, ...] = tuple(cs)

    @classmethod
    def var(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __call__(self, value):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def conjugate(self) -> UniPoly:
        return UniPoly(c.conjugate() for c in self.coeffs)

    def __add__(self, other):
        o = _poly(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = _poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _poly(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _poly(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UniPoly):
            if other.degree != 0:
                raise TypeError("only division by constants is supported")
            other = other.coeffs[0]
        c = gauss(other)
        return UniPoly(x / c for x in self.coeffs)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = UniPoly((1,))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = _poly(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeff(0))
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if not c.is_real() and c.re:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                mono = "v" if k == 1 else f"v^{k}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _poly(x):
    if isinstance(x, UniPoly):
        return x
    c = _coerce(x)
    if c is None:
        return None
    return UniPoly((c,))


def as_gauss_list(values: Sequence) -> list[GaussianRational]:
    return [gauss(v) for v in values]
