"""Brute-force multivariate polynomial engine for certifying induced matrices.

Deliberately slow and simple: ``(Ax)^m`` is expanded by repeated
multiplication of sparse polynomials, and rows are read off by looking up
coefficients.  Nothing here touches :mod:`kgsystems.sympow` or
:mod:`kgsystems.multiindex`.
"""
from __future__ import annotations

from itertools import product
from typing import Dict, Mapping, Tuple

from .matrix import ExactMatrix
from .scalar import ONE, ZERO, GaussianRational, gauss

Exponent = Tuple[int, ...]


class MultivarPoly:
    """Sparse polynomial in ``nvars`` commuting variables over Q(i).

    Supports the ring operators, so it can also be used as a matrix entry.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] = ()):
        self.nvars = nvars
        clean: Dict[Exponent, GaussianRational] = {}
        for e, c in dict(terms).items():
            c = gauss(c)
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def variable(cls, nvars: int, i: int) -> MultivarPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): ONE})

    @classmethod
    def constant(cls, nvars: int, c) -> MultivarPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear_form(cls, coeffs) -> MultivarPoly:
        """``sum_j coeffs[j] * x_j``."""
        n = len(coeffs)
        return cls(n, {tuple(1 if k == j else 0 for k in range(n)): c for j, c in enumerate(coeffs)})

    def coeff(self, e: Exponent) -> GaussianRational:
        return self.terms.get(tuple(e), ZERO)

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def _lift(self, other):
        if isinstance(other, MultivarPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        try:
            return MultivarPoly.constant(self.nvars, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return MultivarPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultivarPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms: Dict[Exponent, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, ZERO) + c1 * c2
        return MultivarPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = gauss(c)
        return MultivarPoly(self.nvars, {e: x / c for e, x in self.terms.items()})

    def __pow__(self, n: int):
        out = MultivarPoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, i: int) -> MultivarPoly:
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return MultivarPoly(self.nvars, terms)

    def conjugate(self) -> MultivarPoly:
        return MultivarPoly(self.nvars, {e: c.conjugate() for e, c in self.terms.items()})

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultivarPoly({self.nvars}, { {e: str(c) for e, c in sorted(self.terms.items(), reverse=True)} })"


def _all_exponents(nvars: int, degree: int):
    # brute force over the box, filtered; independent of any ordering code
    return [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]


def expand_power(A: ExactMatrix, m: Exponent) -> MultivarPoly:
    """Full expansion of ``prod_i ((Ax)_i)^{m_i}``."""
    n = A.nrows
    if not A.is_square() or len(m) != n:
        raise ValueError("need a square matrix matching the multi-index length")
    out = MultivarPoly.constant(n, 1)
    for i, mi in enumerate(m):
        form = MultivarPoly.linear_form(A.row(i))
        for _ in range(mi):
            out = out * form
    return out


def dictionary_order(nvars: int, degree: int) -> list:
    """Degree-N exponents listed as the sorted non-decreasing variable words."""
    words = sorted(
        {tuple(sorted(w)) for w in product(range(nvars), repeat=degree)}
    )
    return [tuple(w.count(i) for i in range(nvars)) for w in words]


def bar_via_oracle(A: ExactMatrix, N: int) -> ExactMatrix:
    labels = dictionary_order(A.nrows, N)
    rows = []
    for m in labels:
        poly = expand_power(A, m)
        rows.append([poly.coeff(n) for n in labels])
    return ExactMatrix(rows)


def gamma_via_vector_field(g: ExactMatrix, N: int) -> ExactMatrix:
    """Apply the vector field ``sum g[k, j] x_j d/dx_k`` to each monomial."""
    n = g.nrows
    labels = dictionary_order(n, N)
    x = [MultivarPoly.variable(n, i) for i in range(n)]
    rows = []
    for m in labels:
        mono = MultivarPoly(n, {m: ONE})
        image = MultivarPoly(n)
        for k in range(n):
            dk = mono.derivative(k)
            if not dk:
                continue
            for j in range(n):
                if g[k, j]:
                    image = image + dk * x[j] * g[k, j]
        rows.append([image.coeff(e) for e in labels])
    return ExactMatrix(rows)


def complete_homogeneous(values, N: int) -> GaussianRational:
    """h_N(values): sum of all degree-N monomials, by brute force."""
    vals = [gauss(v) for v in values]
    total = ZERO
    for e in _all_exponents(len(vals), N):
        term = ONE
        for v, k in zip(vals, e):
            term = term * v**k
        total = total + term
    return total
