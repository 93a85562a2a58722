"""Truncated polynomial jets in the normal coordinates around the base point.

A jet is a polynomial in x_1..x_n of total degree at most ``max_degree``
(0, 1 or 2 in this engine) whose coefficients are Clifford elements;
scalar-valued jets are simply multiples of the empty blade.  Products
truncate beyond the degree cap, and coefficient multiplication goes
through the (noncommutative) Clifford product, so jet factors are never
reordered.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .clifford import CliffordElement

Monomial = Tuple[int, ...]


def _zero_mono(n: int) -> Monomial:
    return (0,) * n


def _mono_degree(mono: Monomial) -> int:
    return sum(mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Jet:
    """Clifford-coefficient polynomial truncated at ``max_degree``."""

    __slots__ = ("nvars", "max_degree", "terms")

    def __init__(self, nvars: int, max_degree: int, terms: Dict[Monomial, CliffordElement] | None = None):
        self.nvars = nvars
        self.max_degree = max_degree
        self.terms: Dict[Monomial, CliffordElement] = {}
        for mono, coeff in (terms or {}).items():
            if _mono_degree(mono) > max_degree or coeff.is_zero():
                continue
            self.terms[mono] = coeff

    # -- constructors ---------------------------------------------------

    @staticmethod
    def constant(nvars: int, max_degree: int, coeff: CliffordElement) -> "Jet":
        return Jet(nvars, max_degree, {_zero_mono(nvars): coeff})

    @staticmethod
    def zero(nvars: int, max_degree: int, dim: int) -> "Jet":
        return Jet(nvars, max_degree, {})

    @staticmethod
    def coordinate(nvars: int, max_degree: int, index: int, one_element: CliffordElement) -> "Jet":
        """The jet x_index (1-based) with the given unit coefficient."""
        mono = tuple(1 if k == index - 1 else 0 for k in range(nvars))
        return Jet(nvars, max_degree, {mono: one_element})

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Jet"):
        if self.nvars != other.nvars or self.max_degree != other.max_degree:
            raise ValueError(
                "jet mismatch: "
                f"({self.nvars} vars, deg {self.max_degree}) vs "
                f"({other.nvars} vars, deg {other.max_degree})"
            )

    def __add__(self, other: "Jet") -> "Jet":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono)
            out[mono] = coeff if s is None else s + coeff
        return Jet(self.nvars, self.max_degree, out)

    def __sub__(self, other: "Jet") -> "Jet":
        return self + (-other)

    def __neg__(self) -> "Jet":
        return Jet(self.nvars, self.max_degree, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Jet") -> "Jet":
        """Truncated product; coefficients multiply in the given order."""
        self._check(other)
        out: Dict[Monomial, CliffordElement] = {}
        cap = self.max_degree
        for ma, ca in self.terms.items():
            da = _mono_degree(ma)
            for mb, cb in other.terms.items():
                if da + _mono_degree(mb) > cap:
                    continue
                m = _mono_mul(ma, mb)
                c = ca * cb
                s = out.get(m)
                out[m] = c if s is None else s + c
        return Jet(self.nvars, self.max_degree, out)

    def scale(self, s) -> "Jet":
        return Jet(self.nvars, self.max_degree, {m: c.scale(s) for m, c in self.terms.items()})

    def left_mul_element(self, e: CliffordElement) -> "Jet":
        return Jet(self.nvars, self.max_degree, {m: e * c for m, c in self.terms.items()})

    def right_mul_element(self, e: CliffordElement) -> "Jet":
        return Jet(self.nvars, self.max_degree, {m: c * e for m, c in self.terms.items()})

    # -- calculus ----------------------------------------------------------

    def partial_x(self, mu: int) -> "Jet":
        """Formal d/dx_mu (1-based); the degree of each term drops by one."""
        if not 1 <= mu <= self.nvars:
            raise ValueError(f"variable index {mu} out of range 1..{self.nvars}")
        k = mu - 1
        out: Dict[Monomial, CliffordElement] = {}
        for mono, coeff in self.terms.items():
            e = mono[k]
            if e == 0:
                continue
            m = tuple(x - 1 if i == k else x for i, x in enumerate(mono))
            c = coeff.scale(e) if e != 1 else coeff
            s = out.get(m)
            out[m] = c if s is None else s + c
        return Jet(self.nvars, self.max_degree, out)

    # -- queries -----------------------------------------------------------

    def value_at_origin(self, dim: int) -> CliffordElement:
        return self.terms.get(_zero_mono(self.nvars), CliffordElement.zero(dim))

    def truncate(self, degree: int) -> "Jet":
        return Jet(
            self.nvars,
            degree,
            {m: c for m, c in self.terms.items() if _mono_degree(m) <= degree},
        )

    def with_max_degree(self, degree: int) -> "Jet":
        """Same content, re-tagged with a (possibly larger) degree cap."""
        return Jet(self.nvars, degree, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar_valued(self) -> bool:
        return all(set(c.terms) <= {0} for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.max_degree == other.max_degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.max_degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Jet(0)"
        parts = []
        for mono in sorted(self.terms):
            xs = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(mono)
                if e
            )
            parts.append(f"[{self.terms[mono]!r}]{('*' + xs) if xs else ''}")
        return "Jet(" + " + ".join(parts) + ")"


def jet_multiply(a: Jet, b: Jet) -> Jet:
    return a * b


def jet_partial_x(a: Jet, mu: int) -> Jet:
    return a.partial_x(mu)


def invert_scalar_jet(j: Jet, dim: int, field) -> Jet:
    """Multiplicative inverse of a scalar-valued jet with invertible constant term.

    Writes j = c0 (1 + eps) with eps of positive x-degree and expands the
    geometric series; truncation at ``max_degree`` makes the series finite.
    """
    if not j.is_scalar_valued():
        raise ValueError("jet inversion requires scalar-valued coefficients")
    c0_elem = j.value_at_origin(dim)
    c0 = c0_elem.coefficient(0)
    if c0 is None or not bool(c0):
        raise ValueError("jet inversion requires a nonvanishing constant term")
    inv0 = field.one / c0
    one = Jet.constant(j.nvars, j.max_degree, CliffordElement.scalar(dim, field.one))
    eps = (j - Jet.constant(j.nvars, j.max_degree, c0_elem)).scale(inv0)
    out = one
    power = one
    sign = -1
    for _ in range(j.max_degree):
        power = power * eps
        if power.is_zero():
            break
        out = out + power.scale(field.of(sign))
        sign = -sign
    return out.scale(inv0)
