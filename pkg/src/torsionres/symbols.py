"""Pseudodifferential symbol arithmetic on jet coefficients.

A symbol is a finite sum of terms

    (jet coefficient) * xi^A * |xi|^{2k},        k an integer,

graded by the homogeneity degree |A| + 2k in xi.  Odd powers of |xi| never
arise and are rejected at construction.  The module provides the xi- and
x-derivatives, the full composition formula

    sigma(P Q) = sum_alpha (-i)^{|alpha|} / alpha! *
                 d_xi^alpha sigma(P) * d_x^alpha sigma(Q),

the two-term inversion of a second-order symbol, and the negative-power
symbol expansion together with its iterated-composition oracle.

Equality of symbols is decided exactly: the representation by monomials
and norm powers is not unique (sum_i xi_i^2 = |xi|^2), so a difference is
tested for zero by clearing the lowest norm power within each
(degree, x-monomial, blade) group and comparing polynomial coefficients.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, Iterable, List, Tuple

from .clifford import CliffordElement
from .jets import Jet, invert_scalar_jet

XiMono = Tuple[int, ...]
TermKey = Tuple[XiMono, int]  # (xi exponents, norm power k meaning |xi|^{2k})


def _xi_degree(key: TermKey) -> int:
    return sum(key[0]) + 2 * key[1]


class Symbol:
    """Finite sum of jet-coefficient xi-terms, graded by homogeneity."""

    __slots__ = ("nvars", "max_degree", "field", "terms")

    def __init__(self, nvars: int, max_degree: int, field, terms: Dict[TermKey, Jet] | None = None):
        self.nvars = nvars
        self.max_degree = max_degree  # x-jet truncation order
        self.field = field
        self.terms: Dict[TermKey, Jet] = {}
        for key, jet in (terms or {}).items():
            if jet.is_zero():
                continue
            if len(key[0]) != nvars:
                raise ValueError("xi multi-index length mismatch")
            self.terms[key] = jet
        if field.kind == "float" and self.terms:
            self._prune_float()

    def _prune_float(self, rel: float = 1e-14):
        """Drop rounding residue of exact cancellations (float mode only).

        Coefficients below ``rel`` times the symbol's largest magnitude are
        noise far beneath the 1e-9 comparison scale; keeping them densifies
        every later product.
        """
        mx = 0.0
        for jet in self.terms.values():
            for elem in jet.terms.values():
                m2 = elem.max_abs()
                if m2 > mx:
                    mx = m2
        if mx == 0.0:
            self.terms = {}
            return
        eps = rel * mx
        from .clifford import CliffordElement as _CE

        pruned: Dict[TermKey, Jet] = {}
        for key, jet in self.terms.items():
            kept_jet = {}
            for mono, elem in jet.terms.items():
                kept = {b: c for b, c in elem.terms.items() if abs(complex(c)) > eps}
                if kept:
                    kept_jet[mono] = _CE(elem.dim, kept)
            if kept_jet:
                pruned[key] = Jet(jet.nvars, jet.max_degree, kept_jet)
        self.terms = pruned

    # -- basics -----------------------------------------------------------

    @staticmethod
    def zero(nvars: int, max_degree: int, field) -> "Symbol":
        return Symbol(nvars, max_degree, field, {})

    def _check(self, other: "Symbol"):
        if (
            self.nvars != other.nvars
            or self.max_degree != other.max_degree
            or self.field is not other.field
        ):
            raise ValueError("symbol mismatch (vars, jet degree, or scalar mode)")

    def __add__(self, other: "Symbol") -> "Symbol":
        self._check(other)
        out = dict(self.terms)
        for key, jet in other.terms.items():
            s = out.get(key)
            out[key] = jet if s is None else s + jet
        return Symbol(self.nvars, self.max_degree, self.field, out)

    def __sub__(self, other: "Symbol") -> "Symbol":
        return self + (-other)

    def __neg__(self) -> "Symbol":
        return Symbol(
            self.nvars, self.max_degree, self.field,
            {k: -j for k, j in self.terms.items()},
        )

    def scale(self, s) -> "Symbol":
        return Symbol(
            self.nvars, self.max_degree, self.field,
            {k: j.scale(s) for k, j in self.terms.items()},
        )

    def left_mul_element(self, e: CliffordElement) -> "Symbol":
        return Symbol(
            self.nvars, self.max_degree, self.field,
            {k: j.left_mul_element(e) for k, j in self.terms.items()},
        )

    def degrees(self) -> List[int]:
        return sorted({_xi_degree(k) for k in self.terms})

    def restrict_degrees(self, lo: int, hi: int) -> "Symbol":
        return Symbol(
            self.nvars, self.max_degree, self.field,
            {k: j for k, j in self.terms.items() if lo <= _xi_degree(k) <= hi},
        )

    def take_degree(self, d: int) -> "Symbol":
        return self.restrict_degrees(d, d)

    def evaluate_jets_at_origin(self) -> "Symbol":
        return Symbol(
            self.nvars, self.max_degree, self.field,
            {k: j.truncate(0).with_max_degree(j.max_degree) for k, j in self.terms.items()},
        )

    def truncate_jets(self, degree: int) -> "Symbol":
        return Symbol(
            self.nvars, self.max_degree, self.field,
            {k: j.truncate(degree).with_max_degree(j.max_degree) for k, j in self.terms.items()},
        )

    def is_zero(self, tol: float = 0.0) -> bool:
        return symbol_is_zero(self, tol)

    def __repr__(self):
        degs = self.degrees()
        return f"Symbol(degrees={degs}, {len(self.terms)} terms)"

    # -- calculus -----------------------------------------------------------

    def partial_xi(self, mu: int) -> "Symbol":
        """d/d xi_mu: monomial rule plus d|xi|^{2k} = 2k |xi|^{2k-2} xi_mu."""
        if not 1 <= mu <= self.nvars:
            raise ValueError(f"xi index {mu} out of range 1..{self.nvars}")
        j = mu - 1
        out: Dict[TermKey, Jet] = {}

        def _acc(key: TermKey, jet: Jet):
            if jet.is_zero():
                return
            s = out.get(key)
            out[key] = jet if s is None else s + jet

        for (mono, k), jet in self.terms.items():
            e = mono[j]
            if e:
                m2 = tuple(x - 1 if i == j else x for i, x in enumerate(mono))
                _acc((m2, k), jet.scale(self.field.of(e)))
            if k:
                m2 = tuple(x + 1 if i == j else x for i, x in enumerate(mono))
                _acc((m2, k - 1), jet.scale(self.field.of(2 * k)))
        return Symbol(self.nvars, self.max_degree, self.field, out)

    def partial_x(self, mu: int) -> "Symbol":
        return Symbol(
            self.nvars, self.max_degree, self.field,
            {k: j.partial_x(mu) for k, j in self.terms.items()},
        )


def symbol_partial_xi(s: Symbol, mu: int) -> Symbol:
    return s.partial_xi(mu)


def symbol_partial_x(s: Symbol, mu: int) -> Symbol:
    return s.partial_x(mu)


def symbol_product(a: Symbol, b: Symbol, lowest_degree: int | None = None) -> Symbol:
    """Pointwise product (no derivatives); jet coefficients keep their order."""
    a._check(b)
    out: Dict[TermKey, Jet] = {}
    for (ma, ka), ja in a.terms.items():
        da = sum(ma) + 2 * ka
        for (mb, kb), jb in b.terms.items():
            if lowest_degree is not None and da + sum(mb) + 2 * kb < lowest_degree:
                continue
            key = (tuple(x + y for x, y in zip(ma, mb)), ka + kb)
            jet = ja * jb
            if jet.is_zero():
                continue
            s = out.get(key)
            out[key] = jet if s is None else s + jet
    return Symbol(a.nvars, a.max_degree, a.field, out)


def _alpha_iter(nvars: int, order: int) -> Iterable[Tuple[Tuple[int, ...], int]]:
    """Multi-indices alpha with |alpha| = order, paired with alpha!."""
    if order == 0:
        yield (), 1
        return
    if order == 1:
        for mu in range(1, nvars + 1):
            yield (mu,), 1
        return
    for mus in itertools.combinations_with_replacement(range(1, nvars + 1), order):
        fact = 1
        for _, grp in itertools.groupby(mus):
            fact *= math.factorial(len(list(grp)))
        yield mus, fact


def symbol_compose(p: Symbol, q: Symbol, lowest_degree: int) -> Symbol:
    """Composition formula, truncated below ``lowest_degree``.

    The alpha-sum is finite: each xi-derivative lowers the degree of p by
    one, and x-derivatives annihilate q's jets beyond their truncation
    order.
    """
    p._check(q)
    if not p.terms or not q.terms:
        return Symbol.zero(p.nvars, p.max_degree, p.field)
    hi_p = max(p.degrees())
    hi_q = max(q.degrees())
    # x-derivatives annihilate q beyond its actual jet content
    q_content = max(
        (sum(mono) for jet in q.terms.values() for mono in jet.terms), default=0
    )
    cap = min(p.max_degree, q_content, hi_p + hi_q - lowest_degree)
    total = Symbol.zero(p.nvars, p.max_degree, p.field)
    minus_i = p.field.of(0) - p.field.i
    for order in range(cap + 1):
        if hi_p - order + hi_q < lowest_degree:
            break
        for mus, fact in _alpha_iter(p.nvars, order):
            dq = q
            for mu in mus:
                dq = dq.partial_x(mu)
            if not dq.terms:
                continue
            dp = p
            for mu in mus:
                dp = dp.partial_xi(mu)
            if not dp.terms:
                continue
            piece = symbol_product(dp, dq, lowest_degree)
            if not piece.terms:
                continue
            coeff = p.field.one
            for _ in range(order):
                coeff = coeff * minus_i
            if fact != 1:
                coeff = coeff / p.field.of(fact)
            total = total + piece.scale(coeff)
    return total.restrict_degrees(lowest_degree, 10**6)


def norm_squared_symbol(nvars: int, max_degree: int, field, dim: int, power: int = 1) -> Symbol:
    """|xi|^{2 power} with unit coefficient."""
    jet = Jet.constant(nvars, max_degree, CliffordElement.scalar(dim, field.one))
    return Symbol(nvars, max_degree, field, {((0,) * nvars, power): jet})


def symbol_invert_order2(p: Symbol, dim: int) -> Tuple[Symbol, Symbol]:
    """Two-term inverse of a symbol with degrees {2, 1} (degree 0 ignored).

    Returns (q_{-2}, q_{-3}) with

        q_{-2} = p_2^{-1}
        q_{-3} = -q_{-2} ( p_1 q_{-2} - i sum_j d_xi_j(p_2) d_x_j(q_{-2}) ).

    p_2 may carry its flat part either as jet * |xi|^2 or spread over
    quadratic monomials A_jk(x) xi_j xi_k; invertibility at the base point
    requires A_jk(0) to be a scalar multiple of the identity form.  The
    remainder must vanish at x = 0, which makes the geometric series for
    p_2^{-1} finite in the jet order.
    """
    p2 = p.take_degree(2)
    p1 = p.take_degree(1)
    nvars, max_degree, field = p.nvars, p.max_degree, p.field
    zero_mono = (0,) * nvars
    zero_jet = Jet(nvars, max_degree, {})

    base_jet = zero_jet
    quad: Dict[XiMono, Jet] = {}
    for (mono, k), jet in p2.terms.items():
        if not jet.is_scalar_valued():
            raise ValueError("leading symbol must have Clifford-scalar coefficients")
        if mono == zero_mono and k == 1:
            base_jet = base_jet + jet
        elif k == 0 and sum(mono) == 2:
            quad[mono] = quad.get(mono, zero_jet) + jet
        else:
            raise ValueError(f"unsupported degree-2 term shape {(mono, k)}")

    # split a common scalar lambda * delta_jk off the quadratic monomials;
    # in float mode allow rounding residue relative to the leading scale
    float_mode = field.kind == "float"
    scale = 1.0
    if float_mode:
        for jet in list(quad.values()) + [base_jet]:
            for coeff in jet.terms.values():
                scale = max(scale, coeff.max_abs())
    tol = 1e-9 * scale if float_mode else 0.0
    lam = None
    for j in range(nvars):
        mono = tuple(2 if i == j else 0 for i in range(nvars))
        c0_elem = quad.get(mono, zero_jet).value_at_origin(dim)
        c0 = c0_elem.coefficient(0)
        c0 = field.of(0) if c0 is None else c0
        if lam is None:
            lam = c0
        elif not field.eq(lam, c0, tol):
            raise ValueError("leading quadratic form is not scalar at the base point")
    for mono, jet in quad.items():
        if max(mono) == 2:
            continue
        mixed0 = jet.value_at_origin(dim)
        if not mixed0.is_zero() and mixed0.max_abs() > tol:
            raise ValueError(
                "leading quadratic form has a mixed xi_j xi_k term at the base point"
            )

    from .clifford import CliffordElement as _CE

    lead = base_jet + Jet.constant(nvars, max_degree, _CE.scalar(dim, lam))
    c0 = lead.value_at_origin(dim).coefficient(0)
    if c0 is None or not bool(c0):
        raise ValueError("leading symbol vanishes at the base point; cannot invert")

    # remainder N = p2 - lead * |xi|^2 with representation chosen so that
    # every jet vanishes at the base point (series then terminates)
    n_terms: Dict[TermKey, Jet] = {}
    for mono, jet in quad.items():
        if max(mono) == 2 and sum(mono) == 2:
            j = jet - Jet.constant(nvars, max_degree, _CE.scalar(dim, lam))
        else:
            j = jet
        if not j.is_zero():
            n_terms[(mono, 0)] = j

    inv_jet = invert_scalar_jet(lead, dim, field)
    base_inv = Symbol(nvars, max_degree, field, {(zero_mono, -1): inv_jet})
    if n_terms:
        n_sym = Symbol(nvars, max_degree, field, n_terms)
        # p2 = lead |xi|^2 + N  =>  p2^{-1} = base_inv * sum_k (-N base_inv)^k
        seed = symbol_product(n_sym, base_inv).scale(field.of(-1))
        series = norm_squared_symbol(nvars, max_degree, field, dim, 0)
        power = series
        for _ in range(max_degree):
            power = symbol_product(power, seed)
            if not power.terms:
                break
            series = series + power
        q2 = symbol_product(base_inv, series)
    else:
        q2 = base_inv

    bracket = symbol_product(p1, q2)
    corr = Symbol.zero(nvars, max_degree, field)
    for mu in range(1, nvars + 1):
        corr = corr + symbol_product(p2.partial_xi(mu), q2.partial_x(mu))
    bracket = bracket - corr.scale(field.i)
    q3 = symbol_product(q2, bracket).scale(field.of(-1))
    return q2, q3


def inverse_power_symbols(q2: Symbol, q3: Symbol, m: int) -> Tuple[Symbol, Symbol]:
    """Degrees -2m and -2m-1 of the m-th power of a (q_{-2}+q_{-3}) inverse.

    s_{-2m}   = q_{-2}^m
    s_{-2m-1} = m q_{-2}^{m-1} q_{-3}
                - i sum_{k=0}^{m-2} sum_mu d_xi_mu(q_{-2}^{m-k-1}) d_x_mu(q_{-2}) q_{-2}^k
    """
    if m < 2:
        raise ValueError(f"negative-power expansion needs m >= 2, got {m}")
    field = q2.field
    powers = [norm_squared_symbol(q2.nvars, q2.max_degree, field, _symbol_dim(q2), 0)]
    for _ in range(m):
        powers.append(symbol_product(powers[-1], q2))
    s2m = powers[m]
    s2m1 = symbol_product(powers[m - 1], q3).scale(field.of(m))
    dq2 = [q2.partial_x(mu) for mu in range(1, q2.nvars + 1)]
    ksum = Symbol.zero(q2.nvars, q2.max_degree, field)
    for k in range(0, m - 1):
        for mu in range(1, q2.nvars + 1):
            piece = symbol_product(
                symbol_product(powers[m - k - 1].partial_xi(mu), dq2[mu - 1]),
                powers[k],
            )
            ksum = ksum + piece
    s2m1 = s2m1 - ksum.scale(field.i)
    return s2m, s2m1


def power_by_composition(q2: Symbol, q3: Symbol, m: int) -> Tuple[Symbol, Symbol]:
    """Oracle for ``inverse_power_symbols``: literally compose q with itself.

    The m-th power needs m-1 pairwise compositions; only degrees down to
    -2j-1 are kept after j factors, since anything deeper cannot climb
    back up to the target degrees.
    """
    if m < 2:
        raise ValueError(f"negative-power expansion needs m >= 2, got {m}")
    q = q2 + q3
    acc = q
    factors = 1
    while factors < m:
        factors += 1
        acc = symbol_compose(acc, q, -2 * factors - 1)
    return acc.take_degree(-2 * m), acc.take_degree(-2 * m - 1)


def _symbol_dim(s: Symbol) -> int:
    for jet in s.terms.values():
        for coeff in jet.terms.values():
            return coeff.dim
    return s.nvars


# -- exact equality ---------------------------------------------------------


def _expand_norm_power(nvars: int, p: int) -> Dict[XiMono, int]:
    """Monomial expansion of (sum_i xi_i^2)^p."""
    out: Dict[XiMono, int] = {}
    for combo in itertools.combinations_with_replacement(range(nvars), p):
        counts = [0] * nvars
        for c in combo:
            counts[c] += 1
        coeff = math.factorial(p)
        for c in counts:
            coeff //= math.factorial(c)
        mono = tuple(2 * c for c in counts)
        out[mono] = out.get(mono, 0) + coeff
    return out


def symbol_is_zero(s: Symbol, tol: float = 0.0) -> bool:
    """Exact zero test modulo the relation sum_i xi_i^2 = |xi|^2.

    Terms are grouped by (homogeneity degree, x-monomial, blade); within a
    group the lowest norm power is cleared by expanding (sum xi_i^2)^j and
    the resulting polynomial coefficients must vanish.
    """
    groups: Dict[Tuple[int, Tuple[int, ...], int], Dict[TermKey, object]] = {}
    for (mono, k), jet in s.terms.items():
        deg = sum(mono) + 2 * k
        for xmono, coeff in jet.terms.items():
            for blade, scalar in coeff.terms.items():
                g = groups.setdefault((deg, xmono, blade), {})
                key = (mono, k)
                if key in g:
                    g[key] = g[key] + scalar
                else:
                    g[key] = scalar
    for (_, _, _), parts in groups.items():
        kmin = min(k for (_, k) in parts)
        poly: Dict[XiMono, object] = {}
        for (mono, k), scalar in parts.items():
            for extra, mult in _expand_norm_power(len(mono), k - kmin).items():
                key = tuple(a + b for a, b in zip(mono, extra))
                add = scalar * mult
                if key in poly:
                    poly[key] = poly[key] + add
                else:
                    poly[key] = add
        for val in poly.values():
            if tol == 0.0:
                if bool(val):
                    return False
            else:
                if abs(complex(val)) > tol:
                    return False
    return True


def symbols_equal(a: Symbol, b: Symbol, tol: float = 0.0) -> bool:
    return symbol_is_zero(a - b, tol)
