"""The spectral-torsion density pipeline at the base point.

The density of Wres( c(V)c(u)c(v)c(w)c(V) * T^{-2m+1} ) for the rescaled
operator T = c(V)(D + i c(X))c(V) is the cosphere integral of the trace of
the degree -2m part of sigma(T^{-2m} T).  The composition formula splits
that degree into three groups,

    H1 = pre * sigma_{-2m}(T^{-2m}) sigma_0(T)
    H2 = pre * sigma_{-2m-1}(T^{-2m}) sigma_1(T)          -> L1..L5
    H3 = pre * (-i) sum_j d_xi_j sigma_{-2m}(T^{-2m}) d_x_j sigma_1(T)
                                                           -> K1, K2

with H2 split along the five fragments of sigma_{-2m-1} (the three
first-order fragments of the squared operator, the |V|^{-4} gradient term
of its inverse, and the power-expansion cross sum), and H3 split by which
factor of c(V) the x-derivative hits.

Everything is computed twice: term-by-term through the closed-form power
expansion, and in one stroke through iterated symbol composition (the
generic oracle).  The two must agree exactly in exact mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .clifford import (
    CliffordElement,
    FrameVector,
    clifford_of_vector,
    clifford_product_seq,
    clifford_trace,
)
from .geometry import (
    Scenario,
    VerificationError,
    plain_dirac_symbols,
    rescaled_dirac_square_sigma1_pieces,
    rescaled_dirac_square_symbols,
    rescaled_dirac_symbols,
    rescaled_dirac_inverse_symbols,
)
from .scalars import field_for_mode
from .jets import Jet
from .reference import (
    DensityValue,
    paper_group_densities,
    paper_term_densities,
    reference_term_densities,
    theorem_density,
)
from .spheres import monomial_integral
from .symbols import (
    Symbol,
    inverse_power_symbols,
    norm_squared_symbol,
    symbol_compose,
    symbol_invert_order2,
    symbol_product,
    symbols_equal,
)

TERM_NAMES = ("h1", "l1", "l2", "l3", "l4", "l5", "k1", "k2")


def torsion_prefactor_element(s: Scenario) -> CliffordElement:
    """c(V) c(u) c(v) c(w) c(V) at the base point."""
    if not bool(s.V.norm_sq()):
        raise ValueError("rescaling field V must be nonzero")
    cV = clifford_of_vector(s.V.value)
    return clifford_product_seq(
        [cV, clifford_of_vector(s.u), clifford_of_vector(s.v), clifford_of_vector(s.w), cV]
    )


def trace_integrate(sym: Symbol, prefactor: CliffordElement, m: int, field) -> DensityValue:
    """Trace pre * sym fiberwise and integrate over the unit cosphere.

    Every term must be homogeneous of degree -2m and already evaluated at
    the base point; the result is a rational multiple of 2^m Vol(S^{2m-1}).
    """
    n = 2 * m
    total = field.of(0)
    for (mono, k), jet in sym.terms.items():
        if sum(mono) + 2 * k != -n:
            raise ValueError(
                f"trace_integrate expects pure degree {-n}, found {sum(mono) + 2 * k}"
            )
        coeff = jet.value_at_origin(n)
        if coeff.is_zero():
            continue
        moment = monomial_integral(mono, n)
        if moment == 0:
            continue
        tr = clifford_trace(prefactor * coeff, m)
        if not bool(tr):
            continue
        total = total + tr * field.of(moment)
    return DensityValue(total / field.of(2**m), m)


@dataclass
class PipelineSymbols:
    """All intermediate symbols of one scenario's term-by-term run."""

    dirac: Symbol
    dirac_square: Symbol
    q2: Symbol
    q3: Symbol
    power_top: Symbol  # sigma_{-2m}
    power_sub: Symbol  # sigma_{-2m-1}
    sub_pieces: Dict[str, Symbol]
    k_pieces: Tuple[Symbol, Symbol]


def _power_list(q2: Symbol, m: int, dim: int) -> List[Symbol]:
    powers = [norm_squared_symbol(q2.nvars, q2.max_degree, q2.field, dim, 0)]
    for _ in range(m):
        powers.append(symbol_product(powers[-1], q2))
    return powers


def pipeline_symbols(s: Scenario, tol: float = 0.0) -> PipelineSymbols:
    """Build and cross-check every symbol the per-term pipeline needs.

    The sub-leading power symbol is assembled from its five fragments and
    asserted equal to the closed power-expansion formula; the H3 split is
    asserted to recombine into -i sum_j d_xi(sigma_{-2m}) d_x(sigma_1).
    """
    n, m, fld = s.n, s.m, s.field
    dirac = rescaled_dirac_symbols(s)
    frags = rescaled_dirac_square_sigma1_pieces(s)
    dsq = rescaled_dirac_square_symbols(s, frags)
    q2, q3 = rescaled_dirac_inverse_symbols(s, tol, square=dsq, pieces=frags)

    powers = _power_list(q2, m, n)
    power_top = powers[m]
    power_sub_formula = inverse_power_symbols(q2, q3, m)[1]

    # five fragments of sigma_{-2m-1}
    p2 = dsq.take_degree(2)
    minus_one = fld.of(-1)
    sub_pieces: Dict[str, Symbol] = {}
    head = powers[m - 1].scale(fld.of(m))
    for name, frag in frags.items():
        body = symbol_product(symbol_product(q2, frag), q2).scale(minus_one)
        sub_pieces[name] = symbol_product(head, body)

    grad = Symbol.zero(n, 1, fld)
    for mu in range(1, n + 1):
        grad = grad + symbol_product(p2.partial_xi(mu), q2.partial_x(mu))
    sub_pieces["inverse_gradient"] = symbol_product(
        head, symbol_product(q2, grad).scale(fld.i)
    )

    ksum = Symbol.zero(n, 1, fld)
    dq2 = [q2.partial_x(mu) for mu in range(1, n + 1)]
    for k in range(0, m - 1):
        for mu in range(1, n + 1):
            ksum = ksum + symbol_product(
                symbol_product(powers[m - k - 1].partial_xi(mu), dq2[mu - 1]),
                powers[k],
            )
    sub_pieces["power_cross"] = ksum.scale(fld.of(0) - fld.i)

    recombined = Symbol.zero(n, 1, fld)
    for piece in sub_pieces.values():
        recombined = recombined + piece
    if not symbols_equal(recombined, power_sub_formula, tol):
        raise VerificationError(
            "sub-leading power symbol: fragment sum does not match the "
            "closed power-expansion formula"
        )

    # H3 split by which c(V) factor receives the x-derivative
    cV0 = clifford_of_vector(s.V.value)
    left_terms: Dict[int, Symbol] = {}
    right_terms: Dict[int, Symbol] = {}
    for mu in range(n):
        row = clifford_of_vector(s.V.row(mu))
        lt: Dict[Tuple[Tuple[int, ...], int], Jet] = {}
        rt: Dict[Tuple[Tuple[int, ...], int], Jet] = {}
        if not row.is_zero():
            for j in range(n):
                ej = CliffordElement.basis(n, j + 1, fld.one)
                mono = tuple(1 if i == j else 0 for i in range(n))
                lt[(mono, 0)] = Jet.constant(
                    n, 1, clifford_product_seq([row, ej, cV0]).scale(fld.i)
                )
                rt[(mono, 0)] = Jet.constant(
                    n, 1, clifford_product_seq([cV0, ej, row]).scale(fld.i)
                )
        left_terms[mu] = Symbol(n, 1, fld, lt)
        right_terms[mu] = Symbol(n, 1, fld, rt)

    minus_i = fld.of(0) - fld.i
    k1_sym = Symbol.zero(n, 1, fld)
    k2_sym = Symbol.zero(n, 1, fld)
    check = Symbol.zero(n, 1, fld)
    for mu in range(n):
        dxi_top = power_top.partial_xi(mu + 1)
        k1_sym = k1_sym + symbol_product(dxi_top, left_terms[mu])
        k2_sym = k2_sym + symbol_product(dxi_top, right_terms[mu])
        check = check + symbol_product(dxi_top, dirac.take_degree(1).partial_x(mu + 1))
    k1_sym = k1_sym.scale(minus_i)
    k2_sym = k2_sym.scale(minus_i)
    if not symbols_equal(
        (k1_sym + k2_sym).evaluate_jets_at_origin(),
        check.scale(minus_i).evaluate_jets_at_origin(),
        tol,
    ):
        raise VerificationError("H3 split does not recombine at the base point")

    return PipelineSymbols(
        dirac=dirac,
        dirac_square=dsq,
        q2=q2,
        q3=q3,
        power_top=power_top,
        power_sub=power_sub_formula,
        sub_pieces=sub_pieces,
        k_pieces=(k1_sym, k2_sym),
    )


_SUB_PIECE_TO_TERM = {
    "vector_gradient": "l1",
    "x_field": "l2",
    "norm_gradient": "l3",
    "inverse_gradient": "l4",
    "power_cross": "l5",
}


def term_densities(s: Scenario, tol: float = 0.0) -> Dict[str, DensityValue]:
    """Machine values of h1, l1..l5, k1, k2 for one scenario."""
    n, m, fld = s.n, s.m, s.field
    pipe = pipeline_symbols(s, tol)
    pre = torsion_prefactor_element(s)
    sigma1_at0 = pipe.dirac.take_degree(1).evaluate_jets_at_origin()
    sigma0_at0 = pipe.dirac.take_degree(0).evaluate_jets_at_origin()

    out: Dict[str, DensityValue] = {}
    h1_sym = symbol_product(pipe.power_top.evaluate_jets_at_origin(), sigma0_at0)
    out["h1"] = trace_integrate(h1_sym.take_degree(-n), pre, m, fld)

    for piece_name, term_name in _SUB_PIECE_TO_TERM.items():
        piece = pipe.sub_pieces[piece_name].evaluate_jets_at_origin()
        sym = symbol_product(piece, sigma1_at0).take_degree(-n)
        out[term_name] = trace_integrate(sym, pre, m, fld)

    for name, sym in zip(("k1", "k2"), pipe.k_pieces):
        out[name] = trace_integrate(
            sym.evaluate_jets_at_origin().take_degree(-n), pre, m, fld
        )
    return out


def h1_density(s: Scenario) -> DensityValue:
    return term_densities(s)["h1"]


def h2_density(s: Scenario) -> Tuple[DensityValue, ...]:
    t = term_densities(s)
    return tuple(t[k] for k in ("l1", "l2", "l3", "l4", "l5"))


def h3_density(s: Scenario) -> Tuple[DensityValue, DensityValue]:
    t = term_densities(s)
    return t["k1"], t["k2"]


def composition_oracle_density(s: Scenario, tol: float = 0.0) -> DensityValue:
    """Fully generic route: compose, invert, power up by composition, trace.

    Left factors are evaluated at the base point before each composition;
    they never receive x-derivatives, so nothing downstream needs their
    jets.
    """
    n, m, fld = s.n, s.m, s.field
    dirac = rescaled_dirac_symbols(s)
    dsq = symbol_compose(dirac, dirac, 1)
    q2, q3 = symbol_invert_order2(dsq, n)
    q = q2 + q3
    acc = q
    factors = 1
    while factors < m:
        factors += 1
        acc = symbol_compose(acc.evaluate_jets_at_origin(), q, -2 * factors - 1)
    total = symbol_compose(acc.evaluate_jets_at_origin(), dirac, -n).take_degree(-n)
    pre = torsion_prefactor_element(s)
    return trace_integrate(total.evaluate_jets_at_origin(), pre, m, fld)


def closed_form_density(s: Scenario) -> DensityValue:
    """The printed final closed form, (2m-3)/2 |V|^{-4m+2} (...)."""
    return theorem_density(s)


@dataclass
class TermBreakdown:
    """Per-term densities, their sum, the oracle, and the printed forms."""

    h1: DensityValue
    l1: DensityValue
    l2: DensityValue
    l3: DensityValue
    l4: DensityValue
    l5: DensityValue
    k1: DensityValue
    k2: DensityValue
    assembled: DensityValue
    composition_oracle: DensityValue
    paper_h1: DensityValue
    paper_h2: DensityValue
    paper_h3: DensityValue
    theorem: DensityValue

    def term(self, name: str) -> DensityValue:
        return getattr(self, name)

    def terms(self) -> Dict[str, DensityValue]:
        return {k: getattr(self, k) for k in TERM_NAMES}


def assemble_density(s: Scenario, tol: float = 0.0) -> TermBreakdown:
    """Sum the machine terms, run the generic oracle, and attach the
    printed closed forms for comparison."""
    terms = term_densities(s, tol)
    assembled = terms["h1"]
    for name in TERM_NAMES[1:]:
        assembled = assembled + terms[name]
    oracle = composition_oracle_density(s, tol)
    groups = paper_group_densities(s)
    return TermBreakdown(
        **terms,
        assembled=assembled,
        composition_oracle=oracle,
        paper_h1=groups["h1"],
        paper_h2=groups["h2"],
        paper_h3=groups["h3"],
        theorem=theorem_density(s),
    )


def plain_dirac_torsion_density(
    u: FrameVector, v: FrameVector, w: FrameVector, m: int, mode: str = "exact"
) -> DensityValue:
    """Torsion density of the plain Dirac operator at the base point.

    Runs the same generic composition route with prefactor c(u)c(v)c(w);
    in normal coordinates every contribution vanishes.
    """
    n = 2 * m
    fld = field_for_mode(mode)
    for vec in (u, v, w):
        if vec.dim != n:
            raise ValueError("argument dimension mismatch")
    dirac = plain_dirac_symbols(m, mode)
    dsq = symbol_compose(dirac, dirac, 1)
    q2, q3 = symbol_invert_order2(dsq, n)
    q = q2 + q3
    acc = q
    factors = 1
    while factors < m:
        factors += 1
        acc = symbol_compose(acc.evaluate_jets_at_origin(), q, -2 * factors - 1)
    total = symbol_compose(acc.evaluate_jets_at_origin(), dirac, -n).take_degree(-n)
    pre = clifford_product_seq(
        [clifford_of_vector(u), clifford_of_vector(v), clifford_of_vector(w)]
    )
    return trace_integrate(total.evaluate_jets_at_origin(), pre, m, fld)


# ---------------------------------------------------------------------------
# trace and contraction identities
# ---------------------------------------------------------------------------


def trace_pairing_formula(vectors: Sequence[FrameVector], m: int, field):
    """Closed form for tr[c(X_1)...c(X_k)] via signed perfect pairings.

    Recursion: pair X_1 with each X_j; the cost of walking X_1 up to X_j
    is (-1)^j, and each contraction contributes -g(X_1, X_j).
    """
    k = len(vectors)
    if k % 2 == 1:
        return field.of(0)

    def rec(idx: Tuple[int, ...]):
        if not idx:
            return field.one
        total = field.of(0)
        first = idx[0]
        for pos in range(1, len(idx)):
            rest = idx[1:pos] + idx[pos + 1 :]
            term = vectors[first].dot(vectors[idx[pos]]) * rec(rest)
            # pairing across an even gap flips sign: net factor -(-1)^{pos+1}
            if pos % 2 == 1:
                total = total - term
            else:
                total = total + term
        return total

    return rec(tuple(range(k))) * field.of(2**m)


def lemma33_trace_identity(k: int, vectors: Sequence[FrameVector], m: int, field):
    """Evaluate tr of a k-fold Clifford product both symbolically and by
    the pairing formula, assert equality, and return the value."""
    if k not in (2, 4, 6):
        raise ValueError(f"trace identity defined for k in {{2,4,6}}, got {k}")
    if len(vectors) != k:
        raise ValueError(f"expected {k} vectors, got {len(vectors)}")
    product = clifford_product_seq([clifford_of_vector(x) for x in vectors])
    symbolic = clifford_trace(product, m)
    if not bool(symbolic):
        symbolic = field.of(0)
    formula = trace_pairing_formula(vectors, m, field)
    if not field.eq(symbolic, formula, 1e-9 if field.kind == "float" else 0.0):
        raise VerificationError(
            f"trace identity failed for k={k}: {symbolic} vs {formula}"
        )
    return symbolic


# the fifteen pairings of (X1..X6) in canonical order, with signs
_SIX_PAIRINGS = (
    (((0, 5), (1, 4), (2, 3)), -1),
    (((0, 5), (1, 3), (2, 4)), +1),
    (((0, 5), (1, 2), (3, 4)), -1),
    (((0, 4), (1, 5), (2, 3)), +1),
    (((0, 4), (1, 3), (2, 5)), -1),
    (((0, 4), (1, 2), (3, 5)), +1),
    (((0, 3), (1, 5), (2, 4)), -1),
    (((0, 3), (1, 4), (2, 5)), +1),
    (((0, 3), (1, 2), (4, 5)), -1),
    (((0, 2), (1, 5), (3, 4)), +1),
    (((0, 2), (1, 4), (3, 5)), -1),
    (((0, 2), (1, 3), (4, 5)), +1),
    (((0, 1), (2, 5), (3, 4)), -1),
    (((0, 1), (2, 4), (3, 5)), +1),
    (((0, 1), (2, 3), (4, 5)), -1),
)


def lemma34_contraction(index: int, s: Scenario):
    """One of the fifteen Jacobian contractions behind the h1/k-term traces.

    The left side is the brute-force sum over j, alpha of
    J[j][alpha] * (pairing term of tr[c(V)c(u)c(v)c(w)c(e_j)c(e_alpha)]),
    the right side the closed form in gradients of V.  Items 6 and 12 use
    the sign the index sum forces (+g(w, grad_V V) g(u,v) and
    +div V g(V,v) g(u,w)); the corresponding printed variants carry the
    opposite sign.  Returns (lhs, rhs) after asserting equality.
    """
    if not 1 <= index <= 15:
        raise ValueError(f"contraction index {index} out of 1..15")
    n, fld = s.n, s.field
    pairing, sign = _SIX_PAIRINGS[index - 1]

    # slots 0..3 hold V,u,v,w; slot 4 is the basis vector e_j, slot 5 is e_alpha
    vecs = [s.V.value, s.u, s.v, s.w]

    def pair_value(a: int, b: int, j: int, alpha: int):
        if a < 4 and b < 4:
            return vecs[a].dot(vecs[b])
        if a < 4:
            return vecs[a].components[j if b == 4 else alpha]
        if b < 4:
            return vecs[b].components[j if a == 4 else alpha]
        return fld.one if j == alpha else fld.of(0)

    lhs = fld.of(0)
    for j in range(n):
        for alpha in range(n):
            jac = s.V.jacobian[j][alpha]
            if not bool(jac):
                continue
            prod = fld.one if sign > 0 else fld.of(-1)
            for (a, b) in pairing:
                prod = prod * pair_value(a, b, j, alpha)
            lhs = lhs + jac * prod

    u, v, w = s.u, s.v, s.w
    half = fld.of(Fraction(1, 2))
    d = s.V.d_norm_sq()
    grad = s.V.directional
    V0 = s.V.value
    div = s.V.divergence()
    rhs_table = {
        1: lambda: (fld.of(0) - half) * u.dot(d) * v.dot(w),
        2: lambda: half * v.dot(d) * u.dot(w),
        3: lambda: (fld.of(0) - half) * w.dot(d) * u.dot(v),
        4: lambda: grad(V0).dot(u) * v.dot(w),
        5: lambda: fld.of(-1) * grad(V0).dot(v) * u.dot(w),
        6: lambda: grad(V0).dot(w) * u.dot(v),
        7: lambda: fld.of(-1) * V0.dot(w) * grad(v).dot(u),
        8: lambda: V0.dot(w) * grad(u).dot(v),
        9: lambda: fld.of(-1) * div * V0.dot(w) * u.dot(v),
        10: lambda: V0.dot(v) * grad(w).dot(u),
        11: lambda: fld.of(-1) * V0.dot(v) * grad(u).dot(w),
        12: lambda: div * V0.dot(v) * u.dot(w),
        13: lambda: fld.of(-1) * V0.dot(u) * grad(w).dot(v),
        14: lambda: V0.dot(u) * grad(v).dot(w),
        15: lambda: fld.of(-1) * div * V0.dot(u) * v.dot(w),
    }
    rhs = rhs_table[index]()
    if not fld.eq(lhs, rhs, 1e-9 if fld.kind == "float" else 0.0):
        raise VerificationError(
            f"contraction identity {index} failed: {lhs} vs {rhs}"
        )
    return lhs, rhs
