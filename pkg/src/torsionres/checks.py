"""Reusable verification runners behind the CLI's sweep and lemma commands.

Each runner returns a ``CheckOutcome`` carrying a pass flag, the worst
residual seen (0.0 in exact mode when everything matches), and one
human-readable line per case; the CLI prints the lines and maps the flag
to its exit code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Dict, List

from .clifford import FrameVector, clifford_of_vector
from .gamma import build_gamma_matrices, anticommutation_residual, verify_representation
from .geometry import (
    Scenario,
    VectorFieldJet,
    VerificationError,
    laplacian_inverse_check,
    random_curvature,
    random_scenario,
    rescaled_dirac_inverse_symbols,
    rescaled_dirac_square_sigma1_pieces,
    rescaled_dirac_square_symbols,
    rescaled_dirac_symbols,
)
from .reference import reference_term_densities, theorem_density
from .scalars import field_for_mode
from .spheres import monomial_integral, monomial_integral_closed_form, sphere_volume
from .symbols import (
    norm_squared_symbol,
    symbol_compose,
    symbols_equal,
)
from .torsion import (
    TERM_NAMES,
    assemble_density,
    lemma33_trace_identity,
    lemma34_contraction,
    term_densities,
)


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    max_residual: float
    cases: int
    failures: int = 0
    lines: List[str] = dc_field(default_factory=list)

    def record(self, ok: bool, line: str, residual: float = 0.0):
        if not ok:
            self.failures += 1
            self.passed = False
        self.max_residual = max(self.max_residual, residual)
        self.lines.append(("PASS " if ok else "FAIL ") + line)


def _new_outcome(name: str) -> CheckOutcome:
    return CheckOutcome(name=name, passed=True, max_residual=0.0, cases=0)


def _density_residual(a, b) -> float:
    return abs(complex(a.value) - complex(b.value))


# ---------------------------------------------------------------------------
# targeted identity checks (the CLI's `lemma` command)
# ---------------------------------------------------------------------------


def check_laplacian_inverse(seed: int = 0, cases_per_dim: int = 10) -> CheckOutcome:
    """Inverse Laplacian symbols in normal coordinates, n in {4, 6}."""
    out = _new_outcome("2.1")
    rng = random.Random(seed)
    for n in (4, 6):
        for k in range(cases_per_dim):
            curv = random_curvature(n, rng)
            try:
                laplacian_inverse_check(curv)
                out.record(True, f"n={n} case {k + 1}: inverse symbols match")
            except VerificationError as exc:
                out.record(False, f"n={n} case {k + 1}: {exc}", residual=1.0)
            out.cases += 1
    return out


def check_square_symbols(seed: int = 0, cases: int = 10) -> CheckOutcome:
    """Squared-operator symbols: composition route against the closed form."""
    out = _new_outcome("2.4")
    rng = random.Random(seed)
    for k in range(cases):
        m = 2 if k % 2 == 0 else 3
        s = random_scenario(m, "exact", rng)
        dirac = rescaled_dirac_symbols(s)
        pieces = rescaled_dirac_square_sigma1_pieces(s)
        closed = rescaled_dirac_square_symbols(s, pieces)
        composed = symbol_compose(dirac, dirac, 1)
        ok2 = symbols_equal(composed.take_degree(2), closed.take_degree(2))
        ok1 = symbols_equal(
            composed.take_degree(1).evaluate_jets_at_origin(),
            closed.take_degree(1).evaluate_jets_at_origin(),
        )
        out.record(ok2 and ok1, f"m={m} case {k + 1}: sigma_2 {ok2}, sigma_1 {ok1}")
        out.cases += 1
    return out


def check_inverse_square_symbols(seed: int = 0, cases: int = 10) -> CheckOutcome:
    """Two-term inversion against its closed form plus the left-inverse law."""
    out = _new_outcome("2.5")
    rng = random.Random(seed)
    for k in range(cases):
        m = 2 if k % 2 == 0 else 3
        s = random_scenario(m, "exact", rng)
        pieces = rescaled_dirac_square_sigma1_pieces(s)
        closed = rescaled_dirac_square_symbols(s, pieces)
        try:
            q2, q3 = rescaled_dirac_inverse_symbols(s, square=closed, pieces=pieces)
        except VerificationError as exc:
            out.record(False, f"m={m} case {k + 1}: {exc}", residual=1.0)
            out.cases += 1
            continue
        li = symbol_compose(q2 + q3, closed, -1)
        one = norm_squared_symbol(s.n, 1, s.field, s.n, 0)
        ok0 = symbols_equal(li.take_degree(0), one)
        okm1 = li.take_degree(-1).evaluate_jets_at_origin().is_zero()
        out.record(ok0 and okm1, f"m={m} case {k + 1}: left-inverse {ok0}/{okm1}")
        out.cases += 1
    return out


def check_trace_identities(seed: int = 0, tuples: int = 50) -> CheckOutcome:
    """2-, 4- and 6-fold spinor trace identities, exact and gamma-matrix."""
    out = _new_outcome("3.3")
    rng = random.Random(seed)
    from .gamma import represent_element
    import numpy as np

    for m in (2, 3):
        n = 2 * m
        fld = field_for_mode("exact")
        gammas = build_gamma_matrices(m)
        worst = 0.0
        ok_all = True
        for _ in range(tuples):
            vectors = [
                FrameVector(
                    n,
                    tuple(
                        fld.of(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
                        for _ in range(n)
                    ),
                )
                for _ in range(6)
            ]
            try:
                for k in (2, 4, 6):
                    value = lemma33_trace_identity(k, vectors[:k], m, fld)
                    prod = clifford_of_vector(vectors[0])
                    for vv in vectors[1:k]:
                        prod = prod * clifford_of_vector(vv)
                    mat = represent_element(prod, gammas)
                    worst = max(worst, abs(np.trace(mat) - complex(value)))
            except VerificationError:
                ok_all = False
        out.record(
            ok_all and worst <= 1e-10,
            f"m={m}: {tuples} tuples, gamma residual {worst:.2e}",
            residual=worst,
        )
        out.cases += tuples
    return out


def check_contraction_identities(seed: int = 0, cases: int = 100) -> CheckOutcome:
    """All fifteen Jacobian contraction identities on random scenarios."""
    out = _new_outcome("3.4")
    rng = random.Random(seed)
    bad = 0
    for k in range(cases):
        s = random_scenario(2 if k % 2 == 0 else 3, "exact", rng)
        for index in range(1, 16):
            try:
                lemma34_contraction(index, s)
            except VerificationError:
                bad += 1
        out.cases += 1
    out.record(bad == 0, f"{cases} scenarios x 15 identities, {bad} failures")
    return out


def check_sphere_integrals(max_total: int = 8) -> CheckOutcome:
    """Recursion against the Gamma closed form, plus the sum rule."""
    out = _new_outcome("sphere")
    import itertools

    worst = 0.0
    checked = 0
    for n in (4, 6):
        vol = sphere_volume(n)
        half = max_total // 2
        for halves in itertools.product(range(half + 1), repeat=n):
            if sum(halves) * 2 > max_total:
                continue
            alpha = tuple(2 * h for h in halves)
            exact = float(monomial_integral(alpha, n)) * vol
            oracle = monomial_integral_closed_form(alpha, n)
            rel = abs(exact - oracle) / max(1e-300, abs(oracle))
            worst = max(worst, rel)
            # sum rule: sum_a I(alpha + 2 e_a) = I(alpha), exactly
            total = Fraction(0)
            for a in range(n):
                bumped = tuple(x + (2 if i == a else 0) for i, x in enumerate(alpha))
                total += monomial_integral(bumped, n)
            if total != monomial_integral(alpha, n):
                out.record(False, f"sum rule broken at {alpha}, n={n}", residual=1.0)
            checked += 1
    out.cases = checked
    out.record(worst <= 1e-12, f"{checked} even moments, worst relative {worst:.2e}", worst)
    return out


def check_gamma_oracle(seed: int = 0, trials: int = 100) -> CheckOutcome:
    """Anticommutation residuals and exact-vs-matrix agreement."""
    out = _new_outcome("gamma")
    for m in (1, 2, 3):
        res = anticommutation_residual(build_gamma_matrices(m))
        out.record(res <= 1e-14, f"m={m}: anticommutation residual {res:.2e}", res)
        rep = verify_representation(m, trials if m < 3 else max(10, trials // 4), seed)
        out.record(
            rep.max_deviation <= 1e-10,
            f"m={m}: representation deviation {rep.max_deviation:.2e}",
            rep.max_deviation,
        )
        out.cases += 1
    return out


LEMMA_CHECKS: Dict[str, Callable[[int], CheckOutcome]] = {
    "2.1": lambda seed: check_laplacian_inverse(seed),
    "2.4": lambda seed: check_square_symbols(seed),
    "2.5": lambda seed: check_inverse_square_symbols(seed),
    "3.3": lambda seed: check_trace_identities(seed),
    "3.4": lambda seed: check_contraction_identities(seed),
    "sphere": lambda seed: check_sphere_integrals(),
    "gamma": lambda seed: check_gamma_oracle(seed),
}


# ---------------------------------------------------------------------------
# scenario invariants (the CLI's `sweep` command)
# ---------------------------------------------------------------------------


def _perturbed_jacobian(s: Scenario, rng: random.Random) -> Scenario:
    """New scenario with the same V value and d|V|^2 but a different Jacobian."""
    n, fld = s.n, s.field
    w = s.V.norm_sq()
    v0 = s.V.value
    rows = []
    for j in range(n):
        raw = [
            fld.of(Fraction(rng.randint(-2, 2), rng.randint(1, 2)))
            if fld.kind == "exact"
            else fld.of(rng.gauss(0.0, 1.0))
            for _ in range(n)
        ]
        # project the perturbation row orthogonal to V so V^T J is preserved
        dotv = raw[0] * v0.components[0]
        for a in range(1, n):
            dotv = dotv + raw[a] * v0.components[a]
        coef = dotv / w
        row = tuple(
            s.V.jacobian[j][a] + raw[a] - coef * v0.components[a] for a in range(n)
        )
        rows.append(row)
    return Scenario(
        m=s.m, mode=s.mode, V=VectorFieldJet(v0, tuple(rows)),
        X=s.X, u=s.u, v=s.v, w=s.w,
    )


def scenario_invariant_suite(s: Scenario, rng: random.Random, tol: float = 0.0) -> CheckOutcome:
    """Every torsion-pipeline invariant on one scenario.

    Oracle equivalence, per-term fidelity against the derived closed
    forms, X-independence, reality, trilinearity, outer-argument symmetry,
    Jacobian reduction, and the scaling law.
    """
    out = _new_outcome("invariants")
    fld = s.field
    is_float = fld.kind == "float"
    eq_tol = tol if is_float else 0.0

    def close(a, b) -> float:
        return abs(complex(a) - complex(b))

    def ok(a, b) -> bool:
        if not is_float:
            return a == b
        return close(a, b) <= tol * max(1.0, abs(complex(a)), abs(complex(b)))

    bd = assemble_density(s, eq_tol)
    r = _density_residual(bd.assembled, bd.composition_oracle)
    out.record(ok(bd.assembled.value, bd.composition_oracle.value),
               f"assembled equals composition oracle (residual {r:.2e})", r)

    ref = reference_term_densities(s)
    worst = 0.0
    good = True
    for name in TERM_NAMES:
        worst = max(worst, _density_residual(bd.term(name), ref[name]))
        good = good and ok(bd.term(name).value, ref[name].value)
    out.record(good, f"per-term densities match derived closed forms (worst {worst:.2e})", worst)

    imag = abs(complex(bd.assembled.value).imag)
    out.record(imag <= (tol if is_float else 0.0), f"assembled density is real ({imag:.2e})", imag)

    other_x = FrameVector(
        s.n,
        tuple(
            fld.of(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            if not is_float
            else fld.of(rng.gauss(0.0, 1.0))
            for _ in range(s.n)
        ),
    )
    s_x = Scenario(m=s.m, mode=s.mode, V=s.V, X=other_x, u=s.u, v=s.v, w=s.w)
    bd_x = assemble_density(s_x, eq_tol)
    r = _density_residual(bd.assembled, bd_x.assembled)
    out.record(ok(bd.assembled.value, bd_x.assembled.value),
               f"assembled density is X-independent (residual {r:.2e})", r)

    # trilinearity in u (assembled is linear in the prefactor argument)
    s_2u = Scenario(m=s.m, mode=s.mode, V=s.V, X=s.X, u=s.u.scale(fld.of(2)), v=s.v, w=s.w)
    bd_2u = assemble_density(s_2u, eq_tol)
    r = close(bd_2u.assembled.value, bd.assembled.value * fld.of(2))
    out.record(ok(bd_2u.assembled.value, bd.assembled.value * fld.of(2)),
               f"density is linear in u (residual {r:.2e})", r)

    s_wu = Scenario(m=s.m, mode=s.mode, V=s.V, X=s.X, u=s.w, v=s.v, w=s.u)
    bd_wu = assemble_density(s_wu, eq_tol)
    r = _density_residual(bd.assembled, bd_wu.assembled)
    sym_ok = ok(bd.assembled.value, bd_wu.assembled.value) and ok(
        theorem_density(s).value, theorem_density(s_wu).value
    )
    out.record(sym_ok, f"outer arguments u<->w may be exchanged (residual {r:.2e})", r)

    s_jac = _perturbed_jacobian(s, rng)
    bd_jac = assemble_density(s_jac, eq_tol)
    r = _density_residual(bd.assembled, bd_jac.assembled)
    out.record(ok(bd.assembled.value, bd_jac.assembled.value),
               f"density depends on the Jacobian only through d|V|^2 (residual {r:.2e})", r)

    lam = Fraction(2) if not is_float else 2.0
    s_scaled = Scenario(
        m=s.m, mode=s.mode,
        V=VectorFieldJet(s.V.value.scale(fld.of(lam)),
                         tuple(tuple(fld.of(lam) * c for c in row) for row in s.V.jacobian)),
        X=s.X, u=s.u, v=s.v, w=s.w,
    )
    factor = fld.one
    for _ in range(4 * s.m - 4):
        factor = factor / fld.of(lam)
    td_scaled = term_densities(s_scaled, eq_tol)
    td_base = bd.terms()
    worst = 0.0
    good = True
    for name in TERM_NAMES:
        expect = td_base[name].value * factor
        worst = max(worst, close(td_scaled[name].value, expect))
        good = good and ok(td_scaled[name].value, expect)
    out.record(good, f"scaling law density(2V) = 2^(-4m+4) density(V) (worst {worst:.2e})", worst)

    out.cases = 1
    return out


def run_sweep(m: int, trials: int, seed: int, mode: str, tol: float = 1e-9) -> CheckOutcome:
    """Random-scenario sweep over the full invariant suite."""
    if m not in (2, 3):
        raise ValueError(f"sweep supports m in {{2,3}}, got {m}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    out = _new_outcome(f"sweep m={m} mode={mode}")
    for t in range(trials):
        s = random_scenario(m, mode, rng)
        sub = scenario_invariant_suite(s, rng, tol)
        out.cases += 1
        out.max_residual = max(out.max_residual, sub.max_residual)
        if not sub.passed:
            out.failures += 1
            out.passed = False
            out.lines.extend(f"  trial {t + 1}: {line}" for line in sub.lines
                             if line.startswith("FAIL"))
    out.lines.append(
        f"{'PASS' if out.passed else 'FAIL'} {out.cases} trials, "
        f"{out.failures} failures, max residual {out.max_residual:.2e}"
    )
    return out
