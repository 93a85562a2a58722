import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionres.clifford import (
    CliffordElement,
    FrameVector,
    clifford_of_vector,
    clifford_product,
    clifford_product_seq,
    clifford_trace,
    grade_project,
)
from torsionres.scalars import EXACT

from conftest import exact_vector, small_rational


def basis(dim, i):
    return CliffordElement.basis(dim, i, EXACT.one)


def test_vector_embedding():
    e1 = clifford_of_vector(exact_vector(1, 0, 0, 0))
    assert e1 == basis(4, 1)
    zero = clifford_of_vector(exact_vector(0, 0, 0, 0))
    assert zero.is_zero()
    v = clifford_of_vector(exact_vector(1, 2, 0, 0))
    assert v.coefficient(0b01) == EXACT.of(1)
    assert v.coefficient(0b10) == EXACT.of(2)


def test_generator_relation():
    e1, e2 = basis(4, 1), basis(4, 2)
    assert e1 * e1 == CliffordElement.scalar(4, EXACT.of(-1))
    assert e1 * e2 == CliffordElement(4, {0b11: EXACT.one})
    assert e2 * e1 == CliffordElement(4, {0b11: EXACT.of(-1)})


def test_vector_square_is_minus_norm():
    u = clifford_of_vector(exact_vector(1, 2, 0, 0))
    assert u * u == CliffordElement.scalar(4, EXACT.of(-5))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        clifford_product(basis(4, 1), basis(6, 1))


def test_trace():
    ident = CliffordElement.scalar(4, EXACT.one)
    assert clifford_trace(ident, 2) == EXACT.of(4)
    assert not bool(clifford_trace(basis(4, 1), 2))
    e1 = basis(4, 1)
    assert clifford_trace(e1 * e1, 2) == EXACT.of(-4)  # -g(e1,e1) tr[id]
    with pytest.raises(ValueError):
        clifford_trace(ident, 3)  # dim != 2m


def test_grade_project():
    e1, e2 = basis(4, 1), basis(4, 2)
    prod = e1 * e2
    assert grade_project(prod, 2) == prod
    assert grade_project(prod, 0).is_zero()
    sq = e1 * e1
    assert grade_project(sq, 0) == CliffordElement.scalar(4, EXACT.of(-1))
    with pytest.raises(ValueError):
        grade_project(prod, 7)


def _random_element(dim, rng, density=0.3):
    terms = {}
    for mask in range(2**dim):
        if rng.random() < density:
            terms[mask] = EXACT.complex_of(small_rational(rng), small_rational(rng))
    return CliffordElement(dim, terms)


def _random_vector(dim, rng):
    return FrameVector(dim, tuple(EXACT.of(small_rational(rng)) for _ in range(dim)))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_anticommutation_of_vectors(seed):
    rng = random.Random(seed)
    dim = rng.choice((4, 6))
    a, b = _random_vector(dim, rng), _random_vector(dim, rng)
    ca, cb = clifford_of_vector(a), clifford_of_vector(b)
    lhs = ca * cb + cb * ca
    rhs = CliffordElement.scalar(dim, EXACT.of(-2) * a.dot(b))
    assert lhs == rhs


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_associativity(seed):
    rng = random.Random(seed)
    dim = 4
    a, b, c = (_random_element(dim, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_trace_cyclicity(seed):
    rng = random.Random(seed)
    a, b = _random_element(4, rng), _random_element(4, rng)
    ta, tb = clifford_trace(a * b, 2), clifford_trace(b * a, 2)
    assert (EXACT.of(0) + ta) == (EXACT.of(0) + tb)


def test_trace_identities_emerge():
    """The 2-, 4- and 6-fold g-pairing trace formulas hold exactly."""
    from torsionres.torsion import trace_pairing_formula

    rng = random.Random(42)
    for m in (2, 3):
        dim = 2 * m
        for _ in range(30):
            vectors = [_random_vector(dim, rng) for _ in range(6)]
            for k in (2, 4, 6):
                prod = clifford_product_seq(
                    [clifford_of_vector(x) for x in vectors[:k]]
                )
                symbolic = EXACT.of(0) + clifford_trace(prod, m)
                formula = trace_pairing_formula(vectors[:k], m, EXACT)
                assert symbolic == formula


def test_trace_identity_values(derived_scenario):
    """Spot values: tr[c(e1)c(e1)] = -4; the 4- and 6-fold repeats."""
    e1 = exact_vector(1, 0, 0, 0)
    from torsionres.torsion import lemma33_trace_identity

    assert lemma33_trace_identity(2, [e1, e1], 2, EXACT) == EXACT.of(-4)
    assert lemma33_trace_identity(4, [e1] * 4, 2, EXACT) == EXACT.of(4)
    assert lemma33_trace_identity(6, [e1] * 6, 2, EXACT) == EXACT.of(-4)
