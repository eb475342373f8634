from fractions import Fraction

from hypothesis import given, settings, strategies as st

from latclif.linalg import (
    bareiss_rank,
    kernel_basis,
    rank,
    rref,
    scalars_to_gaussian,
)
from latclif.scalars import ONE, ZERO, Scalar

entries = st.builds(
    Scalar,
    st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=3),
    st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=2),
)


@st.composite
def matrices(draw):
    nrows = draw(st.integers(1, 5))
    ncols = draw(st.integers(1, 5))
    return [[draw(entries) for _ in range(ncols)] for _ in range(nrows)]


def test_rref_simple():
    m = [[Scalar(2), Scalar(4)], [Scalar(1), Scalar(2)]]
    reduced, pivots = rref(m)
    assert pivots == [0]
    assert reduced[0] == [ONE, Scalar(2)]


def test_kernel_simple():
    # x + 2y = 0
    basis = kernel_basis([[Scalar(1), Scalar(2)]], 2)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + Scalar(2) * v[1] == ZERO


def test_kernel_of_zero_matrix():
    basis = kernel_basis([[ZERO, ZERO]], 2)
    assert len(basis) == 2


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_annihilate(m):
    ncols = len(m[0])
    for vec in kernel_basis(m, ncols):
        for row in m:
            total = ZERO
            for a, b in zip(row, vec):
                total = total + a * b
            assert total == ZERO


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    ncols = len(m[0])
    assert rank(m) + len(kernel_basis(m, ncols)) == ncols


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_bareiss_agrees_with_rref_rank(m):
    assert bareiss_rank(scalars_to_gaussian(m)) == rank(m)


def test_gaussian_conversion_scales_rows():
    m = [[Scalar(Fraction(1, 2)), Scalar(Fraction(1, 3), Fraction(1, 6))]]
    g = scalars_to_gaussian(m)
    assert g == [((3, 0), (2, 1))]
