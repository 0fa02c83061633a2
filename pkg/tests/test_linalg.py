"""Exact linear algebra kernel: frozen examples, errors, and algebraic laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ruthvb import linalg
from ruthvb.errors import (DimensionError, NotInvertibleError,
                           NotSurjectiveError, PinningError)
from ruthvb.linalg import (LinearMap, compose, inverse, kernel_basis, rank,
                           right_inverse_on_image, solve)

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def small_matrix(rows, cols):
    return st.lists(fractions, min_size=rows * cols, max_size=rows * cols).map(
        lambda es: LinearMap(rows, cols, tuple(es)))


def test_compose_identity_and_zero():
    m = LinearMap.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert compose(LinearMap.identity(3), m) == m
    assert compose(m, LinearMap.identity(3)) == m
    assert compose(LinearMap.zero(2, 3), m) == LinearMap.zero(2, 3)


def test_compose_hand_multiplication():
    f = LinearMap.from_rows([[1, 1], [0, 1]])
    g = LinearMap.from_rows([[1, 0], [1, 1]])
    assert compose(f, g) == LinearMap.from_rows([[2, 1], [1, 1]])


def test_compose_dimension_mismatch():
    with pytest.raises(DimensionError):
        compose(LinearMap.zero(2, 3), LinearMap.zero(2, 3))


@settings(max_examples=40, deadline=None)
@given(small_matrix(2, 2), small_matrix(2, 3), small_matrix(3, 2))
def test_compose_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_kernel_of_zero_is_standard_basis():
    ker = kernel_basis(LinearMap.zero(2, 2))
    assert ker == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def test_kernel_of_identity_is_empty():
    assert kernel_basis(LinearMap.identity(3)) == ()


def test_kernel_one_relation():
    # documented normalization: entry 1 at the free column
    ker = kernel_basis(LinearMap.from_rows([[1, 1]]))
    assert ker == ((Fraction(-1), Fraction(1)),)


@settings(max_examples=40, deadline=None)
@given(small_matrix(2, 3))
def test_kernel_vectors_annihilate_and_count(f):
    ker = kernel_basis(f)
    assert len(ker) == f.cols - rank(f)
    for v in ker:
        assert all(e == 0 for e in f.apply(v))


def test_right_inverse_identity():
    assert right_inverse_on_image(LinearMap.identity(3)) == LinearMap.identity(3)


def test_right_inverse_leftmost_pivot():
    f = LinearMap.from_rows([[1, 0]])
    assert right_inverse_on_image(f) == LinearMap.from_rows([[1], [0]])


def test_right_inverse_pinned_projection():
    f = LinearMap.from_rows([[1, 0]])  # projection to the first coordinate
    pinned = [((Fraction(1),), (Fraction(1), Fraction(5)))]
    g = right_inverse_on_image(f, pinned)
    assert compose(f, g).is_identity()
    assert g.apply((Fraction(1),)) == (Fraction(1), Fraction(5))


def test_right_inverse_not_surjective():
    with pytest.raises(NotSurjectiveError):
        right_inverse_on_image(LinearMap.zero(1, 2))


def test_right_inverse_bad_pinning():
    f = LinearMap.from_rows([[1, 0]])
    with pytest.raises(PinningError):
        right_inverse_on_image(f, [((Fraction(1),), (Fraction(2), Fraction(0)))])
    # dependent targets with disagreeing preimages
    with pytest.raises(PinningError):
        right_inverse_on_image(f, [
            ((Fraction(1),), (Fraction(1), Fraction(0))),
            ((Fraction(2),), (Fraction(2), Fraction(1))),
        ])


@settings(max_examples=40, deadline=None)
@given(small_matrix(2, 3))
def test_right_inverse_section_property(f):
    if rank(f) < f.rows:
        with pytest.raises(NotSurjectiveError):
            right_inverse_on_image(f)
        return
    assert compose(f, right_inverse_on_image(f)).is_identity()


def test_solve_examples():
    assert solve(LinearMap.identity(2), (Fraction(3), Fraction(4))) == \
        (Fraction(3), Fraction(4))
    assert solve(LinearMap.zero(2, 2), (Fraction(0), Fraction(0))) == \
        (Fraction(0), Fraction(0))
    assert solve(LinearMap.from_rows([[2]]), (Fraction(3),)) == (Fraction(3, 2),)
    assert solve(LinearMap.zero(1, 1), (Fraction(1),)) is None
    with pytest.raises(DimensionError):
        solve(LinearMap.identity(2), (Fraction(1),))


@settings(max_examples=40, deadline=None)
@given(small_matrix(2, 2), st.lists(fractions, min_size=2, max_size=2))
def test_solve_is_a_solution(f, b):
    b = tuple(b)
    x = solve(f, b)
    if x is not None:
        assert f.apply(x) == b


def test_inverse_round_trip():
    f = LinearMap.from_rows([[2, 1], [1, 1]])
    assert compose(f, inverse(f)).is_identity()
    assert compose(inverse(f), f).is_identity()
    with pytest.raises(NotInvertibleError):
        inverse(LinearMap.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(NotInvertibleError):
        inverse(LinearMap.zero(1, 2))


def test_serialization_strings():
    f = LinearMap.from_rows([[Fraction(3, 2), 1], [0, Fraction(-5)]])
    d = linalg.map_to_dict(f)
    assert d["entries"] == ["3/2", "1", "0", "-5"]
    assert linalg.map_from_dict(d) == f


def test_block_helpers():
    a = LinearMap.from_rows([[1, 2], [3, 4]])
    b = LinearMap.from_rows([[5], [6]])
    stacked = linalg.hstack(a, b)
    assert stacked.block(0, 2, 2, 3) == b
    assert linalg.direct_sum(a, LinearMap.identity(1)).entry(2, 2) == 1
