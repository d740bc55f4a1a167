from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from kgsystems.matrix import ExactMatrix, SingularMatrixError
from kgsystems.scalar import ZERO, UniPoly, gauss
from randgen import gaussians, matrix_pairs, square_matrices


def naive_product(A, B):
    return [
        [sum((A[i, k] * B[k, j] for k in range(A.ncols)), ZERO) for j in range(B.ncols)]
        for i in range(A.nrows)
    ]


@settings(max_examples=200, deadline=None)
@given(matrix_pairs())
def test_product_matches_naive_sum(pair):
    A, B = pair
    assert A @ B == ExactMatrix(naive_product(A, B))


@settings(max_examples=50, deadline=None)
@given(square_matrices())
def test_product_with_polynomial_entries(A):
    # constant UniPoly entries take the generic path; same values either way
    P = A.map(lambda z: UniPoly([z]))
    # an all-zero sum stays a scalar zero
    assert (P @ P).map(lambda f: f.coeff(0) if isinstance(f, UniPoly) else f) == A @ A


@settings(max_examples=100, deadline=None)
@given(square_matrices())
def test_inverse(A):
    try:
        Ainv = A.inverse()
    except SingularMatrixError:
        return
    assert A @ Ainv == ExactMatrix.identity(A.nrows) == Ainv @ A


def test_rectangular_product():
    A = ExactMatrix([["1/2", "i"], [0, 3]])
    B = ExactMatrix([[2, 0, "1/3"], ["-i", 1, 0]])
    assert A @ B == ExactMatrix([[2, "i", "1/6"], ["-3i", 3, 0]])
    with pytest.raises(ValueError):
        B @ A


def test_adjoint_and_transpose():
    A = ExactMatrix([["1+i", 2], [0, "-i"]])
    assert A.H == ExactMatrix([["1-i", 0], [2, "i"]])
    assert A.T.T == A
    assert (A @ A).H == A.H @ A.H
    assert gauss("2i") * A == A * gauss("2i")
