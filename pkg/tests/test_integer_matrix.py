import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from quotient_lab.domain.models.integer_matrix import (
    cokernel,
    invariant_factors,
    kernel,
    left_kernel,
    normal_form,
    solve_left,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-12, 12), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_normal_form_reconstructs_matrix(rows):
    A = np.array(rows, dtype=object)
    S, D, T, Sinv, Tinv = normal_form(A, return_inverses=True)
    assert (S @ D @ T == A).all()
    assert (S @ Sinv == np.eye(len(rows), dtype=object)).all()
    assert (T @ Tinv == np.eye(len(rows[0]), dtype=object)).all()
    height, width = D.shape
    off_diagonal = [D[i, j] for i in range(height) for j in range(width) if i != j]
    assert all(x == 0 for x in off_diagonal)


@given(small_matrices)
@settings(max_examples=60, deadline=None)
def test_invariant_factors_match_sympy(rows):
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    expected = tuple(
        abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0
    )
    assert invariant_factors(np.array(rows, dtype=object)) == expected


@given(small_matrices)
@settings(max_examples=40, deadline=None)
def test_kernels_are_annihilated(rows):
    A = np.array(rows, dtype=object)
    assert (A @ kernel(A) == 0).all()
    assert (left_kernel(A) @ A == 0).all()
    assert (cokernel(A) @ A == 0).all()


def test_solve_left_finds_integer_solution():
    B = np.array([[2, 0], [0, 3]], dtype=object)
    w = solve_left(B, [4, 9])
    assert list(w @ B) == [4, 9]


def test_solve_left_rejects_non_integer_target():
    B = np.array([[2, 4]], dtype=object)
    assert solve_left(B, [1, 2]) is None


def test_left_kernel_of_empty_matrix():
    assert left_kernel(np.zeros((0, 3), dtype=object)).shape == (0, 0)
