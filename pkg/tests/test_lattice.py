from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import int_matrices
from oracles import determinantal_divisors, sympy_factors
from unramtori.errors import ContainmentError
from unramtori.lattice import (
    IntMatrix,
    cokernel,
    image_basis,
    invariant_factors,
    kernel_basis,
    pair,
    smith_normal_form,
    subquotient,
)

M = IntMatrix.from_rows


def test_snf_worked_example():
    dec = smith_normal_form(M([[2, 4], [6, 8]]))
    assert dec.diagonal == (2, 4)
    assert cokernel(M([[2, 4], [6, 8]])).invariant_factors == (2, 4)


def test_snf_zero_and_one_by_one():
    assert smith_normal_form(M([[0, 0], [0, 0]])).rank == 0
    assert cokernel(M([[0, 0], [0, 0]])).free_rank == 2
    g = cokernel(M([[-4]]))
    assert g.invariant_factors == (4,) and str(g) == "Z/4"


def test_cokernel_of_scalar_matrix():
    g = cokernel(6 * IntMatrix.identity(2))
    assert g.invariant_factors == (6, 6) and g.order == 36
    assert str(g) == "Z/6 x Z/6"


def test_cokernel_of_unimodular_is_trivial():
    g = cokernel(M([[2, 1], [1, 1]]))
    assert g.is_trivial and str(g) == "0" and g.order == 1


def test_group_string_with_free_part():
    assert str(cokernel(M([[2], [0]]))) == "Z/2 x Z"


@settings(max_examples=200, deadline=None)
@given(int_matrices())
def test_snf_contract(a):
    dec = smith_normal_form(a)
    assert dec.U @ a @ dec.V == dec.S
    assert dec.U.is_unimodular() and dec.V.is_unimodular()
    assert dec.U @ dec.U_inv == IntMatrix.identity(a.rows)
    nonzero = [x for x in dec.diagonal if x]
    assert all(x > 0 for x in nonzero)
    assert dec.diagonal[: len(nonzero)] == tuple(nonzero)
    assert all(b % c == 0 for c, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=150, deadline=None)
@given(int_matrices(max_dim=4))
def test_invariant_factors_match_determinantal_divisors(a):
    nonzero = [x for x in smith_normal_form(a).diagonal if x]
    assert nonzero == determinantal_divisors(a.to_rows())


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_dim=5))
def test_invariant_factors_match_sympy(a):
    assert [x for x in smith_normal_form(a).diagonal if x] == sympy_factors(a.to_rows())


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_dim=4, square=True))
def test_cokernel_order_is_abs_det(a):
    det = a.det()
    g = cokernel(a)
    if det:
        assert g.is_finite and g.order == abs(det)
    else:
        assert g.free_rank > 0


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_dim=5))
def test_kernel_basis(a):
    basis = kernel_basis(a)
    assert len(basis) == a.cols - smith_normal_form(a).rank
    for v in basis:
        assert all(x == 0 for x in a @ v)
        first = next(x for x in v if x)
        assert first > 0


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_dim=4), st.data())
def test_project_is_a_homomorphism_killing_the_image(a, data):
    g = cokernel(a)
    for col in a.columns():
        assert g.project(col) == (0,) * g.ngens
    u = tuple(data.draw(st.lists(st.integers(-20, 20), min_size=a.rows, max_size=a.rows)))
    v = tuple(data.draw(st.lists(st.integers(-20, 20), min_size=a.rows, max_size=a.rows)))
    s = tuple(x + y for x, y in zip(u, v))
    assert g.project(s) == g.add(g.project(u), g.project(v))
    assert g.project(g.lift(g.project(u))) == g.project(u)


def test_kernel_of_sum_map():
    (v,) = kernel_basis(M([[1, 1]]))
    assert v == (1, -1)


def test_subquotient_z_mod_2():
    g = subquotient([(1,)], [(-2,)], 1)
    assert g.invariant_factors == (2,) and g.free_rank == 0


def test_subquotient_rejects_vectors_outside_top():
    g = subquotient([(2, 0)], [(4, 0)], 2)
    assert g.project((2, 0)) == (1,)
    assert not g.contains((1, 0))
    with pytest.raises(ContainmentError):
        g.project((1, 0))
    with pytest.raises(ContainmentError):
        g.project((0, 1))


def test_image_basis_spans_column_space():
    basis = image_basis(M([[2, 4], [0, 0]]))
    assert len(basis) == 1 and abs(basis[0][0]) == 2


def test_pair_is_mod_one():
    assert pair((1, 2), (Fraction(1, 2), Fraction(3, 4))) == 0
    assert pair((1, 1), (Fraction(1, 3), Fraction(1, 3))) == Fraction(2, 3)


def test_invariant_factors_drop_units():
    assert invariant_factors(M([[1, 0], [0, 5]])) == (5,)


def test_matrix_algebra_basics():
    a = M([[1, 2], [3, 4]])
    assert a.det() == -2
    assert a.T.to_rows() == [[1, 3], [2, 4]]
    assert a @ (1, 1) == (3, 7)
    assert a ** 0 == IntMatrix.identity(2)
    u = M([[2, 1], [1, 1]])
    assert u @ u.inverse() == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        a.inverse()
