import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, Poly, symbols

from unramtori.errors import EnumerationLimitError
from unramtori.tits import (
    MonomialMatrix,
    all_reduced_words,
    canonical_lift,
    char_poly,
    compose,
    coxeter_permutation,
    cycles,
    enumerate_tits_group,
    format_poly,
    inversions,
    invert,
    kernel_is_t2,
    lift_not_homomorphism_witness,
    lift_word,
    m_alpha,
    reduced_word,
    simple_lift,
    tits_power,
    word_permutation,
)

X = symbols("X")


def sympy_char_poly(m: MonomialMatrix):
    coeffs = Poly(Matrix(m.to_rows()).charpoly(X).as_expr(), X).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def test_simple_lift_block():
    assert simple_lift(1, 2).to_rows() == [[0, 1], [-1, 0]]
    assert (simple_lift(1, 2) @ simple_lift(1, 2)).scalar_value() == -1


def test_simple_lift_squares_to_coroot_at_minus_one():
    for n in range(2, 7):
        for i in range(1, n):
            assert simple_lift(i, n) @ simple_lift(i, n) == m_alpha(i, n)


@pytest.mark.parametrize("n", range(2, 9))
def test_coxeter_lift_power_and_char_poly(n):
    lift = canonical_lift(coxeter_permutation(n))
    assert tits_power(lift, n).scalar_value() == (-1) ** (n - 1)
    expected = [0] * (n + 1)
    expected[0], expected[n] = -((-1) ** (n - 1)), 1
    assert char_poly(lift) == tuple(expected)
    assert sympy_char_poly(lift) == tuple(expected)


def test_n5_power_report():
    lift = canonical_lift(coxeter_permutation(5))
    assert tits_power(lift, 5) == MonomialMatrix.identity(5)
    assert format_poly(char_poly(lift)) == "X^5 - 1"


@pytest.mark.parametrize("n", range(2, 7))
def test_every_n_cycle_lift_power(n):
    for perm in itertools.permutations(range(n)):
        if len(cycles(perm)) == 1:
            assert tits_power(canonical_lift(perm), n).scalar_value() == (-1) ** (n - 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: st.permutations(range(1, n))))
def test_any_coxeter_order_gives_same_power(order):
    n = len(order) + 1
    lift = canonical_lift(coxeter_permutation(n, order))
    assert tits_power(lift, n).scalar_value() == (-1) ** (n - 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_braid_relations(n):
    s = [None] + [simple_lift(i, n) for i in range(1, n)]
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) == 1:
                assert s[i] @ s[j] @ s[i] == s[j] @ s[i] @ s[j]
            elif i != j:
                assert s[i] @ s[j] == s[j] @ s[i]


@pytest.mark.parametrize("n", range(1, 6))
def test_lift_independent_of_reduced_word(n):
    for perm in itertools.permutations(range(n)):
        words = all_reduced_words(perm)
        assert all(len(w) == inversions(perm) for w in words)
        lifts = {lift_word(w, n) for w in words}
        assert len(lifts) == 1
        assert lifts.pop().perm == perm


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.permutations(range(n))))
def test_reduced_word_is_reduced(perm):
    perm = tuple(perm)
    word = reduced_word(perm)
    assert len(word.letters) == inversions(perm)
    assert word_permutation(word.letters, len(perm)) == perm
    assert canonical_lift(perm).perm == perm


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.permutations(range(n))))
def test_char_poly_matches_sympy(perm):
    lift = canonical_lift(tuple(perm))
    assert char_poly(lift) == sympy_char_poly(lift)


@pytest.mark.parametrize("n", range(1, 6))
def test_kernel_is_t2(n):
    report = kernel_is_t2(n)
    assert report.kernel_equals_t2
    assert report.group_order == 2 ** (n - 1) * math.factorial(n)
    assert report.kernel_order == 2 ** (n - 1)


def test_kernel_bound():
    with pytest.raises(EnumerationLimitError):
        kernel_is_t2(7)


def test_tits_group_closed_under_inverse():
    group = set(enumerate_tits_group(4))
    assert all(g.inverse() in group for g in group)


def test_lift_is_not_a_homomorphism():
    assert lift_not_homomorphism_witness(1) is None
    u, v = lift_not_homomorphism_witness(2)
    assert canonical_lift(compose(u, v)) != canonical_lift(u) @ canonical_lift(v)


def test_monomial_arithmetic_matches_dense():
    a = canonical_lift((2, 0, 1))
    b = simple_lift(2, 3)
    dense = Matrix(a.to_rows()) * Matrix(b.to_rows())
    assert (a @ b).to_rows() == dense.tolist()
    assert (a @ a.inverse()) == MonomialMatrix.identity(3)
    assert invert((2, 0, 1)) == (1, 2, 0)


def test_format_poly():
    assert format_poly((1, 0, 1)) == "X^2 + 1"
    assert format_poly((-1, 2, 0, 1)) == "X^3 + 2*X - 1"
    assert format_poly((0,)) == "0"
