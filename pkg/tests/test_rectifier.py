import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from conftest import torus_data
from unramtori.errors import InvalidDatumError
from unramtori.lattice import IntMatrix
from unramtori.presets import gl_elliptic, restriction_of_scalars, sl2_norm_one, sl3_split
from unramtori.rectifier import (
    LParameter,
    UnramifiedCharacter,
    descent_check,
    frobenius_nth_power_torus_part,
    parameter_character,
    rectifier_axiom_report,
    rectifier_mu,
    toral_modification_check,
    twisted_sum,
    uniformizer_cocharacter,
)
from unramtori.tits import canonical_lift, coxeter_permutation
from unramtori.verify import random_torsion

HALF = Fraction(1, 2)


def dense_lift_power_sign(n):
    """Top-left entry of (canonical lift of the n-cycle)^n, computed densely."""
    lift = Matrix(canonical_lift(coxeter_permutation(n)).to_rows())
    return int((lift**n)[0, 0])


@pytest.mark.parametrize("n", range(1, 9))
def test_rectifier_value_at_uniformizer(n):
    d = gl_elliptic(n)
    mu = rectifier_mu(d)
    value = mu(uniformizer_cocharacter(d))
    assert value == (HALF if n % 2 == 0 else 0)
    # (-1)^(n-1) as a sign, and it agrees with the dense matrix power
    assert (-1) ** (2 * value) == (-1) ** (n - 1) == dense_lift_power_sign(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_rectifier_is_unramified_character_of_coinvariants(n):
    d = gl_elliptic(n)
    mu = rectifier_mu(d)
    # the coinvariants of an n-cycle are Z, generated by the class of e_1
    assert mu.group.free_rank == 1 and not mu.group.invariant_factors
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        assert mu(e) == mu(uniformizer_cocharacter(d))


def test_rectifier_on_restriction_of_scalars_preset():
    assert rectifier_mu(restriction_of_scalars(4))((1, 0, 0, 0)) == HALF


def test_rectifier_requires_cycle():
    with pytest.raises(InvalidDatumError):
        rectifier_mu(sl2_norm_one())
    with pytest.raises(InvalidDatumError):
        rectifier_mu(sl3_split())


def test_sl2_parameter_under_tits_rule_is_trivial():
    # t + Frob(t) = 1/2 + (-1/2) = 0 for w = 1, and the identity lifts trivially
    p = LParameter(sl2_norm_one(), (HALF,), IntMatrix.identity(1))
    assert frobenius_nth_power_torus_part(p, "tits") == (0,)
    assert parameter_character(p).is_trivial


def test_sl2_parameter_with_declared_lift_power():
    p = LParameter(sl2_norm_one(), (HALF,), IntMatrix.identity(1), lift_power=(HALF,))
    chi = parameter_character(p, "abstract")
    assert chi((1,)) == HALF


def test_gl_parameter_character_is_sum_of_coordinates():
    d = gl_elliptic(3)
    a = Fraction(1, 5)
    p = LParameter(d, (a, 0, 0), IntMatrix.identity(3))
    assert twisted_sum(d, p.t) == (a, a, a)
    chi = parameter_character(p)
    assert chi((1, 2, 0)) == 3 * a
    assert chi((1, 0, 0)) == a


def test_parameter_validation():
    with pytest.raises(InvalidDatumError):
        LParameter(sl2_norm_one(), (HALF, HALF), IntMatrix.identity(1))
    with pytest.raises(InvalidDatumError):
        # not in S_3
        LParameter(gl_elliptic(3), (0, 0, 0), -IntMatrix.identity(3))
    with pytest.raises(ValueError):
        parameter_character(LParameter(sl2_norm_one(), (0,), IntMatrix.identity(1)), "nonsense")


def test_unramified_character_needs_fixed_functional():
    with pytest.raises(InvalidDatumError):
        UnramifiedCharacter.from_functional(gl_elliptic(2), (HALF, 0))
    chi = UnramifiedCharacter.from_functional(gl_elliptic(2), (HALF, HALF))
    assert chi((1, 0)) == HALF and chi((1, 1)) == 0
    assert (chi + chi.inverse()).is_trivial


def test_descent_on_norm_one_torus():
    d = sl2_norm_one()
    assert descent_check(UnramifiedCharacter.trivial(d), d)
    # the nontrivial character of Z/2 does not kill H^-1 = Z/2
    assert not descent_check(UnramifiedCharacter.from_functional(d, (HALF,)), d)


@pytest.mark.parametrize("n", range(1, 9))
def test_axiom_report(n):
    report = rectifier_axiom_report(gl_elliptic(n))
    statuses = {c.name: c.status for c in report.clauses}
    assert not report.failed
    assert [k for k, v in statuses.items() if v == "unverified"] == [
        "(2) phi -> L(xi_phi * mu) is the local Langlands correspondence",
        "chi_phi o Nm = xi_phi * mu (identity with the L-packet character)",
    ]


def test_toral_modification_on_sl2():
    p = LParameter(sl2_norm_one(), (0,), IntMatrix.identity(1))
    check = toral_modification_check(p, (Fraction(1, 3),))
    assert check.passed and check.delta == (0,)


@settings(max_examples=100, deadline=None)
@given(torus_data(), st.integers(0, 10**6))
def test_toral_modification_vanishes_on_norm_kernel(d, seed):
    t_prime = random_torsion(random.Random(seed), d.rank)
    p = LParameter(d, (0,) * d.rank, IntMatrix.identity(d.rank))
    assert toral_modification_check(p, t_prime).passed


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_twisting_parameter_changes_character_by_twisted_sum(n, seed):
    d = gl_elliptic(n)
    rng = random.Random(seed)
    t, t_prime = random_torsion(rng, n), random_torsion(rng, n)
    base = LParameter(d, t, d.f0)
    moved = LParameter(d, tuple(a + b for a, b in zip(t, t_prime)), d.f0)
    delta = UnramifiedCharacter.from_functional(d, twisted_sum(d, t_prime))
    assert parameter_character(moved) == parameter_character(base) + delta
