from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import finite_tori_params
from oracles import admissible_functionals, character_functionals, functional_of
from unramtori.characters import (
    TorusCharacter,
    character_order,
    evaluate,
    finite_torus,
    is_admissible,
    is_minimal_depth_zero,
    is_prime_power,
    partition_characters,
    weyl_act,
)
from unramtori.errors import EnumerationLimitError, InvalidDatumError
from unramtori.lattice import IntMatrix
from unramtori.presets import gl_elliptic, sl2_norm_one, sl3_split

M = IntMatrix.from_rows


def test_sl2_q3_partition():
    ft = finite_torus(sl2_norm_one(), 3)
    assert ft.points.invariant_factors == (4,)
    adm, inadm = partition_characters(ft)
    assert [c.components for c in adm] == [(1,), (3,)]
    assert [c.components for c in inadm] == [(0,), (2,)]


def test_sl2_q5_points():
    ft = finite_torus(sl2_norm_one(), 5)
    assert ft.points.invariant_factors == (6,)
    adm, inadm = partition_characters(ft)
    assert (len(adm), len(inadm)) == (4, 2)


def test_sl3_q7_character_fixed_by_three_cycle():
    ft = finite_torus(sl3_split(), 7)
    assert ft.points.invariant_factors == (6, 6)
    chi = ft.character_from_functional((Fraction(1, 3), Fraction(2, 3)))
    three_cycle = M([[-1, -1], [1, 0]])
    assert weyl_act(ft, three_cycle, chi) == chi
    assert not is_admissible(ft, chi)
    assert ft.evaluate_lattice(chi, (1, 0)) == Fraction(1, 3)
    assert ft.evaluate_lattice(chi, (0, 1)) == Fraction(2, 3)


def test_trivial_character_inadmissible_with_nontrivial_weyl_group():
    ft = finite_torus(sl2_norm_one(), 7)
    assert not is_admissible(ft, TorusCharacter.trivial(ft.moduli))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_gl1_everything_admissible(q):
    ft = finite_torus(gl_elliptic(1), q)
    adm, inadm = partition_characters(ft)
    assert len(adm) == q - 1 and not inadm


def test_character_arithmetic():
    a = TorusCharacter((1, 3), (2, 4))
    assert (a + a).components == (0, 2)
    assert (-a).components == (1, 1)
    assert (a - a).is_trivial
    assert character_order(a) == 4
    assert evaluate(a, (1, 1)) == Fraction(1, 4)
    with pytest.raises(ValueError):
        TorusCharacter((2,), (2,))


def test_prime_powers():
    assert [q for q in range(1, 30) if is_prime_power(q)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]


def test_rejects_non_prime_power():
    with pytest.raises(ValueError):
        finite_torus(sl2_norm_one(), 6)


def test_budget():
    ft = finite_torus(sl3_split(), 13, budget=100)
    with pytest.raises(EnumerationLimitError):
        ft.characters()


def test_functional_must_vanish_on_relations():
    ft = finite_torus(sl2_norm_one(), 3)
    with pytest.raises(InvalidDatumError):
        ft.character_from_functional((Fraction(1, 3),))


@settings(max_examples=60, deadline=None)
@given(finite_tori_params())
def test_character_count_and_partition_match_oracle(params):
    d, q = params
    ft = finite_torus(d, q)
    chars, adm = admissible_functionals(d, q)
    assert ft.order == len(chars) == abs((q * d.f0 - IntMatrix.identity(d.rank)).det())
    ours_adm, ours_in = partition_characters(ft)
    assert {functional_of(ft, c) for c in ours_adm} == adm
    assert {functional_of(ft, c) for c in ours_in} == chars - adm


@settings(max_examples=40, deadline=None)
@given(finite_tori_params())
def test_weyl_action_is_a_group_action_preserving_order(params):
    d, q = params
    ft = finite_torus(d, q)
    chars = ft.characters()
    n = len(ft.weyl)
    index = {w: k for k, w in enumerate(ft.weyl.elements)}
    for chi in chars[:20]:
        assert ft.act(0, chi) == chi
        for k in range(n):
            moved = ft.act(k, chi)
            assert character_order(moved) == character_order(chi)
            assert is_admissible(ft, moved) == is_admissible(ft, chi)
            for j in range(min(n, 6)):
                composite = index[ft.weyl.elements[j] @ ft.weyl.elements[k]]
                assert ft.act(j, moved) == ft.act(composite, chi)


@settings(max_examples=40, deadline=None)
@given(finite_tori_params())
def test_minimal_depth_zero_agrees_with_admissibility(params):
    d, q = params
    ft = finite_torus(d, q)
    for chi in ft.characters()[:30]:
        assert is_minimal_depth_zero(ft, chi) == is_admissible(ft, chi)


def test_character_functionals_oracle_sanity():
    assert len(character_functionals(sl3_split(), 7)) == 36
