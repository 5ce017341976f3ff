"""Slow, independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors


def determinantal_divisors(rows):
    """d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}."""
    m = Matrix(rows)
    r, c = m.shape
    divisors = [1]
    for k in range(1, min(r, c) + 1):
        g = 0
        for ri in itertools.combinations(range(r), k):
            for ci in itertools.combinations(range(c), k):
                g = math.gcd(g, int(m.extract(list(ri), list(ci)).det()))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def sympy_factors(rows):
    return [abs(int(x)) for x in sympy_invariant_factors(Matrix(rows), domain=ZZ) if x != 0]


def _mod1(v):
    return tuple(Fraction(x) % 1 for x in v)


def _apply(rows, v):
    return tuple(sum(Fraction(a) * x for a, x in zip(row, v)) for row in rows)


def character_functionals(d, q):
    """Characters of Z^r / (q f0 - 1) as rational vectors mod 1, by closure of generators."""
    a = Matrix(d.rank, d.rank, list((q * d.f0 - type(d.f0).identity(d.rank)).entries))
    inv_t = a.inv().T
    gens = [_mod1(Fraction(int(x.p), int(x.q)) for x in inv_t.col(j)) for j in range(d.rank)]
    zero = (Fraction(0),) * d.rank
    seen = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = _mod1(a_ + b for a_, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def relative_weyl(d):
    return [w for w in d.weyl_group if w @ d.f0 == d.f0 @ w]


def act_functional(w, f):
    """(w . chi)(lambda) = chi(w^{-1} lambda), i.e. f |-> (w^{-1})^T f."""
    return _mod1(_apply(w.inverse().T.to_rows(), f))


def admissible_functionals(d, q):
    chars = character_functionals(d, q)
    weyl = [w for w in relative_weyl(d) if w != type(d.f0).identity(d.rank)]
    adm = {f for f in chars if all(act_functional(w, f) != f for w in weyl)}
    return chars, adm


def qt_functionals(d, q):
    chars, adm = admissible_functionals(d, q)
    weyl = relative_weyl(d)
    diffs = [{_mod1(a - b for a, b in zip(chi, act_functional(w, chi))) for w in weyl} for chi in adm]
    return {alpha for alpha in chars if all(alpha in s for s in diffs)}


def functional_of(ft, chi):
    return tuple(ft.evaluate_lattice(chi, tuple(int(i == j) for j in range(ft.datum.rank))) for i in range(ft.datum.rank))
