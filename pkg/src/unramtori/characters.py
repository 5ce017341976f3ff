"""Depth-zero points of an unramified torus and their characters.

The residue-field points are modelled as X_*(T) / (q f0 - 1) X_*(T).
A character of this finite group is stored by its values on the Smith
generators: component j is an integer modulo the j-th invariant factor
d_j, standing for the value component_j / d_j in Q/Z.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import EnumerationLimitError, InvalidDatumError
from .lattice import FiniteAbelianGroup, IntMatrix, cokernel, pair
from .torus import RelativeWeylGroup, TorusDatum, relative_weyl_group

DEFAULT_CHARACTER_BUDGET = 10**6


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(p for p in itertools.count(2) if q % p == 0 or p * p > q)
    if q % p:
        return True  # q itself is prime
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True, order=True)
class TorusCharacter:
    """Homomorphism from the points group to Q/Z."""

    components: tuple[int, ...]
    moduli: tuple[int, ...] = field(compare=False)

    def __post_init__(self):
        if len(self.components) != len(self.moduli):
            raise ValueError("components and moduli differ in length")
        for c, d in zip(self.components, self.moduli):
            if not 0 <= c < d:
                raise ValueError(f"component {c} outside [0, {d})")

    @classmethod
    def trivial(cls, moduli: Sequence[int]) -> TorusCharacter:
        return cls((0,) * len(moduli), tuple(moduli))

    @property
    def is_trivial(self) -> bool:
        return not any(self.components)

    def __add__(self, other: TorusCharacter) -> TorusCharacter:
        return TorusCharacter(
            tuple((a + b) % d for a, b, d in zip(self.components, other.components, self.moduli)),
            self.moduli,
        )

    def __sub__(self, other: TorusCharacter) -> TorusCharacter:
        return TorusCharacter(
            tuple((a - b) % d for a, b, d in zip(self.components, other.components, self.moduli)),
            self.moduli,
        )

    def __neg__(self) -> TorusCharacter:
        return TorusCharacter(tuple(-a % d for a, d in zip(self.components, self.moduli)), self.moduli)

    def scale(self, k: int) -> TorusCharacter:
        return TorusCharacter(tuple(k * a % d for a, d in zip(self.components, self.moduli)), self.moduli)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{c}/{d}" for c, d in zip(self.components, self.moduli)) + ")"


def evaluate(chi: TorusCharacter, g: Sequence[int]) -> Fraction:
    """chi(g) in [0, 1) for g given in generator coordinates."""
    if len(g) != len(chi.components):
        raise ValueError(f"element of length {len(g)} for a character on {len(chi.components)} generators")
    return sum((Fraction(c * x, d) for c, x, d in zip(chi.components, g, chi.moduli)), Fraction(0)) % 1


def character_order(chi: TorusCharacter) -> int:
    return math.lcm(1, *(d // math.gcd(c, d) for c, d in zip(chi.components, chi.moduli)))


@dataclass(frozen=True)
class FiniteTorus:
    """The finite group of depth-zero points with its relative Weyl group action.

    ``weyl_action[k]`` is the matrix of the automorphism of ``points``
    (in generator coordinates) induced by the k-th relative Weyl element.
    """

    datum: TorusDatum
    q: int
    points: FiniteAbelianGroup
    weyl: RelativeWeylGroup
    weyl_action: tuple[IntMatrix, ...] = field(repr=False)
    budget: int = field(default=DEFAULT_CHARACTER_BUDGET, repr=False)
    # index of the inverse of each Weyl element
    _inverse: tuple[int, ...] = field(default=(), repr=False)
    # action of each Weyl element on character components
    _character_action: tuple[tuple[tuple[int, ...], ...], ...] = field(default=(), repr=False)

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.points.invariant_factors

    @property
    def order(self) -> int:
        return self.points.order

    def characters(self):
        """All characters, sorted by component vector."""
        if self.order > self.budget:
            raise EnumerationLimitError(
                f"{self.order} characters exceed the enumeration budget {self.budget}"
            )
        moduli = self.moduli
        return [TorusCharacter(c, moduli) for c in self.points.elements()]

    def act_on_point(self, w: int, g: Sequence[int]) -> tuple[int, ...]:
        return self.points.reduce(self.weyl_action[w] @ tuple(g))

    def act(self, w: int, chi: TorusCharacter) -> TorusCharacter:
        """(w . chi)(g) = chi(w^{-1} g)."""
        rows = self._character_action[w]
        comps = tuple(
            sum(a * c for a, c in zip(row, chi.components)) % d
            for row, d in zip(rows, self.moduli)
        )
        return TorusCharacter(comps, self.moduli)

    def weyl_index(self, w: IntMatrix | int) -> int:
        return w if isinstance(w, int) else self.weyl.index(w)

    def character_from_functional(self, functional: Sequence[Fraction]) -> TorusCharacter:
        """Character lambda + (q f0 - 1)X_* |-> <lambda, functional> mod 1.

        ``functional`` is a rational vector in dual coordinates; it must pair
        integrally with every column of q f0 - 1.
        """
        functional = tuple(Fraction(x) for x in functional)
        relations = self.q * self.datum.f0 - IntMatrix.identity(self.datum.rank)
        for col in relations.columns():
            if pair(col, functional):
                raise InvalidDatumError("functional does not vanish on (q f0 - 1) X_*")
        lifts = self.points.generator_lift.columns()
        return TorusCharacter(
            tuple(int(pair(v, functional) * d) for v, d in zip(lifts, self.moduli)),
            self.moduli,
        )

    def evaluate_lattice(self, chi: TorusCharacter, v: Sequence[int]) -> Fraction:
        return evaluate(chi, self.points.project(v))


def finite_torus(d: TorusDatum, q: int, budget: int = DEFAULT_CHARACTER_BUDGET) -> FiniteTorus:
    """Depth-zero points of ``d`` over the residue field with q elements."""
    if q < 2 or not is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power >= 2")
    relations = q * d.f0 - IntMatrix.identity(d.rank)
    points = cokernel(relations)
    if points.free_rank:
        raise InvalidDatumError("q f0 - 1 is singular")
    weyl = relative_weyl_group(d)
    lifts = points.generator_lift.columns()
    actions = []
    for k, w in enumerate(weyl.elements):
        if any(points.project(w @ c) != (0,) * points.ngens for c in relations.columns()):
            raise InvalidDatumError(f"relative Weyl element {k} does not preserve (q f0 - 1) X_*")
        images = [points.project(w @ v) for v in lifts]
        actions.append(IntMatrix.from_columns(images, points.ngens))
    index = {w: k for k, w in enumerate(weyl.elements)}
    inverse = []
    for k, w in enumerate(weyl.elements):
        w_inv = w.inverse()
        j = index[w_inv]
        composed = [points.reduce(actions[j] @ actions[k].column(i)) for i in range(points.ngens)]
        if composed != [tuple(int(a == b) for a in range(points.ngens)) for b in range(points.ngens)]:
            raise InvalidDatumError(f"relative Weyl element {k} does not induce an automorphism")
        inverse.append(j)

    moduli = points.invariant_factors
    char_action = []
    for k in range(len(weyl.elements)):
        a = actions[inverse[k]]
        # component j of w.chi is d_j * chi(w^{-1} e_j) = sum_i a[i, j] * d_j / d_i * c_i
        char_action.append(
            tuple(
                tuple(a[i, j] * moduli[j] // moduli[i] for i in range(len(moduli)))
                for j in range(len(moduli))
            )
        )
    return FiniteTorus(
        datum=d,
        q=q,
        points=points,
        weyl=weyl,
        weyl_action=tuple(actions),
        budget=budget,
        _inverse=tuple(inverse),
        _character_action=tuple(char_action),
    )


def weyl_act(ft: FiniteTorus, w: IntMatrix | int, chi: TorusCharacter) -> TorusCharacter:
    return ft.act(ft.weyl_index(w), chi)


def is_admissible(ft: FiniteTorus, chi: TorusCharacter) -> bool:
    """Not fixed by any nontrivial relative Weyl element."""
    ident = ft.weyl.identity_index
    return all(ft.act(k, chi) != chi for k in range(len(ft.weyl)) if k != ident)


def is_minimal_depth_zero(ft: FiniteTorus, chi: TorusCharacter) -> bool:
    # at depth zero the relevant filtration layer is the whole points group
    return is_admissible(ft, chi)


class Partition(NamedTuple):
    admissible: list[TorusCharacter]
    inadmissible: list[TorusCharacter]


def partition_characters(ft: FiniteTorus) -> Partition:
    adm, inadm = [], []
    for chi in ft.characters():
        (adm if is_admissible(ft, chi) else inadm).append(chi)
    return Partition(adm, inadm)
