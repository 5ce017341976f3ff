"""Unramified parameters, their characters on coinvariants, and the depth-zero rectifier.

A parameter trivial on inertia is determined by phi(Fr) = t * lift(w) with t
a torsion point of the dual torus.  Torsion points are rational vectors
modulo 1 in dual coordinates: the cocharacter lambda pairs with t to
<lambda, t> in Q/Z.  Frobenius acts on these coordinates through the
transpose of f0.  The character attached to phi is lambda |-> <lambda, phi(Fr)^n>,
a character of X_*(T) that factors through the coinvariants.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple, Sequence

from .characters import TorusCharacter
from .errors import InvalidDatumError
from .lattice import FiniteAbelianGroup, IntMatrix, kernel_basis, pair
from .presets import symmetric_group_generators
from .torus import TorusDatum, coinvariants, norm_matrix, relative_weyl_group, tate_hm1
from .tits import canonical_lift, cycles, tits_power

LIFT_RULES = ("tits", "abstract")

TorsionVector = tuple[Fraction, ...]


def _torsion(values: Sequence, rank: int) -> TorsionVector:
    values = tuple(Fraction(x) % 1 for x in values)
    if len(values) != rank:
        raise InvalidDatumError(f"torsion vector of length {len(values)} for rank {rank}")
    return values


def twisted_sum(d: TorusDatum, t: Sequence[Fraction]) -> TorsionVector:
    """Sum of (f0^T)^i t over 0 <= i < n, reduced mod 1."""
    f0t = d.f0.T
    total = [Fraction(0)] * d.rank
    current = tuple(Fraction(x) for x in t)
    for _ in range(d.splitting_degree):
        total = [a + b for a, b in zip(total, current)]
        current = tuple(sum((Fraction(a) * x for a, x in zip(f0t.row(i), current)), Fraction(0)) for i in range(d.rank))
    return tuple(x % 1 for x in total)


def permutation_of(m: IntMatrix) -> tuple[int, ...] | None:
    """perm with m e_j = e_perm[j], or None if m is not a permutation matrix."""
    perm = []
    for j in range(m.cols):
        col = m.column(j)
        if sorted(col) != [0] * (m.rows - 1) + [1]:
            return None
        perm.append(col.index(1))
    return tuple(perm) if sorted(perm) == list(range(m.rows)) else None


@dataclass(frozen=True)
class LParameter:
    """Unramified parameter phi(Fr) = t * lift(w), trivial on inertia.

    ``lift_power`` is the torus part of lift(w)^n for the abstract lift
    rule; the Tits rule computes it from the canonical lift instead.
    """

    datum: TorusDatum
    t: TorsionVector
    w: IntMatrix
    lift_power: TorsionVector | None = None

    def __post_init__(self):
        d = self.datum
        object.__setattr__(self, "t", _torsion(self.t, d.rank))
        w = self.w if isinstance(self.w, IntMatrix) else IntMatrix.from_rows(self.w)
        object.__setattr__(self, "w", w)
        if self.lift_power is not None:
            object.__setattr__(self, "lift_power", _torsion(self.lift_power, d.rank))
        if not d.in_weyl_group(w) and w != IntMatrix.identity(d.rank):
            raise InvalidDatumError("w is not in the absolute Weyl group of the datum")
        if w ** d.splitting_degree != IntMatrix.identity(d.rank):
            raise InvalidDatumError("w^n is not the identity, so phi(Fr)^n is not in the dual torus")


def lift_power_part(p: LParameter, lift_rule: str) -> TorsionVector:
    """Torus part of lift(w)^n in dual coordinates."""
    d = p.datum
    if lift_rule == "abstract":
        return p.lift_power if p.lift_power is not None else (Fraction(0),) * d.rank
    if lift_rule != "tits":
        raise ValueError(f"unknown lift rule {lift_rule!r}; expected one of {LIFT_RULES}")
    perm = permutation_of(p.w)
    if perm is None:
        raise InvalidDatumError("the Tits lift rule needs w to be a permutation matrix (type A data)")
    power = tits_power(canonical_lift(perm), d.splitting_degree)
    if not power.is_diagonal:
        raise InvalidDatumError("lift(w)^n is not diagonal")
    # a sign -1 in slot j is the torsion coordinate 1/2
    return tuple(Fraction(0) if s == 1 else Fraction(1, 2) for s in power.signs)


def frobenius_nth_power_torus_part(p: LParameter, lift_rule: str = "tits") -> TorsionVector:
    """Dual-torus coordinates of phi(Fr)^n = (t * lift(w))^n."""
    twisted = twisted_sum(p.datum, p.t)
    own = lift_power_part(p, lift_rule)
    return tuple((a + b) % 1 for a, b in zip(twisted, own))


@dataclass(frozen=True)
class UnramifiedCharacter:
    """Character of the coinvariants X_*(T)_Gamma, by its values on generators."""

    group: FiniteAbelianGroup
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(v) % 1 for v in self.values)
        if len(values) != self.group.ngens:
            raise InvalidDatumError(f"{len(values)} values for {self.group.ngens} generators")
        for v, d in zip(values, self.group.moduli):
            if d and (v * d).denominator != 1:
                raise InvalidDatumError(f"value {v} on a generator of order {d}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_functional(cls, d: TorusDatum, functional: Sequence[Fraction]) -> UnramifiedCharacter:
        """lambda |-> <lambda, functional>; must vanish on (f0 - 1) X_*."""
        functional = tuple(Fraction(x) for x in functional)
        for col in (d.f0 - IntMatrix.identity(d.rank)).columns():
            if pair(col, functional):
                raise InvalidDatumError("functional is not Frobenius-fixed; no character of the coinvariants")
        group = coinvariants(d)
        return cls(group, tuple(pair(v, functional) for v in group.generator_lift.columns()))

    @classmethod
    def trivial(cls, d: TorusDatum) -> UnramifiedCharacter:
        group = coinvariants(d)
        return cls(group, (Fraction(0),) * group.ngens)

    def __call__(self, lam: Sequence[int]) -> Fraction:
        """Value at the class of the cocharacter ``lam``, in [0, 1)."""
        g = self.group.project(lam)
        return sum((x * v for x, v in zip(g, self.values)), Fraction(0)) % 1

    def inverse(self) -> UnramifiedCharacter:
        return UnramifiedCharacter(self.group, tuple(-v for v in self.values))

    def __add__(self, other: UnramifiedCharacter) -> UnramifiedCharacter:
        return UnramifiedCharacter(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    @property
    def is_trivial(self) -> bool:
        return not any(self.values)


def parameter_character(p: LParameter, lift_rule: str = "tits") -> UnramifiedCharacter:
    """The character lambda |-> <lambda, phi(Fr)^n> of the coinvariants."""
    tau = frobenius_nth_power_torus_part(p, lift_rule)
    try:
        return UnramifiedCharacter.from_functional(p.datum, tau)
    except InvalidDatumError as exc:
        raise InvalidDatumError(f"phi(Fr)^n is not Frobenius-fixed: {exc}") from None


def is_cyclic_permutation_datum(d: TorusDatum) -> bool:
    perm = permutation_of(d.f0)
    return perm is not None and len(cycles(perm)) == 1


def rectifier_mu(d: TorusDatum) -> UnramifiedCharacter:
    """Inverse of the character of the parameter Fr |-> canonical lift of f0."""
    if not is_cyclic_permutation_datum(d):
        raise InvalidDatumError("rectifier needs f0 to be an n-cycle permutation matrix (elliptic GL_n datum)")
    if not d.weyl_generators:
        # a bare cyclic datum sits in GL_n, whose Weyl group is S_n
        d = replace(d, weyl_generators=tuple(symmetric_group_generators(d.rank)))
    zero = (Fraction(0),) * d.rank
    return parameter_character(LParameter(d, zero, d.f0), "tits").inverse()


def uniformizer_cocharacter(d: TorusDatum) -> tuple[int, ...]:
    """e_1: its class in the coinvariants is the preimage of a uniformizer of K under the norm."""
    return (1,) + (0,) * (d.rank - 1)


class ToralCheck(NamedTuple):
    passed: bool
    delta: TorsionVector
    offending: tuple[int, ...] | None = None


def toral_modification_check(p: LParameter, t_prime: Sequence[Fraction]) -> ToralCheck:
    """Twisting phi(Fr) by t' changes the character by a functional vanishing on ker(Nm)."""
    d = p.datum
    delta = twisted_sum(d, _torsion(t_prime, d.rank))
    for lam in kernel_basis(norm_matrix(d)):
        if pair(lam, delta):
            return ToralCheck(False, delta, lam)
    return ToralCheck(True, delta)


def descent_check(chi: UnramifiedCharacter, d: TorusDatum) -> bool:
    """Whether chi kills the image of H^-1 in the coinvariants."""
    h = tate_hm1(d)
    return all(chi(v) == 0 for v in h.generator_lift.columns())


@dataclass(frozen=True)
class TameCharacter:
    """Depth-zero character of T(L)_Gamma: unramified part times residual part.

    A choice of uniformizer splits T(L)_Gamma into T(O_L)_Gamma, whose
    depth-zero characters are characters of the residue-field points, and
    X_*(T)_Gamma.
    """

    unramified: UnramifiedCharacter
    residual: TorusCharacter | None = None

    def twist(self, alpha: TorusCharacter) -> TameCharacter:
        base = self.residual if self.residual is not None else TorusCharacter.trivial(alpha.moduli)
        return TameCharacter(self.unramified, base + alpha)


class AxiomClause(NamedTuple):
    name: str
    status: str  # "pass", "fail" or "unverified"
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    datum_label: str
    mu_at_uniformizer: Fraction
    clauses: tuple[AxiomClause, ...]

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.clauses)


def rectifier_axiom_report(d: TorusDatum) -> AxiomReport:
    mu = rectifier_mu(d)
    value = mu(uniformizer_cocharacter(d))
    clauses = [
        AxiomClause(
            "(1) tamely ramified",
            "pass",
            "mu comes from a parameter trivial on inertia, so it is unramified",
        )
    ]

    h = tate_hm1(d)
    descends = descent_check(mu, d)
    clauses.append(
        AxiomClause(
            "(2) xi*mu descends to T(K) whenever xi does",
            "pass" if descends else "fail",
            f"H^-1 = {h}; mu {'vanishes' if descends else 'does not vanish'} on it",
        )
    )

    weyl = relative_weyl_group(d)
    lifts = mu.group.generator_lift.columns()
    moved = [k for k, w in enumerate(weyl.elements) if any(mu(w @ v) != mu(v) for v in lifts)]
    clauses.append(
        AxiomClause(
            "(2) xi*mu admissible iff xi admissible",
            "pass" if not moved else "fail",
            f"mu is unramified and invariant under all {len(weyl)} relative Weyl elements"
            if not moved
            else f"mu is moved by relative Weyl element {moved[0]}",
        )
    )
    clauses.append(
        AxiomClause(
            "(2) phi -> L(xi_phi * mu) is the local Langlands correspondence",
            "unverified",
            "out of scope: needs the supercuspidal L-packet constructions",
        )
    )
    clauses.append(
        AxiomClause(
            "chi_phi o Nm = xi_phi * mu (identity with the L-packet character)",
            "unverified",
            "out of scope: chi_phi is not modelled; only the right-hand side is computed",
        )
    )
    clauses.append(
        AxiomClause(
            "(3) mu independent of xi",
            "pass",
            "mu depends only on the torus datum by construction",
        )
    )
    return AxiomReport(d.label, value, tuple(clauses))
