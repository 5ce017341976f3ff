"""The group Q_T of characters that shift every admissible character to a Weyl translate.

alpha lies in Q_T when for every admissible chi some relative Weyl
element w has alpha = chi - w.chi (written additively).  Everything here
is brute force over the finite character group, together with checks of
the structural facts known about Q_T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .characters import (
    FiniteTorus,
    TorusCharacter,
    character_order,
    finite_torus,
    is_admissible,
    is_prime_power,
    partition_characters,
)
from .errors import EnumerationLimitError
from .lattice import IntMatrix
from .torus import TorusDatum


@dataclass(frozen=True)
class QtResult:
    ft: FiniteTorus
    elements: tuple[TorusCharacter, ...]
    admissible: tuple[TorusCharacter, ...]
    inadmissible: tuple[TorusCharacter, ...]
    # (alpha, chi) -> index of the first Weyl element w with alpha = chi - w.chi
    witness_table: dict = field(repr=False, compare=False)
    vacuous: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1


def compute_qt(ft: FiniteTorus) -> QtResult:
    """Scan every candidate alpha against every admissible character.

    With no admissible characters the defining condition is empty, so all
    characters qualify; the result is flagged ``vacuous``.
    """
    adm, inadm = partition_characters(ft)
    nweyl = len(ft.weyl)
    # for each admissible chi: alpha -> first witness
    differences = []
    for chi in adm:
        table = {}
        for k in range(nweyl):
            table.setdefault(chi - ft.act(k, chi), k)
        differences.append(table)

    elements = []
    witnesses = {}
    for alpha in ft.characters():
        if all(alpha in table for table in differences):
            elements.append(alpha)
            for chi, table in zip(adm, differences):
                witnesses[alpha, chi] = table[alpha]
    return QtResult(
        ft=ft,
        elements=tuple(elements),
        admissible=tuple(adm),
        inadmissible=tuple(inadm),
        witness_table=witnesses,
        vacuous=not adm,
    )


class ClauseResult(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class PropertyReport:
    clauses: tuple[ClauseResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)


def check_subgroup_properties(r: QtResult) -> PropertyReport:
    """Q_T is a subgroup, avoids admissible characters, and is Weyl-stable."""
    members = set(r.elements)
    moduli = r.ft.moduli

    bad = None
    if TorusCharacter.trivial(moduli) not in members:
        bad = "trivial character missing"
    else:
        for a in r.elements:
            if -a not in members:
                bad = f"-{a} missing"
                break
            sums = [b for b in r.elements if a + b not in members]
            if sums:
                bad = f"{a} + {sums[0]} missing"
                break
    subgroup = ClauseResult("subgroup", bad is None, bad or "")

    if r.vacuous:
        inside = ClauseResult("inside inadmissible", True, "no admissible characters (vacuous case)")
    elif len(r.ft.weyl) == 1:
        # every character, the trivial one included, is admissible; the containment needs W(K) != 1
        inside = ClauseResult("inside inadmissible", True, "not applicable: W(K) is trivial")
    else:
        admissible_members = [a for a in r.elements if is_admissible(r.ft, a)]
        inside = ClauseResult(
            "inside inadmissible",
            not admissible_members,
            f"admissible element {admissible_members[0]}" if admissible_members else "",
        )

    unstable = [
        (k, a) for k in range(len(r.ft.weyl)) for a in r.elements if r.ft.act(k, a) not in members
    ]
    stable = ClauseResult(
        "weyl stable",
        not unstable,
        f"w[{unstable[0][0]}] moves {unstable[0][1]} out" if unstable else "",
    )
    return PropertyReport((subgroup, inside, stable))


class PigeonholeResult(NamedTuple):
    bound_holds: bool
    # True when the bound fails (nothing to check) or Q_T was found trivial
    implication_verified: bool


def pigeonhole_predicate(ft: FiniteTorus, result: QtResult | None = None) -> PigeonholeResult:
    """#adm > (#W(K) - 1) * #in forces Q_T = {1}; check it never fails."""
    if result is None:
        adm, inadm = partition_characters(ft)
        n_adm, n_in = len(adm), len(inadm)
    else:
        n_adm, n_in = len(result.admissible), len(result.inadmissible)
    holds = n_adm > (len(ft.weyl) - 1) * n_in
    if not holds:
        return PigeonholeResult(False, True)
    r = result if result is not None else compute_qt(ft)
    return PigeonholeResult(True, r.is_trivial)


def order_divisibility_check(r: QtResult) -> ClauseResult:
    """Order of each alpha in Q_T divides the order of each admissible chi."""
    adm_orders = sorted({character_order(chi) for chi in r.admissible})
    for alpha in r.elements:
        d = character_order(alpha)
        for m in adm_orders:
            if m % d:
                return ClauseResult("order divisibility", False, f"order {d} of {alpha} does not divide {m}")
    return ClauseResult("order divisibility", True)


@dataclass(frozen=True)
class CensusRow:
    q: int
    characters: int
    admissible: int
    inadmissible: int
    qt_order: int
    pigeonhole: bool
    determinant: int
    note: str = ""


def qt_census(d: TorusDatum, q_list: Sequence[int], budget: int | None = None) -> list[CensusRow]:
    """One row per q; rows whose character group exceeds the budget are skipped with a note."""
    rows = []
    for q in q_list:
        if not is_prime_power(q):
            raise ValueError(f"q = {q} is not a prime power")
        det = abs((q * d.f0 - IntMatrix.identity(d.rank)).det())
        try:
            ft = finite_torus(d, q) if budget is None else finite_torus(d, q, budget=budget)
            r = compute_qt(ft)
        except EnumerationLimitError as exc:
            rows.append(CensusRow(q, det, 0, 0, 0, False, det, note=f"skipped: {exc}"))
            continue
        n = len(r.admissible) + len(r.inadmissible)
        if n != det:
            raise AssertionError(f"character count {n} differs from |det(q f0 - 1)| = {det}")
        ph = pigeonhole_predicate(ft, r)
        rows.append(
            CensusRow(q, n, len(r.admissible), len(r.inadmissible), r.order, ph.bound_holds, det,
                      note="vacuous" if r.vacuous else "")
        )
    return rows


def rectifiers_equivalent(mu, mu_prime, r: QtResult) -> bool:
    """Equal unramified parts and depth-zero parts differing by an element of Q_T.

    Accepts anything with ``unramified`` and ``residual`` attributes
    (see ``rectifier.TameCharacter``).
    """
    if mu.unramified != mu_prime.unramified:
        return False
    moduli = r.ft.moduli
    a = mu.residual if mu.residual is not None else TorusCharacter.trivial(moduli)
    b = mu_prime.residual if mu_prime.residual is not None else TorusCharacter.trivial(moduli)
    return (b - a) in set(r.elements)
