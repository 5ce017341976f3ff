"""Command-line interface: ``unramtori <subcommand> [options]``.

Exit codes: 0 success, 1 usage error, 2 computation limit reached,
3 a property check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .characters import DEFAULT_CHARACTER_BUDGET, character_order, finite_torus, is_prime_power, partition_characters
from .errors import EnumerationLimitError, InvalidDatumError
from .lattice import FiniteAbelianGroup, IntMatrix, cokernel, smith_normal_form
from .presets import PRESET_NAMES, preset
from .qt import check_subgroup_properties, compute_qt, order_divisibility_check, pigeonhole_predicate, qt_census
from .rectifier import rectifier_axiom_report
from .specfile import SpecError, datum_to_record, parse_spec
from .tits import (
    DEFAULT_KERNEL_BOUND,
    canonical_lift,
    char_poly,
    coxeter_permutation,
    format_poly,
    kernel_is_t2,
    lift_not_homomorphism_witness,
    reduced_word,
    simple_lift,
    tits_power,
)
from .torus import coinvariants, fixed_lattice, is_anisotropic, norm_matrix, relative_weyl_group, tate_h0, tate_hm1

EXIT_OK, EXIT_USAGE, EXIT_COMPUTATION, EXIT_PROPERTY = 0, 1, 2, 3
MAX_WITNESS_N = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# formatting helpers

def _group_record(g: FiniteAbelianGroup) -> dict:
    return {"group": str(g), "invariant_factors": list(g.invariant_factors), "free_rank": g.free_rank,
            "order": g.order if g.is_finite else None}


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> list[str]:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return [fmt(cells[0]), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


def _matrix_lines(m, indent: str = "  ") -> list[str]:
    rows = m.to_rows()
    width = max((len(str(x)) for r in rows for x in r), default=1)
    return [indent + "[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in rows]


def _sign_text(value: Fraction) -> str:
    return {Fraction(0): "+1", Fraction(1, 2): "-1"}.get(value, f"exp(2 pi i * {value})")


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers, got {text!r}") from None


def _parse_matrix(text: str) -> IntMatrix:
    rows = [_parse_int_list(r, "matrix row") for r in text.split(";")]
    if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise UsageError("matrix rows must be non-empty and of equal length (row length mismatch)")
    return IntMatrix.from_rows(rows)


# loading

def _load(args, need_datum: bool = True):
    """(datum, q, q_list) from --preset/--spec plus --q/--q-list overrides."""
    datum, q, q_list = None, None, ()
    if args.preset and args.spec:
        raise UsageError("give at most one of --preset and --spec")
    if args.preset:
        try:
            datum = preset(args.preset)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    elif args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from None
        try:
            spec = parse_spec(text)
        except SpecError as exc:
            raise UsageError(f"{args.spec}: {exc}") from None
        datum, q, q_list = spec.datum, spec.q, spec.q_list
    if datum is None and need_datum:
        raise UsageError("a torus is required: use --preset NAME or --spec FILE")
    if args.q is not None:
        q = args.q
    if args.q_list is not None:
        q_list = _parse_int_list(args.q_list, "--q-list")
    for value in ([q] if q is not None else []) + list(q_list):
        if not is_prime_power(value):
            raise UsageError(f"q = {value} is not a prime power >= 2")
    return datum, q, q_list


def _need_q(q):
    if q is None:
        raise UsageError("this subcommand needs --q (or q in the spec file)")
    return q


def _budget(args) -> int:
    return args.budget if args.budget is not None else DEFAULT_CHARACTER_BUDGET


# subcommands; each returns (record, human lines, exit code)

def _snf_record(name: str, a: IntMatrix) -> tuple[dict, list[str], bool]:
    dec = smith_normal_form(a)
    ok = dec.U @ a @ dec.V == dec.S and dec.U.is_unimodular() and dec.V.is_unimodular()
    nonzero = [x for x in dec.diagonal if x]
    ok = ok and all(b % a_ == 0 for a_, b in zip(nonzero, nonzero[1:]))
    coker = cokernel(a)
    record = {
        "name": name,
        "matrix": a.to_rows(),
        "U": dec.U.to_rows(),
        "S": dec.S.to_rows(),
        "V": dec.V.to_rows(),
        "diagonal": list(dec.diagonal),
        "rank": dec.rank,
        "determinant": a.det() if a.is_square else None,
        "cokernel": _group_record(coker),
        "contract_holds": ok,
    }
    lines = [f"{name}:"] + _matrix_lines(a)
    lines += [f"  Smith diagonal: {list(dec.diagonal)}  rank {dec.rank}"]
    if a.is_square:
        lines.append(f"  determinant: {record['determinant']}")
    lines += [f"  cokernel: {coker}", f"  U A V = S, unimodular, divisibility chain: {'yes' if ok else 'NO'}"]
    return record, lines, ok


def cmd_snf(args):
    if args.matrix:
        matrices = [("A", _parse_matrix(args.matrix))]
        head = {}
    else:
        d, q, _ = _load(args)
        one = IntMatrix.identity(d.rank)
        matrices = [("f0 - 1", d.f0 - one), ("Nm", norm_matrix(d))]
        if q is not None:
            matrices.append((f"q*f0 - 1 (q = {q})", q * d.f0 - one))
        head = {"datum": datum_to_record(d)}
    records, lines, ok = [], [], True
    for name, a in matrices:
        rec, ls, good = _snf_record(name, a)
        records.append(rec)
        lines += ls
        ok = ok and good
    return {**head, "matrices": records}, lines, EXIT_OK if ok else EXIT_PROPERTY


def cmd_cohomology(args):
    d, _, _ = _load(args)
    h0, hm1 = tate_h0(d), tate_hm1(d)
    aniso = is_anisotropic(d)
    fixed = fixed_lattice(d)
    coinv = coinvariants(d)
    n = d.splitting_degree
    # Tate groups of a cyclic group of order n are finite and killed by n
    killed = all(g.is_finite and all(n % f == 0 for f in g.invariant_factors) for g in (h0, hm1))
    consistent = killed and (not aniso or h0.is_trivial)
    record = {
        "datum": datum_to_record(d),
        "splitting_degree": n,
        "H0": _group_record(h0),
        "H-1": _group_record(hm1),
        "anisotropic": aniso,
        "fixed_lattice_rank": len(fixed),
        "coinvariants": _group_record(coinv),
        "component_lattice": {"rank": d.rank, "frobenius": d.f0.to_rows(), "frobenius_fixed_rank": len(fixed)},
        "consistent": consistent,
    }
    lines = [f"torus {d.label or '(unnamed)'}: rank {d.rank}, splits over degree {n}"]
    lines += _table(
        ["invariant", "value"],
        [
            ["H^0 (Tate)", h0],
            ["H^-1 (Tate)", hm1],
            ["anisotropic", "yes" if aniso else "no"],
            ["rank of X_*^Frob", len(fixed)],
            ["coinvariants X_*/(f0-1)", coinv],
            ["component lattice", f"Z^{d.rank} with Frobenius f0"],
        ],
    )
    if not consistent:
        lines.append("PROPERTY FAILURE: Tate cohomology not killed by n, or anisotropic with nonzero H^0")
    return record, lines, EXIT_OK if consistent else EXIT_PROPERTY


def cmd_points(args):
    d, q, q_list = _load(args)
    qs = [q] if q is not None else list(q_list)
    if not qs:
        _need_q(None)
    rows, records, ok = [], [], True
    for qq in qs:
        ft = finite_torus(d, qq, _budget(args))
        det = abs((qq * d.f0 - IntMatrix.identity(d.rank)).det())
        good = ft.order == det
        ok = ok and good
        records.append({"q": qq, "group": _group_record(ft.points), "order": ft.order,
                        "determinant": det, "relative_weyl_order": len(ft.weyl)})
        rows.append([qq, ft.points, ft.order, det, len(ft.weyl)])
    lines = [f"torus {d.label or '(unnamed)'}: finite points T(k) = Z^r / (q f0 - 1)"]
    lines += _table(["q", "T(k)", "|T(k)|", "|det(q f0 - 1)|", "|W(K)|"], rows)
    return {"datum": datum_to_record(d), "points": records}, lines, EXIT_OK if ok else EXIT_PROPERTY


def cmd_characters(args):
    d, q, _ = _load(args)
    ft = finite_torus(d, _need_q(q), _budget(args))
    adm, inadm = partition_characters(ft)
    record = {
        "datum": datum_to_record(d),
        "q": ft.q,
        "points": _group_record(ft.points),
        "characters": ft.order,
        "admissible": len(adm),
        "inadmissible": len(inadm),
    }
    lines = [f"T(k) = {ft.points} for q = {ft.q}; |W(K)| = {len(ft.weyl)}"]
    lines += _table(["characters", "admissible", "inadmissible"], [[ft.order, len(adm), len(inadm)]])
    if args.list_characters:
        adm_set = set(adm)
        listing = sorted(adm + inadm)
        record["listing"] = [
            {"components": list(c.components), "order": character_order(c), "admissible": c in adm_set} for c in listing
        ]
        lines.append("")
        lines += _table(["character", "order", "admissible"],
                        [[c, character_order(c), "yes" if c in adm_set else "no"] for c in listing])
    ok = len(adm) + len(inadm) == ft.order
    return record, lines, EXIT_OK if ok else EXIT_PROPERTY


def cmd_qt(args):
    d, q, _ = _load(args)
    ft = finite_torus(d, _need_q(q), _budget(args))
    r = compute_qt(ft)
    props = check_subgroup_properties(r)
    pig = pigeonhole_predicate(ft, r)
    div = order_divisibility_check(r)
    clauses = list(props.clauses) + [div]
    ok = props.passed and pig.implication_verified and div.passed
    elements = sorted(r.elements)
    witnesses = sorted((str(alpha), str(chi), w) for (alpha, chi), w in r.witness_table.items())
    record = {
        "datum": datum_to_record(d),
        "q": ft.q,
        "points": _group_record(ft.points),
        "qt_order": r.order,
        "qt_elements": [str(a) for a in elements],
        "vacuous": r.vacuous,
        "admissible": len(r.admissible),
        "inadmissible": len(r.inadmissible),
        "witnesses": [{"alpha": a, "character": c, "weyl_element": ft.weyl.elements[w].to_rows()} for a, c, w in witnesses],
        "properties": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in clauses],
        "pigeonhole": {"bound_holds": pig.bound_holds, "implication_verified": pig.implication_verified},
    }
    lines = [f"T(k) = {ft.points} for q = {ft.q}; {len(r.admissible)} admissible, {len(r.inadmissible)} inadmissible"]
    lines.append(f"|Q_T| = {r.order}: " + ", ".join(str(a) for a in elements))
    if r.vacuous:
        lines.append("note: no admissible characters, so Q_T is all of T* vacuously")
    if witnesses:
        lines.append("")
        lines += _table(["alpha", "admissible chi", "w with chi / w(chi) = alpha"],
                        [[a, c, f"W(K)[{w}]"] for a, c, w in witnesses])
    lines.append("")
    lines += _table(["property", "result", "detail"],
                    [[c.name, "pass" if c.passed else "FAIL", c.detail] for c in clauses]
                    + [["pigeonhole", "pass" if pig.implication_verified else "FAIL",
                        f"bound {'holds' if pig.bound_holds else 'does not hold'}"]])
    return record, lines, EXIT_OK if ok else EXIT_PROPERTY


def cmd_qt_census(args):
    d, q, q_list = _load(args)
    qs = list(q_list) or ([q] if q is not None else [])
    if not qs:
        raise UsageError("qt-census needs --q-list (or q_list in the spec file)")
    rows = qt_census(d, qs, args.budget)
    ok = True
    out = []
    for row in rows:
        skipped = row.note.startswith("skipped")
        if not skipped:
            ok = ok and row.characters == row.determinant
        out.append({"q": row.q, "characters": None if skipped else row.characters,
                    "admissible": None if skipped else row.admissible,
                    "inadmissible": None if skipped else row.inadmissible,
                    "qt_order": None if skipped else row.qt_order,
                    "pigeonhole_bound": None if skipped else row.pigeonhole, "determinant": row.determinant, "note": row.note})
    dash = lambda x: "-" if x is None else x
    lines = [f"Q_T census for {d.label or '(unnamed)'}"]
    lines += _table(["q", "|T*|", "|det(q f0 - 1)|", "admissible", "inadmissible", "|Q_T|", "note"],
                    [[r["q"], dash(r["characters"]), r["determinant"], dash(r["admissible"]),
                      dash(r["inadmissible"]), dash(r["qt_order"]), r["note"]] for r in out])
    skipped = [r for r in out if r["qt_order"] is None]
    code = EXIT_PROPERTY if not ok else EXIT_COMPUTATION if skipped else EXIT_OK
    return {"datum": datum_to_record(d), "rows": out}, lines, code


def cmd_tits(args):
    n = args.n
    if n is None or n < 1:
        raise UsageError("tits needs --n N with N >= 1")
    if args.perm:
        perm = tuple(x - 1 for x in _parse_int_list(args.perm, "--perm"))
        if sorted(perm) != list(range(n)):
            raise UsageError(f"--perm must be a permutation of 1..{n} in one-line notation")
        what = "w"
    else:
        perm = coxeter_permutation(n)
        what = "Coxeter element"
    lift = canonical_lift(perm)
    word = reduced_word(perm).letters
    poly = char_poly(lift)
    record = {
        "n": n,
        "element": what,
        "permutation": [x + 1 for x in perm],
        "reduced_word": list(word),
        "lift": lift.to_rows(),
        "char_poly": list(poly),
        "char_poly_text": format_poly(poly),
    }
    lines = [f"{what} in S_{n}: {[x + 1 for x in perm]}, reduced word s_{word}" if word else f"{what}: identity",
             "canonical lift:"] + _matrix_lines(lift)
    lines.append(f"characteristic polynomial: {format_poly(poly)}")
    ok = True

    if args.coxeter_power:
        order = 1
        p = perm
        while p != tuple(range(n)):
            p = tuple(perm[x] for x in p)
            order += 1
        power = tits_power(lift, order)
        scalar = power.scalar_value()
        record["power"] = {"exponent": order, "matrix": power.to_rows(), "scalar": scalar}
        lines.append(f"lift^{order} = " + (f"{scalar:+d} I" if scalar is not None else "non-scalar diagonal"))
        if not args.perm:
            expected = (-1) ** (n - 1)
            good = scalar == expected
            record["power"]["expected_scalar"] = expected
            ok = ok and good
            lines.append(f"expected (-1)^(n-1) I = {expected:+d} I: {'ok' if good else 'MISMATCH'}")

    s = [None] + [simple_lift(i, n) for i in range(1, n)]
    braid_ok = all(
        (s[i] @ s[j] @ s[i] == s[j] @ s[i] @ s[j]) if abs(i - j) == 1 else (s[i] @ s[j] == s[j] @ s[i])
        for i in range(1, n) for j in range(1, n) if i != j
    )
    record["braid_relations"] = braid_ok
    ok = ok and braid_ok
    lines.append(f"braid relations among simple lifts: {'hold' if braid_ok else 'FAIL'}")

    if n <= DEFAULT_KERNEL_BOUND:
        k = kernel_is_t2(n)
        record["kernel"] = k._asdict()
        ok = ok and k.kernel_equals_t2
        lines.append(f"Tits group order {k.group_order}; kernel to S_{n} has order {k.kernel_order}; "
                     f"generated by coroots at -1: {'yes' if k.kernel_equals_t2 else 'NO'}")
    else:
        record["kernel"] = None
        lines.append(f"kernel check skipped: n > {DEFAULT_KERNEL_BOUND}")
    if n <= MAX_WITNESS_N:
        wit = lift_not_homomorphism_witness(n)
        record["non_homomorphism_witness"] = None if wit is None else [[x + 1 for x in wit[0]], [x + 1 for x in wit[1]]]
        if wit is not None:
            lines.append(f"lift is not multiplicative: u = {[x + 1 for x in wit[0]]}, v = {[x + 1 for x in wit[1]]}")
    return record, lines, EXIT_OK if ok else EXIT_PROPERTY


def cmd_rectifier(args):
    d, _, _ = _load(args)
    try:
        report = rectifier_axiom_report(d)
    except InvalidDatumError as exc:
        raise UsageError(str(exc)) from None
    value = report.mu_at_uniformizer
    record = {
        "datum": datum_to_record(d),
        "mu_at_uniformizer": str(value),
        "mu_at_uniformizer_sign": _sign_text(value),
        "unramified": True,
        "axioms": [{"name": c.name, "status": c.status, "detail": c.detail} for c in report.clauses],
    }
    lines = [f"rectifier for {d.label or '(unnamed)'}: mu(uniformizer) = {_sign_text(value)}  ({value} in Q/Z)", ""]
    lines += _table(["axiom", "status", "detail"], [[c.name, c.status, c.detail] for c in report.clauses])
    return record, lines, EXIT_PROPERTY if report.failed else EXIT_OK


def cmd_verify_all(args):
    from .verify import run_all

    results = run_all(args.seed if args.seed is not None else 0)
    record = {"criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
                           for r in results]}
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return record, lines, EXIT_OK if ok else EXIT_PROPERTY


COMMANDS = {
    "snf": (cmd_snf, "Smith normal form diagnostics for a matrix or a torus"),
    "cohomology": (cmd_cohomology, "Tate cohomology, anisotropy and coinvariants of a torus"),
    "points": (cmd_points, "order and invariant factors of T(k)"),
    "characters": (cmd_characters, "admissible / inadmissible depth-zero characters"),
    "qt": (cmd_qt, "the group Q_T with witnesses and property checks"),
    "qt-census": (cmd_qt_census, "Q_T over a list of residue field sizes"),
    "tits": (cmd_tits, "Tits lifts in GL_n: powers, characteristic polynomial, braid and kernel checks"),
    "rectifier": (cmd_rectifier, "depth-zero rectifier value and axiom report"),
    "verify-all": (cmd_verify_all, "run every acceptance check"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--preset", metavar="NAME", help="built-in torus: " + ", ".join(PRESET_NAMES))
    common.add_argument("--spec", metavar="FILE", help="JSON torus description")
    common.add_argument("--q", type=int, help="residue field size")
    common.add_argument("--q-list", metavar="a,b,c", help="residue field sizes for census")
    common.add_argument("--machine", action="store_true", help="print a JSON record instead of tables")
    common.add_argument("--budget", type=int, help="cap on enumerated characters")
    common.add_argument("--list-characters", action="store_true", help="list every character")
    common.add_argument("--seed", type=int, help="seed for randomized property suites")

    parser = _Parser(prog="unramtori", description="Unramified tori, depth-zero characters and rectifiers.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=helptext, description=helptext)
        if name == "snf":
            p.add_argument("--matrix", metavar="ROWS", help="matrix as '1,2;3,4' instead of a torus")
        if name == "tits":
            p.add_argument("--n", type=int, help="rank of GL_n")
            p.add_argument("--coxeter-power", action="store_true", help="report the lift raised to the order of w")
            p.add_argument("--perm", metavar="P", help="permutation of 1..n in one-line notation (default: Coxeter element)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required; see --help")
        if args.budget is not None and args.budget < 1:
            raise UsageError("--budget must be positive")
        record, lines, code = COMMANDS[args.command][0](args)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidDatumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationLimitError as exc:
        print(f"computation limit: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    if args.machine:
        print(json.dumps({"command": args.command, "exit_code": code, **record}, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return code


def entry() -> None:
    sys.exit(main())
