"""Torus description files.

A description is a JSON object::

    {
      "label": "sl3 split",
      "rank": 2,
      "f0": [[1, 0], [0, 1]],
      "weyl_generators": [[[0, 1], [1, 0]], [[1, 0], [-1, -1]]],
      "q_list": [2, 3, 5]
    }

``q`` may replace ``q_list``; a ``preset`` field names a built-in datum and
overrides the lattice fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidDatumError
from .lattice import IntMatrix
from .presets import preset
from .torus import TorusDatum

ENTRY_LIMIT = 2**31
KNOWN_FIELDS = {"label", "rank", "f0", "weyl_generators", "q", "q_list", "preset", "splitting_degree"}


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class TorusSpecFile:
    label: str
    rank: int
    f0: IntMatrix
    weyl_generators: tuple[IntMatrix, ...] = ()
    q: int | None = None
    q_list: tuple[int, ...] = ()
    preset: str | None = None
    datum: TorusDatum = field(default=None, compare=False, repr=False)


def _matrix(value, rank: int, what: str) -> IntMatrix:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise SpecError(f"{what} must be an array of integer arrays")
    if len(value) != rank:
        raise SpecError(f"{what} has {len(value)} rows, expected {rank}")
    for i, row in enumerate(value):
        if len(row) != rank:
            raise SpecError(f"{what} row {i} has length {len(row)}, expected {rank} (row length mismatch)")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise SpecError(f"{what} row {i} has non-integer entry {x!r}")
            if abs(x) >= ENTRY_LIMIT:
                raise SpecError(f"{what} row {i} entry {x} exceeds the input limit 2^31")
    return IntMatrix.from_rows(value, rank)


def _int(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SpecError(f"{what} must be an integer, got {value!r}")
    return value


def parse_spec(text: str) -> TorusSpecFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise SpecError("top level must be an object")
    unknown = set(raw) - KNOWN_FIELDS
    if unknown:
        raise SpecError(f"unknown field(s): {', '.join(sorted(unknown))}")

    q = _int(raw["q"], "q") if "q" in raw else None
    q_list = raw.get("q_list", [])
    if not isinstance(q_list, list):
        raise SpecError("q_list must be an array of integers")
    q_list = tuple(_int(x, "q_list entry") for x in q_list)

    if "preset" in raw:
        name = raw["preset"]
        try:
            datum = preset(name)
        except KeyError as exc:
            raise SpecError(str(exc.args[0])) from None
        return TorusSpecFile(datum.label, datum.rank, datum.f0, datum.weyl_generators, q, q_list, name, datum)

    for key in ("rank", "f0"):
        if key not in raw:
            raise SpecError(f"missing required field {key!r}")
    rank = _int(raw["rank"], "rank")
    if rank < 1:
        raise SpecError("rank must be positive")
    f0 = _matrix(raw["f0"], rank, "f0")
    gens_raw = raw.get("weyl_generators", [])
    if not isinstance(gens_raw, list):
        raise SpecError("weyl_generators must be an array of matrices")
    gens = tuple(_matrix(g, rank, f"weyl_generators[{k}]") for k, g in enumerate(gens_raw))
    label = raw.get("label", "")
    if not isinstance(label, str):
        raise SpecError("label must be a string")
    declared = _int(raw["splitting_degree"], "splitting_degree") if "splitting_degree" in raw else None
    try:
        datum = TorusDatum(rank, f0, declared, gens, label)
        datum.weyl_group  # finiteness and normalization by f0
    except (InvalidDatumError, RuntimeError) as exc:
        raise SpecError(f"invalid torus datum: {exc}") from None
    return TorusSpecFile(label, rank, f0, gens, q, q_list, None, datum)


def datum_to_record(d: TorusDatum) -> dict:
    return {
        "label": d.label,
        "rank": d.rank,
        "splitting_degree": d.splitting_degree,
        "f0": d.f0.to_rows(),
        "weyl_generators": [g.to_rows() for g in d.weyl_generators],
    }
