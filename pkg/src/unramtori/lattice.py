"""Exact integer matrix algebra.

Smith normal form with transformation matrices, integer kernels, and
presentations of finitely generated abelian groups arising as cokernels
or subquotients of lattices.  Everything is done with Python integers,
so there is no overflow anywhere.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ContainmentError

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        entries = tuple(operator.index(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries for a "
                f"{self.rows}x{self.cols} matrix, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"row {i} has length {len(r)}, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ValueError(f"column {j} has length {len(c)}, expected {rows}")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int, cols: int) -> IntMatrix:
        data = [0] * (rows * cols)
        for i, v in enumerate(values):
            data[i * cols + i] = v
        return cls(rows, cols, tuple(data))

    # access

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def diagonal_entries(self) -> Vector:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    # arithmetic

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_columns(self.to_rows(), self.cols) if self.rows else IntMatrix.zeros(self.cols, 0)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            ocols = other.columns()
            data = [sum(a * b for a, b in zip(self.row(i), c)) for i in range(self.rows) for c in ocols]
            return IntMatrix(self.rows, other.cols, tuple(data))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} does not match {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def _check_shape(self, other: IntMatrix):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __rmul__(self, k: int) -> IntMatrix:
        k = operator.index(k)
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def __pow__(self, k: int) -> IntMatrix:
        if not self.is_square:
            raise ValueError("only square matrices have powers")
        if k < 0:
            raise ValueError("negative powers are not supported; use inverse()")
        result, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square and self.det() in (1, -1)

    def inverse(self) -> IntMatrix:
        """Inverse of a unimodular matrix (raises ValueError otherwise)."""
        if not self.is_unimodular():
            raise ValueError("matrix is not invertible over the integers")
        dec = smith_normal_form(self)
        # U A V = S with S = I, so A^{-1} = V U
        return dec.V @ dec.U

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.to_rows()) + "]"


@dataclass(frozen=True)
class SmithDecomposition:
    """U A V = S with U, V unimodular and S diagonal in Smith form.

    ``U_inv`` is carried along because cokernel generators are its columns.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix = field(repr=False)

    @property
    def diagonal(self) -> Vector:
        return self.S.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _pick_pivot(s, t, m, n):
    best = None
    for i in range(t, m):
        row = s[i]
        for j in range(t, n):
            a = abs(row[j])
            if a and (best is None or a < best[0]):
                best = (a, i, j)
                if a == 1:
                    return i, j
    return None if best is None else best[1:]


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form of an integer matrix.

    Pivots are entries of least absolute value, ties broken by lowest row
    and then lowest column, which makes the output deterministic.
    """
    m, n = a.rows, a.cols
    s = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    ui = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i, k):
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]
        for r in ui:
            r[i], r[k] = r[k], r[i]

    def swap_cols(j, k):
        for r in s:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, c):
        # row[dst] += c * row[src]
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]
        for r in ui:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        for r in s:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    for t in range(min(m, n)):
        while True:
            pos = _pick_pivot(s, t, m, n)
            if pos is None:
                break
            i, j = pos
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = s[t][t]
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(s[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
            for r in ui:
                r[t] = -r[t]

    return SmithDecomposition(
        U=IntMatrix.from_rows(u, m),
        S=IntMatrix.from_rows(s, n),
        V=IntMatrix.from_rows(v, n),
        U_inv=IntMatrix.from_rows(ui, m),
    )


def invariant_factors(a: IntMatrix) -> Vector:
    """Nonzero Smith diagonal entries different from 1."""
    return tuple(d for d in smith_normal_form(a).diagonal if d > 1)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finitely generated abelian group Z/d_1 x ... x Z/d_k x Z^r.

    Elements are coordinate tuples: the first k entries reduced modulo the
    invariant factors, the last ``free_rank`` entries arbitrary integers.
    The group comes with its presentation inside an ambient lattice Z^m:
    ``project`` sends a lattice vector (lying in the top lattice) to its
    class and ``lift`` goes the other way via ``generator_lift``.

    Equality compares only the isomorphism type.
    """

    invariant_factors: Vector
    free_rank: int
    generator_lift: IntMatrix = field(compare=False, repr=False)
    # rational map from the ambient lattice to coordinates on a basis of the top lattice
    _coordinates: tuple[tuple[Fraction, ...], ...] = field(compare=False, repr=False)
    # rows that must annihilate a vector for it to lie in the top lattice
    _membership: IntMatrix = field(compare=False, repr=False)
    # from top-lattice coordinates to group coordinates
    _projection: IntMatrix = field(compare=False, repr=False)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def ambient_rank(self) -> int:
        return self.generator_lift.rows

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        prod = 1
        for d in self.invariant_factors:
            prod *= d
        return prod

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 for free coordinates."""
        return self.invariant_factors + (0,) * self.free_rank

    def reduce(self, g: Sequence[int]) -> Vector:
        return tuple(x % d if d else x for x, d in zip(g, self.moduli))

    def contains(self, v: Sequence[int]) -> bool:
        """Whether the ambient vector lies in the top lattice."""
        v = tuple(v)
        if any(x for x in self._membership @ v):
            return False
        return all(c.denominator == 1 for c in self._coords(v))

    def _coords(self, v: Vector) -> tuple[Fraction, ...]:
        return tuple(sum((c * x for c, x in zip(row, v)), Fraction(0)) for row in self._coordinates)

    def project(self, v: Sequence[int]) -> Vector:
        v = tuple(v)
        if len(v) != self.ambient_rank:
            raise ValueError(f"vector of length {len(v)} in ambient rank {self.ambient_rank}")
        if any(x for x in self._membership @ v):
            raise ContainmentError(f"{v} does not lie in the top lattice")
        coords = self._coords(v)
        if any(c.denominator != 1 for c in coords):
            raise ContainmentError(f"{v} does not lie in the top lattice")
        return self.reduce(self._projection @ tuple(int(c) for c in coords))

    def lift(self, g: Sequence[int]) -> Vector:
        return self.generator_lift @ tuple(g)

    def add(self, g: Sequence[int], h: Sequence[int]) -> Vector:
        return self.reduce(tuple(a + b for a, b in zip(g, h)))

    def elements(self) -> Iterator[Vector]:
        """All elements in lexicographic order (finite groups only)."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"


def _identity_coordinates(m: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m))


def cokernel(a: IntMatrix) -> FiniteAbelianGroup:
    """Z^rows / A Z^cols with projection data."""
    dec = smith_normal_form(a)
    m = a.rows
    diag = list(dec.diagonal) + [0] * (m - min(a.rows, a.cols))
    torsion = [i for i, d in enumerate(diag) if d > 1]
    free = [i for i, d in enumerate(diag) if d == 0]
    keep = torsion + free
    return FiniteAbelianGroup(
        invariant_factors=tuple(diag[i] for i in torsion),
        free_rank=len(free),
        generator_lift=IntMatrix.from_columns([dec.U_inv.column(i) for i in keep], m),
        _coordinates=_identity_coordinates(m),
        _membership=IntMatrix.zeros(0, m),
        _projection=IntMatrix.from_rows([dec.U.row(i) for i in keep], m),
    )


def kernel_basis(a: IntMatrix) -> list[Vector]:
    """Z-basis of {v : A v = 0}; empty when the kernel is zero."""
    dec = smith_normal_form(a)
    basis = []
    for j in range(dec.rank, a.cols):
        v = dec.V.column(j)
        lead = next(x for x in v if x)
        basis.append(v if lead > 0 else tuple(-x for x in v))
    return basis


def image_basis(a: IntMatrix) -> list[Vector]:
    """Z-basis of the column lattice A Z^cols."""
    dec = smith_normal_form(a)
    return [tuple(d * x for x in dec.U_inv.column(i)) for i, d in enumerate(dec.diagonal) if d]


def subquotient(
    top_generators: Iterable[Sequence[int]],
    bottom_generators: Iterable[Sequence[int]],
    ambient_rank: int,
) -> FiniteAbelianGroup:
    """Presentation of <top> / <bottom> inside Z^ambient_rank.

    Raises ContainmentError if a bottom generator is not an integral
    combination of the top generators.
    """
    top = [tuple(v) for v in top_generators]
    bottom = [tuple(v) for v in bottom_generators]
    for v in top + bottom:
        if len(v) != ambient_rank:
            raise ValueError(f"generator {v} not in ambient rank {ambient_rank}")

    dec = smith_normal_form(IntMatrix.from_columns(top, ambient_rank))
    diag = [d for d in dec.diagonal if d]
    r = len(diag)
    coordinates = tuple(
        tuple(Fraction(x, diag[i]) for x in dec.U.row(i)) for i in range(r)
    )
    membership = IntMatrix.from_rows([dec.U.row(i) for i in range(r, ambient_rank)], ambient_rank)

    def coords(v: Vector) -> Vector:
        if any(x for x in membership @ v):
            raise ContainmentError(f"{v} is not in the span of the top generators")
        c = tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in coordinates)
        if any(x.denominator != 1 for x in c):
            raise ContainmentError(f"{v} is not an integral combination of the top generators")
        return tuple(int(x) for x in c)

    rel = IntMatrix.from_columns([coords(b) for b in bottom], r)
    quotient = cokernel(rel)
    basis = IntMatrix.from_columns(
        [tuple(diag[i] * x for x in dec.U_inv.column(i)) for i in range(r)], ambient_rank
    )
    return FiniteAbelianGroup(
        invariant_factors=quotient.invariant_factors,
        free_rank=quotient.free_rank,
        generator_lift=basis @ quotient.generator_lift,
        _coordinates=coordinates,
        _membership=membership,
        _projection=quotient._projection,
    )


def pair(u: Sequence[int], v: Sequence[Fraction]) -> Fraction:
    """<u, v> reduced into [0, 1) for an integer vector u and rational v."""
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0)) % 1
