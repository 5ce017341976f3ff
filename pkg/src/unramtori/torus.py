"""Unramified tori described by their cocharacter lattice.

A torus split by the unramified extension of degree n is recorded as the
lattice Z^r together with the finite-order matrix ``f0`` by which
Frobenius acts on cocharacters, plus generators of the absolute Weyl
group acting on the same lattice.  Tate cohomology of the cyclic Galois
group is computed on the lattice itself.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import EnumerationLimitError, InvalidDatumError
from .lattice import FiniteAbelianGroup, IntMatrix, cokernel, kernel_basis, subquotient

DEFAULT_GROUP_BOUND = 40320
MAX_FROBENIUS_ORDER = 10_000
# entries of elements of a finite group of integer matrices stay bounded;
# growth past this means the generated group is infinite
_ENTRY_CAP = 1 << 20


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m)


def matrix_order(m: IntMatrix, limit: int = MAX_FROBENIUS_ORDER) -> int:
    """Least n >= 1 with m^n = 1, or InvalidDatumError past ``limit``."""
    ident = IntMatrix.identity(m.rows)
    power = m
    for n in range(1, limit + 1):
        if power == ident:
            return n
        power = power @ m
    raise InvalidDatumError(f"matrix has no finite order up to {limit}")


def _generate_arrays(generators: Sequence[IntMatrix], dim: int, bound: int) -> np.ndarray:
    ident = np.eye(dim, dtype=np.int64)
    gens = [np.array(g.to_rows(), dtype=np.int64).reshape(dim, dim) for g in generators]
    seen = {ident.tobytes()}
    elements = [ident]
    frontier = ident[None]
    while len(frontier):
        fresh = []
        for g in gens:
            products = g @ frontier
            if dim and np.abs(products).max() > _ENTRY_CAP:
                raise EnumerationLimitError("matrix entries grow without bound; group is infinite")
            for y in products:
                key = y.tobytes()
                if key in seen:
                    continue
                if len(elements) >= bound:
                    raise EnumerationLimitError(f"group order exceeds the bound {bound}")
                seen.add(key)
                elements.append(y)
                fresh.append(y)
        frontier = np.stack(fresh) if fresh else frontier[:0]
    return np.stack(elements)


def _to_matrix(a: np.ndarray) -> IntMatrix:
    return IntMatrix(a.shape[0], a.shape[1], tuple(int(x) for x in a.flat))


def generate_group(generators: Sequence[IntMatrix], dim: int, bound: int = DEFAULT_GROUP_BOUND) -> list[IntMatrix]:
    """Elements of the finite matrix group generated by ``generators``.

    Breadth-first from the identity, so the order is deterministic and the
    identity comes first.  Raises EnumerationLimitError past ``bound``.
    Entries of a finite integer matrix group stay small, so int64 is exact
    here; unbounded growth is reported as an infinite group.
    """
    return [_to_matrix(a) for a in _generate_arrays(generators, dim, bound)]


@dataclass(frozen=True)
class TorusDatum:
    """Cocharacter lattice of an unramified torus with Frobenius action.

    ``splitting_degree`` may be left as None and is then computed as the
    order of ``f0``; a declared value is checked against it.
    """

    rank: int
    f0: IntMatrix
    splitting_degree: int | None = None
    weyl_generators: tuple[IntMatrix, ...] = ()
    label: str = ""
    group_bound: int = field(default=DEFAULT_GROUP_BOUND, compare=False)

    def __post_init__(self):
        f0 = _as_matrix(self.f0)
        gens = tuple(_as_matrix(g) for g in self.weyl_generators)
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "weyl_generators", gens)
        r = self.rank
        if (f0.rows, f0.cols) != (r, r):
            raise InvalidDatumError(f"f0 is {f0.rows}x{f0.cols}, expected {r}x{r}")
        if not f0.is_unimodular():
            raise InvalidDatumError("f0 is not invertible over the integers")
        n = matrix_order(f0)
        if self.splitting_degree is not None and self.splitting_degree != n:
            raise InvalidDatumError(
                f"declared splitting degree {self.splitting_degree} but f0 has order {n}"
            )
        object.__setattr__(self, "splitting_degree", n)
        for k, g in enumerate(gens):
            if (g.rows, g.cols) != (r, r):
                raise InvalidDatumError(f"Weyl generator {k} is {g.rows}x{g.cols}, expected {r}x{r}")
            if not g.is_unimodular():
                raise InvalidDatumError(f"Weyl generator {k} is not invertible over the integers")

    @cached_property
    def f0_inverse(self) -> IntMatrix:
        return self.f0 ** (self.splitting_degree - 1)

    @cached_property
    def _weyl_arrays(self) -> np.ndarray:
        elements = _generate_arrays(self.weyl_generators, self.rank, self.group_bound)
        members = {e.tobytes() for e in elements}
        f0 = np.array(self.f0.to_rows(), dtype=np.int64).reshape(self.rank, self.rank)
        f0_inv = np.array(self.f0_inverse.to_rows(), dtype=np.int64).reshape(self.rank, self.rank)
        for k, g in enumerate(self.weyl_generators):
            conj = f0 @ np.array(g.to_rows(), dtype=np.int64).reshape(self.rank, self.rank) @ f0_inv
            if conj.tobytes() not in members:
                raise InvalidDatumError(f"f0 does not normalize the Weyl group (generator {k})")
        return elements

    @cached_property
    def _weyl_keys(self) -> frozenset:
        return frozenset(e.tobytes() for e in self._weyl_arrays)

    @cached_property
    def weyl_group(self) -> tuple[IntMatrix, ...]:
        """The absolute Weyl group, identity first.

        Enumeration also checks that conjugation by f0 preserves the group.
        """
        return tuple(_to_matrix(a) for a in self._weyl_arrays)

    @property
    def weyl_order(self) -> int:
        return len(self._weyl_arrays)

    def in_weyl_group(self, w: IntMatrix) -> bool:
        a = np.array(w.to_rows(), dtype=np.int64).reshape(self.rank, self.rank)
        return a.tobytes() in self._weyl_keys


def norm_matrix(d: TorusDatum) -> IntMatrix:
    """Sum of f0^i over 0 <= i < n."""
    total = IntMatrix.zeros(d.rank, d.rank)
    power = IntMatrix.identity(d.rank)
    for _ in range(d.splitting_degree):
        total = total + power
        power = power @ d.f0
    return total


def augmentation_matrix(d: TorusDatum) -> IntMatrix:
    """f0 - 1; its columns span the augmentation submodule since Galois is cyclic."""
    return d.f0 - IntMatrix.identity(d.rank)


def fixed_lattice(d: TorusDatum) -> list[tuple[int, ...]]:
    return kernel_basis(augmentation_matrix(d))


def tate_h0(d: TorusDatum) -> FiniteAbelianGroup:
    """Invariants modulo norms."""
    return subquotient(fixed_lattice(d), norm_matrix(d).columns(), d.rank)


def tate_hm1(d: TorusDatum) -> FiniteAbelianGroup:
    """Kernel of the norm modulo the augmentation submodule."""
    return subquotient(kernel_basis(norm_matrix(d)), augmentation_matrix(d).columns(), d.rank)


def coinvariants(d: TorusDatum) -> FiniteAbelianGroup:
    """X_*(T) modulo (f0 - 1) X_*(T)."""
    return cokernel(augmentation_matrix(d))


def is_anisotropic(d: TorusDatum) -> bool:
    return not fixed_lattice(d)


def component_group(d: TorusDatum) -> tuple[int, IntMatrix]:
    # for unramified tori the Neron component group is the cocharacter lattice itself
    return d.rank, d.f0


@dataclass(frozen=True)
class RelativeWeylGroup:
    elements: tuple[IntMatrix, ...]
    identity_index: int = 0

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, w: IntMatrix) -> int:
        return self.elements.index(w)


def relative_weyl_group(d: TorusDatum, bound: int | None = None) -> RelativeWeylGroup:
    """Elements of the absolute Weyl group commuting with f0."""
    if bound is not None and bound != d.group_bound:
        d = replace(d, group_bound=bound)
    arrays = d._weyl_arrays
    f0 = np.array(d.f0.to_rows(), dtype=np.int64).reshape(d.rank, d.rank)
    commuting = np.all(arrays @ f0 == f0 @ arrays, axis=(1, 2))
    return RelativeWeylGroup(tuple(_to_matrix(a) for a in arrays[commuting]))
