"""Named torus data for the standard worked examples."""

from __future__ import annotations

import re
from functools import lru_cache

from .lattice import IntMatrix
from .torus import TorusDatum

MAX_PRESET_N = 8


def permutation_matrix(perm) -> IntMatrix:
    """Matrix sending e_j to e_perm[j]."""
    n = len(perm)
    return IntMatrix.from_rows([[int(perm[j] == i) for j in range(n)] for i in range(n)], n)


def cyclic_shift(n: int) -> IntMatrix:
    return permutation_matrix([(j + 1) % n for j in range(n)])


def symmetric_group_generators(n: int) -> list[IntMatrix]:
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(permutation_matrix(p))
    return gens


def gl_elliptic(n: int) -> TorusDatum:
    """Res_{K_n/K} G_m as the elliptic maximal torus of GL_n; W = S_n."""
    return TorusDatum(n, cyclic_shift(n), n, tuple(symmetric_group_generators(n)), f"gl({n})-elliptic")


def restriction_of_scalars(n: int) -> TorusDatum:
    """Res_{K_n/K} G_m on its own, with trivial Weyl group."""
    return TorusDatum(n, cyclic_shift(n), n, (), f"res({n})")


def sl2_norm_one() -> TorusDatum:
    """Unramified anisotropic torus of SL_2: rank 1, Frobenius -1, W = {+-1}."""
    minus = IntMatrix.from_rows([[-1]])
    return TorusDatum(1, minus, 2, (minus,), "sl2-normone")


def sl3_split() -> TorusDatum:
    """Split torus of SL_3 in the cocharacter basis e1 - e3, e2 - e3; W = S_3."""
    s1 = IntMatrix.from_rows([[0, 1], [1, 0]])
    s2 = IntMatrix.from_rows([[1, 0], [-1, -1]])
    return TorusDatum(2, IntMatrix.identity(2), 1, (s1, s2), "sl3-split")


PRESET_NAMES = (
    [f"gl({n})-elliptic" for n in range(1, MAX_PRESET_N + 1)]
    + ["sl2-normone", "sl3-split"]
    + [f"res({n})" for n in range(1, MAX_PRESET_N + 1)]
)

_PATTERN = re.compile(r"^(gl|res)\(?(\d+)\)?(-elliptic)?$")


@lru_cache(maxsize=None)
def preset(name: str) -> TorusDatum:
    key = name.strip().lower()
    if key == "sl2-normone":
        return sl2_norm_one()
    if key == "sl3-split":
        return sl3_split()
    if key == "gl1":
        return gl_elliptic(1)
    m = _PATTERN.match(key)
    if m:
        kind, n, suffix = m.group(1), int(m.group(2)), m.group(3)
        if 1 <= n <= MAX_PRESET_N:
            if kind == "gl" and suffix:
                return gl_elliptic(n)
            if kind == "res" and not suffix:
                return restriction_of_scalars(n)
    raise KeyError(f"unknown preset {name!r}; known presets: {', '.join(PRESET_NAMES)}")
