"""Tits group of GL_n realized by signed permutation matrices.

Permutations are 0-indexed one-line tuples: ``perm[j]`` is the image of j.
Simple reflections are numbered 1..n-1, s_i swapping i-1 and i in 0-indexed
terms (i and i+1 in the usual 1-indexed ones).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import EnumerationLimitError

DEFAULT_KERNEL_BOUND = 6

Permutation = tuple[int, ...]


def compose(p: Permutation, r: Permutation) -> Permutation:
    """p after r."""
    return tuple(p[x] for x in r)


def invert(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for j, x in enumerate(p):
        inv[x] = j
    return tuple(inv)


def simple_transposition(i: int, n: int) -> Permutation:
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple reflection index {i} outside 1..{n - 1}")
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def inversions(p: Permutation) -> int:
    return sum(1 for a, b in itertools.combinations(p, 2) if a > b)


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def coxeter_permutation(n: int, order: Sequence[int] | None = None) -> Permutation:
    """Product of all simple reflections, each once, in the given order (default 1..n-1)."""
    order = range(1, n) if order is None else order
    p = tuple(range(n))
    for i in order:
        p = compose(p, simple_transposition(i, n))
    return p


@dataclass(frozen=True)
class MonomialMatrix:
    """n x n matrix with entry ``signs[j]`` at (perm[j], j) and zeros elsewhere."""

    perm: Permutation
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"{self.perm} is not a permutation")
        if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"bad sign vector {self.signs}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> MonomialMatrix:
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def scalar(cls, n: int, s: int) -> MonomialMatrix:
        return cls(tuple(range(n)), (s,) * n)

    @classmethod
    def diagonal(cls, signs: Sequence[int]) -> MonomialMatrix:
        return cls(tuple(range(len(signs))), tuple(signs))

    def __matmul__(self, other: MonomialMatrix) -> MonomialMatrix:
        # (A B) e_j = s^B_j s^A_{pi_B(j)} e_{pi_A(pi_B(j))}
        if self.n != other.n:
            raise ValueError("size mismatch")
        return MonomialMatrix(
            compose(self.perm, other.perm),
            tuple(sb * self.signs[pb] for pb, sb in zip(other.perm, other.signs)),
        )

    def inverse(self) -> MonomialMatrix:
        inv = invert(self.perm)
        return MonomialMatrix(inv, tuple(self.signs[inv[j]] for j in range(self.n)))

    @property
    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.n))

    def scalar_value(self) -> int | None:
        """The scalar c if this matrix is c * I, else None."""
        if self.is_diagonal and len(set(self.signs)) <= 1:
            return self.signs[0] if self.n else 1
        return None

    def to_rows(self) -> list[list[int]]:
        rows = [[0] * self.n for _ in range(self.n)]
        for j, (i, s) in enumerate(zip(self.perm, self.signs)):
            rows[i][j] = s
        return rows


class WeylWord(NamedTuple):
    letters: tuple[int, ...]
    reduced: bool


def word_permutation(letters: Sequence[int], n: int) -> Permutation:
    p = tuple(range(n))
    for i in letters:
        p = compose(p, simple_transposition(i, n))
    return p


def simple_lift(i: int, n: int) -> MonomialMatrix:
    """The block [[0, 1], [-1, 0]] in rows/columns i, i+1 (1-indexed)."""
    perm = simple_transposition(i, n)
    signs = [1] * n
    signs[i - 1] = -1  # column i maps to -e_{i+1}
    return MonomialMatrix(perm, tuple(signs))


def m_alpha(i: int, n: int) -> MonomialMatrix:
    """Coroot evaluated at -1: the square of the simple lift."""
    signs = [1] * n
    signs[i - 1] = signs[i] = -1
    return MonomialMatrix.diagonal(signs)


def reduced_word(perm: Permutation) -> WeylWord:
    """A reduced word for ``perm``, peeling off the leftmost right descent each time."""
    p = list(perm)
    letters = []
    while True:
        i = next((i for i in range(len(p) - 1) if p[i] > p[i + 1]), None)
        if i is None:
            break
        p[i], p[i + 1] = p[i + 1], p[i]
        letters.append(i + 1)
    return WeylWord(tuple(reversed(letters)), True)


def all_reduced_words(perm: Permutation) -> list[tuple[int, ...]]:
    """Every reduced word of ``perm`` (exponential; meant for small n)."""
    p = tuple(perm)
    if inversions(p) == 0:
        return [()]
    words = []
    for i in range(len(p) - 1):
        if p[i] > p[i + 1]:
            shorter = list(p)
            shorter[i], shorter[i + 1] = shorter[i + 1], shorter[i]
            words.extend(w + (i + 1,) for w in all_reduced_words(tuple(shorter)))
    return words


def lift_word(letters: Sequence[int], n: int) -> MonomialMatrix:
    m = MonomialMatrix.identity(n)
    for i in letters:
        m = m @ simple_lift(i, n)
    return m


def canonical_lift(perm: Permutation) -> MonomialMatrix:
    return lift_word(reduced_word(perm).letters, len(perm))


def tits_power(m: MonomialMatrix, k: int) -> MonomialMatrix:
    if k < 0:
        raise ValueError("k must be non-negative")
    result, base = MonomialMatrix.identity(m.n), m
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


# integer polynomials are coefficient tuples, constant term first

def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def format_poly(coeffs: Sequence[int], var: str = "X") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def char_poly(m: MonomialMatrix) -> tuple[int, ...]:
    """det(X - M), one factor X^l - (sign product) per cycle of length l."""
    result: tuple[int, ...] = (1,)
    for cyc in cycles(m.perm):
        s = 1
        for j in cyc:
            s *= m.signs[j]
        factor = [0] * (len(cyc) + 1)
        factor[0], factor[-1] = -s, 1
        result = poly_mul(result, factor)
    return result


def enumerate_tits_group(n: int) -> list[MonomialMatrix]:
    """Closure of the simple lifts under multiplication, breadth-first."""
    ident = MonomialMatrix.identity(n)
    gens = [simple_lift(i, n) for i in range(1, n)]
    seen = {ident}
    queue = deque([ident])
    order = [ident]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def _closure(gens: Sequence[MonomialMatrix], n: int) -> set[MonomialMatrix]:
    ident = MonomialMatrix.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


class KernelReport(NamedTuple):
    n: int
    group_order: int
    kernel_order: int
    t2_order: int
    kernel_equals_t2: bool


def kernel_is_t2(n: int, bound: int = DEFAULT_KERNEL_BOUND) -> KernelReport:
    """Kernel of projecting the Tits group to permutations versus <m_alpha>."""
    if n > bound:
        raise EnumerationLimitError(f"n = {n} exceeds the enumeration bound {bound}")
    group = enumerate_tits_group(n)
    kernel = {g for g in group if g.is_diagonal}
    t2 = _closure([m_alpha(i, n) for i in range(1, n)], n)
    return KernelReport(n, len(group), len(kernel), len(t2), kernel == t2)


def lift_not_homomorphism_witness(n: int) -> tuple[Permutation, Permutation] | None:
    """First pair (u, v) with lift(uv) != lift(u) lift(v), or None."""
    perms = list(itertools.permutations(range(n)))
    lifts = {p: canonical_lift(p) for p in perms}
    for u in perms:
        for v in perms:
            if lifts[compose(u, v)] != lifts[u] @ lifts[v]:
                return u, v
    return None
