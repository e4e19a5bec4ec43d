"""
Exact scalars and symmetric-group bookkeeping.

Permutations are tuples in one-line notation with 1-based images, so
``(2, 3, 1)`` sends 1 -> 2, 2 -> 3, 3 -> 1.  Scalars are
:class:`fractions.Fraction`.

>>> compose((2, 1, 3), (1, 3, 2))
(2, 3, 1)
>>> reduced_word((3, 2, 1))
[1, 2, 1]
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "Scalar", "Permutation",
    "parse_scalar", "format_scalar",
    "identity", "simple_transposition", "compose", "inverse", "length",
    "reduced_word", "from_word", "left_descent", "act_positions",
    "all_permutations", "check_permutation",
]

Scalar = Fraction
Permutation = tuple[int, ...]


def parse_scalar(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction.

    Floats are refused; every coefficient must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"not an exact scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty scalar")
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed scalar: {value!r}") from None
        if q == 0:
            raise ValueError(f"zero denominator in scalar: {value!r}")
        return Fraction(p, q)
    raise ValueError(f"not a scalar: {value!r}")


def format_scalar(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def check_permutation(w: Sequence[int]) -> Permutation:
    w = tuple(int(i) for i in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"not a permutation in one-line notation: {w}")
    return w


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def simple_transposition(n: int, i: int) -> Permutation:
    if not 1 <= i <= n - 1:
        raise IndexError(f"s_{i} is not a simple transposition of S_{n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def compose(u: Sequence[int], v: Sequence[int]) -> Permutation:
    """Return ``u o v``, i.e. ``i -> u(v(i))``."""
    if len(u) != len(v):
        raise ValueError(f"size mismatch: S_{len(u)} vs S_{len(v)}")
    return tuple(u[j - 1] for j in v)


def inverse(w: Sequence[int]) -> Permutation:
    inv = [0] * len(w)
    for i, wi in enumerate(w, start=1):
        inv[wi - 1] = i
    return tuple(inv)


def length(w: Sequence[int]) -> int:
    """Number of inversions."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


@lru_cache(maxsize=None)
def _reduced_word(w: Permutation) -> tuple[int, ...]:
    # Swapping positions p, p+1 is right multiplication by s_p.  Each swap
    # moves the largest misplaced value past a smaller one, so removes one
    # inversion; at the end w * s_{p_1} ... s_{p_k} = id.
    word: list[int] = []
    current = list(w)
    for value in range(len(current), 0, -1):
        pos = current.index(value)
        while pos != value - 1:
            current[pos], current[pos + 1] = current[pos + 1], current[pos]
            word.append(pos + 1)
            pos += 1
    return tuple(reversed(word))


def reduced_word(w: Sequence[int]) -> list[int]:
    """A deterministic reduced word ``[i_1, ..., i_k]`` with
    ``w = s_{i_1} ... s_{i_k}``.

    The word is produced by repeatedly moving the largest misplaced value
    to its position with adjacent swaps.
    """
    return list(_reduced_word(tuple(w)))


def from_word(n: int, word: Iterable[int]) -> Permutation:
    w = identity(n)
    for i in word:
        w = compose(w, simple_transposition(n, i))
    return w


def left_descent(i: int, w: Sequence[int]) -> bool:
    """True iff ``length(s_i w) < length(w)``."""
    n = len(w)
    if not 1 <= i <= n - 1:
        raise IndexError(f"index {i} out of range for S_{n}")
    pos_i = w.index(i)
    pos_next = w.index(i + 1)
    return pos_i > pos_next


def act_positions(w: Sequence[int], lam: Sequence[int]) -> tuple[int, ...]:
    """Move entry ``i`` of ``lam`` to position ``w(i)``."""
    if len(w) != len(lam):
        raise ValueError(f"size mismatch: S_{len(w)} acting on length {len(lam)}")
    out = [0] * len(lam)
    for i, wi in enumerate(w):
        out[wi - 1] = lam[i]
    return tuple(out)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic one-line order."""
    return tuple(itertools.permutations(range(1, n + 1)))
