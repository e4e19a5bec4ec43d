"""
Laurent polynomials with coefficients in ``A^{(x)n}``.

A :class:`LaurentElement` is a sparse map ``(basis tuple, exponent vector)
-> Fraction``.  The ``X_i`` are even and central, so products multiply the
tensor parts with Koszul signs and add exponents.

Demazure operators are computed from the telescoping closed form on
monomials in ``X_i, X_{i+1}`` and extended linearly in everything else;
no rational function is ever formed.

>>> from qawa.superalgebra import preset
>>> A = preset("trivial")
>>> demazure(1, x_monomial(A, (2, 0)))
-X1*X2 - X2^2
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .combinatorics import (
    Permutation, act_positions, check_permutation, format_scalar,
)
from .superalgebra import SymmetricSuperalgebra, TensorElement, _add_into

__all__ = [
    "LaurentElement", "x_monomial", "from_tensor", "mul_poly", "act", "demazure",
    "twisted_demazure", "random_laurent", "format_monomial",
]

Exponents = tuple[int, ...]
PolyKey = tuple[tuple[int, ...], Exponents]

RANDOM_COEFFS = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2))


def format_monomial(lam: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(lam, start=1):
        if e == 1:
            parts.append(f"X{i}")
        elif e:
            parts.append(f"X{i}^{e}")
    return "*".join(parts)


class LaurentElement:
    __slots__ = ("algebra", "n", "terms")

    def __init__(self, algebra: SymmetricSuperalgebra, n: int,
                 terms: Mapping[PolyKey, Fraction] | None = None):
        self.algebra = algebra
        self.n = n
        self.terms: dict[PolyKey, Fraction] = {}
        for (a, lam), c in (terms or {}).items():
            a, lam = tuple(a), tuple(lam)
            if len(a) != n or len(lam) != n:
                raise ValueError(f"term {(a, lam)} does not have length {n}")
            if c:
                _add_into(self.terms, (a, lam), Fraction(c))

    def _check(self, other):
        if not isinstance(other, LaurentElement) or other.algebra is not self.algebra \
                or other.n != self.n:
            raise ValueError("Laurent elements live in different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return LaurentElement(self.algebra, self.n, out)

    def __neg__(self):
        return LaurentElement(self.algebra, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentElement):
            return mul_poly(self, other)
        c = Fraction(other)
        return LaurentElement(self.algebra, self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.algebra is other.algebra and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(e >= 0 for (_, lam) in self.terms for e in lam)

    def __repr__(self):
        if not self.terms:
            return "0"
        trivial = self.algebra.m == 1
        names = self.algebra.names
        parts = []
        for (a, lam) in sorted(self.terms, key=lambda k: (tuple(reversed(k[1])), k[0])):
            c = self.terms[(a, lam)]
            factors = []
            if not trivial:
                factors.append("(" + "(x)".join(names[k] for k in a) + ")")
            mono = format_monomial(lam)
            if mono:
                factors.append(mono)
            body = "*".join(factors) or "1"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_scalar(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def x_monomial(algebra: SymmetricSuperalgebra, lam: Sequence[int],
               a: Sequence[int] | None = None, coeff=1) -> LaurentElement:
    """``coeff * a * X^lam`` (``a`` defaults to the unit tuple)."""
    n = len(lam)
    if a is None:
        if algebra.unit_index is None:
            return from_tensor(TensorElement.one(algebra, n), lam) * coeff
        a = (algebra.unit_index,) * n
    return LaurentElement(algebra, n, {(tuple(a), tuple(lam)): coeff})


def from_tensor(x: TensorElement, lam: Sequence[int] | None = None) -> LaurentElement:
    lam = tuple(lam) if lam is not None else (0,) * x.n
    return LaurentElement(x.algebra, x.n, {(a, lam): c for a, c in x.terms.items()})


def mul_terms(algebra: SymmetricSuperalgebra, f: Mapping[PolyKey, Fraction],
              g: Mapping[PolyKey, Fraction]) -> dict[PolyKey, Fraction]:
    out: dict[PolyKey, Fraction] = {}
    mt = algebra.mul_tuples
    for (a, lam), c in f.items():
        for (b, mu), d in g.items():
            nu = tuple(x + y for x, y in zip(lam, mu))
            cd = c * d
            for key, v in mt(a, b):
                _add_into(out, (key, nu), cd * v)
    return out


def mul_poly(f: LaurentElement, g: LaurentElement) -> LaurentElement:
    f._check(g)
    return LaurentElement(f.algebra, f.n, mul_terms(f.algebra, f.terms, g.terms))


def act_terms(algebra: SymmetricSuperalgebra, w: Permutation,
              f: Mapping[PolyKey, Fraction], diagonal: bool) -> dict[PolyKey, Fraction]:
    out: dict[PolyKey, Fraction] = {}
    for (a, lam), c in f.items():
        mu = act_positions(w, lam)
        if diagonal:
            sign, b = algebra.permute_tuple(w, a)
            _add_into(out, (b, mu), sign * c)
        else:
            _add_into(out, (a, mu), c)
    return out


def act(w: Sequence[int], f: LaurentElement, mode: str = "diagonal") -> LaurentElement:
    """``w(f)`` (``mode="diagonal"``) or ``^w f`` (``mode="x_only"``)."""
    if mode not in ("diagonal", "x_only"):
        raise ValueError(f"unknown action mode {mode!r}")
    w = check_permutation(w)
    if len(w) != f.n:
        raise ValueError(f"size mismatch: S_{len(w)} acting on P_{f.n}")
    return LaurentElement(f.algebra, f.n, act_terms(f.algebra, w, f.terms, mode == "diagonal"))


@lru_cache(maxsize=None)
def demazure_monomial(i: int, lam: Exponents) -> tuple[tuple[Exponents, int], ...]:
    """Closed form of ``Delta_i(X^lam)`` as ``((exponents, coeff), ...)``."""
    p, q = lam[i - 1], lam[i]
    if p == q:
        return ()
    if q > p:
        k, ell, sign = p, q - p, 1
    else:
        k, ell, sign = q, p - q, -1
    out = []
    for r in range(ell):
        mu = list(lam)
        mu[i - 1] = k + r
        mu[i] = k + ell - r
        out.append((tuple(mu), sign))
    return tuple(out)


def demazure_terms(i: int, f: Mapping[PolyKey, Fraction]) -> dict[PolyKey, Fraction]:
    out: dict[PolyKey, Fraction] = {}
    for (a, lam), c in f.items():
        for mu, s in demazure_monomial(i, lam):
            _add_into(out, (a, mu), s * c)
    return out


def twisted_demazure_terms(i: int, f: Mapping[PolyKey, Fraction]) -> dict[PolyKey, Fraction]:
    # X_{i+1}^{-1} Delta_i(X_{i+1} f), by shifting exponents around Delta_i
    out: dict[PolyKey, Fraction] = {}
    for (a, lam), c in f.items():
        up = list(lam)
        up[i] += 1
        for mu, s in demazure_monomial(i, tuple(up)):
            down = list(mu)
            down[i] -= 1
            _add_into(out, (a, tuple(down)), s * c)
    return out


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n - 1:
        raise IndexError(f"Demazure index {i} out of range for n={n}")


def demazure(i: int, f: LaurentElement) -> LaurentElement:
    """``Delta_i(f) = (f - ^{s_i}f) / (1 - X_i X_{i+1}^{-1})``, A-linearly."""
    _check_index(i, f.n)
    return LaurentElement(f.algebra, f.n, demazure_terms(i, f.terms))


def twisted_demazure(i: int, f: LaurentElement) -> LaurentElement:
    """``X_{i+1}^{-1} Delta_i(X_{i+1} f)``."""
    _check_index(i, f.n)
    shift = [0] * f.n
    shift[i] = 1
    up = mul_poly(x_monomial(f.algebra, shift), f)
    shift[i] = -1
    return mul_poly(x_monomial(f.algebra, shift), demazure(i, up))


def random_laurent(algebra: SymmetricSuperalgebra, n: int, rng: random.Random,
                   max_terms: int = 5, max_exp: int = 3, nonnegative: bool = False,
                   tuples: Sequence[tuple[int, ...]] | None = None) -> LaurentElement:
    """A seeded random element: at most ``max_terms`` terms, ``|lam_i| <= max_exp``."""
    terms: dict[PolyKey, Fraction] = {}
    lo = 0 if nonnegative else -max_exp
    for _ in range(rng.randint(1, max_terms)):
        if tuples is None:
            a = tuple(rng.randrange(algebra.m) for _ in range(n))
        else:
            a = tuple(rng.choice(tuples))
        lam = tuple(rng.randint(lo, max_exp) for _ in range(n))
        _add_into(terms, (a, lam), rng.choice(RANDOM_COEFFS))
    return LaurentElement(algebra, n, terms)
