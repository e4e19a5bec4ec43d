"""
Quantum affine wreath algebras ``H_n^aff(A, z)`` and their finite parts.

Elements are stored in the left normal form ``sum c * a X^lam T_w`` with
``a`` a tuple of basis indices of ``A``, ``lam`` an integer vector and ``w``
a permutation.  Products are computed through the faithful representation
on ``P_n(A) (x) span{T_w}``: the left factor is split into ``a X^lam`` and a
reduced word for ``T_w``, and the generators act right-to-left on the right
factor.  ``T_i`` acts by a Demazure operator on ascents and by the twisted
Demazure operator on descents.

>>> from qawa.superalgebra import preset
>>> H = AffineAlgebra(preset("trivial"), 2, 1)
>>> H.T(1) * H.T(1)
1 + T[2, 1]
>>> H.T(1) * H.X(1)
-X2 + X2*T[2, 1]
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .combinatorics import (
    Permutation, all_permutations, check_permutation, compose, format_scalar, from_word,
    identity, inverse, left_descent, length, parse_scalar, reduced_word,
    simple_transposition,
)
from .laurent import (
    LaurentElement, act_terms, demazure_monomial, format_monomial,
)
from .superalgebra import (
    NotInvertibleError, SymmetricSuperalgebra, TensorElement, _add_into,
    slot_element, teleporter,
)

__all__ = [
    "AffineAlgebra", "AffineElement", "GeneratorTag", "SymmetryError",
    "term_sort_key", "random_affine",
]

Key = tuple[tuple[int, ...], tuple[int, ...], Permutation]


class SymmetryError(ValueError):
    pass


def term_sort_key(key: Key):
    """Printing order: w lexicographic, then lam with position n most
    significant, then the basis tuple."""
    a, lam, w = key
    return (w, tuple(reversed(lam)), a)


@dataclass(frozen=True)
class GeneratorTag:
    """A generator of the defining presentation.

    ``kind`` is one of ``T``, ``Tinv``, ``X`` (with ``i`` and exponent ``e``
    equal to +1 or -1), ``tensor`` (``value`` a TensorElement) or ``poly``
    (``value`` a LaurentElement).
    """
    kind: str
    i: int | None = None
    e: int = 1
    value: Any = None


class AffineElement:
    __slots__ = ("parent", "terms")

    def __init__(self, parent: "AffineAlgebra", terms: Mapping[Key, Fraction] | None = None,
                 _clean: bool = False):
        self.parent = parent
        if _clean:
            self.terms = dict(terms)
        else:
            self.terms = {}
            for key, c in (terms or {}).items():
                if c:
                    _add_into(self.terms, key, Fraction(c))

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, AffineElement) or other.parent is not self.parent:
            raise ValueError("elements belong to different algebras (n, z or A differ)")

    def __add__(self, other):
        if not isinstance(other, AffineElement):
            other = self.parent.one() * other
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return AffineElement(self.parent, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return AffineElement(self.parent, {k: -c for k, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AffineElement):
            return self.parent.mul(self, other)
        c = parse_scalar(other) if isinstance(other, str) else Fraction(other)
        if not c:
            return AffineElement(self.parent)
        return AffineElement(self.parent, {k: c * v for k, v in self.terms.items()}, _clean=True)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported; use inverse generators")
        out = self.parent.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.parent.one() * other
        if not isinstance(other, AffineElement):
            return NotImplemented
        return self.parent is other.parent and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure --------------------------------------------------------

    def parity_components(self) -> dict[int, "AffineElement"]:
        A = self.parent.A
        parts: dict[int, dict] = {}
        for key, c in self.terms.items():
            parts.setdefault(A.tuple_parity(key[0]), {})[key] = c
        return {p: AffineElement(self.parent, t, _clean=True) for p, t in parts.items()}

    def parity(self) -> int | None:
        parts = self.parity_components()
        return next(iter(parts)) if len(parts) == 1 else None

    def is_finite(self) -> bool:
        """True if no term involves any X (the element lies in H_n(A, z))."""
        return all(not any(lam) for (_, lam, _) in self.terms)

    def max_exponent(self) -> int:
        return max((e for (_, lam, _) in self.terms for e in lam), default=0)

    def min_exponent(self) -> int:
        return min((e for (_, lam, _) in self.terms for e in lam), default=0)

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def __repr__(self):
        return self.parent.format(self.terms)

    def to_json(self) -> list[dict]:
        return [
            {"a": list(a), "lambda": list(lam), "w": list(w), "coeff": format_scalar(c)}
            for (a, lam, w), c in self.sorted_terms()
        ]


class AffineAlgebra:
    """``H_n^aff(A, z)`` for a validated algebra ``A``, ``n >= 1`` and rational ``z``."""

    def __init__(self, A: SymmetricSuperalgebra, n: int, z=0):
        if n < 1:
            raise ValueError("n must be positive")
        self.A = A
        self.n = n
        self.z = parse_scalar(z) if isinstance(z, str) else Fraction(z)
        self.e = identity(n)
        self.zero_lam = (0,) * n
        one = TensorElement.one(A, n)
        self.unit_terms = one.terms
        self._tele = {
            i: tuple(teleporter(A, n, i, i + 1).terms.items()) for i in range(1, n)
        }
        self._act_cache: dict = {}
        self._jm: dict[int, AffineElement] = {}
        self._jm_inv: dict[int, AffineElement] = {}

    def __repr__(self):
        return f"AffineAlgebra({self.A!r}, n={self.n}, z={format_scalar(self.z)})"

    # -- constructors -----------------------------------------------------

    def element(self, terms: Mapping[Key, Fraction]) -> AffineElement:
        clean = {}
        for (a, lam, w), c in terms.items():
            a, lam, w = tuple(a), tuple(lam), check_permutation(w)
            if len(a) != self.n or len(lam) != self.n or len(w) != self.n:
                raise ValueError(f"term {(a, lam, w)} does not fit n={self.n}")
            if any(not 0 <= k < self.A.m for k in a):
                raise IndexError(f"basis index out of range in {a}")
            _add_into(clean, (a, lam, w), Fraction(c))
        return AffineElement(self, clean, _clean=True)

    def zero(self) -> AffineElement:
        return AffineElement(self)

    def one(self) -> AffineElement:
        return AffineElement(self, {(a, self.zero_lam, self.e): c
                                    for a, c in self.unit_terms.items()}, _clean=True)

    def _index(self, i: int, top: int, what: str) -> None:
        if not 1 <= i <= top:
            raise IndexError(f"{what} index {i} out of range for n={self.n}")

    def T(self, i: int) -> AffineElement:
        self._index(i, self.n - 1, "T")
        w = simple_transposition(self.n, i)
        return AffineElement(self, {(a, self.zero_lam, w): c
                                    for a, c in self.unit_terms.items()}, _clean=True)

    def teleporter(self, i: int, j: int) -> AffineElement:
        return self.tensor(teleporter(self.A, self.n, i, j))

    def Tinv(self, i: int) -> AffineElement:
        """``T_i^{-1} = T_i - z t_{i,i+1}``."""
        self._index(i, self.n - 1, "T")
        return self.T(i) - self.teleporter(i, i + 1) * self.z

    def X(self, i: int, e: int = 1) -> AffineElement:
        self._index(i, self.n, "X")
        lam = [0] * self.n
        lam[i - 1] = e
        return self.monomial(lam)

    def monomial(self, lam: Sequence[int]) -> AffineElement:
        lam = tuple(lam)
        return AffineElement(self, {(a, lam, self.e): c for a, c in self.unit_terms.items()},
                             _clean=True)

    def tensor(self, x: TensorElement | Sequence[int]) -> AffineElement:
        if not isinstance(x, TensorElement):
            x = TensorElement(self.A, self.n, {tuple(x): 1})
        if x.algebra is not self.A or x.n != self.n:
            raise ValueError("tensor element does not match this algebra")
        return AffineElement(self, {(a, self.zero_lam, self.e): c for a, c in x.terms.items()},
                             _clean=True)

    def slot(self, i: int, a) -> AffineElement:
        """``a_i``: an element of A (name, index or vector) placed in slot i."""
        self._index(i, self.n, "slot")
        return self.tensor(slot_element(self.A, self.n, i, self.A.element(a)))

    def poly(self, f: LaurentElement) -> AffineElement:
        if f.algebra is not self.A or f.n != self.n:
            raise ValueError("Laurent element does not match this algebra")
        return AffineElement(self, {(a, lam, self.e): c for (a, lam), c in f.terms.items()},
                             _clean=True)

    def generator(self, tag: GeneratorTag) -> AffineElement:
        if tag.kind == "T":
            return self.T(tag.i)
        if tag.kind == "Tinv":
            return self.Tinv(tag.i)
        if tag.kind == "X":
            if tag.e not in (1, -1):
                raise ValueError("X generator exponent must be +1 or -1")
            return self.X(tag.i, tag.e)
        if tag.kind == "tensor":
            return self.tensor(tag.value)
        if tag.kind == "poly":
            return self.poly(tag.value)
        raise ValueError(f"unknown generator kind {tag.kind!r}")

    def t_w(self, w: Sequence[int], word: Sequence[int] | None = None) -> AffineElement:
        """``T_w`` as the product of ``T_i`` along a reduced word."""
        w = check_permutation(w)
        if len(w) != self.n:
            raise ValueError(f"permutation of size {len(w)} given for n={self.n}")
        if word is None:
            return AffineElement(self, {(a, self.zero_lam, w): c
                                        for a, c in self.unit_terms.items()}, _clean=True)
        word = list(word)
        if len(word) != length(w) or from_word(self.n, word) != w:
            raise ValueError(f"word {word} is not a reduced word for {w}")
        out = self.one()
        for i in word:
            out = out * self.T(i)
        return out

    # -- the representation ----------------------------------------------

    def _act_T_basis(self, i: int, key: Key) -> tuple[tuple[Key, Fraction], ...]:
        cached = self._act_cache.get((i, key))
        if cached is not None:
            return cached
        a, lam, w = key
        A = self.A
        n = self.n
        s = simple_transposition(n, i)
        out: dict[Key, Fraction] = {}
        sign, sa = A.permute_tuple(s, a)
        slam = list(lam)
        slam[i - 1], slam[i] = slam[i], slam[i - 1]
        out[(sa, tuple(slam), compose(s, w))] = Fraction(sign)
        if self.z:
            if left_descent(i, w):
                up = list(lam)
                up[i] += 1
                dem = []
                for mu, sg in demazure_monomial(i, tuple(up)):
                    down = list(mu)
                    down[i] -= 1
                    dem.append((tuple(down), sg))
            else:
                dem = demazure_monomial(i, lam)
            mt = A.mul_tuples
            for mu, sg in dem:
                for b, tc in self._tele[i]:
                    for key2, v in mt(b, a):
                        _add_into(out, (key2, mu, w), self.z * tc * sg * v)
        result = tuple(out.items())
        self._act_cache[(i, key)] = result
        return result

    def act_T(self, i: int, terms: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
        """Left action of ``T_i`` on an element of the module, given as terms."""
        out: dict[Key, Fraction] = {}
        for key, c in terms.items():
            for key2, v in self._act_T_basis(i, key):
                _add_into(out, key2, c * v)
        return out

    def mul(self, x: AffineElement, y: AffineElement) -> AffineElement:
        x._check(y)
        if not x.terms or not y.terms:
            return AffineElement(self)
        by_w: dict[Permutation, dict] = {}
        for (a, lam, w), c in x.terms.items():
            by_w.setdefault(w, {})[(a, lam)] = c
        memo: dict[Permutation, dict[Key, Fraction]] = {self.e: y.terms}

        def t_on_y(w: Permutation) -> dict[Key, Fraction]:
            got = memo.get(w)
            if got is None:
                i = reduced_word(w)[0]
                rest = compose(simple_transposition(self.n, i), w)
                got = self.act_T(i, t_on_y(rest))
                memo[w] = got
            return got

        out: dict[Key, Fraction] = {}
        mt = self.A.mul_tuples
        for w, g in by_w.items():
            ty = t_on_y(w)
            for (a, lam), c in g.items():
                for (b, mu, v), d in ty.items():
                    nu = tuple(p + q for p, q in zip(lam, mu))
                    cd = c * d
                    for key, s in mt(a, b):
                        _add_into(out, (key, nu, v), cd * s)
        return AffineElement(self, out, _clean=True)

    # -- normal forms -----------------------------------------------------

    def to_right_normal_form(self, x: AffineElement) -> dict[tuple[Permutation, tuple, tuple], Fraction]:
        """Coefficients in the basis ``T_w a X^lam``, keyed ``(w, a, lam)``."""
        x._check(x)
        remaining = dict(x.terms)
        right: dict[tuple, Fraction] = {}
        guard = 0
        while remaining:
            guard += 1
            if guard > 100000:
                raise RuntimeError("right normal form did not terminate")
            w = max((k[2] for k in remaining), key=lambda v: (length(v), v))
            g = {(a, lam): c for (a, lam, v), c in remaining.items() if v == w}
            h = act_terms(self.A, inverse(w), g, diagonal=True)
            for (a, lam), c in h.items():
                _add_into(right, (w, a, lam), c)
            hT = self.t_w(w) * AffineElement(
                self, {(a, lam, self.e): c for (a, lam), c in h.items()}, _clean=True)
            for key, c in hT.terms.items():
                _add_into(remaining, key, -c)
            if any(k[2] == w for k in remaining):
                raise RuntimeError("leading term did not cancel in right normal form")
        return right

    def from_right_normal_form(self, right: Mapping[tuple, Fraction]) -> AffineElement:
        out = AffineElement(self)
        for (w, a, lam), c in right.items():
            f = AffineElement(self, {(tuple(a), tuple(lam), self.e): Fraction(c)}, _clean=True)
            out = out + self.t_w(check_permutation(w)) * f
        return out

    # -- Jucys-Murphy elements and evaluation --------------------------------

    def jucys_murphy(self, i: int) -> AffineElement:
        self._index(i, self.n, "Jucys-Murphy")
        if i not in self._jm:
            if i == 1:
                self._jm[1] = self.one()
            else:
                T = self.T(i - 1)
                self._jm[i] = T * self.jucys_murphy(i - 1) * T
        return self._jm[i]

    def jucys_murphy_inverse(self, i: int) -> AffineElement:
        self._index(i, self.n, "Jucys-Murphy")
        if i not in self._jm_inv:
            if i == 1:
                self._jm_inv[1] = self.one()
            else:
                Ti = self.Tinv(i - 1)
                self._jm_inv[i] = Ti * self.jucys_murphy_inverse(i - 1) * Ti
        return self._jm_inv[i]

    def eval_jm(self, x: AffineElement) -> AffineElement:
        """Image under ``X_i -> J_i``, identity on ``A^{(x)n}`` and ``T_w``."""
        x._check(x)
        powers: dict[tuple[int, int], AffineElement] = {}

        def jpow(i: int, k: int) -> AffineElement:
            if (i, k) not in powers:
                if k == 0:
                    powers[(i, k)] = self.one()
                elif k > 0:
                    powers[(i, k)] = jpow(i, k - 1) * self.jucys_murphy(i)
                else:
                    powers[(i, k)] = jpow(i, k + 1) * self.jucys_murphy_inverse(i)
            return powers[(i, k)]

        groups: dict[tuple, dict] = {}
        for (a, lam, w), c in x.terms.items():
            groups.setdefault((lam, w), {})[a] = c
        out = AffineElement(self)
        for (lam, w), tensor_terms in groups.items():
            jm = self.one()
            for i, k in enumerate(lam, start=1):
                if k:
                    jm = jm * jpow(i, k)
            left = AffineElement(self, {(a, self.zero_lam, self.e): c
                                        for a, c in tensor_terms.items()}, _clean=True)
            out = out + left * (jm * self.t_w(w))
        return out

    # -- centre ---------------------------------------------------------------

    def _tensor_supercentral(self, tensor_terms: Mapping[tuple, Fraction]) -> bool:
        A = self.A
        parts: dict[int, dict] = {}
        for a, c in tensor_terms.items():
            parts.setdefault(A.tuple_parity(a), {})[a] = c
        for p, part in parts.items():
            x = TensorElement(A, self.n, part)
            for k in range(1, self.n + 1):
                for b in range(A.m):
                    e = slot_element(A, self.n, k, {b: Fraction(1)})
                    sign = -1 if p and A.parity[b] else 1
                    if x * e != (e * x) * sign:
                        return False
        return True

    def make_central(self, g: LaurentElement) -> AffineElement:
        """Orbit sum ``sum_w w(g)`` of g under the diagonal action, embedded."""
        if g.algebra is not self.A or g.n != self.n:
            raise ValueError("Laurent element does not match this algebra")
        by_lam: dict[tuple, dict] = {}
        for (a, lam), c in g.terms.items():
            by_lam.setdefault(lam, {})[a] = c
        for lam, tensor_terms in by_lam.items():
            if not self._tensor_supercentral(tensor_terms):
                raise ValueError(f"coefficient of X^{list(lam)} is not in Z(A)^(x){self.n}")
        total: dict = {}
        for w in all_permutations(self.n):
            for key, c in act_terms(self.A, w, g.terms, diagonal=True).items():
                _add_into(total, key, c)
        return AffineElement(self, {(a, lam, self.e): c for (a, lam), c in total.items()},
                             _clean=True)

    def central_test_generators(self) -> list[tuple[str, AffineElement, int]]:
        gens = [(f"T{i}", self.T(i), 0) for i in range(1, self.n)]
        gens.append(("X1", self.X(1), 0))
        for b in range(self.A.m):
            gens.append((f"{self.A.names[b]}_1", self.slot(1, b), self.A.parity[b]))
        return gens

    def is_central(self, x: AffineElement) -> bool:
        """Supercommutation with T_i, X_1 and every basis element in slot 1,
        tested on each parity component of x."""
        x._check(x)
        gens = self.central_test_generators()
        for p, part in x.parity_components().items():
            for _, g, q in gens:
                lhs = part * g
                rhs = g * part
                if p and q:
                    rhs = -rhs
                if lhs != rhs:
                    return False
        return True

    # -- symmetries -----------------------------------------------------------

    def _validate_map(self, images: Sequence[Mapping[int, Fraction]], anti: bool
                      ) -> tuple[dict[int, Fraction], ...]:
        A = self.A
        if len(images) != A.m:
            raise SymmetryError(f"map must give {A.m} images")
        imgs = tuple({int(k): Fraction(v) for k, v in dict(img).items() if Fraction(v)}
                     for img in images)

        def apply(vec):
            out: dict[int, Fraction] = {}
            for k, c in vec.items():
                for j, v in imgs[k].items():
                    _add_into(out, j, c * v)
            return out

        for k, img in enumerate(imgs):
            if not img or A.parity_of(img) != A.parity[k]:
                raise SymmetryError(f"image of {A.names[k]} is not homogeneous of the right parity")
            if A.tr(img) != A.trace[k]:
                raise SymmetryError(f"map does not preserve the trace on {A.names[k]}")
        if apply(A.unit) != A.unit:
            raise SymmetryError("map does not fix the unit")
        for i in range(A.m):
            for j in range(A.m):
                lhs = apply(A.mul[i][j])
                if anti:
                    rhs = A.mul_vec(imgs[j], imgs[i])
                    if A.parity[i] and A.parity[j]:
                        rhs = {k: -v for k, v in rhs.items()}
                else:
                    rhs = A.mul_vec(imgs[i], imgs[j])
                if lhs != rhs:
                    kind = "anti-homomorphism" if anti else "homomorphism"
                    raise SymmetryError(f"map is not a {kind} on ({A.names[i]}, {A.names[j]})")
        from .linalg import SingularMatrixError, inverse as mat_inverse
        try:
            mat_inverse([[img.get(j, Fraction(0)) for j in range(A.m)] for img in imgs])
        except SingularMatrixError:
            raise SymmetryError("map is not invertible") from None
        return imgs

    def _map_tensor(self, imgs, a: tuple) -> dict[tuple, Fraction]:
        terms = {(): Fraction(1)}
        for k in a:
            terms = {key + (j,): c * v for key, c in terms.items() for j, v in imgs[k].items()}
        return terms

    def apply_symmetry(self, kind: str, data, x: AffineElement) -> AffineElement:
        """Apply ``flip``, ``zeta`` (data: even central invertible element of A),
        ``xi`` (data: images of the basis under a trace-preserving automorphism)
        or ``tau`` (data: images under a trace-preserving anti-automorphism, the
        result being the image in the super-opposite algebra)."""
        x._check(x)
        n = self.n
        if kind == "flip":
            w0 = tuple(range(n, 0, -1))
            flipped_T = {j: -self.T(n - j) + self.teleporter(n - j, n - j + 1) * self.z
                         for j in range(1, n)}
            out = AffineElement(self)
            for (a, lam, w), c in x.terms.items():
                sign, b = self.A.permute_tuple(w0, a)
                head = AffineElement(self, {(b, tuple(reversed(lam)), self.e): c * sign},
                                     _clean=True)
                for j in reduced_word(w):
                    head = head * flipped_T[j]
                out = out + head
            return out
        if kind == "zeta":
            a_vec = self.A.element(data)
            if self.A.parity_of(a_vec) != 0:
                raise SymmetryError("zeta needs an even element")
            if not self.A.is_supercentral(a_vec):
                raise SymmetryError("zeta needs a central element")
            try:
                a_inv = self.A.invert(a_vec)
            except NotInvertibleError as exc:
                raise SymmetryError(f"zeta needs an invertible element: {exc}") from None
            out = AffineElement(self)
            for (a, lam, w), c in x.terms.items():
                factor = AffineElement(self, {(a, lam, w): c}, _clean=True)
                scale = self.one()
                for j, k in enumerate(lam, start=1):
                    if k:
                        base = self.slot(j, a_vec if k > 0 else a_inv)
                        scale = scale * (base ** abs(k))
                out = out + scale * factor
            return out
        if kind in ("xi", "tau"):
            imgs = self._validate_map(data, anti=(kind == "tau"))
            out: dict[Key, Fraction] = {}
            if kind == "xi":
                for (a, lam, w), c in x.terms.items():
                    for b, v in self._map_tensor(imgs, a).items():
                        _add_into(out, (b, lam, w), c * v)
                return AffineElement(self, out, _clean=True)
            result = AffineElement(self)
            for (a, lam, w), c in x.terms.items():
                tail = AffineElement(self, {(b, lam, self.e): c * v
                                            for b, v in self._map_tensor(imgs, a).items()})
                result = result + self.t_w(inverse(w)) * tail
            return result
        raise SymmetryError(f"unknown symmetry {kind!r}")

    # -- presentation check --------------------------------------------------

    def check_defining_relations(self) -> list[dict]:
        """Evaluate both sides of every defining relation through :meth:`mul`."""
        n = self.n
        report: list[dict] = []

        def record(name, indices, lhs, rhs):
            diff = lhs - rhs
            report.append({
                "relation": name,
                "indices": list(indices),
                "status": "pass" if diff.is_zero() else "fail",
                "difference-term-count": len(diff.terms),
            })

        T = {i: self.T(i) for i in range(1, n)}
        X = {(i, e): self.X(i, e) for i in range(1, n + 1) for e in (1, -1)}
        slots = {(k, b): self.slot(k, b) for k in range(1, n + 1) for b in range(self.A.m)}
        for i, j in itertools.product(range(1, n), repeat=2):
            if abs(i - j) > 1:
                record("far-commute", (i, j), T[i] * T[j], T[j] * T[i])
        for i in range(1, n - 1):
            record("braid", (i,), T[i] * T[i + 1] * T[i], T[i + 1] * T[i] * T[i + 1])
        for i in range(1, n):
            t = self.teleporter(i, i + 1)
            record("quadratic", (i,), T[i] * T[i], t * T[i] * self.z + self.one())
            record("t-inverse", (i,), T[i] * self.Tinv(i), self.one())
            record("t-inverse", (i,), self.Tinv(i) * T[i], self.one())
        s = {i: simple_transposition(n, i) for i in range(1, n)}
        for i in range(1, n):
            for (k, b), ab in slots.items():
                sa = self.tensor(self._permute_tensor(s[i], ab))
                record("t-moves-tensor", (i, k, b), T[i] * ab, sa * T[i])
        for i in range(1, n):
            for j in range(1, n + 1):
                if j in (i, i + 1):
                    continue
                for e in (1, -1):
                    record("t-commutes-with-x", (i, j, e), T[i] * X[(j, e)], X[(j, e)] * T[i])
        for i in range(1, n):
            record("t-x-t", (i,), T[i] * X[(i, 1)] * T[i], X[(i + 1, 1)])
        for j in range(1, n + 1):
            for (k, b), ab in slots.items():
                for e in (1, -1):
                    record("x-commutes-with-tensor", (j, e, k, b), X[(j, e)] * ab, ab * X[(j, e)])
            record("laurent", (j,), X[(j, 1)] * X[(j, -1)], self.one())
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            if i < j:
                record("x-commute", (i, j), X[(i, 1)] * X[(j, 1)], X[(j, 1)] * X[(i, 1)])
        if self.z == 0:
            for i in range(1, n):
                record("wreath-degeneration", (i,), T[i] * T[i], self.one())
        return report

    def _permute_tensor(self, w: Permutation, x: AffineElement) -> TensorElement:
        terms = {}
        for (a, lam, v), c in x.terms.items():
            sign, b = self.A.permute_tuple(w, a)
            _add_into(terms, b, sign * c)
        return TensorElement(self.A, self.n, terms)

    # -- formatting -----------------------------------------------------------

    def format(self, terms: Mapping[Key, Fraction]) -> str:
        if not terms:
            return "0"
        trivial = self.A.m == 1
        names = self.A.names
        parts = []
        for (a, lam, w), c in sorted(terms.items(), key=lambda kv: term_sort_key(kv[0])):
            factors = []
            if not trivial and any(k != self.A.unit_index for k in a):
                factors.append("(" + "(x)".join(names[k] for k in a) + ")")
            mono = format_monomial(lam)
            if mono:
                factors.append(mono)
            if w != self.e:
                factors.append(f"T{list(w)}")
            body = "*".join(factors) or "1"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_scalar(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def all_basis_keys(H: AffineAlgebra, exponents: Iterable[int]) -> list[Key]:
    exps = list(exponents)
    keys = []
    for w in all_permutations(H.n):
        for lam in itertools.product(exps, repeat=H.n):
            for a in itertools.product(range(H.A.m), repeat=H.n):
                keys.append((a, lam, w))
    return keys


def random_affine(H: AffineAlgebra, rng: random.Random, max_terms: int = 4, max_exp: int = 2,
                  nonnegative: bool = False, finite: bool = False) -> AffineElement:
    """Seeded random element of H with small exponents."""
    coeffs = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(-2, 3))
    perms = all_permutations(H.n)
    lo = 0 if nonnegative else -max_exp
    terms: dict[Key, Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        a = tuple(rng.randrange(H.A.m) for _ in range(H.n))
        lam = H.zero_lam if finite else tuple(rng.randint(lo, max_exp) for _ in range(H.n))
        _add_into(terms, (a, lam, rng.choice(perms)), rng.choice(coeffs))
    return AffineElement(H, terms, _clean=True)
