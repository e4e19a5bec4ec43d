"""
Cyclotomic quotients ``H_n^f(A, z)`` of the affine algebra.

Elements are kept in the basis ``a X^lam T_w`` with ``0 <= lam_i < d``.
Reduction rewrites ``X_i^d`` as ``r_i = X_i^d - f_i``, where
``f_i = T_{i-1} ... T_1 f(X_1) T_1 ... T_{i-1}``.  Every exponent in ``r_i``
at position ``i`` is below ``d`` and positions after ``i`` are zero, so each
rewrite strictly lowers the exponent vector in the lexicographic order that
compares position ``n`` first.

>>> from qawa.superalgebra import preset
>>> from qawa.affine import AffineAlgebra
>>> A = preset("trivial")
>>> C = CyclotomicAlgebra(AffineAlgebra(A, 2, 1), load_f(A, [{0: -1}, {}]))
>>> C.reduce(C.H.X(2) * C.H.X(2))
1 + T[2, 1] + X1*X2*T[2, 1]
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .affine import AffineAlgebra, AffineElement, Key, random_affine, term_sort_key
from .combinatorics import (
    all_permutations, format_scalar, identity,
)
from .linalg import Echelon, SingularMatrixError, inverse as mat_inverse
from .superalgebra import (
    NotInvertibleError, SpecError, SymmetricSuperalgebra, _add_into, _dump_sparse,
    _parse_sparse,
)

__all__ = [
    "CyclotomicPoly", "CyclotomicAlgebra", "CyclotomicElement", "load_f",
    "parse_f_json", "ReductionBudgetError", "expected_dimension",
]

STEP_BUDGET = 10 ** 6


class ReductionBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class CyclotomicPoly:
    """``f = X^d + a_(d-1) X^(d-1) + ... + a_(0)`` with coefficients in Z(A)_0."""
    algebra: SymmetricSuperalgebra
    coeffs: tuple[tuple[tuple[int, Fraction], ...], ...]

    @property
    def d(self) -> int:
        return len(self.coeffs)

    def coeff(self, k: int) -> dict[int, Fraction]:
        return dict(self.coeffs[k])

    def label(self) -> str:
        A = self.algebra
        parts = [f"X^{self.d}" if self.d > 1 else "X"]
        for k in range(self.d - 1, -1, -1):
            vec = self.coeff(k)
            if not vec:
                continue
            mono = "" if k == 0 else ("*X" if k == 1 else f"*X^{k}")
            if vec == A.unit and k == 0:
                parts.append("1")
            elif vec == {i: -c for i, c in A.unit.items()} and k == 0:
                parts.append("-1")
            else:
                parts.append(f"({A.format(vec)}){mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"d": self.d, "coeffs": [_dump_sparse(self.coeff(k)) for k in range(self.d)]}


def load_f(A: SymmetricSuperalgebra, coeffs: Sequence) -> CyclotomicPoly:
    """Validate ``[a_(0), ..., a_(d-1)]`` as a cyclotomic polynomial.

    Each coefficient is a sparse A-vector (dict or ``[[index, "p/q"], ...]``),
    a basis name, or a rational number standing for that multiple of 1.

    >>> from qawa.superalgebra import preset
    >>> load_f(preset("trivial"), [{0: 0}, {}])
    Traceback (most recent call last):
    ...
    qawa.superalgebra.SpecError: not-invertible: constant coefficient has no inverse
    """
    if len(coeffs) < 1:
        raise SpecError("malformed", "f must have degree at least 1")
    vecs = []
    _, z0 = A.center_basis()
    z0_span = Echelon()
    for v in z0:
        z0_span.insert(v)
    for k, raw in enumerate(coeffs):
        if isinstance(raw, (int, Fraction)) and not isinstance(raw, bool):
            vec = {i: raw * c for i, c in A.unit.items()} if raw else {}
        elif isinstance(raw, (dict, str)):
            vec = A.element(raw)
        else:
            vec = _parse_sparse(raw, A.m, f"coefficient {k}")
        if vec:
            try:
                z0_span.express(vec)
            except SingularMatrixError:
                raise SpecError("not-central",
                                f"coefficient {k} ({A.format(vec)}) is not in Z(A)_0") from None
        vecs.append(tuple(sorted(vec.items())))
    try:
        A.invert(dict(vecs[0]))
    except NotInvertibleError:
        raise SpecError("not-invertible", "constant coefficient has no inverse") from None
    return CyclotomicPoly(A, tuple(vecs))


def parse_f_json(A: SymmetricSuperalgebra, raw) -> CyclotomicPoly:
    """Read ``{"d": int, "coeffs": [sparse vectors]}``; coefficients run a_(0) .. a_(d-1)."""
    if isinstance(raw, (str, bytes)):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SpecError("malformed", f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict) or "d" not in raw or "coeffs" not in raw:
        raise SpecError("malformed", 'f must be {"d": int, "coeffs": [...]}')
    d = raw["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1 or len(raw["coeffs"]) != d:
        raise SpecError("malformed", "d must be a positive integer equal to the number of coefficients")
    return load_f(A, [_parse_sparse(c, A.m, f"coefficient {k}") for k, c in enumerate(raw["coeffs"])])


def expected_dimension(n: int, d: int, m: int) -> int:
    out = 1
    for k in range(1, n + 1):
        out *= d * m * k
    return out


class CyclotomicElement:
    __slots__ = ("parent", "terms")

    def __init__(self, parent: "CyclotomicAlgebra", terms: Mapping[Key, Fraction]):
        self.parent = parent
        self.terms = dict(terms)

    def _check(self, other):
        if not isinstance(other, CyclotomicElement) or other.parent is not self.parent:
            raise ValueError("elements belong to different cyclotomic quotients")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return CyclotomicElement(self.parent, out)

    def __neg__(self):
        return CyclotomicElement(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.parent.mul_cyclo(self, other)
        c = Fraction(other)
        if not c:
            return CyclotomicElement(self.parent, {})
        return CyclotomicElement(self.parent, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.parent is other.parent and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def lift(self) -> AffineElement:
        return AffineElement(self.parent.H, self.terms, _clean=True)

    def parity_components(self) -> dict[int, "CyclotomicElement"]:
        return {p: CyclotomicElement(self.parent, e.terms)
                for p, e in self.lift().parity_components().items()}

    def parity(self) -> int | None:
        return self.lift().parity()

    def __repr__(self):
        return self.parent.H.format(self.terms)

    def to_json(self) -> dict:
        return {"f": self.parent.f.to_json(), "terms": self.lift().to_json()}


class CyclotomicAlgebra:
    """``H_n^f(A, z)``: the quotient of ``H`` by the ideal generated by ``f(X_1)``."""

    def __init__(self, H: AffineAlgebra, f: CyclotomicPoly):
        if f.algebra is not H.A:
            raise ValueError("f is defined over a different algebra")
        self.H = H
        self.f = f
        self.n = H.n
        self.d = f.d
        self.A = H.A
        self._f: dict[int, AffineElement] = {}
        self._rT: dict[tuple[int, tuple], tuple] = {}
        self._xinv: dict[int, CyclotomicElement] = {}
        self._basis: list[Key] | None = None
        self._sub: CyclotomicAlgebra | None = None
        self._decomp = None

    def __repr__(self):
        return f"CyclotomicAlgebra(n={self.n}, z={format_scalar(self.H.z)}, f={self.f.label()})"

    # -- f_i and the rewriting rule -------------------------------------------

    def f_i(self, i: int) -> AffineElement:
        if not 1 <= i <= self.n:
            raise IndexError(f"f_i index {i} out of range for n={self.n}")
        if i not in self._f:
            H = self.H
            if i == 1:
                out = H.X(1) ** self.d
                for k in range(self.d):
                    vec = self.f.coeff(k)
                    if vec:
                        out = out + H.slot(1, vec) * (H.X(1) ** k)
                self._f[1] = out
            else:
                T = H.T(i - 1)
                self._f[i] = T * self.f_i(i - 1) * T
        return self._f[i]

    def _rule(self, i: int, w) -> tuple:
        """Terms of ``(X_i^d - f_i) T_w``."""
        got = self._rT.get((i, w))
        if got is None:
            lam = [0] * self.n
            lam[i - 1] = self.d
            r = self.H.monomial(lam) - self.f_i(i)
            got = tuple((r * self.H.t_w(w)).terms.items())
            for (_, mu, _), _c in got:
                if mu[i - 1] >= self.d or any(mu[i:]) or min(mu) < 0:
                    raise AssertionError(f"rewriting rule for X_{i}^d is not decreasing: {mu}")
            self._rT[(i, w)] = got
        return got

    def reduce_terms(self, terms: Mapping[Key, Fraction]) -> dict[Key, Fraction]:
        d = self.d
        out: dict[Key, Fraction] = {}
        work: dict[Key, Fraction] = {}
        for key, c in terms.items():
            if min(key[1], default=0) < 0:
                raise ValueError("reduce needs nonnegative exponents; clear X^-1 with invert_X")
            _add_into(work if max(key[1]) >= d else out, key, c)
        mt = self.A.mul_tuples
        steps = 0
        while work:
            steps += 1
            if steps > STEP_BUDGET:
                raise ReductionBudgetError("cyclotomic reduction exceeded its step budget")
            key = max(work, key=lambda k: (tuple(reversed(k[1])), k[2], k[0]))
            c = work.pop(key)
            a, lam, w = key
            i = max(j for j in range(1, self.n + 1) if lam[j - 1] >= d)
            base = list(lam)
            base[i - 1] -= d
            for (b, mu, v), s in self._rule(i, w):
                nu = tuple(p + q for p, q in zip(base, mu))
                target = work if max(nu) >= d else out
                for prod, sign in mt(a, b):
                    _add_into(target, (prod, nu, v), c * s * sign)
        return out

    def reduce(self, x: AffineElement) -> CyclotomicElement:
        """The representative of ``x`` (all exponents nonnegative) in the cyclotomic basis."""
        if x.parent is not self.H:
            raise ValueError("element belongs to a different affine algebra")
        return CyclotomicElement(self, self.reduce_terms(x.terms))

    def element(self, x: AffineElement) -> CyclotomicElement:
        """Image of any affine element, clearing negative exponents with :meth:`invert_X`."""
        if x.parent is not self.H:
            raise ValueError("element belongs to a different affine algebra")
        plain = {k: c for k, c in x.terms.items() if min(k[1]) >= 0}
        out = self.reduce(AffineElement(self.H, plain, _clean=True))
        for (a, lam, w), c in x.terms.items():
            if min(lam) >= 0:
                continue
            pos = tuple(max(e, 0) for e in lam)
            term = self.reduce(AffineElement(self.H, {(a, pos, self.H.e): c}, _clean=True))
            for i, e in enumerate(lam, start=1):
                for _ in range(-e if e < 0 else 0):
                    term = self.mul_cyclo(term, self.invert_X(i))
            out = out + self.mul_cyclo(term, self.reduce(self.H.t_w(w)))
        return out

    def mul_cyclo(self, x: CyclotomicElement, y: CyclotomicElement) -> CyclotomicElement:
        x._check(y)
        if x.parent is not self:
            raise ValueError("elements belong to a different cyclotomic quotient")
        return self.reduce(self.H.mul(x.lift(), y.lift()))

    def one(self) -> CyclotomicElement:
        return self.reduce(self.H.one())

    def invert_X(self, i: int) -> CyclotomicElement:
        if not 1 <= i <= self.n:
            raise IndexError(f"X index {i} out of range for n={self.n}")
        if i not in self._xinv:
            H = self.H
            if i == 1:
                a0_inv = self.A.invert(self.f.coeff(0))
                body = H.X(1) ** (self.d - 1)
                for k in range(1, self.d):
                    vec = self.f.coeff(k)
                    if vec:
                        body = body + H.slot(1, vec) * (H.X(1) ** (k - 1))
                self._xinv[1] = self.reduce(-(H.slot(1, a0_inv) * body))
            else:
                Ti = self.reduce(H.Tinv(i - 1))
                self._xinv[i] = Ti * self.invert_X(i - 1) * Ti
        return self._xinv[i]

    # -- basis, trace and Gram matrix -----------------------------------------

    def basis(self) -> list[Key]:
        if self._basis is None:
            keys = [
                (a, lam, w)
                for w in all_permutations(self.n)
                for lam in itertools.product(range(self.d), repeat=self.n)
                for a in itertools.product(range(self.A.m), repeat=self.n)
            ]
            self._basis = sorted(keys, key=term_sort_key)
        return list(self._basis)

    def dimension(self) -> int:
        return len(self.basis())

    def basis_element(self, key: Key) -> CyclotomicElement:
        return CyclotomicElement(self, {key: Fraction(1)})

    def trace_f(self, x: CyclotomicElement) -> Fraction:
        e = identity(self.n)
        return sum((c * self.A.tuple_trace(a) for (a, lam, w), c in x.terms.items()
                    if w == e and not any(lam)), Fraction(0))

    def gram(self) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
        """Gram matrix ``G[u][v] = tr_f(b_u b_v)`` and coefficient rows of the
        dual basis (``tr_f(b_u b_v^dual) = delta``).  Raises on a singular G."""
        B = [self.basis_element(k) for k in self.basis()]
        G = [[self.trace_f(x * y) for y in B] for x in B]
        try:
            Ginv = mat_inverse(G)
        except SingularMatrixError:
            raise SingularMatrixError("Gram matrix of the cyclotomic trace is singular") from None
        N = len(B)
        dual = [[Ginv[k][v] for k in range(N)] for v in range(N)]
        return G, dual

    # -- the tower H_n^f inside H_{n+1}^f -----------------------------------

    def extend(self) -> "CyclotomicAlgebra":
        """The same quotient with one more strand."""
        return CyclotomicAlgebra(AffineAlgebra(self.A, self.n + 1, self.H.z), self.f)

    def restrict(self) -> "CyclotomicAlgebra":
        if self.n < 2:
            raise ValueError("no smaller quotient below n = 1")
        if self._sub is None:
            self._sub = CyclotomicAlgebra(AffineAlgebra(self.A, self.n - 1, self.H.z), self.f)
        return self._sub

    def embed(self, x: CyclotomicElement) -> CyclotomicElement:
        """Image of ``x`` in H_n^f of an element of the quotient with ``n - 1`` strands."""
        sub = x.parent
        if sub.n != self.n - 1 or sub.A is not self.A or sub.f != self.f or sub.H.z != self.H.z:
            raise ValueError("element does not come from the next smaller quotient")
        out: dict[Key, Fraction] = {}
        for (a, lam, w), c in x.terms.items():
            for u, cu in self.A.unit.items():
                _add_into(out, (a + (u,), lam + (0,), w + (self.n,)), c * cu)
        return CyclotomicElement(self, out)

    def _right_basis(self) -> list[tuple[int, int, int]]:
        return [(j, r, b) for j in range(1, self.n + 1) for r in range(self.d)
                for b in range(self.A.m)]

    def _right_generator(self, j: int, r: int, b: int) -> AffineElement:
        H = self.H
        out = (H.X(j) ** r) * H.slot(j, b)
        for k in range(j, self.n):
            out = out * H.T(k)
        return out

    def _decomposition(self):
        if self._decomp is None:
            sub = self.restrict()
            index = {k: t for t, k in enumerate(self.basis())}
            ech = Echelon()
            labels = []
            for gen in self._right_basis():
                g = self.reduce(self._right_generator(*gen))
                for beta in sub.basis():
                    col = self.mul_cyclo(g, self.embed(sub.basis_element(beta)))
                    vec = {index[k]: c for k, c in col.terms.items()}
                    if not ech.insert(vec):
                        raise SingularMatrixError(
                            "right module generators are linearly dependent")
                    labels.append((gen, beta))
            if ech.rank != len(index):
                raise SingularMatrixError("right module generators do not span")
            self._decomp = (index, ech, labels)
        return self._decomp

    def right_module_decompose(self, x: CyclotomicElement) -> dict[tuple[int, int, int], CyclotomicElement]:
        """Coefficients ``h`` with ``x = sum X_j^r b_j T_j ... T_{n-1} h_(j,r,b)``,
        ``h`` in the quotient with ``n - 1`` strands (keys use 0-based basis index b)."""
        if x.parent is not self:
            raise ValueError("element belongs to a different quotient")
        index, ech, labels = self._decomposition()
        sub = self.restrict()
        coeffs = ech.express({index[k]: c for k, c in x.terms.items()})
        out: dict[tuple, dict] = {}
        for t, c in coeffs.items():
            gen, beta = labels[t]
            _add_into(out.setdefault(gen, {}), beta, c)
        return {gen: CyclotomicElement(sub, terms) for gen, terms in out.items() if terms}

    def partial_trace(self, x: CyclotomicElement) -> CyclotomicElement:
        sub = self.restrict()
        out = CyclotomicElement(sub, {})
        for (j, r, b), h in self.right_module_decompose(x).items():
            if j == self.n and r == 0 and self.A.trace[b]:
                out = out + h * self.A.trace[b]
        return out

    def right_module_rank(self) -> int:
        index, ech, _ = self._decomposition()
        return ech.rank

    # -- level one --------------------------------------------------------

    def level_one_check(self, samples: int = 5, seed: int = 0) -> list[dict]:
        """For ``f = X + a``: the basis has ``dim A^n * n!`` elements and the
        quotient map agrees with ``eval_jm`` after the rescaling ``X_j -> -a X_j``."""
        if self.d != 1:
            raise ValueError("level one check needs d = 1")
        H = self.H
        minus_a = {k: -c for k, c in self.f.coeff(0).items()}
        report = []
        dim = self.dimension()
        want = expected_dimension(self.n, 1, self.A.m)
        report.append({"check": "dimension", "value": dim, "expected": want,
                       "status": "pass" if dim == want else "fail"})

        def composite(x: AffineElement) -> AffineElement:
            return H.eval_jm(H.apply_symmetry("zeta", minus_a, x))

        for i in range(1, self.n + 1):
            lhs = self.reduce(H.X(i)).lift()
            rhs = composite(H.X(i))
            report.append({"check": "generator", "index": i,
                           "status": "pass" if lhs == rhs else "fail"})
        rng = random.Random(seed)
        for s in range(samples):
            x = random_affine(H, rng, max_terms=3, max_exp=2, nonnegative=True)
            ok = self.reduce(x).lift() == composite(x)
            report.append({"check": "random", "index": s, "status": "pass" if ok else "fail"})
        return report

