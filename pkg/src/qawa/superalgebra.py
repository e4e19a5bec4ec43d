"""
Symmetric superalgebras given by structure constants, and Koszul-signed
arithmetic in their tensor powers.

An algebra ``A`` is described by a basis ``b_0, ..., b_{m-1}`` with
parities, a multiplication table of sparse vectors, a unit and the values
of a trace on the basis.  Loading validates every axiom of a symmetric
superalgebra and caches the dual basis.

Elements of ``A`` are sparse vectors ``{basis index: Fraction}``.  Elements
of ``A^{(x)n}`` are :class:`TensorElement` objects whose terms are keyed by
``n``-tuples of basis indices.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinatorics import (
    Permutation, check_permutation, format_scalar, parse_scalar,
)
from .linalg import Echelon, SingularMatrixError, inverse, nullspace

__all__ = [
    "SpecError", "NotInvertibleError", "SymmetricSuperalgebra", "TensorElement",
    "load_spec", "preset", "PRESETS", "cyclic_group_spec",
    "mul_tensor", "superpermute", "trace_tensor", "teleporter", "slot_element",
]

Vector = dict[int, Fraction]
BasisTuple = tuple[int, ...]


class SpecError(ValueError):
    """A serialized algebra violates one of the symmetric superalgebra axioms.

    ``violation`` names the axiom: ``malformed``, ``non-associative``,
    ``unit law``, ``parity violation``, ``odd trace``, ``non-supersymmetric
    trace`` or ``degenerate trace form``.
    """

    def __init__(self, violation: str, detail: str = ""):
        self.violation = violation
        super().__init__(f"{violation}: {detail}" if detail else violation)


class NotInvertibleError(ArithmeticError):
    pass


def _clean(vec: Mapping[int, Fraction]) -> Vector:
    return {k: v for k, v in vec.items() if v}


def _add_into(target: dict, key, coeff) -> None:
    s = target.get(key, 0) + coeff
    if s:
        target[key] = s
    else:
        target.pop(key, None)


def _parse_sparse(raw, m: int, what: str) -> Vector:
    vec: Vector = {}
    try:
        for k, c in raw:
            k = int(k)
            if not 0 <= k < m:
                raise SpecError("malformed", f"{what}: basis index {k} out of range")
            _add_into(vec, k, parse_scalar(c))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError("malformed", f"{what}: {exc}") from None
    return vec


def _dump_sparse(vec: Mapping[int, Fraction]) -> list:
    return [[k, format_scalar(vec[k])] for k in sorted(vec)]


class SymmetricSuperalgebra:
    """A validated symmetric superalgebra with its dual basis.

    Construct through :func:`load_spec` or :func:`preset`; the constructor
    runs every validation check.
    """

    def __init__(self, names: Sequence[str], parity: Sequence[int],
                 mul: Sequence[Sequence[Mapping[int, Fraction]]],
                 unit: Mapping[int, Fraction], trace: Sequence[Fraction]):
        self.names = tuple(str(s) for s in names)
        self.m = m = len(self.names)
        if m == 0:
            raise SpecError("malformed", "empty basis")
        if len(set(self.names)) != m:
            raise SpecError("malformed", "basis names must be distinct")
        if len(parity) != m or any(p not in (0, 1) for p in parity):
            raise SpecError("malformed", "parity must list 0 or 1 per basis element")
        if len(mul) != m or any(len(row) != m for row in mul):
            raise SpecError("malformed", f"mul must be a {m}x{m} table")
        if len(trace) != m:
            raise SpecError("malformed", "trace must have one value per basis element")
        self.parity = tuple(int(p) for p in parity)
        self.mul = tuple(tuple(_clean(entry) for entry in row) for row in mul)
        self.unit = _clean(unit)
        self.trace = tuple(Fraction(t) for t in trace)
        self._validate()
        self.gram = [[self.tr(self.mul[i][j]) for j in range(m)] for i in range(m)]
        try:
            inv = inverse(self.gram)
        except SingularMatrixError:
            raise SpecError("degenerate trace form", "Gram matrix tr(b_i b_j) is singular") from None
        # Row j of C (with C G = 1) expands the dual basis vector of b_j.
        self.dual = tuple(_clean(dict(enumerate(row))) for row in inv)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.unit_index = next(iter(self.unit)) if (
            len(self.unit) == 1 and next(iter(self.unit.values())) == 1) else None
        self._center = None

    # -- validation -----------------------------------------------------

    def _validate(self) -> None:
        m = self.m
        for i in range(m):
            for j in range(m):
                want = (self.parity[i] + self.parity[j]) % 2
                for k in self.mul[i][j]:
                    if self.parity[k] != want:
                        raise SpecError(
                            "parity violation",
                            f"{self.names[i]}*{self.names[j]} has a component of the wrong parity")
        if any(self.parity[k] for k in self.unit):
            raise SpecError("parity violation", "unit must be even")
        for i in range(m):
            e = {i: Fraction(1)}
            if self.mul_vec(self.unit, e) != e or self.mul_vec(e, self.unit) != e:
                raise SpecError("unit law", f"unit does not act trivially on {self.names[i]}")
        for i in range(m):
            for j in range(m):
                left = self.mul[i][j]
                for k in range(m):
                    lhs = self.mul_vec(left, {k: Fraction(1)})
                    rhs = self.mul_vec({i: Fraction(1)}, self.mul[j][k])
                    if lhs != rhs:
                        raise SpecError(
                            "non-associative",
                            f"({self.names[i]}{self.names[j]}){self.names[k]} != "
                            f"{self.names[i]}({self.names[j]}{self.names[k]})")
        for i in range(m):
            if self.parity[i] and self.trace[i]:
                raise SpecError("odd trace", f"trace is nonzero on odd {self.names[i]}")
        for i in range(m):
            for j in range(m):
                sign = -1 if self.parity[i] and self.parity[j] else 1
                if self.tr(self.mul[i][j]) != sign * self.tr(self.mul[j][i]):
                    raise SpecError(
                        "non-supersymmetric trace",
                        f"tr({self.names[i]}{self.names[j]}) != "
                        f"{sign}*tr({self.names[j]}{self.names[i]})")

    # -- single-algebra arithmetic --------------------------------------

    def mul_vec(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            row = self.mul[i]
            for j, b in y.items():
                for k, c in row[j].items():
                    _add_into(out, k, a * b * c)
        return out

    def tr(self, x: Mapping[int, Fraction]) -> Fraction:
        return sum((c * self.trace[k] for k, c in x.items()), Fraction(0))

    def parity_of(self, x: Mapping[int, Fraction]) -> int | None:
        """Parity of a homogeneous vector; None for zero or mixed vectors."""
        ps = {self.parity[k] for k in x}
        return ps.pop() if len(ps) == 1 else None

    def element(self, name_or_vec) -> Vector:
        """Resolve a basis name, an index or a sparse vector to a vector."""
        if isinstance(name_or_vec, str):
            if name_or_vec not in self.index:
                raise KeyError(f"unknown basis element {name_or_vec!r}")
            return {self.index[name_or_vec]: Fraction(1)}
        if isinstance(name_or_vec, int):
            if not 0 <= name_or_vec < self.m:
                raise IndexError(f"basis index {name_or_vec} out of range")
            return {name_or_vec: Fraction(1)}
        return _clean({int(k): Fraction(v) for k, v in dict(name_or_vec).items()})

    def dual_vector(self, i: int) -> Vector:
        return dict(self.dual[i])

    def is_supercentral(self, x: Mapping[int, Fraction]) -> bool:
        for p in (0, 1):
            part = {k: c for k, c in x.items() if self.parity[k] == p}
            for j in range(self.m):
                e = {j: Fraction(1)}
                sign = -1 if p and self.parity[j] else 1
                lhs = self.mul_vec(part, e)
                rhs = {k: sign * c for k, c in self.mul_vec(e, part).items()}
                if lhs != rhs:
                    return False
        return True

    def center_basis(self) -> tuple[list[Vector], list[Vector]]:
        """Bases of the supercenter Z(A) and of its even part Z(A)_0."""
        if self._center is None:
            parts = {}
            for p in (0, 1):
                idx = [k for k in range(self.m) if self.parity[k] == p]
                rows: dict[tuple[int, int], Vector] = {}
                for col, k in enumerate(idx):
                    bk = {k: Fraction(1)}
                    for j in range(self.m):
                        e = {j: Fraction(1)}
                        sign = -1 if p and self.parity[j] else 1
                        diff = self.mul_vec(bk, e)
                        for key, c in self.mul_vec(e, bk).items():
                            _add_into(diff, key, -sign * c)
                        for key, c in diff.items():
                            rows.setdefault((j, key), {})[col] = c
                null = nullspace(list(rows.values()), len(idx))
                parts[p] = [{idx[c]: v for c, v in vec.items()} for vec in null]
            self._center = (parts[0] + parts[1], parts[0])
        z, z0 = self._center
        return [dict(v) for v in z], [dict(v) for v in z0]

    def invert(self, a: Mapping[int, Fraction]) -> Vector:
        """Two-sided inverse of ``a``; raises :class:`NotInvertibleError`."""
        a = _clean(dict(a))
        columns = [self.mul_vec(a, {k: Fraction(1)}) for k in range(self.m)]
        ech = Echelon()
        for col in columns:
            ech.insert(col)
        try:
            b = ech.express(self.unit)
        except SingularMatrixError:
            raise NotInvertibleError(f"{self.format(a)} has no right inverse") from None
        b = _clean(b)
        if self.mul_vec(a, b) != self.unit or self.mul_vec(b, a) != self.unit:
            raise NotInvertibleError(f"{self.format(a)} is not two-sided invertible")
        return b

    # -- tensor tuples (cached kernels) ---------------------------------

    @lru_cache(maxsize=None)
    def mul_tuples(self, a: BasisTuple, b: BasisTuple) -> tuple[tuple[BasisTuple, Fraction], ...]:
        """Product of pure tensors ``a`` and ``b`` with the Koszul sign."""
        odd_b = 0
        flips = 0
        for ai, bi in zip(a, b):
            if self.parity[ai]:
                flips += odd_b
            odd_b += self.parity[bi]
        sign = -1 if flips % 2 else 1
        partial: dict[BasisTuple, Fraction] = {(): Fraction(sign)}
        for ai, bi in zip(a, b):
            slot = self.mul[ai][bi]
            if not slot:
                return ()
            nxt: dict[BasisTuple, Fraction] = {}
            for key, c in partial.items():
                for k, v in slot.items():
                    nxt[key + (k,)] = c * v
            partial = nxt
        return tuple(partial.items())

    @lru_cache(maxsize=None)
    def permute_tuple(self, w: Permutation, a: BasisTuple) -> tuple[int, BasisTuple]:
        """Superpermute: the factor in slot ``k`` moves to slot ``w(k)``."""
        out = [0] * len(a)
        for k, wk in enumerate(w):
            out[wk - 1] = a[k]
        flips = 0
        n = len(a)
        for k in range(n):
            if not self.parity[a[k]]:
                continue
            for l in range(k + 1, n):
                if self.parity[a[l]] and w[k] > w[l]:
                    flips += 1
        return (-1 if flips % 2 else 1), tuple(out)

    def tuple_parity(self, a: BasisTuple) -> int:
        return sum(self.parity[k] for k in a) % 2

    def tuple_trace(self, a: BasisTuple) -> Fraction:
        t = Fraction(1)
        for k in a:
            t *= self.trace[k]
            if not t:
                break
        return t

    # -- change of basis, formatting, serialization ---------------------

    def rebase(self, P: Sequence[Sequence[Fraction]], names: Sequence[str] | None = None
               ) -> "SymmetricSuperalgebra":
        """The same algebra and trace in the basis ``b'_i = sum_j P[i][j] b_j``.

        Each new basis vector must be parity-homogeneous.
        """
        m = self.m
        P = [[Fraction(v) for v in row] for row in P]
        Pinv = inverse(P)
        new_vecs = [_clean(dict(enumerate(row))) for row in P]

        def to_new(vec: Vector) -> Vector:
            # old coordinates x (row vector) -> x P^{-1}
            out: Vector = {}
            for j, c in vec.items():
                for i, v in enumerate(Pinv[j]):
                    if v:
                        _add_into(out, i, c * v)
            return out

        parity = []
        for vec in new_vecs:
            p = self.parity_of(vec)
            if p is None:
                raise SpecError("parity violation", "change of basis mixes parities")
            parity.append(p)
        mul = [[to_new(self.mul_vec(new_vecs[i], new_vecs[j])) for j in range(m)]
               for i in range(m)]
        trace = [self.tr(v) for v in new_vecs]
        names = names or [f"{s}'" for s in self.names]
        return SymmetricSuperalgebra(names, parity, mul, to_new(self.unit), trace)

    def format(self, vec: Mapping[int, Fraction]) -> str:
        if not vec:
            return "0"
        parts = []
        for k in sorted(vec):
            c = vec[k]
            if c == 1:
                parts.append(self.names[k])
            elif c == -1:
                parts.append(f"-{self.names[k]}")
            else:
                parts.append(f"{format_scalar(c)}*{self.names[k]}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "names": list(self.names),
            "parity": list(self.parity),
            "mul": [[_dump_sparse(entry) for entry in row] for row in self.mul],
            "trace": [format_scalar(t) for t in self.trace],
            "unit": _dump_sparse(self.unit),
        }

    def __repr__(self):
        return f"SymmetricSuperalgebra({', '.join(self.names)})"


def load_spec(raw) -> SymmetricSuperalgebra:
    """Validate a serialized algebra (a dict, or a JSON string)."""
    if isinstance(raw, (str, bytes)):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SpecError("malformed", f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise SpecError("malformed", "spec must be a JSON object")
    missing = {"names", "parity", "mul", "trace", "unit"} - set(raw)
    if missing:
        raise SpecError("malformed", f"missing keys {sorted(missing)}")
    names = raw["names"]
    m = len(names)
    try:
        mul = [[_parse_sparse(entry, m, "mul") for entry in row] for row in raw["mul"]]
        trace = [parse_scalar(t) for t in raw["trace"]]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError("malformed", str(exc)) from None
    unit = _parse_sparse(raw["unit"], m, "unit")
    return SymmetricSuperalgebra(names, raw["parity"], mul, unit, trace)


# -- presets ------------------------------------------------------------

def cyclic_group_spec(d: int) -> dict:
    """Group algebra of C_d with trace = coefficient of the identity."""
    names = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, d)]
    mul = [[[[(i + j) % d, "1"]] for j in range(d)] for i in range(d)]
    return {
        "names": names,
        "parity": [0] * d,
        "mul": mul,
        "trace": ["1"] + ["0"] * (d - 1),
        "unit": [[0, "1"]],
    }


def _exterior2() -> dict:
    # basis 1, th1, th2, th12 = th1*th2
    one, t1, t2, t12 = range(4)
    table: dict[tuple[int, int], list] = {
        (t1, t2): [[t12, "1"]],
        (t2, t1): [[t12, "-1"]],
    }
    for k in range(4):
        table[(one, k)] = [[k, "1"]]
        table[(k, one)] = [[k, "1"]]
    mul = [[table.get((i, j), []) for j in range(4)] for i in range(4)]
    return {
        "names": ["1", "th1", "th2", "th12"],
        "parity": [0, 1, 1, 0],
        "mul": mul,
        "trace": ["0", "0", "0", "1"],
        "unit": [[0, "1"]],
    }


PRESETS: dict[str, dict] = {
    "trivial": {
        "names": ["1"], "parity": [0], "mul": [[[[0, "1"]]]],
        "trace": ["1"], "unit": [[0, "1"]],
    },
    "kC2": cyclic_group_spec(2),
    "kC3": cyclic_group_spec(3),
    "dual": {
        "names": ["1", "c"], "parity": [0, 0],
        "mul": [[[[0, "1"]], [[1, "1"]]], [[[1, "1"]], []]],
        "trace": ["0", "1"], "unit": [[0, "1"]],
    },
    "ext2": _exterior2(),
}


@lru_cache(maxsize=None)
def preset(name: str) -> SymmetricSuperalgebra:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return load_spec(PRESETS[name])


# -- tensor powers --------------------------------------------------------

class TensorElement:
    """An element of ``A^{(x)n}``: a sparse map from basis tuples to scalars."""

    __slots__ = ("algebra", "n", "terms")

    def __init__(self, algebra: SymmetricSuperalgebra, n: int,
                 terms: Mapping[BasisTuple, Fraction] | None = None):
        self.algebra = algebra
        self.n = n
        self.terms: dict[BasisTuple, Fraction] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != n:
                raise ValueError(f"tuple {key} does not have length {n}")
            if c:
                _add_into(self.terms, key, Fraction(c))

    @classmethod
    def one(cls, algebra, n):
        return slot_element(algebra, n, 1, algebra.unit) if n else cls(algebra, 0, {(): 1})

    def _check(self, other: "TensorElement") -> None:
        if other.algebra is not self.algebra or other.n != self.n:
            raise ValueError("tensor elements live in different tensor powers")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return TensorElement(self.algebra, self.n, out)

    def __neg__(self):
        return TensorElement(self.algebra, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return mul_tensor(self, other)
        c = Fraction(other)
        return TensorElement(self.algebra, self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return TensorElement(self.algebra, self.n, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra is other.algebra and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.algebra.names
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            word = "(x)".join(names[k] for k in key)
            parts.append(word if c == 1 else f"{format_scalar(c)}*{word}")
        return " + ".join(parts)


def slot_element(algebra: SymmetricSuperalgebra, n: int, i: int,
                 a: Mapping[int, Fraction]) -> TensorElement:
    """``a_i = 1 (x) ... (x) a (x) ... (x) 1`` with ``a`` in slot ``i`` (1-based).

    Requires the unit to be a basis element.
    """
    if not 1 <= i <= n:
        raise IndexError(f"slot {i} out of range for n={n}")
    u = algebra.unit_index
    if u is None:
        # expand the unit in every other slot
        base = {(): Fraction(1)}
        for s in range(1, n + 1):
            vec = a if s == i else algebra.unit
            base = {key + (k,): c * v for key, c in base.items() for k, v in vec.items()}
        return TensorElement(algebra, n, base)
    terms = {}
    for k, c in a.items():
        key = [u] * n
        key[i - 1] = k
        terms[tuple(key)] = c
    return TensorElement(algebra, n, terms)


def mul_tensor(x: TensorElement, y: TensorElement) -> TensorElement:
    x._check(y)
    A = x.algebra
    out: dict[BasisTuple, Fraction] = {}
    for a, c in x.terms.items():
        for b, d in y.terms.items():
            for key, v in A.mul_tuples(a, b):
                _add_into(out, key, c * d * v)
    return TensorElement(A, x.n, out)


def superpermute(w: Sequence[int], x: TensorElement) -> TensorElement:
    w = check_permutation(w)
    if len(w) != x.n:
        raise ValueError(f"size mismatch: S_{len(w)} acting on A^(x){x.n}")
    A = x.algebra
    out: dict[BasisTuple, Fraction] = {}
    for a, c in x.terms.items():
        sign, b = A.permute_tuple(w, a)
        _add_into(out, b, sign * c)
    return TensorElement(A, x.n, out)


def trace_tensor(x: TensorElement) -> Fraction:
    """Slotwise product of traces; no sign issue since tr vanishes on odd elements."""
    return sum((c * x.algebra.tuple_trace(a) for a, c in x.terms.items()), Fraction(0))


@lru_cache(maxsize=None)
def _teleporter_terms(algebra: SymmetricSuperalgebra, n: int, i: int, j: int
                      ) -> tuple[tuple[BasisTuple, Fraction], ...]:
    total = TensorElement(algebra, n)
    for b in range(algebra.m):
        left = slot_element(algebra, n, i, {b: Fraction(1)})
        right = slot_element(algebra, n, j, algebra.dual[b])
        total = total + mul_tensor(left, right)
    return tuple(total.terms.items())


def teleporter(algebra: SymmetricSuperalgebra, n: int, i: int, j: int) -> TensorElement:
    """``t_{i,j} = sum_b b_i (b^vee)_j``."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise IndexError(f"teleporter indices ({i}, {j}) invalid for n={n}")
    return TensorElement(algebra, n, dict(_teleporter_terms(algebra, n, i, j)))


def basis_tuples(algebra: SymmetricSuperalgebra, n: int) -> Iterable[BasisTuple]:
    return itertools.product(range(algebra.m), repeat=n)
