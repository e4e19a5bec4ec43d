import random
from fractions import Fraction

import pytest

from qawa.affine import AffineAlgebra, random_affine
from qawa.cyclotomic import (
    CyclotomicAlgebra, expected_dimension, load_f, parse_f_json,
)
from qawa.superalgebra import SpecError, preset
from qawa.suites import soundness_failures, unitriangular_failures

F = Fraction


def quotient(name="trivial", n=2, z=1, coeffs=(-1, 0)):
    A = preset(name)
    return CyclotomicAlgebra(AffineAlgebra(A, n, z), load_f(A, list(coeffs)))


class TestLoadF:
    def test_accepts(self):
        f = load_f(preset("trivial"), [-1, 0])
        assert f.d == 2 and f.label() == "X^2 - 1"
        E = preset("ext2")
        f = load_f(E, [1, "th12"])
        assert f.d == 2 and f.coeff(1) == {E.index["th12"]: 1}

    def test_rejects(self):
        with pytest.raises(SpecError) as err:
            load_f(preset("trivial"), [0, 0])
        assert err.value.violation == "not-invertible"
        with pytest.raises(SpecError) as err:
            load_f(preset("ext2"), [1, "th1"])
        assert err.value.violation == "not-central"
        with pytest.raises(SpecError):
            load_f(preset("dual"), ["c"])

    def test_json(self):
        A = preset("dual")
        f = parse_f_json(A, {"d": 2, "coeffs": [[[0, "-1"]], [[1, "1/2"]]]})
        assert f.coeff(0) == {0: -1} and f.coeff(1) == {1: F(1, 2)}
        assert parse_f_json(A, f.to_json()) == f
        with pytest.raises(SpecError):
            parse_f_json(A, {"d": 3, "coeffs": [1, 0]})


class TestFiAndReduce:
    @pytest.mark.parametrize("z", [F(0), F(1), F(2, 3)])
    def test_f2(self, z):
        C = quotient(z=z)
        H = C.H
        assert C.f_i(1) == H.X(1) ** 2 - 1
        expected = H.X(2) ** 2 - H.X(1) * H.X(2) * H.T(1) * z - H.T(1) * z - 1
        assert C.f_i(2) == expected

    @pytest.mark.parametrize("name", ["dual", "ext2"])
    def test_fi_commutes_with_slots(self, name):
        C = quotient(name, 2, F(1, 2))
        H = C.H
        for i in (1, 2):
            fi = C.f_i(i)
            for k in (1, 2):
                for b in range(H.A.m):
                    s = H.slot(k, b)
                    assert s * fi == fi * s

    def test_reduce_examples(self):
        z = F(2, 3)
        C = quotient(z=z)
        H = C.H
        assert C.reduce(H.X(1) ** 2).lift() == H.one()
        assert C.reduce(H.X(2) ** 2).lift() == H.X(1) * H.X(2) * H.T(1) * z + H.T(1) * z + 1
        for key in C.basis():
            assert C.reduce(H.element({key: 1})).terms == {key: 1}

    def test_reduce_rejects_negative(self):
        C = quotient()
        with pytest.raises(ValueError):
            C.reduce(C.H.X(1, -1))

    @pytest.mark.parametrize("name", ["trivial", "kC2", "dual"])
    def test_idempotent(self, name):
        C = quotient(name, 2, F(1, 3))
        rng = random.Random(6)
        for _ in range(10):
            x = random_affine(C.H, rng, max_terms=3, max_exp=4, nonnegative=True)
            once = C.reduce(x)
            assert C.reduce(once.lift()) == once

    @pytest.mark.parametrize("name,n", [("trivial", 2), ("dual", 2), ("trivial", 3)])
    def test_ideal_dies(self, name, n):
        C = quotient(name, n, 1)
        bad, total = soundness_failures(C, random.Random(1), 5)
        assert total > 0 and bad == 0


class TestInverseAndProduct:
    def test_invert_examples(self):
        C = quotient()
        assert C.invert_X(1).lift() == C.H.X(1)
        L = quotient(coeffs=(-1,))
        assert L.invert_X(1).lift() == L.H.one()

    @pytest.mark.parametrize("name", ["trivial", "kC2", "kC3", "dual", "ext2"])
    def test_inverse_property(self, name):
        C = quotient(name, 2, F(2, 3))
        for i in (1, 2):
            X = C.reduce(C.H.X(i))
            assert C.invert_X(i) * X == C.one() == X * C.invert_X(i)

    def test_element_accepts_negative_powers(self):
        C = quotient(z=1)
        H = C.H
        assert C.element(H.X(2, -1)) * C.element(H.X(2)) == C.one()

    def test_mul_examples(self):
        z = F(1, 2)
        C = quotient(z=z)
        H = C.H
        T = C.element(H.T(1))
        assert T * T == C.element(H.T(1) * z + 1)
        X1, X2 = C.element(H.X(1)), C.element(H.X(2))
        assert X1 * X1 == C.one()
        assert (X2 * X2).lift() == H.X(1) * H.X(2) * H.T(1) * z + H.T(1) * z + 1

    def test_associative(self):
        C = quotient("dual", 2, F(2, 3))
        rng = random.Random(2)
        for _ in range(10):
            x, y, w = (C.reduce(random_affine(C.H, rng, max_terms=2, max_exp=2, nonnegative=True))
                       for _ in range(3))
            assert (x * y) * w == x * (y * w)

    def test_incompatible(self):
        with pytest.raises(ValueError):
            quotient(z=1).one() * quotient(z=0).one()


class TestDimensionAndTrace:
    @pytest.mark.parametrize("name,n,d,dim", [
        ("trivial", 2, 2, 8), ("trivial", 3, 2, 48), ("dual", 2, 2, 32), ("kC2", 2, 1, 8),
        ("ext2", 2, 2, 128),
    ])
    def test_dimension(self, name, n, d, dim):
        C = quotient(name, n, 1, (-1,) + (0,) * (d - 1))
        assert C.dimension() == dim == expected_dimension(n, d, preset(name).m)
        assert len(set(C.basis())) == dim

    def test_trace_examples(self):
        C = quotient()
        H = C.H
        assert C.trace_f(C.one()) == 1
        assert C.trace_f(C.element(H.X(1))) == 0
        assert C.trace_f(C.element(H.T(1))) == 0

    def test_gram_examples(self):
        G, dual = quotient(n=1).gram()
        assert G == [[1, 0], [0, 1]] and dual == [[1, 0], [0, 1]]
        G, _ = quotient(n=1, coeffs=(-1,)).gram()
        assert G == [[1]]
        G, dual = quotient(n=2, z=1).gram()
        assert len(G) == 8 and len(dual) == 8

    @pytest.mark.parametrize("name", ["trivial", "dual", "ext2"])
    def test_supersymmetric(self, name):
        C = quotient(name, 2, 1) if name != "ext2" else quotient(name, 1, 1)
        elems = [C.basis_element(k) for k in C.basis()]
        for x in elems:
            for y in elems:
                sign = -1 if x.parity() and y.parity() else 1
                assert C.trace_f(x * y) == sign * C.trace_f(y * x)

    def test_unitriangular_matched_form(self):
        C = quotient(z=1)
        bad, total = unitriangular_failures(C)
        assert total > 0 and bad == 0

    def test_literal_ordering_is_not_triangular(self):
        # The row X_2^{-1} (lambda = (0, 1), w = 1) pairs to -1 with the column
        # X_1 T_1, whose exponent vector sits strictly below (0, 1) when position
        # n is most significant.  Negative powers in the quotient produce T terms.
        C = quotient(z=1)
        H = C.H
        row = C.element(H.X(2, -1))
        col = C.basis_element(((0, 0), (1, 0), (2, 1)))
        assert C.trace_f(row * col) == -1


class TestTower:
    @pytest.mark.parametrize("n", [1, 2])
    def test_trace_factors(self, n):
        big = quotient(n=n + 1, z=F(2, 3))
        small = big.restrict()
        for key in big.basis():
            x = big.basis_element(key)
            assert big.trace_f(x) == small.trace_f(big.partial_trace(x))

    def test_decompose_examples(self):
        C = quotient(n=3, z=1)
        H = C.H
        assert {k: v.lift() for k, v in C.right_module_decompose(C.one()).items()} == \
            {(3, 0, 0): C.restrict().H.one()}
        assert {k: v.lift() for k, v in C.right_module_decompose(C.element(H.T(2))).items()} == \
            {(2, 0, 0): C.restrict().H.one()}
        small = C.restrict()
        h = small.element(small.H.T(1) + small.H.X(1) * 2)
        x = C.element(H.X(3)) * C.embed(h)
        assert C.right_module_decompose(x) == {(3, 1, 0): h}

    def test_partial_trace_examples(self):
        C = quotient(n=2, z=1)
        small = C.restrict()
        assert C.partial_trace(C.one()) == small.one()
        assert C.partial_trace(C.element(C.H.T(1))).is_zero()
        D = quotient("dual", 2, 1)
        assert D.partial_trace(D.element(D.H.slot(2, "c"))) == D.restrict().one()

    @pytest.mark.parametrize("name", ["trivial", "dual"])
    def test_bimodule_map(self, name):
        C = quotient(name, 2, F(1, 2))
        small = C.restrict()
        rng = random.Random(14)
        for _ in range(5):
            x = C.reduce(random_affine(C.H, rng, max_terms=3, max_exp=1, nonnegative=True))
            h = small.reduce(random_affine(small.H, rng, max_terms=2, max_exp=1, nonnegative=True))
            k = small.reduce(random_affine(small.H, rng, max_terms=2, max_exp=1, nonnegative=True))
            assert C.partial_trace(C.embed(h) * x * C.embed(k)) == \
                h * C.partial_trace(x) * k

    def test_embedded_subalgebra(self):
        C = quotient(n=3, z=1)
        H = C.H
        x = C.element(H.X(2) * H.T(1) * H.X(2) * H.X(1) ** 3)
        assert all(lam[2] == 0 and w[2] == 3 for (_, lam, w) in x.terms)

    @pytest.mark.parametrize("name", ["trivial", "dual"])
    def test_full_rank(self, name):
        C = quotient(name, 2, 1)
        assert C.right_module_rank() == C.dimension()


class TestLevelOne:
    @pytest.mark.parametrize("name", ["trivial", "kC2"])
    @pytest.mark.parametrize("a", [-1, 1])
    def test_check(self, name, a):
        C = quotient(name, 2, F(2, 3), (a,))
        report = C.level_one_check(samples=5)
        assert report and all(r["status"] == "pass" for r in report)
        assert C.dimension() == preset(name).m ** 2 * 2

    def test_jm_example(self):
        z = F(2, 3)
        C = quotient(z=z, coeffs=(-1,))
        H = C.H
        assert C.reduce(H.X(2)).lift() == H.T(1) * z + 1 == H.jucys_murphy(2)

    def test_rejects_higher_level(self):
        with pytest.raises(ValueError):
            quotient().level_one_check()
