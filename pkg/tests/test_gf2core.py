from __future__ import annotations

from math import prod

import pytest
from hypothesis import given, strategies as st

from bordismlab.gf2core import (
    FormalPoly,
    Gf2Poly,
    GlMatrix,
    RankError,
    SymFn,
    char_name,
    char_sum,
    divide_by_linear_form,
    elementary_values,
    eval_symfn,
    formal_sigma,
    gl_enumerate,
    gl_order,
    linear_form,
    poly_add,
    poly_mul,
    span_rank,
)

R1, R2, R12, R3, R13, R23, R123 = 1, 2, 3, 4, 5, 6, 7


def poly(k, *exps):
    return Gf2Poly.from_exponents(k, exps)


class TestCharacters:
    def test_sums(self):
        assert char_sum(R1, R2) == R12
        assert char_sum(R12, R2) == R1
        assert char_sum(R123, R123) == 0

    def test_rank_mismatch(self):
        with pytest.raises(RankError):
            char_sum(R123, 8, k=3)

    def test_names(self):
        assert [char_name(c) for c in (R1, R12, R123, 0b1011)] == ["r1", "r12", "r123", "r124"]

    def test_linear_form(self):
        assert linear_form(R13, 3) == poly(3, (1, 0, 0), (0, 0, 1))
        assert linear_form(R2, 2) == poly(2, (0, 1))
        with pytest.raises(ValueError):
            linear_form(0, 3)


class TestPolynomials:
    def test_frobenius_example(self):
        x = linear_form(R12, 2)
        assert x * x == poly(2, (2, 0), (0, 2))

    def test_self_sum_vanishes(self):
        p = poly(3, (1, 2, 0), (0, 0, 3))
        assert not poly_add(p, p)

    def test_product(self):
        assert poly_mul(linear_form(R1, 2), linear_form(R12, 2)) == poly(2, (2, 0), (1, 1))

    def test_rank_mismatch(self):
        with pytest.raises(RankError):
            linear_form(R1, 2) + linear_form(R1, 3)

    def test_printing(self):
        assert str(poly(2, (2, 0), (1, 1))) == "r1^2 + r1*r2"
        assert str(Gf2Poly.zero(2)) == "0"

    def test_overflow_guard(self):
        big = poly(1, (3000,))
        with pytest.raises(OverflowError):
            big * big


class TestDivision:
    def test_examples(self):
        assert divide_by_linear_form(poly(2, (2, 0), (1, 1)), R1, 1) == poly(2, (1, 0), (0, 1))
        assert divide_by_linear_form(poly(2, (2, 0), (0, 2)), R12, 2) == Gf2Poly.one(2)
        assert divide_by_linear_form(poly(3, (1, 0, 0), (0, 1, 0)), R3, 1) is None

    def test_trivial_divisor(self):
        with pytest.raises(ValueError):
            divide_by_linear_form(Gf2Poly.one(2), 0, 1)

    def test_zero_is_divisible(self):
        assert divide_by_linear_form(Gf2Poly.zero(3), R123, 3) == Gf2Poly.zero(3)


class TestGL:
    @pytest.mark.parametrize("k,size", [(1, 1), (2, 6), (3, 168)])
    def test_sizes(self, k, size):
        assert len(gl_enumerate(k)) == size == gl_order(k)

    def test_k4_size(self):
        assert len(gl_enumerate(4)) == prod(16 - 2**i for i in range(4)) == 20160

    def test_guard(self):
        with pytest.raises(ValueError):
            gl_enumerate(5)

    def test_closure(self):
        group = set(gl_enumerate(3))
        mats = sorted(group)[::17]
        for a in mats:
            assert a.inverse() in group
            assert a @ a.inverse() == GlMatrix.identity(3)
            for b in mats:
                assert a @ b in group

    def test_sigma_examples(self):
        sigma = GlMatrix.from_images([R1, R2, R13])
        assert sigma.apply(R23) == R123
        assert sigma.apply(R123) == R23
        assert all(GlMatrix.identity(3).apply(c) == c for c in range(1, 8))

    def test_rows_versus_images(self):
        s1 = GlMatrix.from_lists([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        s2 = GlMatrix.from_lists([[1, 0, 0], [0, 1, 0], [0, 1, 1]])
        s3 = GlMatrix.from_lists([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
        assert s1.images == (R1, R3, R2)
        assert s2.images == (R1, R23, R3)
        assert s3.images == (R1, R2, R23)

    def test_singular_rejected(self):
        with pytest.raises(ValueError):
            GlMatrix.from_images([R1, R2, R12])

    def test_basis_map(self):
        m = GlMatrix.from_basis_map([(R1, R1), (R2, R2), (R23, R3)])
        assert m.apply(R23) == R3 and m.apply(R3) == R23


class TestSymmetricFunctions:
    def test_sigma2_repeated(self):
        assert eval_symfn(SymFn.elementary(2), [R1, R1, R2], 2) == poly(2, (2, 0))

    def test_top_sigma_is_euler_class(self):
        chars = [R1, R2, R3, R123]
        expected = prod((linear_form(c, 3) for c in chars[1:]), start=linear_form(R1, 3))
        assert eval_symfn(SymFn.elementary(4), chars, 3) == expected

    def test_arity(self):
        with pytest.raises(ValueError):
            eval_symfn(SymFn.monomial((1, 1, 1)), [R1, R2], 2)

    def test_constant(self):
        assert eval_symfn(SymFn.one(), [R1], 1) == Gf2Poly.one(1)

    def test_zero_partition(self):
        assert eval_symfn(SymFn.monomial((0, 0)), [R1, R2], 2) == Gf2Poly.one(2)

    def test_monomial_symmetric_small(self):
        # S_(2,1)(x, y) = x^2 y + x y^2
        value = eval_symfn(SymFn.monomial((2, 1)), [R1, R2], 2)
        assert value == poly(2, (2, 1), (1, 2))

    def test_malformed_partition(self):
        with pytest.raises(ValueError):
            SymFn.monomial((1, 2))


class TestFormalSigma:
    a, b, c = R1, R2, R3

    def test_degree_zero(self):
        assert formal_sigma(0, [R1, R2], 2).terms == frozenset({()})

    def test_cancellation(self):
        assert formal_sigma(2, [self.a, self.a, self.b], 2).terms == frozenset({(self.a, self.a)})

    def test_binomial_coefficient(self):
        host = [self.a] * 2 + [self.b] * 3 + [self.c]
        s2 = formal_sigma(2, host, 3)
        assert s2.coefficient([self.a, self.b]) == 0  # 6 ways
        assert s2.coefficient([self.b, self.b]) == 1  # 3 ways
        assert formal_sigma(4, host, 3).coefficient([self.a, self.a, self.b, self.c]) == 1

    def test_beyond_length(self):
        assert not formal_sigma(3, [R1, R2], 2)

    def test_formal_poly_ops(self):
        p = FormalPoly(2, [(1, 2), (2, 1)])
        assert not p
        assert FormalPoly(2, [(1,)]) + FormalPoly(2, [(2,)]) == FormalPoly(2, [(2,), (1,)])


def chars(k, min_size=1, max_size=5):
    return st.lists(st.integers(1, (1 << k) - 1), min_size=min_size, max_size=max_size)


def polys(k, max_terms=6, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp)] * k)
    return st.lists(exps, max_size=max_terms).map(lambda es: Gf2Poly.from_exponents(k, es))


class TestProperties:
    @given(polys(3), st.integers(1, 7), st.integers(1, 3))
    def test_division_round_trip(self, p, ell, e):
        product = linear_form(ell, 3) ** e * p
        q = divide_by_linear_form(product, ell, e)
        assert q == p
        r = divide_by_linear_form(p, ell, 1)
        if r is not None:
            assert poly_mul(linear_form(ell, 3), r) == p

    @given(polys(3))
    def test_frobenius(self, p):
        assert all(a % 2 == 0 for e in (p * p).exponents() for a in e)

    @given(st.integers(1, 7), chars(3, 1, 5), st.data())
    def test_identity_one(self, x, xs, data):
        n = len(xs)
        i = data.draw(st.integers(1, n))
        lhs = eval_symfn(SymFn.elementary(i), [x ^ xs[0]] + xs[1:], 3) if x != xs[0] else None
        sig = elementary_values([linear_form(c, 3) for c in xs[1:]], 3)
        rhs = linear_form(x, 3) * sig[i - 1] + eval_symfn(SymFn.elementary(i), xs, 3)
        if lhs is None:
            # x + x_1 is trivial: the first variable is 0
            lhs = eval_symfn(SymFn.elementary(i), xs[1:], 3) if i < n else Gf2Poly.zero(3)
        assert lhs == rhs

    @given(st.integers(1, 7), chars(3, 0, 3), st.data())
    def test_identity_two(self, x, rest, data):
        i = data.draw(st.integers(1, len(rest) + 2))
        lhs = eval_symfn(SymFn.elementary(i), [x, x] + rest, 3)
        sig = elementary_values([linear_form(c, 3) for c in rest], 3)
        e = lambda j: sig[j] if 0 <= j <= len(rest) else Gf2Poly.zero(3)  # noqa: E731
        assert lhs == linear_form(x, 3) ** 2 * e(i - 2) + e(i)

    @given(chars(3, 1, 5), st.integers(0, 4), st.data())
    def test_identity_three(self, xs, l, data):
        i = data.draw(st.integers(1, len(xs)))
        lhs = eval_symfn(SymFn.power_block(l, i), xs, 3)
        rhs = elementary_values([linear_form(c, 3) ** l for c in xs], 3)[i]
        assert lhs == rhs

    def test_identity_three_exhaustive_grid(self):
        xs = [R1, R12, R123, R3, R23]
        for n in range(1, 6):
            for i in range(1, n + 1):
                for l in range(5):
                    lhs = eval_symfn(SymFn.power_block(l, i), xs[:n], 3)
                    rhs = elementary_values([linear_form(c, 3) ** l for c in xs[:n]], 3)[i]
                    assert lhs == rhs

    @given(st.sampled_from(gl_enumerate(3)), st.sampled_from(gl_enumerate(3)), st.integers(1, 7))
    def test_group_action(self, a, b, c):
        assert (a @ b).apply(c) == a.apply(b.apply(c))
        assert a.apply(c) != 0

    @given(st.sampled_from(gl_enumerate(3)), polys(3), polys(3))
    def test_poly_action_is_ring_map(self, m, p, q):
        assert m.apply_poly(p * q) == m.apply_poly(p) * m.apply_poly(q)
        assert m.apply_poly(p + q) == m.apply_poly(p) + m.apply_poly(q)

    @given(chars(4, 1, 6))
    def test_rank_bounds(self, vs):
        assert 1 <= span_rank(vs) <= min(4, len(vs))
