from __future__ import annotations

import random
from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, strategies as st

from bordismlab.classify import (
    FAMILIES,
    SEED,
    MonomialBasis,
    a_k,
    corrections,
    edit_distance,
    essential_check,
    fixtures as load_fixtures,
    g_polynomial,
    named,
    orbit_regeneration,
    s4g3_report,
    sample_t1_claim,
    span_rank,
    subspace_sweep,
    type_monomials,
    verify_identities,
)
from bordismlab.realizability import is_realizable
from bordismlab.repalgebra import GkRep, RepPolynomial, aut_orbit, enumerate_faithful
from bordismlab.textio import parse_poly

MONOMIALS = enumerate_faithful(3, 4)


def a_k_rational(k):
    total = Fraction((-1) ** k)
    for i in range(k):
        total += Fraction((-1) ** (k - 1 - i) * prod(2**k - 2**j for j in range(i + 1)), factorial(i + 1))
    assert total.denominator == 1
    return int(total)


class TestRank:
    def test_fixtures(self, fixtures):
        assert span_rank(list(fixtures.values())) == 32
        assert span_rank([p for n, p in fixtures.items() if n.startswith("L1_")]) == 4

    def test_printed_fixtures(self, printed_fixtures):
        assert span_rank(list(printed_fixtures.values())) == 32

    def test_duplicate(self):
        p = named("F")
        assert span_rank([p, p]) == 1
        assert span_rank([p, p, p + p]) == 1

    def test_mixed_shape(self):
        with pytest.raises(ValueError):
            span_rank([named("F"), named("RP4")])

    @given(st.randoms(use_true_random=False))
    def test_order_independent(self, rnd):
        polys = list(load_fixtures().values())
        rnd.shuffle(polys)
        assert span_rank(polys[:20]) == 20

    @given(st.sets(st.sampled_from(MONOMIALS), max_size=20))
    def test_basis_round_trip(self, reps):
        basis = MonomialBasis.faithful(3, 4)
        p = RepPolynomial.from_reps(3, reps, 4)
        q = basis.from_vector(basis.to_vector(p))
        assert q.reps == p.reps


class TestOrbits:
    def test_sizes(self):
        sizes = {f: orbit_regeneration(f).orbit_size for f in FAMILIES}
        assert sizes == {"lambda1": 7, "lambda2": 7, "lambda3": 21}

    def test_lambda1_listed_members_in_orbit(self, fixtures):
        orbit = aut_orbit(fixtures["L1_1"])
        listed = {fixtures[n] for n in ("L1_1", "L1_2", "L1_3", "L1_4")}
        assert listed < orbit
        assert len(orbit_regeneration("lambda1").unmatched_orbit) == 3

    def test_lambda2_and_lambda3_regenerate_after_corrections(self):
        assert orbit_regeneration("lambda2").regenerates
        assert orbit_regeneration("lambda3").regenerates

    def test_corrections(self, printed_fixtures):
        fixed = {c.name: c for c in corrections()}
        assert sorted(fixed) == ["L1_2", "L3_13"]
        assert fixed["L1_2"].regenerated == named("RP2xRP2")
        assert (fixed["L1_2"].symmetric_difference, fixed["L1_2"].edit_distance) == (4, 2)
        expected = printed_fixtures["L3_13"].reps - {GkRep.of(3, [4, 6, 6, 7])} | {GkRep.of(3, [4, 5, 5, 7])}
        assert fixed["L3_13"].regenerated.reps == expected
        assert fixed["L3_13"].edit_distance == 2

    def test_edit_distance(self):
        p = parse_poly("r1*r2*r3*r123", 3)
        q = parse_poly("r1*r2*r3*r12", 3)
        assert edit_distance(p, p) == 0
        assert edit_distance(p, q) == 1
        assert edit_distance(p, p + q) == 4


class TestIdentities:
    def test_all_pass(self):
        report = verify_identities()
        assert all(report.values()), report
        assert len(report) == 7

    def test_g(self):
        assert len(g_polynomial()) == 12
        assert is_realizable(g_polynomial())


class TestSweeps:
    def test_type3(self):
        count, rank, good = subspace_sweep(type_monomials(3, 3))
        assert (count, rank) == (16, 4)
        assert all(is_realizable(p) for p in good)

    def test_rank2(self):
        count, rank, good = subspace_sweep(enumerate_faithful(2, 2))
        assert (count, rank) == (2, 1)
        assert sorted(len(p) for p in good) == [0, 3]

    def test_single(self):
        assert subspace_sweep([MONOMIALS[0]])[:2] == (1, 0)

    def test_guard(self):
        with pytest.raises(ValueError):
            subspace_sweep(MONOMIALS[:26])

    def test_sampling_closure(self, fixtures):
        rng = random.Random(SEED)
        ranks = span_rank(list(fixtures.values()))
        found = 0
        for _ in range(1000):
            p = RepPolynomial.from_reps(3, rng.sample(MONOMIALS, rng.randint(1, 12)), 4)
            if is_realizable(p):
                found += 1
                assert span_rank(list(fixtures.values()) + [p]) == ranks
        assert found >= 0

    def test_realizable_sums_are_in_span(self, fixtures):
        rng = random.Random(SEED + 1)
        values = list(fixtures.values())
        for _ in range(50):
            p = RepPolynomial.zero(3, 4)
            for q in rng.sample(values, 5):
                p = p + q
            assert span_rank(values + [p]) == 32

    def test_t1_claim_sampled(self):
        samples, hits = sample_t1_claim(samples=500)
        assert samples == 500 and hits == 0


class TestEssential:
    def test_F_is_spoiled_by_the_lambda1_orbit(self, fixtures):
        v = essential_check(named("F"))
        assert not v.essential
        orbit = aut_orbit(fixtures["L1_1"])
        assert v.spoiler in orbit
        assert named("F") + v.spoiler in orbit
        assert len(v.spoiler) == 3

    @pytest.mark.parametrize("name", ["L1_1", "L2_1", "L3_1"])
    def test_bounded(self, fixtures, name):
        assert essential_check(fixtures[name]).essential

    def test_rejects_non_realizable(self):
        with pytest.raises(ValueError):
            essential_check(parse_poly("r1*r2*r3*r123", 3))

    def test_unknown_mode(self, fixtures):
        with pytest.raises(ValueError):
            essential_check(fixtures["L1_1"], mode="fast")

    def test_exhaustive_small_span(self, fixtures):
        gens = [fixtures[n] for n in ("L1_1", "L1_2", "L1_3", "L1_4")]
        v = essential_check(named("F"), mode="exhaustive", generators=gens)
        assert not v.essential
        assert len(v.spoiler) < 4 and len(named("F") + v.spoiler) < 4

    @pytest.mark.slow
    def test_exhaustive_full_span(self, fixtures):
        assert essential_check(fixtures["L1_1"], mode="exhaustive").essential


class TestAk:
    def test_values(self):
        assert [a_k(k) for k in (1, 2, 3)] == [0, 1, 13]

    @pytest.mark.parametrize("k", range(1, 12))
    def test_rational_fold(self, k):
        assert a_k(k) == a_k_rational(k)

    def test_invalid(self):
        with pytest.raises(ValueError):
            a_k(0)


class TestReport:
    def test_keys(self):
        rep = s4g3_report()
        keys = dict((k, v) for k, v, _ in rep.lines)
        assert keys["dim_s4g3"] == "32"
        assert keys["t1_count"] == "84"
        assert keys["a3"] == "13"
        assert keys["orbit_lambda2"] == "7" and keys["orbit_lambda3"] == "21"
        failing = sorted(k for k, _, ok in rep.lines if not ok)
        assert failing == ["orbit_lambda1", "orbit_lambda1_regenerates"]
