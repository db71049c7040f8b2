"""The degree-4 classification over ``G_3`` and related counting.

Polynomials are turned into bit vectors over a canonical monomial basis so
that GF(2) ranks, sweeps and spoiler searches reduce to integer XOR.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import factorial, prod
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .gf2core import GlMatrix, gl_enumerate, gl_order, span_rank as _bit_rank
from .labgraph import (
    CharacteristicData,
    build_from_data,
    coloring_polynomial,
    is_geometric,
    quotient_matrix,
    restrict_generic,
    rp2xrp2_graph,
    rpk_graph,
    small_cover_graph,
)
from .realizability import is_realizable
from .repalgebra import GkRep, L, RepPolynomial, aut_orbit, classify_type, enumerate_faithful
from .textio import parse_named_polys, parse_poly

SEED = 20240917

FAMILIES = {"lambda1": ("L1_", 4), "lambda2": ("L2_", 7), "lambda3": ("L3_", 21)}


class MonomialBasis:
    """Ordered monomials with lossless conversion to integer bit vectors."""

    def __init__(self, monomials: Iterable[GkRep]):
        self.monomials = tuple(sorted(set(monomials)))
        self.index = {m: i for i, m in enumerate(self.monomials)}
        ks = {m.k for m in self.monomials}
        ns = {m.n for m in self.monomials}
        if len(ks) > 1 or len(ns) > 1:
            raise ValueError("basis monomials must share rank and dimension")
        self.k = ks.pop() if ks else 0
        self.n = ns.pop() if ns else 0

    @classmethod
    def faithful(cls, k: int, n: int) -> MonomialBasis:
        return cls(enumerate_faithful(k, n))

    def __len__(self) -> int:
        return len(self.monomials)

    def to_vector(self, p: RepPolynomial) -> int:
        try:
            return sum(1 << self.index[r] for r in p.reps)
        except KeyError as e:
            raise ValueError(f"monomial {e.args[0]} is outside the basis") from None

    def from_vector(self, v: int) -> RepPolynomial:
        reps = [self.monomials[i] for i in range(v.bit_length()) if v >> i & 1]
        return RepPolynomial(self.k, self.n if reps else 0, frozenset(reps))


def _common_shape(polys: Sequence[RepPolynomial]) -> None:
    shapes = {(p.k, p.n) for p in polys if p}
    ks = {p.k for p in polys}
    if len(shapes) > 1 or len(ks) > 1:
        raise ValueError(f"mixed (k, n) among polynomials: {sorted(shapes)}")


def span_rank(polys: Sequence[RepPolynomial]) -> int:
    polys = list(polys)
    _common_shape(polys)
    basis = MonomialBasis(r for p in polys for r in p.reps)
    return _bit_rank(basis.to_vector(p) for p in polys)


# ---------- fixtures


def _data(name: str) -> str:
    return resources.files("bordismlab").joinpath("data").joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def transcribed_fixtures() -> dict[str, RepPolynomial]:
    """The 32 generators exactly as transcribed."""
    return parse_named_polys(_data("s4g3_fixtures.txt"), 3)


NAMED = {
    "F": (3, "r1*r2*r3*r123 + r1*r12*r23*r3 + r1*r2*r13*r23 + r1*r12*r13*r123"),
    "RP4": (4, "r1*r2*r3*r4 + r1*r12*r13*r14 + r2*r12*r23*r24 + r3*r13*r23*r34 + r4*r14*r24*r34"),
    "GammaV": (
        4,
        "r1*r2*r3*r4 + r1*r12*r13*r4 + r12*r2*r23*r4 + r13*r23*r3*r4"
        " + r14*r24*r34*r4 + r13*r23*r34*r4 + r12*r23*r24*r4 + r12*r13*r14*r4",
    ),
    "RP2xRP2": (3, "r1*r2*r13*r23 + r1*r12*r13*r123 + r2*r12*r23*r123"),
    "A1": (3, "r1*r2*r12*r3 + r1*r2*r12*r13 + r1*r2*r12*r23 + r1*r2*r12*r123"),
    "A2": (3, "r1*r2*r12*r3 + r1*r2*r12*r13 + r1*r23*r123*r3 + r1*r23*r123*r13"),
}

SMALL_COVER_ROWS = (
    (1, 0, 0, 1, 0, 1),
    (0, 1, 0, 1, 0, 1),
    (0, 0, 1, 1, 0, 1),
    (0, 0, 0, 0, 1, 1),
)
SMALL_COVER_DIMS = (3, 1)


def named(name: str) -> RepPolynomial:
    k, text = NAMED[name]
    return parse_poly(text, k)


def sigma_map() -> GlMatrix:
    """rho_1, rho_2 fixed; rho_3 to rho_13."""
    return GlMatrix.from_images([0b001, 0b010, 0b101])


def sigma_1() -> GlMatrix:
    return GlMatrix.from_lists([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


def sigma_2() -> GlMatrix:
    return GlMatrix.from_lists([[1, 0, 0], [0, 1, 0], [0, 1, 1]])


def sigma_3() -> GlMatrix:
    return GlMatrix.from_lists([[1, 0, 0], [0, 1, 1], [0, 0, 1]])


def restriction_sigma() -> GlMatrix:
    """Identification of ``ker rho_124`` with ``G_3``: rho_12, rho_14, rho_3 to rho_1, rho_2, rho_3."""
    return quotient_matrix(0b1011, 4, {0b0011: 0b001, 0b1001: 0b010, 0b0100: 0b100})


def sigma_prime() -> GlMatrix:
    """rho_1, rho_2 fixed; rho_23 to rho_3."""
    return GlMatrix.from_basis_map([(0b001, 0b001), (0b010, 0b010), (0b110, 0b100)])


def small_cover_data() -> CharacteristicData:
    return CharacteristicData.from_rows(SMALL_COVER_DIMS, SMALL_COVER_ROWS)


# ---------- misprint arbiter


def _factor_distance(a: GkRep, b: GkRep) -> int:
    ca, cb = a.counts(), b.counts()
    return a.n - sum(min(ca[c], cb[c]) for c in ca)


def edit_distance(p: RepPolynomial, q: RepPolynomial) -> int:
    """Minimum total factor substitutions over a monomial matching (extra monomials cost n)."""
    a, b = p.monomials(), q.monomials()
    size = max(len(a), len(b))
    if size == 0:
        return 0
    n = max(p.n, q.n)
    cost = np.full((size, size), n, dtype=np.int64)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            cost[i, j] = _factor_distance(x, y)
    rows, cols = linear_sum_assignment(cost)
    return int(cost[rows, cols].sum())


@dataclass(frozen=True)
class Correction:
    name: str
    printed: RepPolynomial
    regenerated: RepPolynomial
    symmetric_difference: int
    edit_distance: int


@dataclass
class OrbitReport:
    family: str
    base: str
    orbit_size: int
    expected_size: int
    transcribed: int
    matched: list[str]
    corrections: list[Correction]
    unmatched_orbit: list[RepPolynomial]

    @property
    def size_ok(self) -> bool:
        return self.orbit_size == self.expected_size

    @property
    def regenerates(self) -> bool:
        """Orbit equals the transcribed list once the corrections are applied."""
        return not self.unmatched_orbit and self.orbit_size == self.transcribed


def orbit_regeneration(family: str, fixtures: dict[str, RepPolynomial] | None = None) -> OrbitReport:
    """Compare the orbit of a family's first member with its transcribed list.

    Each transcribed polynomial outside the orbit is paired with the unused
    orbit element closest to it: smallest symmetric difference of monomial
    sets, then smallest total factor edit distance, then canonical order.
    """
    prefix, expected = FAMILIES[family]
    fixtures = transcribed_fixtures() if fixtures is None else fixtures
    members = {n: p for n, p in fixtures.items() if n.startswith(prefix)}
    base = prefix + "1"
    orbit = aut_orbit(members[base])
    matched = [n for n, p in members.items() if p in orbit]
    unused = sorted(orbit - set(members.values()), key=str)
    corrections = []
    for name, p in members.items():
        if p in orbit or not unused:
            continue
        best = min(unused, key=lambda q: (len(p.reps ^ q.reps), edit_distance(p, q), str(q)))
        unused.remove(best)
        corrections.append(Correction(name, p, best, len(p.reps ^ best.reps), edit_distance(p, best)))
    return OrbitReport(family, base, len(orbit), expected, len(members), matched, corrections, unused)


@lru_cache(maxsize=None)
def _corrected() -> tuple[tuple[str, RepPolynomial], ...]:
    fx = dict(transcribed_fixtures())
    for family in FAMILIES:
        for c in orbit_regeneration(family).corrections:
            fx[c.name] = c.regenerated
    return tuple(fx.items())


def fixtures(corrected: bool = True) -> dict[str, RepPolynomial]:
    """The 32 generators; by default with misprints replaced by their orbit match."""
    return dict(_corrected()) if corrected else dict(transcribed_fixtures())


def corrections() -> list[Correction]:
    return [c for family in FAMILIES for c in orbit_regeneration(family).corrections]


# ---------- identities


def g_polynomial(source: str = "A2") -> RepPolynomial:
    """Union of the monomials of ``A`` and two of its images."""
    a = named(source)
    maps = (sigma_1(), sigma_3()) if source == "A2" else (sigma_1(), sigma_2())
    reps = set(a.reps)
    for m in maps:
        reps |= a.apply(m).reps
    return RepPolynomial(3, 4, frozenset(reps))


def verify_identities(fx: dict[str, RepPolynomial] | None = None) -> dict[str, bool]:
    fx = fixtures() if fx is None else fx
    lam1 = fx["L1_1"]
    g = g_polynomial("A2")
    g_sum = fx["L1_1"] + fx["L1_3"] + fx["L1_4"] + fx["L2_1"] + fx["L2_2"] + fx["L2_5"]
    sigma = restriction_sigma()
    return {
        "lambda1_plus_sigma_lambda1_is_F": lam1 + lam1.apply(sigma_map()) == named("F"),
        "g_has_12_monomials": len(g) == 12,
        "g_both_constructions_agree": g == g_polynomial("A1"),
        "g_equals_fixture_sum": g == g_sum,
        "rp4_restricts_to_lambda2": restrict_generic(named("RP4"), 0b1011, sigma) == fx["L2_1"],
        "gammav_restricts_to_lambda3": restrict_generic(named("GammaV"), 0b1011, sigma).apply(
            sigma_prime()
        )
        == fx["L3_1"],
        "rp2xrp2_twists_to_lambda1": coloring_polynomial(rp2xrp2_graph()).apply(sigma_map()) == lam1,
    }


# ---------- sweeps and spoilers


SWEEP_GUARD = 25


def subspace_sweep(support: Sequence[GkRep]) -> tuple[int, int, list[RepPolynomial]]:
    """Count realizable subsets of ``support`` and the GF(2) rank they span."""
    support = sorted(set(support))
    if len(support) > SWEEP_GUARD:
        raise ValueError(f"sweep over {len(support)} monomials exceeds the guard {SWEEP_GUARD}")
    if not support:
        return 1, 0, [RepPolynomial.zero(1, 0)]
    k, n = support[0].k, support[0].n
    basis = MonomialBasis(support)
    good = []
    for mask in range(1 << len(support)):
        p = basis.from_vector(mask)
        if not p:
            p = RepPolynomial.zero(k, n)
        if is_realizable(p):
            good.append(p)
    return len(good), _bit_rank(basis.to_vector(p) for p in good), good


def type_monomials(k: int, j: int) -> list[GkRep]:
    return [r for r in enumerate_faithful(k, k + 1) if classify_type(r) == j]


@dataclass(frozen=True)
class EssentialVerdict:
    essential: bool
    spoiler: RepPolynomial | None
    mode: str
    searched: int

    def describe(self) -> str:
        if self.essential:
            return f"no smaller-support spoiler found ({self.mode}, {self.searched} candidates)"
        return f"spoiler {self.spoiler}"


def _is_spoiler(w: int, q: int, size: int) -> bool:
    return 0 < q.bit_count() < size and (w ^ q).bit_count() < size


def essential_check(
    p: RepPolynomial,
    mode: str = "bounded",
    generators: Sequence[RepPolynomial] | None = None,
    progress: Callable[[str], None] | None = None,
    allow_large: bool = False,
) -> EssentialVerdict:
    """Search for ``L'`` with fewer monomials than ``p`` such that ``p + L'`` also has fewer.

    Bounded mode tries sums of at most three generators, then the realizable
    subsets of the support of ``p``.  Exhaustive mode scans the whole span of
    the generators.
    """
    if not is_realizable(p):
        raise ValueError("essentiality is defined for realizable polynomials")
    gens = list(fixtures().values()) if generators is None else list(generators)
    size = len(p)
    basis = MonomialBasis([r for g in gens for r in g.reps] + list(p.reps))
    w = basis.to_vector(p)
    vecs = [basis.to_vector(g) for g in gens]
    if mode == "bounded":
        searched = 0
        for r in (1, 2, 3):
            for combo in itertools.combinations(range(len(vecs)), r):
                q = 0
                for i in combo:
                    q ^= vecs[i]
                searched += 1
                if _is_spoiler(w, q, size):
                    return EssentialVerdict(False, basis.from_vector(q), mode, searched)
        _, _, subs = subspace_sweep(p.monomials())
        for s in subs:
            searched += 1
            q = basis.to_vector(s)
            if _is_spoiler(w, q, size):
                return EssentialVerdict(False, s, mode, searched)
        return EssentialVerdict(True, None, mode, searched)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    rank = _bit_rank(vecs)
    if rank > 32 and not allow_large:
        raise ValueError(f"exhaustive search over a span of rank {rank} exceeds the 32 guard")
    found, searched = _exhaustive_spoiler(w, vecs, size, len(basis), progress)
    return EssentialVerdict(found is None, None if found is None else basis.from_vector(found), mode, searched)


def _independent(vecs: Sequence[int]) -> list[int]:
    out, pivots = [], {}
    for v in vecs:
        x = v
        while x:
            top = x.bit_length() - 1
            if top not in pivots:
                pivots[top] = x
                out.append(v)
                break
            x ^= pivots[top]
    return out


def _to_words(v: int, nwords: int) -> list[int]:
    return [(v >> (64 * i)) & 0xFFFFFFFFFFFFFFFF for i in range(nwords)]


def _span_table(vecs: Sequence[int], nwords: int) -> np.ndarray:
    table = np.zeros((1 << len(vecs), nwords), dtype=np.uint64)
    for i, v in enumerate(vecs):
        half = 1 << i
        table[half : 2 * half] = table[:half] ^ np.array(_to_words(v, nwords), dtype=np.uint64)
    return table


def _exhaustive_spoiler(w: int, vecs, size: int, width: int, progress) -> tuple[int | None, int]:
    """Meet in the middle: a table over the low half, streamed over the high half."""
    vecs = _independent(vecs)
    nwords = max(1, (width + 63) // 64)
    lo, hi = vecs[: len(vecs) // 2], vecs[len(vecs) // 2 :]
    low = _span_table(lo, nwords)
    low_w = low ^ np.array(_to_words(w, nwords), dtype=np.uint64)
    high_vals = [0]
    for v in hi:
        high_vals += [x ^ v for x in high_vals]
    start = time.monotonic()
    total = len(high_vals)
    for step, h in enumerate(high_vals):
        hw = np.array(_to_words(h, nwords), dtype=np.uint64)
        q = np.bitwise_count(low ^ hw).sum(axis=1)
        s = np.bitwise_count(low_w ^ hw).sum(axis=1)
        hits = np.nonzero((q > 0) & (q < size) & (s < size))[0]
        if hits.size:
            i = int(hits[0])
            vec = h
            for b, v in enumerate(lo):
                if i >> b & 1:
                    vec ^= v
            return vec, step * len(low) + i + 1
        if progress and (step % 4096 == 0 or step == total - 1):
            elapsed = time.monotonic() - start
            progress(f"essential scan {step + 1}/{total} high blocks, {elapsed:.1f}s")
    return None, total * len(low)


def sample_t1_claim(samples: int = 10_000, seed: int = SEED) -> tuple[int, int]:
    """Random 8-subsets of type-1 monomials; returns (samples, realizable count)."""
    t1 = type_monomials(3, 1)
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        p = RepPolynomial.from_reps(3, rng.sample(t1, 8), 4)
        hits += bool(is_realizable(p))
    return samples, hits


# ---------- dimension formula


def a_k(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    total = (-1) ** k
    for i in range(k):
        num = prod((1 << k) - (1 << j) for j in range(i + 1))
        term, rem = divmod(num, factorial(i + 1))
        if rem:
            raise ArithmeticError("inexact division in the dimension formula")
        total += (-1) ** (k - 1 - i) * term
    return total


# ---------- aggregate report


@dataclass
class Report:
    lines: list[tuple[str, str, bool]] = field(default_factory=list)

    def add(self, key: str, value, ok: bool = True) -> None:
        self.lines.append((key, str(value), bool(ok)))

    @property
    def ok(self) -> bool:
        return all(ok for _, _, ok in self.lines)

    def render(self) -> str:
        return "".join(f"{k} {v}{'' if ok else ' FAIL'}\n" for k, v, ok in self.lines)


def s4g3_report(exhaustive_essential: bool = False, progress=None) -> Report:
    rep = Report()
    mons = enumerate_faithful(3, 4)
    counts = [sum(1 for r in mons if classify_type(r) == j) for j in (1, 2, 3)]
    rep.add("monomials", len(mons), len(mons) == 119)
    for j, (c, want) in enumerate(zip(counts, (84, 28, 7)), start=1):
        rep.add(f"t{j}_count", c, c == want)
    rep.add("L", L(3), L(3) == 28)
    rep.add("gl_order", gl_order(3), gl_order(3) == len(gl_enumerate(3)) == 168)

    printed = transcribed_fixtures()
    fx = fixtures()
    for family in FAMILIES:
        o = orbit_regeneration(family)
        rep.add(f"orbit_{family}", o.orbit_size, o.size_ok)
        rep.add(f"orbit_{family}_expected", o.expected_size)
        rep.add(f"orbit_{family}_regenerates", "yes" if o.regenerates else "no", o.regenerates)
        for c in o.corrections:
            rep.add(f"misprint {c.name}", f"{c.printed} -> {c.regenerated}")
    for name, p in printed.items():
        if not is_realizable(p):
            rep.add(f"printed_not_realizable {name}", "yes")
    good = sum(bool(is_realizable(p)) for p in fx.values())
    rep.add("fixtures_realizable", f"{good}/{len(fx)}", good == len(fx) == 32)
    rank = span_rank(list(fx.values()))
    rep.add("dim_s4g3", rank, rank == 32)
    rep.add("dim_s4g3_printed", span_rank(list(printed.values())))
    rank1 = span_rank([p for n, p in fx.items() if n.startswith("L1_")])
    rep.add("dim_type3_subspace", rank1, rank1 == 4)

    for name, ok in verify_identities(fx).items():
        rep.add(f"identity {name}", "pass" if ok else "fail", ok)

    count, r3, _ = subspace_sweep(type_monomials(3, 3))
    rep.add("t3_sweep", f"{count} {r3}", (count, r3) == (16, 4))
    rp4 = coloring_polynomial(rpk_graph(4))
    gv = coloring_polynomial(small_cover_graph(small_cover_data()))
    rep.add("lambda_rp4_matches", "yes" if rp4 == named("RP4") else "no", rp4 == named("RP4"))
    rep.add("lambda_gammav_matches", "yes" if gv == named("GammaV") else "no", gv == named("GammaV"))
    geo = all(is_geometric(build_from_data(p)) for p in fx.values())
    rep.add("fixtures_geometric", "yes" if geo else "no", geo)

    spoil = essential_check(named("F"))
    rep.add("essential_F", "no" if not spoil.essential else "yes", not spoil.essential)
    for family in FAMILIES:
        base = fx[FAMILIES[family][0] + "1"]
        mode = "exhaustive" if exhaustive_essential else "bounded"
        v = essential_check(base, mode=mode, progress=progress)
        rep.add(f"essential_{family}_{mode}", "yes" if v.essential else "no", v.essential)
    rep.add("a3", a_k(3), a_k(3) == 13)
    return rep


def log_progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)
