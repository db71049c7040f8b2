"""Acceptance criteria 1-11, one test each.

Each criterion prints a ``criterion N: PASS|FAIL ...`` line (collected in
the terminal summary).  Running this file as a script prints the same
lines without pytest.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from bordismlab.classify import (
    FAMILIES,
    SEED,
    a_k,
    fixtures,
    named,
    orbit_regeneration,
    small_cover_data,
    span_rank,
    subspace_sweep,
    transcribed_fixtures,
    type_monomials,
    verify_identities,
)
from bordismlab.gf2core import gl_enumerate, gl_order
from bordismlab.labgraph import build_from_data, coloring_polynomial, is_geometric, rpk_graph, small_cover_graph
from bordismlab.localization import default_family, integrality_test
from bordismlab.realizability import is_realizable
from bordismlab.repalgebra import L, RepPolynomial, classify_type, enumerate_faithful

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


# ---------- criteria


def criterion_1():
    rank, dt = timed(lambda: span_rank(list(transcribed_fixtures().values())))
    return rank == 32 and dt < 1.0, f"rank {rank} in {dt:.3f}s"


def criterion_2():
    def run():
        return {f: orbit_regeneration(f) for f in FAMILIES}

    reports, dt = timed(run)
    want = {"lambda1": 4, "lambda2": 7, "lambda3": 21}
    sizes = {f: r.orbit_size for f, r in reports.items()}
    regen = {f: r.regenerates for f, r in reports.items()}
    flagged = sorted(c.name for r in reports.values() for c in r.corrections)
    ok = sizes == want and all(regen.values()) and dt < 5.0
    return ok, f"sizes {sizes} want {want}; regenerates {regen}; flagged {flagged}; {dt:.2f}s"


def criterion_3():
    def run():
        mons = enumerate_faithful(3, 4)
        return len(mons), [sum(classify_type(r) == j for r in mons) for j in (1, 2, 3)], L(3), len(gl_enumerate(3))

    (total, split, ell, order), dt = timed(run)
    ok = total == 119 and split == [84, 28, 7] and ell == 28 and order == gl_order(3) == 168 and dt < 1.0
    return ok, f"{total} monomials split {split}, L={ell}, |GL|={order} in {dt:.3f}s"


def criterion_4():
    def run():
        polys = dict(fixtures())
        polys["F"] = named("F")
        for k in (2, 3, 4):
            polys[f"RP{k}"] = coloring_polynomial(rpk_graph(k))
        polys["GammaV"] = coloring_polynomial(small_cover_graph(small_cover_data()))
        good = [n for n, p in polys.items() if p and is_realizable(p)]
        singles = [RepPolynomial.from_reps(3, [m], 4) for m in enumerate_faithful(3, 4)]
        singles += [RepPolynomial.from_reps(2, [m], 2) for m in enumerate_faithful(2, 2)]
        lone = sum(not is_realizable(s) for s in singles)
        return len(polys), len(good), lone, len(singles)

    (total, good, lone, nsingles), dt = timed(run)
    ok = good == total == 37 and lone == nsingles and dt < 1.0
    return ok, f"{good}/{total} realizable, {lone}/{nsingles} single monomials rejected, {dt:.3f}s"


def criterion_5():
    rp4 = str(coloring_polynomial(rpk_graph(4)))
    gv = str(coloring_polynomial(small_cover_graph(small_cover_data())))
    ok = rp4 == str(named("RP4")) and gv == str(named("GammaV"))
    return ok, f"RP4 {'matches' if rp4 == str(named('RP4')) else 'differs'}, GammaV {'matches' if gv == str(named('GammaV')) else 'differs'}"


def criterion_6():
    checks = verify_identities()
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"{len(checks) - len(failed)}/{len(checks)} identities" + (f", failed {failed}" if failed else "")


def criterion_7():
    (t3, k2), dt = timed(lambda: (subspace_sweep(type_monomials(3, 3)), subspace_sweep(enumerate_faithful(2, 2))))
    ok = t3[:2] == (16, 4) and k2[:2] == (2, 1) and sorted(len(p) for p in k2[2]) == [0, 3] and dt < 1.0
    return ok, f"T3 sweep {t3[:2]}, k=2 sweep {k2[:2]} in {dt:.3f}s"


def _oracle_inputs():
    out = []
    for support in (type_monomials(3, 3), enumerate_faithful(2, 2)):
        mons = sorted(support)
        k, n = mons[0].k, mons[0].n
        for mask in range(1 << len(mons)):
            out.append(RepPolynomial.from_reps(k, [m for i, m in enumerate(mons) if mask >> i & 1], n))
    rng = random.Random(SEED)
    mons = enumerate_faithful(3, 4)
    for _ in range(1000):
        out.append(RepPolynomial.from_reps(3, [m for m in mons if rng.random() < 0.5], 4))
    return out


def _enlarged_families(n):
    yield default_family(n)
    for L_, D in ((6, 2 * n + 4), (8, 16)):
        yield default_family(n, L=L_, D=D)


def criterion_8():
    def run():
        inputs = _oracle_inputs()
        disagreements, realizable = [], []
        for p in inputs:
            n = p.n if p else 1
            if is_realizable(p):
                realizable.append(p)
                g = build_from_data(p)
                if not is_geometric(g) or integrality_test(p, default_family(n)) is not None:
                    disagreements.append(p)
            elif not any(integrality_test(p, fam) is not None for fam in _enlarged_families(n)):
                disagreements.append(p)
        return len(inputs), len(realizable), disagreements

    (total, nreal, bad), dt = timed(run)
    ok = not bad and dt < 120
    return ok, f"{total} inputs, {nreal} realizable, {len(bad)} disagreements in {dt:.1f}s"


def criterion_9():
    inputs = [p for p in _oracle_inputs() if is_realizable(p)]
    bad = [p for p in inputs if coloring_polynomial(build_from_data(p)) != p]
    return not bad, f"{len(inputs) - len(bad)}/{len(inputs)} round trips"


def criterion_10():
    start = time.perf_counter()
    values = [a_k(1), a_k(2), a_k(3)]
    dt = time.perf_counter() - start
    ok = values == [0, 1, 13] and all(isinstance(v, int) for v in values) and dt < 1e-3
    return ok, f"A_1..A_3 = {values} in {dt * 1e6:.0f}us"


PROPERTY_SUITES = [
    "tests/test_gf2core.py::TestProperties::test_identity_one",
    "tests/test_gf2core.py::TestProperties::test_identity_two",
    "tests/test_gf2core.py::TestProperties::test_identity_three",
    "tests/test_gf2core.py::TestProperties::test_division_round_trip",
    "tests/test_repalgebra.py::TestMultisetI::test_agrees_with_formal_sigma",
    "tests/test_realizability.py::TestProperties::test_equivariance",
    "tests/test_realizability.py::TestProperties::test_additivity_random",
]


def criterion_11():
    root = Path(__file__).resolve().parent.parent
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "--hypothesis-show-statistics", *PROPERTY_SUITES]
    (proc, dt) = timed(lambda: subprocess.run(cmd, cwd=root, capture_output=True, text=True))
    out = proc.stdout
    counts = [int(line.split("passing examples")[0].split()[-1].strip(",")) for line in out.splitlines() if "passing examples" in line]
    ok = proc.returncode == 0 and len(counts) == len(PROPERTY_SUITES) and min(counts) >= 100 and dt < 30
    detail = f"{len(PROPERTY_SUITES)} suites, min {min(counts) if counts else 0} passing cases, {dt:.1f}s"
    return ok, detail


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 12)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    record(n, ok, detail)
    assert ok, f"criterion {n}: {detail}"


if __name__ == "__main__":
    failures = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        record(n, ok, detail)
        failures += not ok
    sys.exit(1 if failures else 0)
