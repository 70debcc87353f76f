"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line
that is printed in the terminal summary."""

import json
import time

import numpy as np

from acclog import record
from spreadcodes import kernels
from spreadcodes.decoder import decode
from spreadcodes.errors import DecodeFailure
from spreadcodes.fields import find_irreducible, frobenius, make_extension_field
from spreadcodes.harness import ChannelConfig, bench, coverage_report, run_experiment
from spreadcodes.matrices import Matrix, diagonalizer
from spreadcodes.spreadcode import (
    build_code,
    codeword_criteria,
    embed,
    enumerate_codewords,
    enumerate_grassmannian,
    is_codeword,
    subspace_distance,
    verify_spread,
)


def _check(number, ok, detail):
    record(number, ok, detail)
    assert ok, detail


def test_criterion_1_spread_property():
    t0 = time.perf_counter()
    params = [(2, 2, 2), (2, 3, 2), (2, 2, 3), (3, 2, 2), (2, 3, 3)]
    reports = [verify_spread(build_code(q, k, r)) for q, k, r in params]
    elapsed = time.perf_counter() - t0
    bad = [r for r in reports if not (r["ok"] and r["codewords"] == r["expected_codewords"]
                                      and r["pairwise_distances"] == [2 * r["k"]])]
    counts = ", ".join(f"({r['q']},{r['k']},{r['r']}):{r['codewords']}" for r in reports)
    _check(1, not bad and elapsed < 60, f"spread counts {counts}; partition and distance 2k hold; {elapsed:.2f}s")


def test_criterion_2_embedding():
    F8 = make_extension_field(2, [1, 1, 0, 1])
    lines = [Matrix(F8, [[1, a]]) for a in F8.elements()] + [Matrix(F8, [[0, 1]])]
    from spreadcodes.spreadcode import Subspace

    embedded = {Subspace.from_matrix(embed(L)) for L in lines}
    direct = set(enumerate_codewords(build_code(2, 3, 2, [1, 1, 0, 1])))
    _check(2, embedded == direct, f"embedded Gr(1,2) over F_8 has {len(embedded)} spaces, direct spread {len(direct)}; sets equal")


def test_criterion_3_exhaustive_decode():
    t0 = time.perf_counter()
    code = build_code(2, 3, 2)
    words = list(enumerate_codewords(code))
    mismatches = total = decoded = failed = 0
    for U in enumerate_grassmannian(code.base, 3, 6):
        total += 1
        dists = [subspace_distance(C, U) for C in words]
        dmin = min(dists)
        near = [C for C, d in zip(words, dists) if d <= 2]
        try:
            out = decode(code, U)
        except DecodeFailure:
            failed += 1
            mismatches += bool(near) or dmin < 4
            continue
        decoded += 1
        mismatches += not (len(near) == 1 and out.codeword == near[0])
    elapsed = time.perf_counter() - t0
    ok = total == 1395 and mismatches == 0 and elapsed < 300
    _check(3, ok, f"{total} subspaces: {decoded} decoded, {failed} DecodeFailure, {mismatches} mismatches; {elapsed:.1f}s")


def test_criterion_4_randomized_decode():
    code = build_code(3, 5, 2)
    assert code.cardinality == 244
    parts, ok = [], True
    for t in (1, 2):
        rep = run_experiment(code, ChannelConfig(t, t, 2024 + t), 1000, oracle_trials=50)
        good = rep.successes == 1000 and rep.failures == 0 and rep.oracle_mismatches == 0 and rep.oracle_checked == 50
        ok &= good
        parts.append(f"t={t}: {rep.successes}/1000 ok, oracle {rep.oracle_checked} checked, {rep.oracle_mismatches} mismatches")
    _check(4, ok, "; ".join(parts))


def test_criterion_5_path_agreement():
    parts, disagreements, comparisons = [], 0, 0
    for q, k, ts in ((3, 5, (1, 2)), (2, 5, (1, 2)), (2, 7, (1, 2, 3))):
        code = build_code(q, k, 2)
        for t in ts:
            rep = run_experiment(code, ChannelConfig(t, t, 77 + t), 300, mode="both", oracle_trials=0)
            disagreements += rep.path_disagreements
            comparisons += rep.path_comparisons
            assert rep.failures == 0
            rates = ",".join(f"rank{r}:{v:.2f}" for r, v in rep.fast_path_hit_rate.items())
            parts.append(f"q={q} k={k} t={t} hit[{rates}]")
    _check(5, disagreements == 0 and comparisons > 0,
           f"{comparisons} fast/gcd comparisons, {disagreements} disagreements; " + "; ".join(parts))


def test_criterion_6_algebraic_identities():
    ok = True
    built = 0
    for q, k in ((2, 1), (2, 3), (3, 3), (5, 3), (2, 5), (3, 5), (2, 7), (2, 9), (2, 11), (3, 7)):
        code = build_code(q, k, 2)
        d = code.diag
        ok &= d.S @ code.P.lift(code.ext) @ d.S_inv == d.D
        built += 1
    rng = np.random.default_rng(6)
    samples = 0
    for q, k in ((2, 11), (3, 5), (3, 7), (5, 3)):
        F = make_extension_field(q, find_irreducible(q, k))
        for v in rng.integers(0, F.order, size=2500):
            a = F.element(int(v))
            ok &= frobenius(a, k) == a
            samples += 1
    code = build_code(2, 3, 2)
    agree = members = 0
    for U in enumerate_grassmannian(code.base, 3, 6):
        verdicts = codeword_criteria(code, U)
        same = len(set(verdicts.values())) == 1
        agree += same
        members += same and verdicts["algebra"]
        ok &= same and is_codeword(code, U) == (U in code._codeword_set)
    ok &= agree == 1395 and members == 9
    _check(6, bool(ok), f"S P S^-1 = D for {built} codes; frobenius(a,k)=a on {samples} samples; "
                        f"criteria agree on {agree}/1395 subspaces ({members} codewords)")


def test_criterion_7_performance():
    ok, parts = True, []
    for b in kernels.available_backends():
        out = bench(2, [5, 7, 9, 11], 100, t=1, seed=7, backends=[b])
        for row in out["results"]:
            med = row["median_seconds"][b]
            fp = row["fast_path"][b]
            good = med < 1.0 and row["failures"][b] == 0 and fp["rank1_eligible"] > 0 \
                and fp["rank1_engaged"] == fp["rank1_eligible"]
            ok &= good
            parts.append(f"{b} k={row['k']}: median {med * 1e3:.2f}ms, fast path {fp['rank1_engaged']}/{fp['rank1_eligible']}")
    _check(7, ok, "; ".join(parts))


def test_criterion_8_coverage_report():
    code = build_code(2, 3, 2)
    a = json.dumps(coverage_report(code), sort_keys=True)
    b = json.dumps(coverage_report(code), sort_keys=True)
    rep = json.loads(a)
    ok = a == b and rep["subspaces"] == 1395
    _check(8, ok, f"report deterministic; {rep['within_radius']} of {rep['subspaces']} subspaces within distance 2 "
                  f"(perfect={rep['perfect']})")
