"""Operator-channel simulation, brute-force oracle and experiment runner.

Randomness comes from numpy's PCG64 generator.  Trial ``i`` of a run with
seed ``s`` draws from ``PCG64(SeedSequence([s, i]))``, so a trial's inputs do
not depend on how the run is split across workers.
"""

from __future__ import annotations

import statistics
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import kernels
from .decoder import COMPLETED_R1, FAST_PATH, GCD_PATH, decode
from .errors import InvalidParams, SpreadCodeError
from .matrices import Matrix
from .spreadcode import (
    SpreadCode,
    Subspace,
    build_code,
    encode,
    enumerate_codewords,
    enumerate_grassmannian,
    subspace_distance,
)

__all__ = [
    "ChannelConfig",
    "ExperimentReport",
    "trial_rng",
    "channel_transmit",
    "oracle_decode",
    "run_experiment",
    "coverage_report",
    "bench",
]

DEFAULT_ORACLE_BOUND = 5000


@dataclass(frozen=True)
class ChannelConfig:
    t_eras: int = 0
    t_err: int = 0
    seed: int = 0

    def check(self, k: int):
        if not (0 <= self.t_eras <= k and 0 <= self.t_err <= k):
            raise InvalidParams(f"need 0 <= t_eras, t_err <= k={k}")


@dataclass
class ExperimentReport:
    trials: int = 0
    successes: int = 0
    failures: int = 0
    oracle_mismatches: int = 0
    oracle_checked: int = 0
    case_histogram: dict = dc_field(default_factory=dict)
    failure_kinds: dict = dc_field(default_factory=dict)
    fast_path_hit_rate: dict = dc_field(default_factory=dict)
    conjecture_rate: dict = dc_field(default_factory=dict)
    path_disagreements: int = 0
    path_comparisons: int = 0
    median_decode_time: float | None = None
    config: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def _rand_vector(rng, q: int, n: int) -> list[int]:
    return [int(v) for v in rng.integers(0, q, size=n)]


def channel_transmit(code: SpreadCode, C: Subspace, cfg: ChannelConfig,
                     rng: np.random.Generator | None = None) -> Subspace:
    """Keep a uniform (k - t_eras)-dimensional subspace of C and adjoin t_err
    uniform vectors, each outside the span of C and the vectors injected so
    far.  The result therefore meets C in exactly k - t_eras dimensions."""
    k, q, n = code.k, code.q, code.n
    cfg.check(k)
    if rng is None:
        rng = trial_rng(cfg.seed, 0)
    F = code.base
    basis = [list(r) for r in C.basis.rows]
    kept: list[list[int]] = []
    while len(kept) < k - cfg.t_eras:
        coeffs = _rand_vector(rng, q, k)
        v = [sum(c * b[j] for c, b in zip(coeffs, basis)) % q for j in range(n)]
        if kernels.rank(kept + [v], F) == len(kept) + 1:
            kept.append(v)
    span = basis[:]
    injected: list[list[int]] = []
    while len(injected) < cfg.t_err:
        v = _rand_vector(rng, q, n)
        if kernels.rank(span + [v], F) == len(span) + 1:
            span.append(v)
            injected.append(v)
    rows = kept + injected
    if not rows:
        return Subspace(Matrix.zeros(F, 0, n))
    return Subspace.from_rows(F, rows, n)


def oracle_decode(code: SpreadCode, R: Subspace, bound: int | None = None) -> tuple[int, list[Subspace]]:
    """Minimum distance from R to the code and every codeword attaining it."""
    bound = DEFAULT_ORACLE_BOUND if bound is None else bound
    best, arg = None, []
    for C in enumerate_codewords(code, bound):
        d = subspace_distance(C, R)
        if best is None or d < best:
            best, arg = d, [C]
        elif d == best:
            arg.append(C)
    return best, arg


def _run_trial(code: SpreadCode, cfg: ChannelConfig, trial: int, mode: str,
               use_oracle: bool, timing: bool) -> dict:
    rng = trial_rng(cfg.seed, trial)
    msg = int(rng.integers(0, code.cardinality))
    C = encode(code, msg)
    R = channel_transmit(code, C, cfg, rng)
    rec: dict = {"trial": trial}
    t0 = time.perf_counter()
    try:
        out = decode(code, R, mode=mode)
        rec["ok"] = True
        rec["case"] = out.case_tag
        rec["error_rank"] = out.error_rank
        d = out.diagnostics
        # rank of the error matrix the minor search actually ran on
        rec["path_rank"] = d.get("inner_error_rank", out.error_rank)
        rec["fast_path"] = d.get("fast_path")
        rec["paths_agree"] = d.get("paths_agree")
        rec["conjecture"] = d.get("conjecture_holds")
        found = out.codeword
    except SpreadCodeError as exc:
        rec["ok"] = False
        rec["error"] = type(exc).__name__
        found = None
    if timing:
        rec["time"] = time.perf_counter() - t0
    if use_oracle:
        dmin, arg = oracle_decode(code, R, bound=code.cardinality)
        within = dmin <= code.k - 1
        if found is not None:
            rec["mismatch"] = not (within and found == arg[0])
        else:
            rec["mismatch"] = within
    return rec


_WORKER: dict = {}


def _worker_init(code_json: dict):
    _WORKER["code"] = SpreadCode.from_json(code_json)


def _worker_trial(args):
    return _run_trial(_WORKER["code"], *args)


def run_experiment(code: SpreadCode, cfg: ChannelConfig, trials: int, *,
                   mode: str = "auto", oracle_trials: int | None = None,
                   timing: bool = False, jobs: int = 1) -> ExperimentReport:
    """Transmit ``trials`` random codewords and decode them.

    The oracle runs on the first ``oracle_trials`` trials (all when None) if
    the code has at most ``DEFAULT_ORACLE_BOUND`` codewords.  A mismatch is a
    wrong codeword, or a failure although some codeword is within distance
    k - 1.  Timing is off by default so reports are byte-identical across runs.
    """
    cfg.check(code.k)
    enumerable = code.cardinality <= DEFAULT_ORACLE_BOUND
    n_oracle = 0 if not enumerable else (trials if oracle_trials is None else min(oracle_trials, trials))
    tasks = [(cfg, i, mode, i < n_oracle, timing) for i in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(jobs, initializer=_worker_init, initargs=(code.to_json(),)) as ex:
            recs = list(ex.map(_worker_trial, tasks, chunksize=max(1, trials // (4 * jobs))))
    else:
        recs = [_run_trial(code, *t) for t in tasks]
    return _aggregate(code, cfg, trials, mode, n_oracle, timing, recs)


def _aggregate(code, cfg, trials, mode, n_oracle, timing, recs) -> ExperimentReport:
    rep = ExperimentReport(trials=trials, oracle_checked=n_oracle)
    rep.config = {"q": code.q, "k": code.k, "r": code.r, "p": list(code.p),
                  "t_eras": cfg.t_eras, "t_err": cfg.t_err, "seed": cfg.seed, "mode": mode}
    cases, fails = Counter(), Counter()
    hits, tries = defaultdict(int), defaultdict(int)
    conj, conj_n = defaultdict(int), defaultdict(int)
    times = []
    for r in recs:
        if r["ok"]:
            rep.successes += 1
            cases[r["case"]] += 1
            if r["fast_path"] in ("hit", "miss"):
                t = r["path_rank"]
                tries[t] += 1
                hits[t] += r["fast_path"] == "hit"
            if r["conjecture"] is not None:
                conj_n[r["path_rank"]] += 1
                conj[r["path_rank"]] += bool(r["conjecture"])
            if r["paths_agree"] is not None:
                rep.path_comparisons += 1
                rep.path_disagreements += not r["paths_agree"]
        else:
            rep.failures += 1
            fails[r["error"]] += 1
        rep.oracle_mismatches += bool(r.get("mismatch"))
        if "time" in r:
            times.append(r["time"])
    rep.case_histogram = dict(sorted(cases.items()))
    rep.failure_kinds = dict(sorted(fails.items()))
    rep.fast_path_hit_rate = {str(t): hits[t] / tries[t] for t in sorted(tries)}
    rep.conjecture_rate = {str(t): conj[t] / conj_n[t] for t in sorted(conj_n)}
    if timing and times:
        rep.median_decode_time = statistics.median(times)
    return rep


def coverage_report(code: SpreadCode, bound: int = 10**6) -> dict:
    """How many k-subspaces of F_q^(2k) lie within distance k - 1 of the code."""
    if code.r != 2:
        raise InvalidParams("coverage is defined for n = 2k")
    cws = list(enumerate_codewords(code, bound))
    hist: Counter = Counter()
    total = covered = 0
    for U in enumerate_grassmannian(code.base, code.k, code.n, bound):
        total += 1
        d = min(subspace_distance(C, U) for C in cws)
        hist[d] += 1
        covered += d <= code.k - 1
    return {
        "q": code.q, "k": code.k, "n": code.n,
        "subspaces": total,
        "codewords": len(cws),
        "within_radius": covered,
        "outside_radius": total - covered,
        "perfect": covered == total,
        "min_distance_histogram": {str(d): c for d, c in sorted(hist.items())},
    }


def bench(q: int, k_list: Sequence[int], trials: int, *, t: int = 1, seed: int = 0,
          backends: Sequence[str] | None = None) -> dict:
    """Median decode time per k and backend, plus fast-path engagement on rank-t errors."""
    backends = list(backends or kernels.available_backends())
    out = {"q": q, "t": t, "trials": trials, "seed": seed, "results": []}
    for k in k_list:
        code = build_code(q, k, 2)
        cfg = ChannelConfig(t, t, seed)
        words = []
        for i in range(trials):
            rng = trial_rng(seed, i)
            C = encode(code, int(rng.integers(0, code.cardinality)))
            words.append((C, channel_transmit(code, C, cfg, rng)))
        row: dict = {"k": k, "median_seconds": {}}
        for b in backends:
            with kernels.use_backend(b):
                times, engaged, eligible, failures = [], 0, 0, 0
                for C, R in words:
                    t0 = time.perf_counter()
                    try:
                        res = decode(code, R)
                    except SpreadCodeError:
                        failures += 1
                        continue
                    finally:
                        times.append(time.perf_counter() - t0)
                    if res.codeword != C:
                        failures += 1
                    d = res.diagnostics
                    inner = d.get("inner_case", res.case_tag) if res.case_tag == COMPLETED_R1 else res.case_tag
                    # any invertible-branch input that is not a codeword has a nonzero off-diagonal entry
                    if inner in (FAST_PATH, GCD_PATH) and d.get("inner_error_rank", res.error_rank) == 1:
                        eligible += 1
                        engaged += d.get("fast_path") == "hit"
            row["median_seconds"][b] = statistics.median(times) if times else None
            row.setdefault("fast_path", {})[b] = {"rank1_eligible": eligible, "rank1_engaged": engaged}
            row.setdefault("failures", {})[b] = failures
        out["results"].append(row)
    return out
