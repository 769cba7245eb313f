"""Exit criteria. Each test prints one ``[ACCEPT] ...`` line with its verdict.

Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import random
import statistics
import time

import pytest

from mwbm.bench import InstanceSpec, emit, gen_random_graph, run_experiment
from mwbm.cover import cover_feasible, extract_matching, min_weight_cover
from mwbm.decomposition import (
    SolveMode,
    check_decomposition_identity,
    extract_gh,
    gh_weights,
    solve_weight,
)
from mwbm.graph import BipartiteGraph, scale_weights, top_two_weights, weight_gcd
from mwbm.matching import UNMATCHED, max_cardinality_matching
from mwbm.oracle import oracle_mwm

SUITE_SIZE = 2000
SUITE_SEED = 20141113


@pytest.fixture
def report(capsys):
    def _report(label: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n[ACCEPT] {label}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, f"{label}: {detail}"

    return _report


def _suite_specs():
    rng = random.Random(SUITE_SEED)
    out = []
    for k in range(SUITE_SIZE):
        spec = InstanceSpec(rng.randint(1, 8), rng.randint(1, 200), rng.getrandbits(64))
        out.append((spec, "assign" if k % 2 == 0 else "unit"))
    return out


@pytest.fixture(scope="module")
def suite():
    """Criterion-1 instances with their solves; reused by criteria 4, 5 and 10."""
    t0 = time.perf_counter()
    results = []
    for spec, method in _suite_specs():
        g = gen_random_graph(spec, method)
        w_mod, t_mod = solve_weight(g, SolveMode.MODIFIED)
        w_base, t_base = solve_weight(g, SolveMode.BASELINE)
        w_or, _ = oracle_mwm(g)
        results.append((g, w_mod, t_mod, w_base, t_base, w_or))
    return results, time.perf_counter() - t0


def test_c01_oracle_equivalence(suite, report):
    results, elapsed = suite
    bad = [i for i, (_, wm, _, wb, _, wo) in enumerate(results) if not wm == wb == wo]
    ok = len(results) >= 2000 and not bad and elapsed < 30
    report("C1 oracle equivalence", ok,
           f"graphs={len(results)} mismatches={len(bad)} time={elapsed:.1f}s (<30s)")


def test_c02_decomposition_identity(report):
    rng = random.Random(7)
    t0 = time.perf_counter()
    checked = failures = 0
    while checked < 500:
        spec = InstanceSpec(rng.randint(1, 8), rng.randint(2, 200), rng.getrandbits(64))
        g = gen_random_graph(spec, rng.choice(["assign", "unit"]))
        if g.num_distinct_weights < 2:
            continue
        h1, h2 = top_two_weights(g)
        gap = h1 - h2
        w = oracle_mwm(g)[0]
        _, t = solve_weight(g)
        assert g.num_edges <= t.w_prime <= g.total_weight // weight_gcd(g)
        for h in (1, gap, rng.randint(1, gap)):
            if not check_decomposition_identity(g, h):
                failures += 1
            # independent right-hand side: the oracle weight of G
            mm = max_cardinality_matching(extract_gh(g, h)).cardinality
            assert h * mm <= w
        checked += 1
    elapsed = time.perf_counter() - t0
    report("C2 decomposition identity", failures == 0 and elapsed < 10,
           f"graphs={checked} failures={failures} time={elapsed:.1f}s (<10s)")


def test_c03_negative_regime(report):
    t0 = time.perf_counter()
    g = BipartiteGraph(2, 2, [(0, 0, 9), (0, 1, 4), (1, 0, 4)])
    h1, h2 = top_two_weights(g)
    h = h1 - h2 + 1
    shifted = gh_weights(g, h)
    g_h = BipartiteGraph(2, 2, [(u, v, w) for (u, v), w in shifted.items()])
    weighted = oracle_mwm(g_h)[0]
    unit = h * max_cardinality_matching(extract_gh(g, h)).cardinality
    ok = (h1, h2, h) == (9, 4, 6) and set(shifted.values()) == {6, 1} and weighted != unit
    elapsed = time.perf_counter() - t0
    report("C3 negative regime", ok and elapsed < 1,
           f"h={h} G_h weights={sorted(set(shifted.values()))} mwm={weighted} h*|mm|={unit}")


def test_c04_duality_and_extraction(suite, report):
    results, _ = suite
    t0 = time.perf_counter()
    failures = 0
    for g, w_mod, *_ in results:
        c = min_weight_cover(g)
        m = extract_matching(g, c)
        ok = (
            cover_feasible(g, c)
            and c.weight == w_mod
            and m.is_valid_for(g)
            and m.weight(g) == c.weight
            and all(x == 0 or m.pair_left[u] != UNMATCHED for u, x in enumerate(c.left))
            and all(x == 0 or m.pair_right[v] != UNMATCHED for v, x in enumerate(c.right))
        )
        failures += not ok
    elapsed = time.perf_counter() - t0
    report("C4 duality and extraction", failures == 0 and elapsed < 60,
           f"graphs={len(results)} failures={failures} time={elapsed:.1f}s (<60s)")


def test_c05_gcd_bound(suite, report):
    results, _ = suite
    runs = violations = 0
    for g, _, t_mod, *_ in results:
        if g.is_empty():
            continue
        runs += 1
        if not g.num_edges <= t_mod.w_prime <= g.total_weight // weight_gcd(g):
            violations += 1
    report("C5 GCD bound |E| <= W' <= W/gcd", violations == 0,
           f"modified runs={runs} violations={violations}")


def test_c06_scaling_invariance(report):
    rng = random.Random(11)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(200):
        spec = InstanceSpec(rng.randint(1, 8), rng.randint(1, 200), rng.getrandbits(64))
        g = gen_random_graph(spec, rng.choice(["assign", "unit"]))
        w, t = solve_weight(g)
        for alpha in (2, 7, 100):
            wa, ta = solve_weight(scale_weights(g, alpha))
            ok = (ta.p == t.p and ta.ls == t.ls and ta.hs == tuple(alpha * h for h in t.hs)
                  and wa == alpha * w)
            failures += not ok
    elapsed = time.perf_counter() - t0
    report("C6 scaling invariance", failures == 0 and elapsed < 10,
           f"graphs=200 alphas=(2,7,100) failures={failures} time={elapsed:.1f}s (<10s)")


def _means(rows):
    mod = statistics.mean(r.iterations for r in rows if r.mode == "modified")
    base = statistics.mean(r.iterations for r in rows if r.mode == "baseline")
    return mod, base


def _exp2_rows():
    return run_experiment([InstanceSpec(4, 1000, 0)], repeats=50, warmup=False)


def test_c07_experiment2_magnitude(report):
    t0 = time.perf_counter()
    rows = _exp2_rows()
    mod, base = _means(rows)
    elapsed = time.perf_counter() - t0
    ok = mod <= 40 and 150 <= base <= 700 and mod <= 0.2 * base and elapsed < 60
    report("C7 experiment-2 magnitude (n=4, W=1000, 50 seeds)", ok,
           f"modified={mod:.2f} baseline={base:.2f} ratio={mod / base:.3f} time={elapsed:.1f}s")


def test_c08_experiment1_trend(report):
    t0 = time.perf_counter()
    specs = [InstanceSpec(n, 1000, 0) for n in (2, 8, 16, 26)]
    rows = run_experiment(specs, repeats=10, average=True, warmup=False)
    elapsed = time.perf_counter() - t0
    by_n = {}
    for r in rows:
        by_n.setdefault(r.n, {})[r.mode] = r.iterations
    ok = all(v["modified"] <= 30 and v["baseline"] >= 200 for v in by_n.values()) and elapsed < 120
    detail = " ".join(f"n={n}:{v['modified']:.1f}/{v['baseline']:.1f}" for n, v in by_n.items())
    report("C8 experiment-1 trend (W=1000, 10 seeds)", ok, f"{detail} time={elapsed:.1f}s")


def test_c09_experiment3_scale(report):
    t0 = time.perf_counter()
    rows = run_experiment([InstanceSpec(4, 100000, 0)], warmup=False)
    elapsed = time.perf_counter() - t0
    mod, base = rows
    ok = (mod.iterations <= 100 and base.iterations >= 10000 and mod.weight == base.weight
          and elapsed < 60)
    report("C9 experiment-3 scale (n=4, W=100000)", ok,
           f"modified={mod.iterations} baseline={base.iterations} weight={mod.weight} "
           f"time={elapsed:.1f}s (<60s)")


def _zero_time(rows):
    return [type(r)(**{**r.__dict__, "time": 0.0}) for r in rows]


def test_c10_determinism(suite, report):
    results, _ = suite
    first = [t.to_json() + tb.to_json() for _, _, t, _, tb, _ in results[:300]]
    again = []
    for spec, method in _suite_specs()[:300]:
        g = gen_random_graph(spec, method)
        again.append(solve_weight(g)[1].to_json() + solve_weight(g, "baseline")[1].to_json())
    csv_a = emit(_zero_time(_exp2_rows()), "csv")
    csv_b = emit(_zero_time(_exp2_rows()), "csv")
    ok = first == again and csv_a.encode() == csv_b.encode()
    report("C10 determinism", ok, f"traces={len(first)} csv_bytes={len(csv_a)}")
