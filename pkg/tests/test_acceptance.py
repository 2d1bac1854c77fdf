"""End-to-end acceptance suite.

Criteria 1-5 and 11-12 are oracle/property checks with hard runtime caps;
criteria 6-10 execute the shipped configs in ``configs/`` at desk scale and
test the headline statistical claims.  Each criterion records one pass/fail
digest line, echoed after the pytest run (see conftest).  Whole module takes
a few minutes on one core; the experiment fixtures dominate.
"""
from __future__ import annotations

import csv
import io
import subprocess
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from approxsym.annealing import AnnealConfig, anneal
from approxsym.centrality import KINDS, compute
from approxsym.experiment import load_experiment_spec, run_experiment
from approxsym.generators import grid_graph
from approxsym.graphs import (
    Graph,
    Permutation,
    energy,
    energy_delta,
    energy_dense_oracle,
)
from approxsym.guidance import GuidanceParams
from approxsym.oracle import exact_symmetry
from approxsym.stats import (
    PairedSample,
    paired_from_rows,
    paired_t_test,
    student_t_two_sided_p,
)
from helpers import (
    brute_betweenness,
    complete,
    cycle,
    is_connected,
    random_graph,
    record,
    t_two_sided_p_trapezoid,
)

ROOT = Path(__file__).resolve().parent.parent
CONFIG_DIR = ROOT / "configs"
PLOT_CLI = ROOT / "plots" / "dist" / "cli.js"
MASTER_SEEDS = (1, 2, 3)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # pay the one-off JIT compile outside the timed criteria
    g = cycle(6)
    anneal(g, AnnealConfig(steps=10, restarts=1, seed=0))
    anneal(g, AnnealConfig(steps=10, restarts=1, seed=0, move_strategy="guided",
                           guidance=GuidanceParams("degree")))
    exact_symmetry(Graph(3, [(0, 1)]))
    compute("betweenness", g)


def _run_config(name, out_path, master_seed=None):
    spec = load_experiment_spec(CONFIG_DIR / f"{name}.toml")
    if master_seed is not None:
        spec = replace(spec, master_seed=master_seed)
    return run_experiment(spec, out_path)


def _load_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="session")
def ba_csvs(tmp_path_factory):
    """configs/ba_scaling.toml at three master seeds; shared by criteria
    6, 10 and 13."""
    root = tmp_path_factory.mktemp("ba_scaling")
    out = {}
    for s in MASTER_SEEDS:
        out[s] = root / f"seed{s}.csv"
        _run_config("ba_scaling", out[s], master_seed=s)
    return out


@pytest.fixture(scope="session")
def dd_csvs(tmp_path_factory):
    root = tmp_path_factory.mktemp("dd_pagerank")
    out = {}
    for s in MASTER_SEEDS:
        out[s] = root / f"seed{s}.csv"
        _run_config("dd_pagerank", out[s], master_seed=s)
    return out


@pytest.fixture(scope="session")
def grid_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("grid_betweenness") / "grid.csv"
    _run_config("grid_betweenness", path)
    return path


@pytest.fixture(scope="session")
def er_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("er_null") / "er.csv"
    _run_config("er_null", path)
    return path


def test_criterion_01_energy_matches_dense_oracle():
    rng = np.random.default_rng(9101)
    t0 = time.perf_counter()
    checks = 0
    for _ in range(200):
        n = int(rng.integers(2, 21))
        g = random_graph(rng, n, float(rng.uniform(0.05, 0.95)))
        for _ in range(50):
            perm = Permutation(rng.permutation(n).astype(np.int64))
            assert energy(g, perm) == energy_dense_oracle(g, perm)
            checks += 1
    elapsed = time.perf_counter() - t0
    ok = checks == 10_000 and elapsed < 10.0
    record(1, ok, f"energy == dense oracle on {checks} graph/permutation checks "
                  f"in {elapsed:.1f}s (limit 10 s)")
    assert ok


def test_criterion_02_delta_consistency_over_chained_transpositions():
    rng = np.random.default_rng(9202)
    t0 = time.perf_counter()
    for _ in range(20):
        n = int(rng.integers(4, 21))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.8)))
        perm = Permutation(rng.permutation(n).astype(np.int64))
        eps = energy(g, perm)
        for _ in range(10_000):
            a, b = rng.choice(n, size=2, replace=False)
            eps += energy_delta(g, perm, int(a), int(b))
            perm.swap_images(int(a), int(b))
            assert eps == energy(g, perm)
    elapsed = time.perf_counter() - t0
    ok = elapsed < 30.0
    record(2, ok, f"incremental epsilon exact through 20 x 10000 chained "
                  f"transpositions in {elapsed:.1f}s (limit 30 s)")
    assert ok


def test_criterion_03_anneal_reaches_exact_optimum_on_er7():
    rng = np.random.default_rng(9303)
    t0 = time.perf_counter()
    matched = 0
    for i in range(20):
        g = random_graph(rng, 7, 0.3)
        exact = exact_symmetry(g).exact_epsilon
        got = anneal(g, AnnealConfig(steps=50_000, restarts=5, seed=i)).best_epsilon
        assert got >= exact, "annealing reported an energy below the exact optimum"
        matched += got == exact
    elapsed = time.perf_counter() - t0
    ok = matched >= 16 and elapsed < 120.0
    record(3, ok, f"anneal matched the exact oracle on {matched}/20 ER(7,0.3) "
                  f"instances, never below, in {elapsed:.1f}s (limit 2 min)")
    assert ok


def test_criterion_04_automorphism_recovery_at_default_budget():
    cases = [
        ("C20", cycle(20)),
        ("R_5x4", grid_graph([5, 4])),
        ("R_2x5x5", grid_graph([2, 5, 5])),
        ("K12", complete(12)),
    ]
    t0 = time.perf_counter()
    parts = []
    all_ok = True
    for name, g in cases:
        zeros = sum(
            anneal(g, AnnealConfig(seed=s)).best_epsilon == 0 for s in range(10)
        )
        parts.append(f"{name} {zeros}/10")
        all_ok &= zeros == 10
    elapsed = time.perf_counter() - t0
    ok = all_ok and elapsed < 180.0
    record(4, ok, f"epsilon=0 at default budget: {', '.join(parts)} "
                  f"in {elapsed:.1f}s (limit 3 min)")
    assert ok


def _hypercube3():
    return Graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def _k44():
    return Graph(8, [(i, 4 + j) for i in range(4) for j in range(4)])


def _petersen():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def test_criterion_05_centrality_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9505)

    worst_bet = 0.0
    worst_pr = 0.0
    for _ in range(50):
        n = int(rng.integers(4, 11))
        g = random_graph(rng, n, float(rng.uniform(0.2, 0.7)))
        worst_bet = max(worst_bet, float(np.max(np.abs(
            compute("betweenness", g).values - brute_betweenness(g)))))
        worst_pr = max(worst_pr, abs(float(compute("pagerank", g).values.sum()) - 1.0))

    worst_res = 0.0
    checked = 0
    while checked < 20:
        n = int(rng.integers(5, 31))
        g = random_graph(rng, n, float(rng.uniform(0.2, 0.5)))
        if not is_connected(g) or g.m == 0:
            continue
        v = compute("eigenvector", g).values
        v = v / np.linalg.norm(v)
        A = g.adjacency_matrix().astype(np.float64)
        lam = float(v @ (A @ v))
        worst_res = max(worst_res, float(np.max(np.abs(A @ v - lam * v))))
        checked += 1

    # vertex-transitive: every centrality is constant across vertices
    worst_const = 0.0
    for g in (cycle(12), complete(7), _k44(), _hypercube3(), _petersen()):
        for kind in KINDS:
            vals = compute(kind, g).values
            worst_const = max(worst_const, float(vals.max() - vals.min()))

    # centrality is a vertex invariant: c[pi(v)] == c[v] for automorphisms
    worst_inv = 0.0
    g46 = grid_graph([4, 6])
    row_mirror = np.array([(3 - v // 6) * 6 + v % 6 for v in range(24)])
    col_mirror = np.array([(v // 6) * 6 + (5 - v % 6) for v in range(24)])
    c15 = cycle(15)
    rot = np.array([(v + 1) % 15 for v in range(15)])
    refl = np.array([(15 - v) % 15 for v in range(15)])
    for g, pis in ((g46, (row_mirror, col_mirror)), (c15, (rot, refl))):
        for kind in KINDS:
            vals = compute(kind, g).values
            for pi in pis:
                worst_inv = max(worst_inv, float(np.max(np.abs(vals[pi] - vals))))

    elapsed = time.perf_counter() - t0
    ok = (worst_bet <= 1e-9 and worst_pr <= 1e-9 and worst_res < 1e-6
          and worst_const <= 1e-9 and worst_inv <= 1e-9 and elapsed < 60.0)
    record(5, ok, f"betweenness err {worst_bet:.1e}, pagerank sum err {worst_pr:.1e}, "
                  f"eigen residual {worst_res:.1e}, transitive spread {worst_const:.1e}, "
                  f"invariance err {worst_inv:.1e} in {elapsed:.1f}s (limit 1 min)")
    assert ok


def _seed_reports(csvs, params_label, label_b, model):
    out = {}
    for s, path in csvs.items():
        rows = [r for r in _load_rows(path) if r["params"] == params_label]
        sample = paired_from_rows(rows, "uniform", label_b)[(model, params_label)]
        out[s] = paired_t_test(sample)
    return out


def test_criterion_06_ba_guided_significance(ba_csvs):
    reports = _seed_reports(ba_csvs, "k=5,n=150", "eigenvector", "ba")
    passing = sum(
        r.p_value < 0.05 and r.mean_diff < 0 and r.cohens_d < 0
        for r in reports.values()
    )
    detail = "; ".join(
        f"seed {s}: p={r.p_value:.1e}, d={r.cohens_d:.2f}" for s, r in sorted(reports.items())
    )
    ok = passing >= 2
    record(6, ok, f"BA n=150 eigenvector-guided beats uniform on {passing}/3 "
                  f"master seeds ({detail}); need >=2")
    assert ok


def test_criterion_07_dd_guided_significance(dd_csvs):
    reports = _seed_reports(dd_csvs, "n=150,sigma=0.1", "pagerank", "dd")
    passing = sum(
        r.p_value < 0.05 and r.mean_diff < 0 and r.cohens_d < 0
        for r in reports.values()
    )
    detail = "; ".join(
        f"seed {s}: p={r.p_value:.1e}, d={r.cohens_d:.2f}" for s, r in sorted(reports.items())
    )
    ok = passing >= 2
    record(7, ok, f"DD n=150 pagerank-guided beats uniform on {passing}/3 "
                  f"master seeds ({detail}); need >=2")
    assert ok


def test_criterion_08_grid_betweenness_improvement(grid_csv):
    rows = _load_rows(grid_csv)
    samples = paired_from_rows(rows, "uniform", "betweenness", per_run=True)
    parts = []
    ok = True
    for shape in ("lengths=5x20", "lengths=2x5x10"):
        rep = paired_t_test(samples[("grid", shape)])
        parts.append(f"{shape}: p={rep.p_value:.1e}, d={rep.cohens_d:.2f}")
        ok &= rep.p_value < 0.05 and rep.cohens_d < 0 and rep.mean_diff < 0
    record(8, ok, f"betweenness-guided beats uniform on both lattices "
                  f"({'; '.join(parts)}; 25 paired runs each)")
    assert ok


def test_criterion_09_er_null_report(er_csv):
    rows = _load_rows(er_csv)
    parts = []
    soft_violations = []
    ok = True
    for kind in KINDS:
        rep = paired_t_test(paired_from_rows(rows, "uniform", kind)[("er", "n=100,p=0.1")])
        ok &= 0.0 <= rep.p_value <= 1.0 and np.isfinite(rep.cohens_d)
        parts.append(f"{kind}: d={rep.cohens_d:.2f}")
        if abs(rep.cohens_d) >= 0.3:
            soft_violations.append(kind)
    soft = ("soft |d|<0.3 holds" if not soft_violations
            else f"soft |d|<0.3 violated for {', '.join(soft_violations)} "
                 f"(logged, non-fatal: guided walks also find ER's best few swaps)")
    record(9, ok, f"ER null report generated for all 5 centralities ({'; '.join(parts)}); {soft}")
    assert ok


def test_criterion_10_scaling_trend(ba_csvs):
    passing = 0
    parts = []
    for s, path in sorted(ba_csvs.items()):
        by = paired_from_rows(_load_rows(path), "uniform", "eigenvector")
        d150 = paired_t_test(by[("ba", "k=5,n=150")]).cohens_d
        d300 = paired_t_test(by[("ba", "k=5,n=300")]).cohens_d
        passing += abs(d300) >= abs(d150)
        parts.append(f"seed {s}: |d| {abs(d150):.2f} -> {abs(d300):.2f}")
    ok = passing >= 2
    record(10, ok, f"effect grows with n on {passing}/3 master seeds "
                   f"({'; '.join(parts)}); need >=2")
    assert ok


def _csv_without_wall_time(path) -> str:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row[:-1] for row in csv.reader(fh)]
    assert rows and rows[0][-1] == "accepted_moves"  # wall_time_ms was last
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def test_criterion_11_experiment_rerun_determinism(tmp_path, dd_csvs):
    # wall_time_ms is the one field allowed to differ between reruns
    a = tmp_path / "smoke_a.csv"
    b = tmp_path / "smoke_b.csv"
    _run_config("smoke", a)
    _run_config("smoke", b)
    smoke_same = _csv_without_wall_time(a) == _csv_without_wall_time(b)

    c = tmp_path / "dd_again.csv"
    _run_config("dd_pagerank", c, master_seed=1)
    dd_same = _csv_without_wall_time(c) == _csv_without_wall_time(dd_csvs[1])

    ok = smoke_same and dd_same
    record(11, ok, "rerun CSVs byte-identical up to the wall_time_ms column "
                   f"(smoke: {smoke_same}, dd_pagerank at seed 1: {dd_same})")
    assert ok


def test_criterion_12_stats_against_integration_oracle():
    worst = 0.0
    for t in (0.0, 0.37, 1.5, 2.2, 3.9, 7.5):
        for dof in (1, 2, 3, 5, 10, 30, 49):
            worst = max(worst, abs(student_t_two_sided_p(t, dof)
                                   - t_two_sided_p_trapezoid(t, dof)))
            assert student_t_two_sided_p(-t, dof) == student_t_two_sided_p(t, dof)

    zero = paired_t_test(PairedSample("a", "b", np.array([1.0, 2.0, 3.0]),
                                      np.array([1.0, 2.0, 3.0])))
    shift = paired_t_test(PairedSample("a", "b", np.array([1.0, 2.0, 3.0]),
                                       np.array([2.0, 3.0, 4.0])))
    conventions = (
        zero.degenerate and zero.t_statistic == 0.0 and zero.p_value == 1.0
        and zero.cohens_d == 0.0
        and shift.degenerate and shift.t_statistic == np.inf and shift.p_value == 0.0
    )
    ok = worst <= 1e-8 and conventions
    record(12, ok, f"max |p - trapezoid oracle| = {worst:.1e} over 42 (t, dof) "
                   f"cells (tol 1e-8); degenerate conventions hold: {conventions}")
    assert ok


@pytest.mark.skipif(not PLOT_CLI.exists(), reason="secondary plot component not built")
def test_criterion_13_plot_component(tmp_path, ba_csvs):
    run_csv = ba_csvs[1]
    stats_csv = tmp_path / "ba_stats.csv"
    cp = subprocess.run(
        [sys.executable, "-m", "approxsym.cli", "stats", str(run_csv),
         "--pair", "uniform,eigenvector", "-o", str(stats_csv)],
        capture_output=True, text=True, cwd=ROOT,
    )
    assert cp.returncode == 0, cp.stderr

    def render(tag):
        violin = tmp_path / f"violin_{tag}.svg"
        heat = tmp_path / f"heat_{tag}.svg"
        for args in (
            ["violin", str(run_csv), "-o", str(violin), "--group", "model,params"],
            ["heatmap", str(stats_csv), "-o", str(heat)],
        ):
            cp = subprocess.run(["node", str(PLOT_CLI)] + args,
                                capture_output=True, text=True, cwd=ROOT)
            assert cp.returncode == 0, cp.stderr
        return violin.read_bytes(), heat.read_bytes()

    v1, h1 = render("a")
    v2, h2 = render("b")
    ok = v1 == v2 and h1 == h2 and v1.startswith(b"<svg") and h1.startswith(b"<svg")
    record(13, ok, f"violin ({len(v1)} bytes) and heatmap ({len(h1)} bytes) rendered "
                   f"from the criterion-6 CSV; reruns byte-identical")
    assert ok
