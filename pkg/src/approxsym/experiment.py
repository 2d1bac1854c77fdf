"""Declarative batch harness: expand a config into (graph, variant, repeat)
runs, execute them with crash-safe incremental output, and grid-search the
guidance constants.

Configs are TOML.  Results are a flat CSV of RunRecord rows; each graph
instance is generated once and shared by every variant so downstream paired
tests line up.  Interrupted runs resume from the ``<output>.partial`` journal
and finish with a byte-identical final CSV.
"""
from __future__ import annotations

import csv
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import numpy as np

from .annealing import AnnealConfig, anneal
from .centrality import KINDS
from .generators import FAMILIES, ModelSpec
from .graphs import Graph
from .guidance import DEFAULT_BETA, DEFAULT_PHI, GuidanceParams
from .rng import derive_seed


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


CSV_COLUMNS = [
    "model",
    "params",
    "graph_id",
    "variant",
    "centrality",
    "beta",
    "phi",
    "run_id",
    "seed",
    "epsilon",
    "S",
    "steps",
    "accepted_moves",
    "wall_time_ms",
]


@dataclass(frozen=True)
class RunRecord:
    model: str
    params: str
    graph_id: str
    variant: str
    centrality: str
    beta: Optional[float]
    phi: Optional[float]
    run_id: int
    seed: int
    epsilon: int
    S: float
    steps: int
    accepted_moves: int
    wall_time_ms: float

    def to_row(self) -> list[str]:
        return [
            self.model,
            self.params,
            self.graph_id,
            self.variant,
            self.centrality,
            "" if self.beta is None else repr(self.beta),
            "" if self.phi is None else repr(self.phi),
            str(self.run_id),
            str(self.seed),
            str(self.epsilon),
            repr(self.S),
            str(self.steps),
            str(self.accepted_moves),
            repr(self.wall_time_ms),
        ]

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "RunRecord":
        return cls(
            model=row["model"],
            params=row["params"],
            graph_id=row["graph_id"],
            variant=row["variant"],
            centrality=row["centrality"],
            beta=float(row["beta"]) if row["beta"] else None,
            phi=float(row["phi"]) if row["phi"] else None,
            run_id=int(row["run_id"]),
            seed=int(row["seed"]),
            epsilon=int(row["epsilon"]),
            S=float(row["S"]),
            steps=int(row["steps"]),
            accepted_moves=int(row["accepted_moves"]),
            wall_time_ms=float(row["wall_time_ms"]),
        )

    def sort_key(self):
        return (self.model, self.params, self.graph_id, self.variant, self.run_id)


@dataclass(frozen=True)
class ModelBatch:
    family: str
    params: dict
    count: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.count < 1:
            raise ConfigError("model count must be >= 1")

    def params_label(self) -> str:
        return ",".join(f"{k}={_fmt_param(self.params[k])}" for k in sorted(self.params))


def _fmt_param(v) -> str:
    if isinstance(v, list):
        return "x".join(str(x) for x in v)
    return str(v)


@dataclass(frozen=True)
class VariantSpec:
    label: str
    strategy: str
    guidance: Optional[GuidanceParams] = None

    def __post_init__(self):
        if self.strategy not in ("uniform", "guided"):
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "guided" and self.guidance is None:
            raise ConfigError(f"variant {self.label!r} is guided but names no centrality")
        if not self.label:
            raise ConfigError("variant label must be non-empty")


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    models: tuple[ModelBatch, ...]
    variants: tuple[VariantSpec, ...]
    repeats: int
    base: AnnealConfig
    master_seed: int
    output: Optional[str] = None

    def __post_init__(self):
        if self.repeats < 1:
            raise ConfigError("repeats must be >= 1")
        if not self.variants:
            raise ConfigError("need at least one variant")
        if not self.models:
            raise ConfigError("need at least one model")
        labels = [v.label for v in self.variants]
        if len(set(labels)) != len(labels):
            raise ConfigError("variant labels must be unique")


def _parse_anneal_table(table: dict) -> AnnealConfig:
    known = {
        "steps",
        "t_max",
        "t_min",
        "restarts",
        "forbid_identity",
        "derangement_only",
    }
    unknown = set(table) - known
    if unknown:
        raise ConfigError(f"unknown anneal keys: {sorted(unknown)}")
    try:
        return AnnealConfig(**table)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_variant(table: dict) -> VariantSpec:
    label = table.get("label")
    strategy = table.get("strategy")
    if label is None or strategy is None:
        raise ConfigError("each variant needs 'label' and 'strategy'")
    guidance = None
    if strategy == "guided":
        kind = table.get("centrality")
        if kind not in KINDS:
            raise ConfigError(f"variant {label!r}: unknown centrality {kind!r}")
        try:
            guidance = GuidanceParams(
                centrality_kind=kind,
                beta=float(table.get("beta", DEFAULT_BETA)),
                phi=float(table.get("phi", DEFAULT_PHI)),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return VariantSpec(label=label, strategy=strategy, guidance=guidance)


def _parse_models(tables: list) -> tuple[ModelBatch, ...]:
    batches = []
    for t in tables:
        if "family" not in t:
            raise ConfigError("each model table needs 'family'")
        batches.append(
            ModelBatch(
                family=t["family"],
                params=dict(t.get("params", {})),
                count=int(t.get("count", 1)),
            )
        )
    return tuple(batches)


def load_experiment_spec(path) -> ExperimentSpec:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    exp = doc.get("experiment", {})
    try:
        return ExperimentSpec(
            name=exp.get("name", os.path.basename(str(path))),
            models=_parse_models(doc.get("models", [])),
            variants=tuple(_parse_variant(v) for v in doc.get("variants", [])),
            repeats=int(exp.get("repeats", 1)),
            base=_parse_anneal_table(doc.get("anneal", {})),
            master_seed=int(exp.get("master_seed", 0)),
            output=exp.get("output"),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def expand_graphs(spec: ExperimentSpec) -> list[tuple[ModelBatch, str, int]]:
    """All (batch, graph_id, instance index) rows, in deterministic order."""
    out = []
    for batch in spec.models:
        label = f"{batch.family}({batch.params_label()})"
        for i in range(batch.count):
            out.append((batch, f"{label}#{i}", i))
    return out


def build_instance(spec: ExperimentSpec, batch: ModelBatch, graph_id: str) -> Graph:
    seed = derive_seed(spec.master_seed, "graph", graph_id)
    return ModelSpec(batch.family, batch.params, seed).build()


def run_seed(spec: ExperimentSpec, graph_id: str, variant: str, run_id: int) -> int:
    return derive_seed(spec.master_seed, "run", graph_id, variant, run_id)


def _execute_one(
    spec: ExperimentSpec,
    batch: ModelBatch,
    graph: Graph,
    graph_id: str,
    variant: VariantSpec,
    run_id: int,
) -> RunRecord:
    seed = run_seed(spec, graph_id, variant.label, run_id)
    cfg = replace(
        spec.base,
        move_strategy=variant.strategy,
        guidance=variant.guidance,
        seed=seed,
    )
    result = anneal(graph, cfg)
    g = variant.guidance
    return RunRecord(
        model=batch.family,
        params=batch.params_label(),
        graph_id=graph_id,
        variant=variant.label,
        centrality=g.centrality_kind if g else "",
        beta=g.beta if g else None,
        phi=g.phi if g else None,
        run_id=run_id,
        seed=seed,
        epsilon=result.best_epsilon,
        S=result.best_S,
        steps=cfg.resolved_steps(graph),
        accepted_moves=result.accepted_moves,
        wall_time_ms=round(result.wall_time * 1000.0, 3),
    )


def read_records_csv(path) -> list[RunRecord]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ConfigError(f"unexpected CSV columns in {path}")
        return [RunRecord.from_row(row) for row in reader]


def write_records_csv(path, records: list[RunRecord]) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(rec.to_row())
    os.replace(tmp, path)


def run_experiment(
    spec: ExperimentSpec,
    out_path,
    workers: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> list[RunRecord]:
    """Execute every (graph, variant, repeat) run, journaling each record to
    ``<out_path>.partial`` as it completes; on success the journal is folded
    into a sorted final CSV and removed.  Rerunning a half-finished
    experiment skips journaled runs and converges to the same CSV."""
    out_dir = os.path.dirname(str(out_path))
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    graph_rows = expand_graphs(spec)

    all_seeds = set()
    tasks_per_graph = len(spec.variants) * spec.repeats
    total = len(graph_rows) * tasks_per_graph
    for _, graph_id, _ in graph_rows:
        for v in spec.variants:
            for r in range(spec.repeats):
                all_seeds.add(run_seed(spec, graph_id, v.label, r))
    assert len(all_seeds) == total, "per-run seed collision"

    partial_path = f"{out_path}.partial"
    done: dict[tuple[str, str, int], RunRecord] = {}
    if os.path.exists(partial_path):
        with open(partial_path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != CSV_COLUMNS:
                raise ConfigError(f"stale journal {partial_path} has wrong columns")
            for row in reader:
                rec = RunRecord.from_row(row)
                done[(rec.graph_id, rec.variant, rec.run_id)] = rec

    records: list[RunRecord] = list(done.values())
    pending: list[tuple[ModelBatch, str, VariantSpec, int]] = []
    for batch, graph_id, _ in graph_rows:
        for v in spec.variants:
            for r in range(spec.repeats):
                if (graph_id, v.label, r) not in done:
                    pending.append((batch, graph_id, v, r))

    completed = len(records)
    journal_exists = os.path.exists(partial_path)
    with open(partial_path, "a", encoding="utf-8", newline="") as journal:
        writer = csv.writer(journal, lineterminator="\n")
        if not journal_exists:
            writer.writerow(CSV_COLUMNS)
            journal.flush()

        graphs: dict[str, Graph] = {}

        def get_graph(batch: ModelBatch, graph_id: str) -> Graph:
            if graph_id not in graphs:
                graphs[graph_id] = build_instance(spec, batch, graph_id)
            return graphs[graph_id]

        def work(task):
            batch, graph_id, variant, run_id = task
            return _execute_one(spec, batch, get_graph(batch, graph_id), graph_id, variant, run_id)

        if workers <= 1:
            results_iter = map(work, pending)
            for rec in results_iter:
                records.append(rec)
                writer.writerow(rec.to_row())
                journal.flush()
                completed += 1
                if progress:
                    progress(completed, total)
        else:
            # graphs dict is only mutated under this lock-free pattern because
            # instance construction is deterministic; racing builders would
            # produce identical graphs, but pre-building avoids the waste
            for batch, graph_id, _ in graph_rows:
                if any(t[1] == graph_id for t in pending):
                    get_graph(batch, graph_id)
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for rec in pool.map(work, pending):
                    records.append(rec)
                    writer.writerow(rec.to_row())
                    journal.flush()
                    completed += 1
                    if progress:
                        progress(completed, total)

    records.sort(key=RunRecord.sort_key)
    write_records_csv(out_path, records)
    os.remove(partial_path)
    return records


@dataclass(frozen=True)
class GridCell:
    beta: float
    phi: float
    mean_S: float
    instances: int


@dataclass(frozen=True)
class GridSearchSpec:
    models: tuple[ModelBatch, ...]
    centrality: str
    beta_grid: tuple[float, ...]
    phi_grid: tuple[float, ...]
    base: AnnealConfig
    master_seed: int = 0

    def __post_init__(self):
        if not self.beta_grid or not self.phi_grid:
            raise ConfigError("beta and phi grids must be non-empty")
        if self.centrality not in KINDS:
            raise ConfigError(f"unknown centrality {self.centrality!r}")


def load_gridsearch_spec(path) -> GridSearchSpec:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    gs = doc.get("gridsearch", {})
    try:
        return GridSearchSpec(
            models=_parse_models(doc.get("models", [])),
            centrality=gs.get("centrality", "degree"),
            beta_grid=tuple(float(b) for b in gs.get("beta_grid", [])),
            phi_grid=tuple(float(p) for p in gs.get("phi_grid", [])),
            base=_parse_anneal_table(doc.get("anneal", {})),
            master_seed=int(gs.get("master_seed", 0)),
        )
    except ConfigError:
        raise
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def cell_label(centrality: str, beta: float, phi: float) -> str:
    return f"{centrality}:beta={beta!r},phi={phi!r}"


def grid_search(
    spec: GridSearchSpec,
    progress: Optional[Callable[[int, int], None]] = None,
) -> list[GridCell]:
    """Mean S per (beta, phi) over a shared instance set, best first.

    Each cell is executed exactly like an experiment variant labeled by its
    constants, so a one-cell search reproduces a plain experiment's runs."""
    variants = tuple(
        VariantSpec(
            label=cell_label(spec.centrality, beta, phi),
            strategy="guided",
            guidance=GuidanceParams(spec.centrality, beta=beta, phi=phi),
        )
        for beta in spec.beta_grid
        for phi in spec.phi_grid
    )
    exp = ExperimentSpec(
        name="gridsearch",
        models=spec.models,
        variants=variants,
        repeats=1,
        base=spec.base,
        master_seed=spec.master_seed,
    )
    graph_rows = expand_graphs(exp)
    total = len(graph_rows) * len(variants)
    done = 0
    by_cell: dict[str, list[float]] = {v.label: [] for v in variants}
    for batch, graph_id, _ in graph_rows:
        g = build_instance(exp, batch, graph_id)
        for v in variants:
            rec = _execute_one(exp, batch, g, graph_id, v, 0)
            by_cell[v.label].append(rec.S)
            done += 1
            if progress:
                progress(done, total)

    cells = []
    idx = 0
    for beta in spec.beta_grid:
        for phi in spec.phi_grid:
            vals = by_cell[variants[idx].label]
            cells.append(GridCell(beta, phi, float(np.mean(vals)), len(vals)))
            idx += 1
    cells.sort(key=lambda c: (c.mean_S, c.beta, c.phi))
    return cells
