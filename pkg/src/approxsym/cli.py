"""Command-line interface.

Exit codes: 0 success, 2 configuration/usage error, 3 I/O error.
"""
from __future__ import annotations

import csv
import sys

import click

from . import __version__
from .annealing import DEFAULT_RESTARTS, DEFAULT_T_MIN, AnnealConfig, anneal
from .centrality import KINDS
from .experiment import (
    ConfigError,
    grid_search,
    load_experiment_spec,
    load_gridsearch_spec,
    read_records_csv,
    run_experiment,
)
from .generators import FAMILIES, ModelSpec
from .graphs import read_edge_list, write_edge_list
from .guidance import DEFAULT_BETA, DEFAULT_PHI, GuidanceParams
from .oracle import exact_symmetry
from .stats import paired_from_rows, paired_t_test

EXIT_CONFIG = 2
EXIT_IO = 3


@click.group()
@click.version_option(version=__version__, prog_name="approxsym")
def main():
    """Approximate symmetry of undirected graphs via simulated annealing."""


def _fail_config(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_CONFIG)


def _fail_io(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_IO)


def _load_graph(path):
    try:
        return read_edge_list(path)
    except OSError as exc:
        _fail_io(str(exc))
    except ValueError as exc:
        _fail_config(f"{path}: {exc}")


@main.command()
@click.argument("graph_file", type=click.Path())
@click.option("--centrality", type=click.Choice(KINDS), default=None,
              help="Guide moves by this centrality (default: uniform moves).")
@click.option("--beta", type=float, default=DEFAULT_BETA, show_default=True)
@click.option("--phi", type=float, default=DEFAULT_PHI, show_default=True)
@click.option("--steps", type=int, default=None, help="Move budget (default 400*n^2, capped).")
@click.option("--tmax", type=float, default=None, help="Initial temperature (default max(2, m/20)).")
@click.option("--tmin", type=float, default=DEFAULT_T_MIN, show_default=True)
@click.option("--restarts", type=int, default=DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--derangements", is_flag=True, help="Restrict the search to derangements.")
def symmetry(graph_file, centrality, beta, phi, steps, tmax, tmin, restarts, seed, derangements):
    """Anneal a permutation minimizing the mismatch energy of GRAPH_FILE."""
    g = _load_graph(graph_file)
    try:
        cfg = AnnealConfig(
            steps=steps,
            t_max=tmax,
            t_min=tmin,
            restarts=restarts,
            seed=seed,
            derangement_only=derangements,
            move_strategy="guided" if centrality else "uniform",
            guidance=GuidanceParams(centrality, beta=beta, phi=phi) if centrality else None,
        )
        result = anneal(g, cfg)
    except ValueError as exc:
        _fail_config(str(exc))
    click.echo(f"n {g.n}")
    click.echo(f"m {g.m}")
    click.echo(f"epsilon {result.best_epsilon}")
    click.echo(f"S {result.best_S!r}")
    click.echo(f"steps {cfg.resolved_steps(g)}")
    click.echo(f"accepted {result.accepted_moves}")
    click.echo(f"wall_time_s {result.wall_time:.3f}")
    click.echo("permutation " + " ".join(map(str, result.best_permutation.forward.tolist())))


@main.command()
@click.argument("family", type=click.Choice(FAMILIES))
@click.argument("params", nargs=-1)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(), required=True)
def generate(family, params, seed, output):
    """Generate a graph and write it as an edge list.

    PARAMS are key=value pairs, e.g.:

        generate ba n=150 k=5 --seed 7 -o ba.edges

        generate grid lengths=5x10 -o grid.edges
    """
    parsed = {}
    for item in params:
        if "=" not in item:
            _fail_config(f"malformed parameter {item!r} (expected key=value)")
        key, _, value = item.partition("=")
        if key == "lengths":
            parsed[key] = [int(x) for x in value.split("x")]
        elif key in ("p", "sigma"):
            parsed[key] = float(value)
        else:
            parsed[key] = int(value)
    try:
        g = ModelSpec(family, parsed, seed).build()
    except (KeyError, ValueError) as exc:
        _fail_config(f"bad parameters for {family}: {exc}")
    try:
        write_edge_list(output, g)
    except OSError as exc:
        _fail_io(str(exc))
    click.echo(f"wrote {family} graph: n={g.n} m={g.m} -> {output}")


@main.command()
@click.argument("config", type=click.Path())
@click.option("-o", "--output", type=click.Path(), default=None,
              help="Results CSV (overrides the config's output).")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--quiet", is_flag=True)
def experiment(config, output, workers, quiet):
    """Run the experiment described by a TOML CONFIG file."""
    try:
        spec = load_experiment_spec(config)
    except OSError as exc:
        _fail_io(str(exc))
    except ConfigError as exc:
        _fail_config(str(exc))
    out_path = output or spec.output
    if not out_path:
        _fail_config("no output path: pass -o or set experiment.output")

    def progress(done, total):
        if not quiet and (done % 10 == 0 or done == total):
            click.echo(f"\r{done}/{total} runs", nl=(done == total), err=True)

    try:
        records = run_experiment(spec, out_path, workers=workers, progress=progress)
    except OSError as exc:
        _fail_io(str(exc))
    if not quiet:
        click.echo(f"wrote {len(records)} records -> {out_path}", err=True)


@main.command()
@click.argument("config", type=click.Path())
@click.option("-o", "--output", type=click.Path(), default=None,
              help="Write the ranked table here instead of stdout.")
@click.option("--quiet", is_flag=True)
def gridsearch(config, output, quiet):
    """Rank (beta, phi) cells by mean S over a shared instance set."""
    try:
        spec = load_gridsearch_spec(config)
    except OSError as exc:
        _fail_io(str(exc))
    except ConfigError as exc:
        _fail_config(str(exc))

    def progress(done, total):
        if not quiet and (done % 10 == 0 or done == total):
            click.echo(f"\r{done}/{total} runs", nl=(done == total), err=True)

    cells = grid_search(spec, progress=progress)
    rows = [["beta", "phi", "mean_S", "instances"]] + [
        [repr(c.beta), repr(c.phi), repr(c.mean_S), str(c.instances)] for c in cells
    ]
    try:
        if output:
            with open(output, "w", encoding="utf-8", newline="") as fh:
                csv.writer(fh, lineterminator="\n").writerows(rows)
        else:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerows(rows)
    except OSError as exc:
        _fail_io(str(exc))


@main.command()
@click.argument("graph_file", type=click.Path())
@click.option("--derangements", is_flag=True, help="Search derangements only.")
def oracle(graph_file, derangements):
    """Exact minimum energy by exhaustive search (n <= 10)."""
    g = _load_graph(graph_file)
    try:
        res = exact_symmetry(g, "derangements-only" if derangements else "non-identity")
    except ValueError as exc:
        _fail_config(str(exc))
    click.echo(f"mode {res.mode}")
    click.echo(f"exact_epsilon {res.exact_epsilon}")
    click.echo(f"searched {res.searched}")
    click.echo("witness " + " ".join(map(str, res.witness.forward.tolist())))


@main.command()
@click.argument("results_csv", type=click.Path())
@click.option("--pair", required=True, metavar="A,B",
              help="Variant labels to compare, e.g. uniform,eigenvector.")
@click.option("--per-run", is_flag=True,
              help="Pair raw runs by (graph, run) instead of per-graph means.")
@click.option("-o", "--output", type=click.Path(), default=None)
def stats(results_csv, pair, per_run, output):
    """Paired t-test and Cohen's d per (model, params) group from a results CSV."""
    if "," not in pair:
        _fail_config("--pair needs two comma-separated variant labels")
    label_a, _, label_b = pair.partition(",")
    try:
        records = read_records_csv(results_csv)
    except OSError as exc:
        _fail_io(str(exc))
    except (ConfigError, ValueError) as exc:
        _fail_config(str(exc))
    rows = [
        {
            "model": r.model,
            "params": r.params,
            "graph_id": r.graph_id,
            "variant": r.variant,
            "run_id": r.run_id,
            "S": r.S,
        }
        for r in records
    ]
    samples = paired_from_rows(rows, label_a, label_b, per_run=per_run)
    if not samples:
        _fail_config(f"no paired groups found for variants {label_a!r} and {label_b!r}")
    out_rows = [[
        "model", "params", "variant_a", "variant_b", "pairs",
        "t_statistic", "p_value", "dof", "cohens_d", "mean_diff", "degenerate",
    ]]
    for (model, params), sample in sorted(samples.items()):
        rep = paired_t_test(sample)
        out_rows.append([
            model, params, label_a, label_b, str(len(sample.diffs)),
            repr(rep.t_statistic), repr(rep.p_value), str(rep.dof),
            repr(rep.cohens_d), repr(rep.mean_diff), str(rep.degenerate).lower(),
        ])
    try:
        if output:
            with open(output, "w", encoding="utf-8", newline="") as fh:
                csv.writer(fh, lineterminator="\n").writerows(out_rows)
        else:
            csv.writer(sys.stdout, lineterminator="\n").writerows(out_rows)
    except OSError as exc:
        _fail_io(str(exc))


if __name__ == "__main__":
    main()
