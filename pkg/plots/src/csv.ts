// CSV loading against the two fixed schemas we consume: the benchmark
// results table and the paired-stats table produced by `approxsym stats`.

import Papa from "papaparse";

export class SchemaError extends Error {}

export const RUN_COLUMNS = [
  "model", "params", "graph_id", "variant", "centrality", "beta", "phi",
  "run_id", "seed", "epsilon", "S", "steps", "accepted_moves", "wall_time_ms",
];

export const STATS_COLUMNS = [
  "model", "params", "variant_a", "variant_b", "pairs",
  "t_statistic", "p_value", "dof", "cohens_d", "mean_diff", "degenerate",
];

export interface RunRow {
  model: string;
  params: string;
  graph_id: string;
  variant: string;
  run_id: string;
  S: number;
  raw: Record<string, string>;
}

export interface StatsRow {
  model: string;
  params: string;
  variant_a: string;
  variant_b: string;
  pairs: number;
  p_value: number;
  cohens_d: number;
  mean_diff: number;
  degenerate: boolean;
}

function checkColumns(expected: string[], fields: string[] | undefined, what: string): void {
  const got = fields ?? [];
  const missing = expected.filter((c) => !got.includes(c));
  const extra = got.filter((c) => !expected.includes(c));
  if (missing.length || extra.length) {
    const parts = [];
    if (missing.length) parts.push(`missing columns: ${missing.join(", ")}`);
    if (extra.length) parts.push(`unexpected columns: ${extra.join(", ")}`);
    throw new SchemaError(`${what}: ${parts.join("; ")}`);
  }
}

function parseTable(text: string, expected: string[], what: string): Record<string, string>[] {
  const res = Papa.parse<Record<string, string>>(text, { header: true, skipEmptyLines: true });
  checkColumns(expected, res.meta.fields, what);
  if (res.errors.length) {
    const e = res.errors[0];
    throw new SchemaError(`${what}: row ${e.row}: ${e.message}`);
  }
  if (res.data.length === 0) throw new SchemaError(`${what}: no data rows`);
  return res.data;
}

function num(row: Record<string, string>, col: string, what: string, idx: number): number {
  const v = Number(row[col]);
  if (!Number.isFinite(v)) {
    throw new SchemaError(`${what}: row ${idx + 1}: ${col} is not a finite number (${JSON.stringify(row[col])})`);
  }
  return v;
}

export function parseRunCsv(text: string): RunRow[] {
  const rows = parseTable(text, RUN_COLUMNS, "results CSV");
  return rows.map((r, i) => ({
    model: r.model,
    params: r.params,
    graph_id: r.graph_id,
    variant: r.variant,
    run_id: r.run_id,
    S: num(r, "S", "results CSV", i),
    raw: r,
  }));
}

export function parseStatsCsv(text: string): StatsRow[] {
  const rows = parseTable(text, STATS_COLUMNS, "stats CSV");
  return rows.map((r, i) => ({
    model: r.model,
    params: r.params,
    variant_a: r.variant_a,
    variant_b: r.variant_b,
    pairs: num(r, "pairs", "stats CSV", i),
    p_value: num(r, "p_value", "stats CSV", i),
    cohens_d: parseD(r, i),
    mean_diff: num(r, "mean_diff", "stats CSV", i),
    degenerate: r.degenerate === "true",
  }));
}

// cohens_d may legitimately be +-inf for degenerate samples
function parseD(r: Record<string, string>, idx: number): number {
  if (r.cohens_d === "inf") return Infinity;
  if (r.cohens_d === "-inf") return -Infinity;
  return num(r, "cohens_d", "stats CSV", idx);
}
