// Effect heatmap: one column per (model, params) group, a p-value row and a
// Cohen's d row, annotated with the numbers. Cells with p < 0.05 get the
// significant fill and a heavy border.

import { SchemaError, StatsRow } from "./csv";
import { fmt, svgDocument, tag, text } from "./svg";

const CELL_W = 128;
const CELL_H = 48;
const GAP = 6;
const MARGIN = { top: 64, right: 24, bottom: 24, left: 96 };

const SIG_FILL = "#2e7d32";
const NONSIG_FILL = "#8d8d8d";
const IMPROVE_FILL = "#1565c0";
const WORSEN_FILL = "#c62828";

function fmtP(p: number): string {
  if (p === 0) return "p=0";
  return `p=${p.toExponential(1)}`;
}

function fmtD(d: number): string {
  if (!Number.isFinite(d)) return d > 0 ? "d=inf" : "d=-inf";
  return `d=${fmt(d)}`;
}

export function heatmapSvg(rows: StatsRow[]): string {
  if (rows.length === 0) throw new SchemaError("stats CSV: no data rows");
  const cols = [...rows].sort((a, b) =>
    a.model === b.model ? (a.params < b.params ? -1 : 1) : a.model < b.model ? -1 : 1);

  const pairLabels = [...new Set(cols.map((r) => `${r.variant_a} vs ${r.variant_b}`))];
  const width = MARGIN.left + cols.length * (CELL_W + GAP) - GAP + MARGIN.right;
  const height = MARGIN.top + 2 * (CELL_H + GAP) - GAP + MARGIN.bottom;

  const body: string[] = [];
  body.push(tag("rect", { x: 0, y: 0, width, height, fill: "#ffffff" }));
  body.push(text(MARGIN.left, 22, `paired comparison: ${pairLabels.join("; ")}`,
                 { "font-size": 14, "font-weight": "bold", fill: "#111111" }));

  const rowNames = ["p-value", "Cohen's d"];
  for (let r = 0; r < 2; r++) {
    const yy = MARGIN.top + r * (CELL_H + GAP);
    body.push(text(MARGIN.left - 10, yy + CELL_H / 2 + 4, rowNames[r],
                   { "font-size": 12, "text-anchor": "end", fill: "#333333" }));
  }

  cols.forEach((row, i) => {
    const xx = MARGIN.left + i * (CELL_W + GAP);
    body.push(text(xx + CELL_W / 2, MARGIN.top - 10, `${row.model}(${row.params})`,
                   { "font-size": 11, "text-anchor": "middle", fill: "#333333" }));

    const significant = row.p_value < 0.05;
    body.push(tag("rect", {
      x: fmt(xx), y: fmt(MARGIN.top), width: CELL_W, height: CELL_H,
      fill: significant ? SIG_FILL : NONSIG_FILL,
      stroke: significant ? "#1b5e20" : "#6f6f6f",
      "stroke-width": significant ? 3 : 1,
      class: significant ? "cell-significant" : "cell-nonsignificant",
    }));
    body.push(text(xx + CELL_W / 2, MARGIN.top + CELL_H / 2 + 4,
                   fmtP(row.p_value) + (significant ? " *" : ""),
                   { "font-size": 12, "text-anchor": "middle", fill: "#ffffff" }));

    const dy = MARGIN.top + CELL_H + GAP;
    const dFill = row.cohens_d < 0 ? IMPROVE_FILL : row.cohens_d > 0 ? WORSEN_FILL : NONSIG_FILL;
    body.push(tag("rect", {
      x: fmt(xx), y: fmt(dy), width: CELL_W, height: CELL_H,
      fill: dFill, stroke: "#444444", "stroke-width": 1,
    }));
    body.push(text(xx + CELL_W / 2, dy + CELL_H / 2 + 4,
                   fmtD(row.cohens_d) + ` (k=${row.pairs})`,
                   { "font-size": 12, "text-anchor": "middle", fill: "#ffffff" }));
  });

  return svgDocument(width, height, body);
}
