import { readFileSync } from "fs";
import { describe, expect, it } from "vitest";

import { parseStatsCsv } from "../src/csv";
import { heatmapSvg } from "../src/heatmap";

const fixture = (name: string) =>
  readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");
const baseline = (name: string) =>
  readFileSync(new URL(`./baseline/${name}`, import.meta.url), "utf-8");

const HEADER =
  "model,params,variant_a,variant_b,pairs,t_statistic,p_value,dof,cohens_d,mean_diff,degenerate";

describe("effect heatmap", () => {
  it("renders a single-cell input as one annotated column", () => {
    const svg = heatmapSvg(parseStatsCsv(
      [HEADER, 'er,"n=20,p=0.2",uniform,degree,10,-1.2,0.26,9,-0.38,-0.004,false'].join("\n"),
    ));
    // background + p cell + d cell
    expect(svg.match(/<rect /g)?.length).toBe(3);
    expect(svg).toContain("p=2.6e-1");
    expect(svg).toContain("d=-0.38");
  });

  it("visually distinguishes p < 0.05 cells", () => {
    const svg = heatmapSvg(parseStatsCsv(
      [
        HEADER,
        'ba,"k=5,n=150",uniform,eigenvector,50,-12.0,1e-15,49,-1.7,-0.05,false',
        'er,"n=100,p=0.1",uniform,degree,50,-0.5,0.62,49,-0.07,-0.001,false',
      ].join("\n"),
    ));
    expect(svg.match(/class="cell-significant"/g)?.length).toBe(1);
    expect(svg.match(/class="cell-nonsignificant"/g)?.length).toBe(1);
    expect(svg).toContain("p=1.0e-15 *");
  });

  it("matches the stored baseline and shows |d| growing with n", () => {
    const rows = parseStatsCsv(fixture("ba_desk_stats.csv"));
    const svg = heatmapSvg(rows);
    expect(svg).toBe(baseline("heatmap_ba.svg"));
    expect(heatmapSvg(rows)).toBe(svg);

    const d150 = rows.find((r) => r.params === "k=5,n=150")!.cohens_d;
    const d300 = rows.find((r) => r.params === "k=5,n=300")!.cohens_d;
    expect(Math.abs(d300)).toBeGreaterThanOrEqual(Math.abs(d150));
  });
});
