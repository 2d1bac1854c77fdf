// Tiny string-building SVG helpers. Figures must be byte-identical across
// reruns, so every coordinate goes through fmt() and nothing reads the clock.

export function fmt(x: number, dp = 2): string {
  const s = x.toFixed(dp);
  return s === "-0.00" ? "0.00" : s;
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(name: string, attrs: Record<string, string | number>, body = ""): string {
  const parts = Object.entries(attrs).map(([k, v]) => `${k}="${v}"`);
  const open = `<${name} ${parts.join(" ")}`;
  return body === "" ? `${open}/>` : `${open}>${body}</${name}>`;
}

export function text(x: number, y: number, body: string, attrs: Record<string, string | number> = {}): string {
  return tag("text", { x: fmt(x), y: fmt(y), "font-family": "sans-serif", ...attrs }, esc(body));
}

export function svgDocument(width: number, height: number, body: string[]): string {
  const head = `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`;
  return [head, ...body, "</svg>", ""].join("\n");
}

// categorical palette, indexed by sorted variant position
export const PALETTE = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c"];
