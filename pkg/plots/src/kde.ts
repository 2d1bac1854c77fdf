// Gaussian kernel density estimate for the violin outlines.

export interface Density {
  xs: number[];
  ys: number[];
  max: number;
}

function silverman(values: number[]): number {
  const n = values.length;
  const mean = values.reduce((a, b) => a + b, 0) / n;
  const sd = Math.sqrt(values.reduce((a, b) => a + (b - mean) ** 2, 0) / Math.max(1, n - 1));
  const sorted = [...values].sort((a, b) => a - b);
  const q = (p: number) => sorted[Math.min(n - 1, Math.floor(p * n))];
  const iqr = q(0.75) - q(0.25);
  const scale = iqr > 0 ? Math.min(sd, iqr / 1.34) : sd;
  return 0.9 * scale * Math.pow(n, -0.2);
}

export function kde(values: number[], spanFloor: number, points = 80): Density {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  // constant samples still get a visible (thin) blob
  const h = Math.max(silverman(values), spanFloor * 0.01, 1e-9);
  const xs: number[] = [];
  const ys: number[] = [];
  const a = lo - 2 * h;
  const b = hi + 2 * h;
  let max = 0;
  for (let i = 0; i < points; i++) {
    const x = a + ((b - a) * i) / (points - 1);
    let y = 0;
    for (const v of values) {
      const u = (x - v) / h;
      y += Math.exp(-0.5 * u * u);
    }
    y /= values.length * h * Math.sqrt(2 * Math.PI);
    xs.push(x);
    ys.push(y);
    if (y > max) max = y;
  }
  return { xs, ys, max };
}

export function median(values: number[]): number {
  const s = [...values].sort((a, b) => a - b);
  const mid = s.length >> 1;
  return s.length % 2 ? s[mid] : (s[mid - 1] + s[mid]) / 2;
}
