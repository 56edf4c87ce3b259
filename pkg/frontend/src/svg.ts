/** Tiny dependency-free SVG chart renderer (vector output only). */

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label?: string;
  width?: number;
  dash?: string;
}

export interface VLine {
  x: number;
  color?: string;
  label?: string;
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  vlines?: VLine[];
  hline?: { y: number; color?: string; label?: string };
  logY?: boolean;
  yDomain?: [number, number];
}

export const PALETTE = {
  purple: "#7b3294",
  green: "#2ca05a",
  lightblue: "#5ab4dc",
  darkblue: "#1f4e9c",
  gold: "#c8a227",
  red: "#c0392b",
  gray: "#888888",
};

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export interface Scale {
  (v: number): number;
  ticks(): number[];
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  f.ticks = () => {
    const step = niceStep(span / 5);
    const out: number[] = [];
    for (let t = Math.ceil(d0 / step) * step; t <= d1 + 1e-9; t += step) {
      out.push(Math.abs(t) < step * 1e-6 ? 0 : t);
    }
    return out;
  };
  return f;
}

export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0 || 1;
  const f = ((v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0)) as Scale;
  f.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(l0); e <= Math.floor(l1 + 1e-9); e++) out.push(10 ** e);
    return out;
  };
  return f;
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const norm = raw / mag;
  const nice = norm < 1.5 ? 1 : norm < 3.5 ? 2 : norm < 7.5 ? 5 : 10;
  return nice * mag;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) return v.toExponential(0).replace("e+", "e");
  return String(Math.round(v * 1e6) / 1e6);
}

export function renderPanel(spec: PanelSpec, x0: number, y0: number, w: number, h: number): string {
  const m = { left: 62, right: 14, top: 30, bottom: 42 };
  const iw = w - m.left - m.right;
  const ih = h - m.top - m.bottom;
  const px = x0 + m.left;
  const py = y0 + m.top;

  const xs = spec.series.flatMap((s) => s.x);
  const xmin = Math.min(...xs);
  const xmax = Math.max(...xs);
  let ys = spec.series.flatMap((s) => s.y);
  if (spec.logY) ys = ys.filter((v) => v > 0);
  let ymin = spec.yDomain ? spec.yDomain[0] : Math.min(...ys);
  let ymax = spec.yDomain ? spec.yDomain[1] : Math.max(...ys);
  if (spec.hline && !spec.yDomain) {
    ymin = Math.min(ymin, spec.hline.y);
    ymax = Math.max(ymax, spec.hline.y);
  }
  if (!spec.logY && !spec.yDomain) {
    const pad = (ymax - ymin || 1) * 0.06;
    ymin -= pad;
    ymax += pad;
  }
  const sx = linearScale(xmin, xmax, px, px + iw);
  const sy = spec.logY
    ? logScale(ymin, ymax, py + ih, py)
    : linearScale(ymin, ymax, py + ih, py);

  const parts: string[] = [];
  parts.push(`<rect x="${px}" y="${py}" width="${iw}" height="${ih}" fill="none" stroke="#333"/>`);
  parts.push(`<text x="${x0 + w / 2}" y="${y0 + 18}" text-anchor="middle" font-size="13" font-weight="bold">${esc(spec.title)}</text>`);

  for (const t of sx.ticks()) {
    const X = sx(t);
    parts.push(`<line x1="${X}" y1="${py + ih}" x2="${X}" y2="${py + ih + 4}" stroke="#333"/>`);
    parts.push(`<text x="${X}" y="${py + ih + 16}" text-anchor="middle" font-size="10">${fmtTick(t)}</text>`);
  }
  for (const t of sy.ticks()) {
    const Y = sy(t);
    parts.push(`<line x1="${px - 4}" y1="${Y}" x2="${px}" y2="${Y}" stroke="#333"/>`);
    parts.push(`<line x1="${px}" y1="${Y}" x2="${px + iw}" y2="${Y}" stroke="#eee"/>`);
    parts.push(`<text x="${px - 6}" y="${Y + 3}" text-anchor="end" font-size="10">${fmtTick(t)}</text>`);
  }
  parts.push(`<text x="${px + iw / 2}" y="${y0 + h - 6}" text-anchor="middle" font-size="11">${esc(spec.xLabel)}</text>`);
  parts.push(`<text x="${x0 + 14}" y="${py + ih / 2}" text-anchor="middle" font-size="11" transform="rotate(-90 ${x0 + 14} ${py + ih / 2})">${esc(spec.yLabel)}</text>`);

  for (const vl of spec.vlines ?? []) {
    const X = sx(vl.x);
    if (X < px - 1e-6 || X > px + iw + 1e-6) continue;
    parts.push(`<line x1="${X}" y1="${py}" x2="${X}" y2="${py + ih}" stroke="${vl.color ?? "#1f4e9c"}" stroke-width="1" stroke-dasharray="4 3" data-threshold="${vl.x}"/>`);
    if (vl.label) {
      parts.push(`<text x="${X + 2}" y="${py + 10}" font-size="9" fill="${vl.color ?? "#1f4e9c"}">${esc(vl.label)}</text>`);
    }
  }
  if (spec.hline) {
    const Y = sy(spec.hline.y);
    parts.push(`<line x1="${px}" y1="${Y}" x2="${px + iw}" y2="${Y}" stroke="${spec.hline.color ?? "#555"}" stroke-dasharray="6 3"/>`);
  }

  for (const s of spec.series) {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      if (spec.logY && s.y[i] <= 0) continue;
      pts.push(`${sx(s.x[i]).toFixed(2)},${sy(s.y[i]).toFixed(2)}`);
    }
    parts.push(`<polyline points="${pts.join(" ")}" fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.6}"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`);
  }

  // legend
  const labelled = spec.series.filter((s) => s.label);
  labelled.forEach((s, i) => {
    const ly = py + 8 + i * 13;
    const lx = px + iw - 120;
    parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 18}" y2="${ly}" stroke="${s.color}" stroke-width="2"/>`);
    parts.push(`<text x="${lx + 22}" y="${ly + 3}" font-size="10">${esc(s.label!)}</text>`);
  });
  return parts.join("\n");
}

export function renderFigure(panels: PanelSpec[], width = 760, panelHeight = 240): string {
  const height = panels.length * panelHeight;
  const body = panels
    .map((p, i) => renderPanel(p, 0, i * panelHeight, width, panelHeight))
    .join("\n");
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" font-family="Helvetica, Arial, sans-serif">
<rect width="${width}" height="${height}" fill="white"/>
${body}
</svg>
`;
}
