/**
 * Minimal SVG scene construction: enough for line charts and violins
 * without a DOM. Coordinates are plain SVG user units.
 */

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number): string {
  return Number(value.toFixed(2)).toString();
}

export interface TextOptions {
  anchor?: "start" | "middle" | "end";
  size?: number;
  color?: string;
  rotate?: number;
  attrs?: Record<string, string>;
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#000",
       width = 1, dash?: string): void {
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`);
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.3,
           dash?: string): void {
    const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${joined}" fill="none" stroke="${stroke}" ` +
        `stroke-width="${width}"${dashAttr}/>`);
  }

  polygon(points: Array<[number, number]>, fill: string, stroke = "none",
          opacity = 1): void {
    const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polygon points="${joined}" fill="${fill}" stroke="${stroke}" ` +
        `fill-opacity="${opacity}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, content: string, options: TextOptions = {}): void {
    const anchor = options.anchor ?? "start";
    const size = options.size ?? 11;
    const color = options.color ?? "#222";
    const transform = options.rotate !== undefined
      ? ` transform="rotate(${options.rotate} ${fmt(x)} ${fmt(y)})"` : "";
    const extra = Object.entries(options.attrs ?? {})
      .map(([key, value]) => ` ${key}="${escapeXml(value)}"`)
      .join("");
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" font-size="${size}" ` +
        `fill="${color}"${transform}${extra}>${escapeXml(content)}</text>`);
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  toString(): string {
    return [...this.parts, "</svg>"].join("\n") + "\n";
  }
}

export class LinearScale {
  constructor(readonly d0: number, readonly d1: number,
              readonly r0: number, readonly r1: number) {}

  map(value: number): number {
    if (this.d1 === this.d0) return (this.r0 + this.r1) / 2;
    return this.r0 + ((value - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }
}

/** round tick positions covering [min, max] at a 1/2/5 step */
export function niceTicks(min: number, max: number, count = 5): number[] {
  if (!(max > min)) {
    return [min];
  }
  const span = max - min;
  const step0 = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= step0) {
      step = mag * mult;
      break;
    }
  }
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function tickLabel(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1000 || abs < 0.001) return value.toExponential(1);
  return Number(value.toPrecision(4)).toString();
}
