/**
 * Software RGBA canvas with distance-based anti-aliased strokes. Coverage
 * of a pixel is clamped from its distance to the segment, which gives
 * clean lines at any width without supersampling.
 */

export type Color = [number, number, number, number?];

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Color = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    this.clear(background);
  }

  clear(color: Color): void {
    const [r, g, b, a = 255] = color;
    for (let i = 0; i < this.pixels.length; i += 4) {
      this.pixels[i] = r;
      this.pixels[i + 1] = g;
      this.pixels[i + 2] = b;
      this.pixels[i + 3] = a;
    }
  }

  blend(x: number, y: number, color: Color, coverage: number): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height || coverage <= 0) return;
    const a = Math.min(1, coverage) * ((color[3] ?? 255) / 255);
    const i = (y * this.width + x) * 4;
    this.pixels[i] = Math.round(this.pixels[i] * (1 - a) + color[0] * a);
    this.pixels[i + 1] = Math.round(this.pixels[i + 1] * (1 - a) + color[1] * a);
    this.pixels[i + 2] = Math.round(this.pixels[i + 2] * (1 - a) + color[2] * a);
    this.pixels[i + 3] = Math.max(this.pixels[i + 3], Math.round(255 * a));
  }

  strokeSegment(
    x0: number, y0: number, x1: number, y1: number,
    width: number, color: Color,
  ): void {
    const half = width / 2;
    const pad = half + 1;
    const xMin = Math.max(0, Math.floor(Math.min(x0, x1) - pad));
    const xMax = Math.min(this.width - 1, Math.ceil(Math.max(x0, x1) + pad));
    const yMin = Math.max(0, Math.floor(Math.min(y0, y1) - pad));
    const yMax = Math.min(this.height - 1, Math.ceil(Math.max(y0, y1) + pad));
    const dx = x1 - x0;
    const dy = y1 - y0;
    const len2 = dx * dx + dy * dy;
    for (let y = yMin; y <= yMax; y++) {
      for (let x = xMin; x <= xMax; x++) {
        const t = len2 === 0 ? 0 : Math.max(0, Math.min(1, ((x - x0) * dx + (y - y0) * dy) / len2));
        const ex = x - (x0 + t * dx);
        const ey = y - (y0 + t * dy);
        const dist = Math.sqrt(ex * ex + ey * ey);
        this.blend(x, y, color, half + 0.5 - dist);
      }
    }
  }

  fillCircle(cx: number, cy: number, radius: number, color: Color): void {
    const pad = radius + 1;
    for (let y = Math.max(0, Math.floor(cy - pad)); y <= Math.min(this.height - 1, Math.ceil(cy + pad)); y++) {
      for (let x = Math.max(0, Math.floor(cx - pad)); x <= Math.min(this.width - 1, Math.ceil(cx + pad)); x++) {
        const dist = Math.hypot(x - cx, y - cy);
        this.blend(x, y, color, radius + 0.5 - dist);
      }
    }
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    for (let y = Math.max(0, y0); y < Math.min(this.height, y0 + h); y++) {
      for (let x = Math.max(0, x0); x < Math.min(this.width, x0 + w); x++) {
        this.blend(x, y, color, 1);
      }
    }
  }
}
