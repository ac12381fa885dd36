/**
 * 5x7 bitmap glyphs covering the characters time labels need. Each glyph
 * is seven rows of five bits, most significant bit on the left.
 */

import { Canvas, Color } from "./raster";

const GLYPHS: Record<string, number[]> = {
  "0": [0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e],
  "1": [0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e],
  "2": [0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f],
  "3": [0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e],
  "4": [0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02],
  "5": [0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e],
  "6": [0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e],
  "7": [0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08],
  "8": [0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e],
  "9": [0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c],
  ".": [0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c],
  "-": [0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00],
  "+": [0x00, 0x04, 0x04, 0x1f, 0x04, 0x04, 0x00],
  "=": [0x00, 0x00, 0x1f, 0x00, 0x1f, 0x00, 0x00],
  ":": [0x00, 0x0c, 0x0c, 0x00, 0x0c, 0x0c, 0x00],
  t: [0x08, 0x08, 0x1e, 0x08, 0x08, 0x09, 0x06],
  e: [0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e],
  " ": [0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00],
};

export const GLYPH_WIDTH = 5;
export const GLYPH_HEIGHT = 7;

export function drawText(
  canvas: Canvas,
  x: number,
  y: number,
  text: string,
  color: Color,
  scale = 2,
): void {
  let cx = x;
  for (const ch of text) {
    const rows = GLYPHS[ch];
    if (rows !== undefined) {
      for (let r = 0; r < GLYPH_HEIGHT; r++) {
        for (let c = 0; c < GLYPH_WIDTH; c++) {
          if (rows[r] & (1 << (GLYPH_WIDTH - 1 - c))) {
            canvas.fillRect(cx + c * scale, y + r * scale, scale, scale, color);
          }
        }
      }
    }
    cx += (GLYPH_WIDTH + 1) * scale;
  }
}

export function textWidth(text: string, scale = 2): number {
  return text.length * (GLYPH_WIDTH + 1) * scale;
}
