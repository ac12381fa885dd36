/**
 * Rendering jobs: a frame directory becomes one labeled PNG per frame plus
 * an animated GIF; a field CSV becomes a quiver plot. Inputs are read-only
 * and that contract is enforced with checksums.
 */

import { createHash } from "crypto";
import { mkdirSync, readFileSync, writeFileSync } from "fs";
import { join } from "path";

import { Camera, CAMERA_PRESETS, Vec3 } from "./camera";
import { FieldSample, readFieldCsv, readFrameDir } from "./csv";
import { encodeGif, GifFrame } from "./gif";
import { drawText } from "./font";
import { encodePng } from "./png";
import { Canvas, Color } from "./raster";

export const CURVE_COLORS: Color[] = [
  [31, 119, 180], // blue
  [214, 39, 40], // red
  [44, 160, 44], // green
  [148, 103, 189], // purple
  [255, 127, 14], // orange
  [23, 190, 207], // cyan
];

const LABEL_COLOR: Color = [40, 40, 40];
const ARROW_COLOR: Color = [120, 120, 120];

export interface RenderJob {
  frameDir: string;
  outDir: string;
  size?: number;
  camera?: string;
  lineWidth?: number;
  /** per-frame delay of the animation, centiseconds */
  delayCs?: number;
  animation?: boolean;
  /** optional field CSV overlaid as arrows on every frame */
  fieldCsv?: string;
}

export interface RenderResult {
  imageFiles: string[];
  animationFile: string | null;
  times: number[];
  labels: string[];
}

function sha256(path: string): string {
  return createHash("sha256").update(readFileSync(path)).digest("hex");
}

function cameraFor(name: string | undefined): Camera {
  const preset = CAMERA_PRESETS[name ?? "default"];
  if (!preset) {
    throw new Error(
      `unknown camera preset ${name}; known: ${Object.keys(CAMERA_PRESETS).join(", ")}`,
    );
  }
  return new Camera(preset);
}

export function formatTime(t: number): string {
  // short fixed label in the style of figure captions
  const text = t.toFixed(6).replace(/0+$/, "").replace(/\.$/, "");
  return `t=${text || "0"}`;
}

interface Stroke {
  a: { x: number; y: number };
  b: { x: number; y: number };
  depth: number;
  color: Color;
  width: number;
}

function drawStrokesDepthSorted(canvas: Canvas, strokes: Stroke[]): void {
  strokes.sort((s, t) => s.depth - t.depth); // far first
  for (const s of strokes) {
    canvas.strokeSegment(s.a.x, s.a.y, s.b.x, s.b.y, s.width, s.color);
  }
}

function curveStrokes(camera: Camera, nodes: Vec3[], color: Color, width: number): Stroke[] {
  const pts = nodes.map((p) => camera.toPixel(p));
  const strokes: Stroke[] = [];
  for (let i = 0; i < pts.length; i++) {
    const a = pts[i];
    const b = pts[(i + 1) % pts.length];
    strokes.push({ a, b, depth: (a.depth + b.depth) / 2, color, width });
  }
  return strokes;
}

function arrowStrokes(camera: Camera, samples: FieldSample[], scalePx: number, width: number): Stroke[] {
  let longest = 0;
  for (const s of samples) {
    longest = Math.max(longest, Math.hypot(...s.vector));
  }
  // pixel length of an arrow is proportional to its vector magnitude, the
  // longest in-plane arrow spanning scalePx pixels
  const k = longest === 0 ? 0 : scalePx / (longest * camera.pixelsPerUnit());
  const strokes: Stroke[] = [];
  for (const s of samples) {
    const base = camera.toPixel(s.point);
    const tip = camera.toPixel([
      s.point[0] + k * s.vector[0],
      s.point[1] + k * s.vector[1],
      s.point[2] + k * s.vector[2],
    ]);
    strokes.push({
      a: { x: base.x, y: base.y },
      b: { x: tip.x, y: tip.y },
      depth: base.depth,
      color: ARROW_COLOR,
      width,
    });
    // arrowhead: two barbs swept back from the tip
    const ang = Math.atan2(tip.y - base.y, tip.x - base.x);
    const headLen = Math.max(3, 0.25 * Math.hypot(tip.x - base.x, tip.y - base.y));
    for (const side of [-1, 1]) {
      const barb = ang + side * (Math.PI - Math.PI / 6);
      strokes.push({
        a: { x: tip.x, y: tip.y },
        b: { x: tip.x + headLen * Math.cos(barb), y: tip.y + headLen * Math.sin(barb) },
        depth: base.depth,
        color: ARROW_COLOR,
        width,
      });
    }
  }
  return strokes;
}

export function renderFrames(job: RenderJob): RenderResult {
  const size = job.size ?? 720;
  const lineWidth = job.lineWidth ?? 2.2;
  const frames = readFrameDir(job.frameDir);
  const field = job.fieldCsv ? readFieldCsv(job.fieldCsv) : null;
  const inputFiles = [...frames.inputFiles];
  if (job.fieldCsv) inputFiles.push(job.fieldCsv);
  const checksums = inputFiles.map((f) => sha256(f));

  const camera = cameraFor(job.camera);
  const allPoints: Vec3[] = frames.curves.flat(2);
  if (field) allPoints.push(...field.map((s) => s.point));
  camera.fit(allPoints, size, size);

  mkdirSync(job.outDir, { recursive: true });
  const imageFiles: string[] = [];
  const labels: string[] = [];
  const gifFrames: GifFrame[] = [];

  frames.curves.forEach((frameCurves, idx) => {
    const canvas = new Canvas(size, size);
    const strokes: Stroke[] = [];
    frameCurves.forEach((nodes, c) => {
      strokes.push(...curveStrokes(camera, nodes, CURVE_COLORS[c % CURVE_COLORS.length], lineWidth));
    });
    if (field) {
      strokes.push(...arrowStrokes(camera, field, size * 0.06, Math.max(1, lineWidth - 1)));
    }
    drawStrokesDepthSorted(canvas, strokes);

    const label = formatTime(frames.times[idx]);
    drawText(canvas, 12, 12, label, LABEL_COLOR, 3);
    labels.push(label);

    const file = join(job.outDir, `frame_${String(idx).padStart(4, "0")}.png`);
    writeFileSync(file, encodePng(size, size, canvas.pixels));
    imageFiles.push(file);
    gifFrames.push({ rgba: canvas.pixels.slice(), delayCs: job.delayCs ?? 60 });
  });

  let animationFile: string | null = null;
  if (job.animation !== false) {
    animationFile = join(job.outDir, "animation.gif");
    writeFileSync(animationFile, encodeGif(size, size, gifFrames));
  }

  inputFiles.forEach((f, i) => {
    if (sha256(f) !== checksums[i]) {
      throw new Error(`read-only contract violated: ${f} changed during rendering`);
    }
  });

  return { imageFiles, animationFile, times: frames.times, labels };
}

export interface QuiverJob {
  fieldCsv: string;
  outFile: string;
  size?: number;
  camera?: string;
}

export interface QuiverResult {
  outFile: string;
  arrowCount: number;
}

export function renderQuiver(job: QuiverJob): QuiverResult {
  const size = job.size ?? 720;
  const before = sha256(job.fieldCsv);
  const field = readFieldCsv(job.fieldCsv);
  if (field.length === 0) throw new Error(`${job.fieldCsv}: no samples`);

  const camera = cameraFor(job.camera);
  camera.fit(field.map((s) => s.point), size, size);

  const canvas = new Canvas(size, size);
  const strokes = arrowStrokes(camera, field, size * 0.08, 1.6);
  drawStrokesDepthSorted(canvas, strokes);
  for (const s of field) {
    const px = camera.toPixel(s.point);
    canvas.fillCircle(px.x, px.y, 2, [31, 119, 180]);
  }
  writeFileSync(job.outFile, encodePng(size, size, canvas.pixels));

  if (sha256(job.fieldCsv) !== before) {
    throw new Error(`read-only contract violated: ${job.fieldCsv} changed during rendering`);
  }
  return { outFile: job.outFile, arrowCount: field.length };
}
