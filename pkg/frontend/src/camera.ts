/**
 * Orthographic 3D-to-2D projection. A camera preset fixes the view
 * direction; the frame is fitted once over all points of a job so every
 * image of an animation shares the same scale.
 */

export type Vec3 = [number, number, number];

export interface CameraPreset {
  /** unit view direction (from the scene toward the camera) */
  eye: Vec3;
  up: Vec3;
}

export const CAMERA_PRESETS: Record<string, CameraPreset> = {
  // three-quarter view, good default for linked rings and knots
  default: { eye: [0.5, -1.0, 0.6], up: [0, 0, 1] },
  // straight down the z-axis (xy-plane)
  top: { eye: [0, 0, 1], up: [0, 1, 0] },
  // down the y-axis (xz-plane)
  front: { eye: [0, -1, 0], up: [0, 0, 1] },
  side: { eye: [1, 0, 0], up: [0, 0, 1] },
};

function normalize(v: Vec3): Vec3 {
  const n = Math.hypot(v[0], v[1], v[2]);
  if (n === 0) throw new Error("zero-length camera vector");
  return [v[0] / n, v[1] / n, v[2] / n];
}

function cross(a: Vec3, b: Vec3): Vec3 {
  return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
}

function dot(a: Vec3, b: Vec3): number {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

export class Camera {
  private right: Vec3;
  private upv: Vec3;
  private forward: Vec3;
  private scale = 1;
  private cx = 0;
  private cy = 0;
  private offsetX = 0;
  private offsetY = 0;

  constructor(preset: CameraPreset) {
    this.forward = normalize(preset.eye);
    this.right = normalize(cross(preset.up, this.forward));
    this.upv = cross(this.forward, this.right);
  }

  /** Plane coordinates plus depth (larger = closer to the camera). */
  project(p: Vec3): { u: number; v: number; depth: number } {
    return { u: dot(p, this.right), v: dot(p, this.upv), depth: dot(p, this.forward) };
  }

  /** Choose scale and offsets so all points land inside the canvas margin. */
  fit(points: Vec3[], width: number, height: number, margin = 0.08): void {
    if (points.length === 0) throw new Error("cannot fit a camera to no points");
    let uMin = Infinity, uMax = -Infinity, vMin = Infinity, vMax = -Infinity;
    for (const p of points) {
      const { u, v } = this.project(p);
      uMin = Math.min(uMin, u);
      uMax = Math.max(uMax, u);
      vMin = Math.min(vMin, v);
      vMax = Math.max(vMax, v);
    }
    const span = Math.max(uMax - uMin, vMax - vMin, 1e-12);
    const usable = Math.min(width, height) * (1 - 2 * margin);
    this.scale = usable / span;
    this.cx = (uMin + uMax) / 2;
    this.cy = (vMin + vMax) / 2;
    this.offsetX = width / 2;
    this.offsetY = height / 2;
  }

  /** Canvas pixel coordinates (y grows downward) plus depth. */
  toPixel(p: Vec3): { x: number; y: number; depth: number } {
    const { u, v, depth } = this.project(p);
    return {
      x: this.offsetX + (u - this.cx) * this.scale,
      y: this.offsetY - (v - this.cy) * this.scale,
      depth,
    };
  }

  pixelsPerUnit(): number {
    return this.scale;
  }
}
