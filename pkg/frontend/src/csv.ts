/**
 * Readers for the engine's file formats: curve frame CSVs (x,y,z),
 * field CSVs (x,y,z,Fx,Fy,Fz), the diagnostics table and the key=value
 * manifest.
 */

import { readFileSync, readdirSync } from "fs";
import { join } from "path";

import { Vec3 } from "./camera";

export function parseNumericCsv(text: string, expectedHeader: string[], source: string): number[][] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) throw new Error(`${source}: empty file`);
  const header = lines[0].split(",").map((h) => h.trim());
  for (let i = 0; i < expectedHeader.length; i++) {
    if (header[i] !== expectedHeader[i]) {
      throw new Error(
        `${source}: expected header ${expectedHeader.join(",")}, got ${lines[0]}`,
      );
    }
  }
  return lines.slice(1).map((line, idx) => {
    const values = line.split(",").map(Number);
    if (values.length < expectedHeader.length || values.some((v) => Number.isNaN(v))) {
      throw new Error(`${source}: bad row ${idx + 2}: ${line}`);
    }
    return values;
  });
}

export function readCurveCsv(path: string): Vec3[] {
  return parseNumericCsv(readFileSync(path, "utf8"), ["x", "y", "z"], path).map(
    (r) => [r[0], r[1], r[2]] as Vec3,
  );
}

export interface FieldSample {
  point: Vec3;
  vector: Vec3;
}

export function readFieldCsv(path: string): FieldSample[] {
  return parseNumericCsv(
    readFileSync(path, "utf8"),
    ["x", "y", "z", "Fx", "Fy", "Fz"],
    path,
  ).map((r) => ({ point: [r[0], r[1], r[2]] as Vec3, vector: [r[3], r[4], r[5]] as Vec3 }));
}

export function readManifest(path: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const raw of readFileSync(path, "utf8").split(/\r?\n/)) {
    const line = raw.trim();
    if (!line || line.startsWith("#")) continue;
    const eq = line.indexOf("=");
    if (eq < 0) continue;
    out[line.slice(0, eq)] = line.slice(eq + 1);
  }
  return out;
}

export interface FrameSet {
  /** frame times parsed from the manifest */
  times: number[];
  /** curves[frame][curve] = node list */
  curves: Vec3[][][];
  curveCount: number;
  manifest: Record<string, string>;
  /** every file read, for the read-only contract check */
  inputFiles: string[];
}

export function readFrameDir(dir: string): FrameSet {
  const names = new Set(readdirSync(dir));
  if (!names.has("manifest")) {
    throw new Error(`${dir}: no manifest file; expected a frame dump directory`);
  }
  const manifestPath = join(dir, "manifest");
  const manifest = readManifest(manifestPath);
  const nFrames = Number(manifest["n_frames"]);
  if (!Number.isInteger(nFrames) || nFrames < 1) {
    throw new Error(`${dir}: manifest has no usable n_frames`);
  }
  const times = (manifest["frame_times"] ?? "")
    .split(",")
    .filter((s) => s.length > 0)
    .map(Number);
  if (times.length !== nFrames || times.some(Number.isNaN)) {
    throw new Error(`${dir}: manifest frame_times does not list ${nFrames} times`);
  }

  let curveCount = 0;
  while (names.has(`frame_0_curve_${curveCount + 1}.csv`)) curveCount++;
  if (curveCount === 0) {
    throw new Error(`${dir}: found no frame_0_curve_1.csv`);
  }

  const missing: string[] = [];
  const curves: Vec3[][][] = [];
  const inputFiles = [manifestPath];
  for (let f = 0; f < nFrames; f++) {
    const frameCurves: Vec3[][] = [];
    for (let c = 1; c <= curveCount; c++) {
      const name = `frame_${f}_curve_${c}.csv`;
      if (!names.has(name)) {
        missing.push(name);
        continue;
      }
      const path = join(dir, name);
      inputFiles.push(path);
      frameCurves.push(readCurveCsv(path));
    }
    curves.push(frameCurves);
  }
  if (missing.length > 0) {
    throw new Error(`${dir}: missing frame files: ${missing.join(", ")}`);
  }
  if (names.has("diagnostics.csv")) {
    inputFiles.push(join(dir, "diagnostics.csv"));
  }
  return { times, curves, curveCount, manifest, inputFiles };
}
