/**
 * Animated GIF writer with a fixed 6x6x6 color cube palette and standard
 * LZW compression. Good enough for line drawings on white; anti-aliased
 * edges quantize to the nearest cube color.
 */

const LEVELS = 6;
const PALETTE_BITS = 8; // 256 slots, 216 used

function buildPalette(): Uint8Array {
  const pal = new Uint8Array(256 * 3);
  let i = 0;
  for (let r = 0; r < LEVELS; r++) {
    for (let g = 0; g < LEVELS; g++) {
      for (let b = 0; b < LEVELS; b++) {
        pal[i++] = Math.round((r * 255) / (LEVELS - 1));
        pal[i++] = Math.round((g * 255) / (LEVELS - 1));
        pal[i++] = Math.round((b * 255) / (LEVELS - 1));
      }
    }
  }
  return pal;
}

export function quantize(rgba: Uint8Array): Uint8Array {
  const n = rgba.length / 4;
  const out = new Uint8Array(n);
  for (let i = 0; i < n; i++) {
    const r = Math.round((rgba[4 * i] * (LEVELS - 1)) / 255);
    const g = Math.round((rgba[4 * i + 1] * (LEVELS - 1)) / 255);
    const b = Math.round((rgba[4 * i + 2] * (LEVELS - 1)) / 255);
    out[i] = r * LEVELS * LEVELS + g * LEVELS + b;
  }
  return out;
}

/** GIF-flavor LZW: variable code width, clear/EOI codes, 255-byte sub-blocks. */
export function lzwEncode(indices: Uint8Array, minCodeSize: number): Buffer {
  const clearCode = 1 << minCodeSize;
  const eoiCode = clearCode + 1;
  const bytes: number[] = [];
  let bitBuffer = 0;
  let bitCount = 0;
  let codeSize = minCodeSize + 1;

  const emit = (code: number) => {
    bitBuffer |= code << bitCount;
    bitCount += codeSize;
    while (bitCount >= 8) {
      bytes.push(bitBuffer & 0xff);
      bitBuffer >>>= 8;
      bitCount -= 8;
    }
  };

  let dict = new Map<string, number>();
  let nextCode = eoiCode + 1;
  const resetDict = () => {
    dict = new Map();
    nextCode = eoiCode + 1;
    codeSize = minCodeSize + 1;
  };

  emit(clearCode);
  resetDict();
  let prefix = String(indices[0]);
  let prefixCode = indices[0];
  for (let i = 1; i < indices.length; i++) {
    const sym = indices[i];
    const key = prefix + "," + sym;
    const found = dict.get(key);
    if (found !== undefined) {
      prefix = key;
      prefixCode = found;
      continue;
    }
    emit(prefixCode);
    if (nextCode === 1 << 12) {
      // table full: clear (at the current width) and start over
      emit(clearCode);
      resetDict();
    } else {
      // widen first when the value being assigned no longer fits
      if (nextCode >= 1 << codeSize) codeSize++;
      dict.set(key, nextCode++);
    }
    prefix = String(sym);
    prefixCode = sym;
  }
  emit(prefixCode);
  emit(eoiCode);
  if (bitCount > 0) bytes.push(bitBuffer & 0xff);

  // wrap into <= 255-byte sub-blocks with a terminating zero block
  const blocks: number[] = [];
  for (let i = 0; i < bytes.length; i += 255) {
    const len = Math.min(255, bytes.length - i);
    blocks.push(len, ...bytes.slice(i, i + len));
  }
  blocks.push(0);
  return Buffer.from(blocks);
}

export interface GifFrame {
  rgba: Uint8Array;
  /** centiseconds this frame stays on screen */
  delayCs: number;
}

export function encodeGif(width: number, height: number, frames: GifFrame[]): Buffer {
  if (frames.length === 0) throw new Error("need at least one frame");
  const parts: Buffer[] = [];

  const header = Buffer.alloc(13);
  header.write("GIF89a", 0, "ascii");
  header.writeUInt16LE(width, 6);
  header.writeUInt16LE(height, 8);
  header[10] = 0x80 | ((PALETTE_BITS - 1) << 4) | (PALETTE_BITS - 1); // global palette, 256 colors
  header[11] = 0; // background color index
  header[12] = 0; // square pixels
  parts.push(header, Buffer.from(buildPalette()));

  // loop forever
  parts.push(
    Buffer.from([
      0x21, 0xff, 0x0b,
      ...Buffer.from("NETSCAPE2.0", "ascii"),
      0x03, 0x01, 0x00, 0x00, 0x00,
    ]),
  );

  for (const frame of frames) {
    if (frame.rgba.length !== width * height * 4) {
      throw new Error("frame size mismatch");
    }
    const gce = Buffer.from([0x21, 0xf9, 0x04, 0x00, 0x00, 0x00, 0x00, 0x00]);
    gce.writeUInt16LE(Math.max(2, Math.round(frame.delayCs)), 4);
    parts.push(gce);

    const descriptor = Buffer.alloc(10);
    descriptor[0] = 0x2c;
    descriptor.writeUInt16LE(0, 1);
    descriptor.writeUInt16LE(0, 3);
    descriptor.writeUInt16LE(width, 5);
    descriptor.writeUInt16LE(height, 7);
    descriptor[9] = 0; // no local palette
    parts.push(descriptor);

    parts.push(Buffer.from([PALETTE_BITS]));
    parts.push(lzwEncode(quantize(frame.rgba), PALETTE_BITS));
  }

  parts.push(Buffer.from([0x3b]));
  return Buffer.concat(parts);
}
