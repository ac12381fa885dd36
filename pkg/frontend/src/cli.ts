#!/usr/bin/env node
/**
 * Render frame dumps produced by the simulation engine.
 *
 *   filaments-render render <framedir> [-o outdir] [--camera top] [--field field.csv]
 *   filaments-render quiver <field.csv> [-o quiver.png]
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { CAMERA_PRESETS } from "./camera";
import { renderFrames, renderQuiver } from "./render";

export function main(argv: string[]): Promise<number> {
  return new Promise((resolve) => {
    yargs(argv)
      .scriptName("filaments-render")
      .command(
        "render <framedir>",
        "render every frame to a labeled PNG plus an animated GIF",
        (y) =>
          y
            .positional("framedir", { type: "string", demandOption: true })
            .option("out", { alias: "o", type: "string", describe: "output directory" })
            .option("size", { type: "number", default: 720 })
            .option("camera", {
              type: "string",
              default: "default",
              choices: Object.keys(CAMERA_PRESETS),
            })
            .option("delay", { type: "number", default: 60, describe: "GIF frame delay (cs)" })
            .option("gif", { type: "boolean", default: true })
            .option("field", { type: "string", describe: "field CSV overlaid as arrows" }),
        (args) => {
          const result = renderFrames({
            frameDir: args.framedir as string,
            outDir: (args.out as string) ?? `${args.framedir}/render`,
            size: args.size,
            camera: args.camera,
            delayCs: args.delay,
            animation: args.gif,
            fieldCsv: args.field,
          });
          for (const [i, file] of result.imageFiles.entries()) {
            console.log(`${result.labels[i]} -> ${file}`);
          }
          if (result.animationFile) console.log(`animation -> ${result.animationFile}`);
          resolve(0);
        },
      )
      .command(
        "quiver <csv>",
        "render a field CSV as a 3D quiver plot",
        (y) =>
          y
            .positional("csv", { type: "string", demandOption: true })
            .option("out", { alias: "o", type: "string", default: "quiver.png" })
            .option("size", { type: "number", default: 720 })
            .option("camera", {
              type: "string",
              default: "default",
              choices: Object.keys(CAMERA_PRESETS),
            }),
        (args) => {
          const result = renderQuiver({
            fieldCsv: args.csv as string,
            outFile: args.out as string,
            size: args.size,
            camera: args.camera,
          });
          console.log(`${result.arrowCount} arrows -> ${result.outFile}`);
          resolve(0);
        },
      )
      .demandCommand(1)
      .strict()
      .fail((msg, err) => {
        console.error(`error: ${err?.message ?? msg}`);
        resolve(1);
      })
      .parse();
  });
}

if (require.main === module) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
