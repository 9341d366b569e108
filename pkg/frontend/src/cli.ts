#!/usr/bin/env node
/**
 * Figure renderer for the deltoid CLI outputs.
 *
 *   node dist/cli.js region   --out fig.svg [--overlay] raster1.json [...]
 *   node dist/cli.js converge --out fig.svg trace.csv
 */

import { plotConvergence } from "./plotConvergence.js";
import { plotRegion } from "./plotRegion.js";

function fail(message: string): never {
  console.error(`error: ${message}`);
  process.exit(1);
}

export function main(argv: string[]): void {
  const [command, ...rest] = argv;
  let out: string | undefined;
  let overlay = false;
  const inputs: string[] = [];
  for (let i = 0; i < rest.length; i++) {
    const arg = rest[i];
    if (arg === "--out") {
      out = rest[++i];
    } else if (arg === "--overlay") {
      overlay = true;
    } else if (arg.startsWith("--")) {
      fail(`unknown flag ${arg}`);
    } else {
      inputs.push(arg);
    }
  }
  if (out === undefined) fail("--out is required");
  if (command === "region") {
    if (inputs.length === 0) fail("region needs at least one raster file");
    plotRegion(inputs, out, { overlay });
  } else if (command === "converge") {
    if (inputs.length !== 1) fail("converge needs exactly one CSV file");
    plotConvergence(inputs[0], out);
  } else {
    fail(`unknown command ${command ?? "(none)"}; use region or converge`);
  }
}

main(process.argv.slice(2));
