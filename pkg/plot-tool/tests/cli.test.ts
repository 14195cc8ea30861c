import { execFileSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { beforeAll, describe, expect, it } from "vitest";

const root = fileURLToPath(new URL("..", import.meta.url));
const cliJs = join(root, "dist", "cli.js");
const fixture = (name: string) =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));

function run(args: string[]) {
  try {
    const stdout = execFileSync("node", [cliJs, ...args], { encoding: "utf8" });
    return { code: 0, stdout, stderr: "" };
  } catch (e: any) {
    return { code: e.status ?? 1, stdout: e.stdout ?? "", stderr: e.stderr ?? "" };
  }
}

describe("command line", () => {
  let dir: string;

  beforeAll(() => {
    // the cli tests exercise the built artifact; `npm test` builds first
    expect(existsSync(cliJs)).toBe(true);
    dir = mkdtempSync(join(tmpdir(), "plot-tool-"));
  });

  it("writes an SVG figure from one sweep", () => {
    const out = join(dir, "ber.svg");
    const r = run(["plot", "--kind", "ber", "--out", out, fixture("scl_sweep.csv")]);
    expect(r.code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain('data-kind="ber"');
  });

  it("overlays several sweeps in one figure", () => {
    const out = join(dir, "compare.svg");
    const r = run([
      "plot",
      "--kind",
      "ber",
      "--out",
      out,
      fixture("scl_sweep.csv"),
      fixture("bp_sweep.csv"),
      fixture("hybrid_sweep.csv"),
    ]);
    expect(r.code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("scl_sweep.csv");
    expect(svg).toContain("bp_sweep.csv");
    expect(svg).toContain("hybrid_sweep.csv");
  });

  it("rejects an unknown kind", () => {
    const r = run(["plot", "--kind", "nope", "--out", join(dir, "x.svg"), fixture("scl_sweep.csv")]);
    expect(r.code).not.toBe(0);
  });

  it("fails loudly on a schema mismatch, naming the columns", () => {
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "ebno,ber\n1,0.5\n");
    const r = run(["plot", "--kind", "ber", "--out", join(dir, "y.svg"), bad]);
    expect(r.code).not.toBe(0);
    expect(r.stderr).toMatch(/header mismatch/);
    expect(r.stderr).toMatch(/missing column\(s\).*frames/);
  });

  it("fails loudly on an empty input file", () => {
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    const r = run(["plot", "--kind", "ber", "--out", join(dir, "z.svg"), empty]);
    expect(r.code).not.toBe(0);
    expect(r.stderr).toMatch(/no header/);
  });
});
