/**
 * Strict reader for polarsim sweep CSVs.
 *
 * The format is fixed: any number of '#'-prefixed metadata lines, one
 * header row that must match EXPECTED_COLUMNS exactly, then data rows.
 * Cells hold plain decimal numbers; a blank cell means "not applicable"
 * (e.g. timing columns written with --no-timing). The raw cell text is
 * kept alongside the parsed value so figures can carry the exact CSV
 * values through to the output.
 */

export const EXPECTED_COLUMNS = [
  "ebno_db",
  "frames",
  "bit_errors",
  "frame_errors",
  "ber",
  "fer",
  "gamma_bp_fer",
  "throughput_bps",
  "t_hyb_theo_bps",
  "latency_avg_s",
  "latency_max_s",
  "wall_time_s",
] as const;

export type ColumnName = (typeof EXPECTED_COLUMNS)[number];

export interface SweepRow {
  /** exact cell text as it appeared in the file ("" for a blank cell) */
  raw: Record<ColumnName, string>;
  /** parsed number, or null for a blank cell */
  value: Record<ColumnName, number | null>;
}

export interface SweepFile {
  path: string;
  /** metadata lines without the leading '# ' */
  metadata: string[];
  /** short series label, e.g. "scl L=32 (sweep.csv)" */
  label: string;
  rows: SweepRow[];
}

export class CsvFormatError extends Error {}

function describeHeaderMismatch(got: string[]): string {
  const expected = new Set<string>(EXPECTED_COLUMNS);
  const seen = new Set(got);
  const missing = EXPECTED_COLUMNS.filter((c) => !seen.has(c));
  const extra = got.filter((c) => !expected.has(c));
  const parts: string[] = [];
  if (missing.length) parts.push(`missing column(s): ${missing.join(", ")}`);
  if (extra.length) parts.push(`unexpected column(s): ${extra.join(", ")}`);
  if (!parts.length) parts.push(`columns out of order: got ${got.join(",")}`);
  return parts.join("; ");
}

function deriveLabel(metadata: string[], path: string): string {
  const base = path.split("/").pop() ?? path;
  const config = metadata.find((m) => m.startsWith("config:"));
  if (!config) return base;
  const fields = new Map(
    config
      .slice("config:".length)
      .trim()
      .split(/\s+/)
      .map((kv) => kv.split("=") as [string, string]),
  );
  const decoder = fields.get("decoder");
  if (!decoder) return base;
  let label = decoder;
  if (decoder === "scl" || decoder === "hybrid") {
    const L = fields.get("list_size");
    if (L) label += ` L=${L}`;
  }
  return `${label} (${base})`;
}

export function parseSweepCsv(text: string, path = "<input>"): SweepFile {
  const metadata: string[] = [];
  let header: string[] | null = null;
  const rows: SweepRow[] = [];

  const lines = text.split(/\r?\n/);
  for (let lineNo = 0; lineNo < lines.length; lineNo++) {
    const line = lines[lineNo];
    if (line === "" && lineNo === lines.length - 1) continue; // trailing newline
    if (line.startsWith("#")) {
      metadata.push(line.replace(/^#\s?/, ""));
      continue;
    }
    const cells = line.split(",");
    if (header === null) {
      header = cells;
      if (
        cells.length !== EXPECTED_COLUMNS.length ||
        cells.some((c, i) => c !== EXPECTED_COLUMNS[i])
      ) {
        throw new CsvFormatError(
          `${path}: header mismatch: ${describeHeaderMismatch(cells)}`,
        );
      }
      continue;
    }
    if (cells.length !== EXPECTED_COLUMNS.length) {
      throw new CsvFormatError(
        `${path}:${lineNo + 1}: expected ${EXPECTED_COLUMNS.length} cells, got ${cells.length}`,
      );
    }
    const raw = {} as Record<ColumnName, string>;
    const value = {} as Record<ColumnName, number | null>;
    EXPECTED_COLUMNS.forEach((col, i) => {
      raw[col] = cells[i];
      if (cells[i] === "") {
        value[col] = null;
      } else {
        const v = Number(cells[i]);
        if (!Number.isFinite(v)) {
          throw new CsvFormatError(
            `${path}:${lineNo + 1}: column ${col} has non-numeric value "${cells[i]}"`,
          );
        }
        value[col] = v;
      }
    });
    rows.push({ raw, value });
  }

  if (header === null) {
    throw new CsvFormatError(`${path}: empty file, no header row`);
  }
  if (rows.length === 0) {
    throw new CsvFormatError(`${path}: no data rows`);
  }
  return { path, metadata, label: deriveLabel(metadata, path), rows };
}
