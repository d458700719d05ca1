import type { Report, SessionInfo, Violation } from "./types.js";

/** One lower-triangle cell: edge (i, j) with i < j. */
export interface Cell {
  i: number;
  j: number;
  /** true = COLOR1 (filled box), false = COLOR2 (empty box). */
  filled: boolean;
  violating: boolean;
  selected: boolean;
}

export interface GridModel {
  n: number;
  /** rows[r] holds the cells of vertex r+1 (row lengths 1..n-1). */
  rows: Cell[][];
  violations: Violation[];
  valid: boolean;
  truncated: boolean;
}

export function edgeKey(i: number, j: number): string {
  return i < j ? `${i},${j}` : `${j},${i}`;
}

/** Every unordered pair inside a violating clique participates in it. */
export function violationEdges(violations: Violation[]): Set<string> {
  const out = new Set<string>();
  for (const v of violations) {
    const vs = v.vertices;
    for (let a = 0; a < vs.length; a++) {
      for (let b = a + 1; b < vs.length; b++) {
        out.add(edgeKey(vs[a], vs[b]));
      }
    }
  }
  return out;
}

/**
 * Server state -> render model.  Pure: the same session/report pair always
 * produces the same grid, so views are snapshot-testable.
 */
export function buildGrid(
  session: SessionInfo,
  report: Report,
  selectedViolation: number | null = null,
): GridModel {
  const triangleRows = session.triangle.split("\n").filter((row) => row.length > 0);
  if (triangleRows.length !== session.n - 1) {
    throw new Error(
      `triangle has ${triangleRows.length} rows, expected ${session.n - 1}`,
    );
  }
  const hot = violationEdges(report.violations);
  const picked =
    selectedViolation !== null && report.violations[selectedViolation]
      ? violationEdges([report.violations[selectedViolation]])
      : new Set<string>();
  const rows: Cell[][] = triangleRows.map((chars, idx) => {
    const j = idx + 1;
    if (chars.length !== j) {
      throw new Error(`row ${j} has ${chars.length} cells, expected ${j}`);
    }
    return Array.from(chars, (ch, i) => ({
      i,
      j,
      filled: ch === "1",
      violating: hot.has(edgeKey(i, j)),
      selected: picked.has(edgeKey(i, j)),
    }));
  });
  return {
    n: session.n,
    rows,
    violations: report.violations,
    valid: report.valid,
    truncated: report.truncated,
  };
}

export function highlightedCells(grid: GridModel): Cell[] {
  return grid.rows.flat().filter((c) => c.violating);
}
