/** Wire types of the edit service (see docs/api.md in the repo root). */

export interface Violation {
  color: 1 | 2;
  vertices: number[];
}

export interface Report {
  valid: boolean;
  s: number;
  t: number;
  n: number;
  truncated: boolean;
  violations: Violation[];
}

export interface SessionInfo {
  id: string;
  n: number;
  s: number;
  t: number;
  /** Lower-triangle text: row r has r characters, '1' / '0' / '?'. */
  triangle: string;
  undo_depth: number;
  created: number;
  modified: number;
}

export interface SessionResponse {
  session: SessionInfo;
  report: Report;
}

export type ExportFormat = "adj" | "tri";
