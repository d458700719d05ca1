import type { GridModel } from "./matrix.js";
import type { Violation } from "./types.js";

/** Cell size shrinks with n so triangles up to ~120 vertices stay on screen. */
export function cellSizePx(n: number): number {
  if (n <= 30) return 16;
  if (n <= 60) return 11;
  if (n <= 90) return 8;
  return 6;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/**
 * Deterministic HTML for the lower-triangle grid; cells carry data-i/data-j
 * for event delegation and get classes filled / violating / selected.
 */
export function renderGrid(grid: GridModel): string {
  const size = cellSizePx(grid.n);
  const rows = grid.rows
    .map((cells) => {
      const tds = cells
        .map((c) => {
          const cls = [
            "cell",
            c.filled ? "filled" : "empty",
            c.violating ? "violating" : "",
            c.selected ? "selected" : "",
          ]
            .filter(Boolean)
            .join(" ");
          return `<td class="${cls}" data-i="${c.i}" data-j="${c.j}"></td>`;
        })
        .join("");
      return `<tr>${tds}</tr>`;
    })
    .join("");
  return `<table class="matrix" style="--cell:${size}px">${rows}</table>`;
}

export function renderStatus(grid: GridModel): string {
  if (grid.valid) {
    return `<span class="ok">valid — no monochromatic cliques</span>`;
  }
  const extra = grid.truncated ? " (list truncated)" : "";
  return `<span class="bad">${grid.violations.length} violation(s)${extra}</span>`;
}

export function renderViolationList(
  violations: Violation[],
  selected: number | null,
): string {
  if (violations.length === 0) {
    return `<ul class="violations empty"></ul>`;
  }
  const items = violations
    .map((v, idx) => {
      const cls = idx === selected ? ` class="selected"` : "";
      const label = `color ${v.color}: {${v.vertices.join(", ")}}`;
      return `<li${cls} data-violation="${idx}">${esc(label)}</li>`;
    })
    .join("");
  return `<ul class="violations">${items}</ul>`;
}

export function renderErrorBanner(message: string | null): string {
  if (!message) return `<div class="banner hidden"></div>`;
  return `<div class="banner error">${esc(message)}</div>`;
}
