"""Edge two-colorings of complete graphs and their text formats.

The central value is :class:`EdgeColoring`: a symmetric map from unordered
vertex pairs of K_n to {COLOR1, COLOR2, UNDECIDED}.  Colorings are immutable;
editing operations return new values.  Two interchange formats are supported:

* adjacency list — one line ``v: u1 u2 ...`` per vertex listing its COLOR1
  neighbors; every unlisted pair is COLOR2.  Total colorings only.
* triangle matrix — the lower triangle of the adjacency matrix, one row per
  vertex starting from vertex 1, characters ``1`` / ``0`` / ``?`` for
  COLOR1 / COLOR2 / UNDECIDED.  Lossless for partial colorings.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterator

from .errors import DomainError, IncompleteColoringError, ParseError


class Color(IntEnum):
    UNDECIDED = 0
    COLOR1 = 1
    COLOR2 = 2

    def flipped(self) -> "Color":
        if self is Color.COLOR1:
            return Color.COLOR2
        if self is Color.COLOR2:
            return Color.COLOR1
        raise DomainError("cannot flip an undecided edge")


def edge_index(i: int, j: int, n: int) -> int:
    """1-based variable index of edge (i, j) under lexicographic pair order.

    idx(0,1) = 1 and idx(n-2, n-1) = C(n,2); bijective on 0 <= i < j < n.
    """
    if not (0 <= i < j < n):
        raise DomainError(f"edge ({i},{j}) out of range for n={n}")
    return i * n - i * (i + 1) // 2 + (j - i)


def edge_count(n: int) -> int:
    return n * (n - 1) // 2


def index_to_edge(idx: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`edge_index`."""
    if not (1 <= idx <= edge_count(n)):
        raise DomainError(f"edge index {idx} out of range for n={n}")
    i = 0
    # row i covers indices (i*n - i(i+1)/2, ... ] with n-1-i entries
    while idx > n - 1 - i:
        idx -= n - 1 - i
        i += 1
    return i, i + idx


@dataclass(frozen=True)
class EdgeColoring:
    """Immutable symmetric two-coloring of K_n edges, possibly partial.

    Cells are stored once per unordered pair in edge_index order; queries
    with (j, i) answer identically to (i, j) and self-loops are rejected.
    """

    n: int
    cells: bytes

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("need at least one vertex")
        if len(self.cells) != edge_count(self.n):
            raise DomainError(
                f"expected {edge_count(self.n)} cells for n={self.n}, got {len(self.cells)}"
            )
        if any(c > 2 for c in self.cells):
            raise DomainError("cell values must be 0 (undecided), 1, or 2")

    @staticmethod
    def blank(n: int) -> "EdgeColoring":
        return EdgeColoring(n, bytes(edge_count(n)))

    @staticmethod
    def constant(n: int, color: Color) -> "EdgeColoring":
        return EdgeColoring(n, bytes([color]) * edge_count(n))

    @staticmethod
    def from_color1_edges(n: int, edges: Iterator[tuple[int, int]]) -> "EdgeColoring":
        """Total coloring with the given pairs COLOR1 and everything else COLOR2."""
        cells = bytearray([Color.COLOR2]) * edge_count(n)
        for i, j in edges:
            if i > j:
                i, j = j, i
            cells[edge_index(i, j, n) - 1] = Color.COLOR1
        return EdgeColoring(n, bytes(cells))

    def color(self, i: int, j: int) -> Color:
        if i == j:
            raise DomainError("no self-loops")
        if i > j:
            i, j = j, i
        return Color(self.cells[edge_index(i, j, self.n) - 1])

    @property
    def is_total(self) -> bool:
        return 0 not in self.cells

    @property
    def undecided_count(self) -> int:
        return self.cells.count(0)

    def edges_of(self, color: Color) -> Iterator[tuple[int, int]]:
        idx = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.cells[idx] == color:
                    yield (i, j)
                idx += 1

    def with_edge(self, i: int, j: int, color: Color) -> "EdgeColoring":
        if i == j:
            raise DomainError("no self-loops")
        if i > j:
            i, j = j, i
        cells = bytearray(self.cells)
        cells[edge_index(i, j, self.n) - 1] = color
        return EdgeColoring(self.n, bytes(cells))

    @cached_property
    def _neighbor_masks(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Per-vertex bitsets of COLOR1 / COLOR2 neighbors (for clique search)."""
        m1 = [0] * self.n
        m2 = [0] * self.n
        idx = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                c = self.cells[idx]
                idx += 1
                if c == Color.COLOR1:
                    m1[i] |= 1 << j
                    m1[j] |= 1 << i
                elif c == Color.COLOR2:
                    m2[i] |= 1 << j
                    m2[j] |= 1 << i
        return tuple(m1), tuple(m2)

    def neighbor_masks(self, color: Color) -> tuple[int, ...]:
        if color == Color.COLOR1:
            return self._neighbor_masks[0]
        if color == Color.COLOR2:
            return self._neighbor_masks[1]
        raise DomainError("masks exist only for decided colors")


@dataclass(frozen=True)
class ZVector:
    """Assignment to circulant distance variables z_1 .. z_{n-1}.

    bits[k-1] is z_k: True (COLOR1), False (COLOR2), or None (unassigned).
    With symmetric=True the palindrome identity z_{n-k} = z_k is enforced
    for every assigned distance.
    """

    n: int
    bits: tuple[bool | None, ...]
    symmetric: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("a Z-vector needs n >= 2")
        if len(self.bits) != self.n - 1:
            raise DomainError(f"expected {self.n - 1} bits, got {len(self.bits)}")
        if self.symmetric:
            for k in range(1, self.n):
                a, b = self.bits[k - 1], self.bits[self.n - k - 1]
                if a is not None and b is not None and a != b:
                    raise DomainError(f"symmetric mode violated at distances {k}/{self.n - k}")

    @staticmethod
    def total(n: int, values: Iterator[bool], symmetric: bool = False) -> "ZVector":
        return ZVector(n, tuple(bool(v) for v in values), symmetric)

    @property
    def is_total(self) -> bool:
        return all(b is not None for b in self.bits)

    def negated(self) -> "ZVector":
        return ZVector(
            self.n,
            tuple(None if b is None else not b for b in self.bits),
            self.symmetric,
        )

    def as_bitstring(self) -> str:
        if not self.is_total:
            raise IncompleteColoringError("unassigned distances present")
        return "".join("1" if b else "0" for b in self.bits)

    @staticmethod
    def from_bitstring(text: str, symmetric: bool = False) -> "ZVector":
        if not text or set(text) - {"0", "1"}:
            raise ParseError("Z-vector string must be nonempty over {0,1}")
        return ZVector(len(text) + 1, tuple(c == "1" for c in text), symmetric)


def coloring_from_z(z: ZVector) -> EdgeColoring:
    """Expand a total Z-vector into the circulant coloring e_{ij} = z_{j-i}."""
    if not z.is_total:
        raise IncompleteColoringError("all distances must be assigned before expansion")
    n = z.n
    cells = bytearray(edge_count(n))
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            cells[idx] = Color.COLOR1 if z.bits[j - i - 1] else Color.COLOR2
            idx += 1
    return EdgeColoring(n, bytes(cells))


def induced_subcoloring(c: EdgeColoring, m: int) -> EdgeColoring:
    """Restriction of the coloring to vertices 0 .. m-1."""
    if not (1 <= m <= c.n):
        raise DomainError(f"m={m} out of range for n={c.n}")
    if m == c.n:
        return c
    cells = bytearray(edge_count(m))
    idx = 0
    for i in range(m):
        row = edge_index(i, i + 1, c.n) - 1 if i + 1 < c.n else 0
        for j in range(i + 1, m):
            cells[idx] = c.cells[row + (j - i - 1)]
            idx += 1
    return EdgeColoring(m, bytes(cells))


def flip_edge(c: EdgeColoring, i: int, j: int) -> EdgeColoring:
    """Exchange COLOR1 and COLOR2 at (i, j); an involution on decided edges."""
    return c.with_edge(i, j, c.color(i, j).flipped())


def parse_adjacency_list(text: str) -> EdgeColoring:
    """Parse ``v: u1 u2 ...`` lines into a total coloring.

    Listed pairs become COLOR1, everything else COLOR2.  The input must be
    symmetric: u in v's list requires v in u's list.  Self-loops, duplicate
    neighbors, out-of-range vertices and bad headers are rejected with the
    offending line.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty adjacency list")
    n = len(lines)
    neigh: list[set[int]] = [set() for _ in range(n)]
    for lineno, line in enumerate(lines, start=1):
        v = lineno - 1
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("missing ':' separator", lineno)
        if head.strip() != str(v):
            raise ParseError(f"expected vertex {v}, got {head.strip()!r}", lineno)
        for tok in rest.split():
            try:
                u = int(tok)
            except ValueError:
                raise ParseError(f"bad neighbor token {tok!r}", lineno) from None
            if not (0 <= u < n):
                raise ParseError(f"neighbor {u} out of range 0..{n - 1}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {v}", lineno)
            if u in neigh[v]:
                raise ParseError(f"duplicate neighbor {u}", lineno)
            neigh[v].add(u)
    for v in range(n):
        for u in sorted(neigh[v]):
            if v not in neigh[u]:
                raise ParseError(
                    f"asymmetric input: {u} listed for {v} but {v} absent for {u}", u + 1
                )
    return EdgeColoring.from_color1_edges(
        n, ((v, u) for v in range(n) for u in neigh[v] if v < u)
    )


def emit_adjacency_list(c: EdgeColoring) -> str:
    """Canonical adjacency-list text: sorted neighbors, LF endings."""
    if not c.is_total:
        raise IncompleteColoringError("adjacency lists represent total colorings only")
    neigh: list[list[int]] = [[] for _ in range(c.n)]
    for i, j in c.edges_of(Color.COLOR1):
        neigh[i].append(j)
        neigh[j].append(i)
    out = []
    for v in range(c.n):
        row = " ".join(str(u) for u in sorted(neigh[v]))
        out.append(f"{v}: {row}" if row else f"{v}:")
    return "\n".join(out) + "\n"


_TRI_CHARS = {"1": Color.COLOR1, "0": Color.COLOR2, "?": Color.UNDECIDED}
_TRI_EMIT = {Color.COLOR1: "1", Color.COLOR2: "0", Color.UNDECIDED: "?"}


def parse_triangle_matrix(text: str) -> EdgeColoring:
    """Parse the lower-triangle row format; row r holds e_{0,r} .. e_{r-1,r}."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    n = len(lines) + 1
    cells = bytearray(edge_count(n))
    for rowno, line in enumerate(lines, start=1):
        r = rowno  # vertex index of this row
        if len(line) != r:
            raise ParseError(f"row must have exactly {r} characters, got {len(line)}", rowno)
        for col, ch in enumerate(line):
            if ch not in _TRI_CHARS:
                raise ParseError(f"bad character {ch!r} (want 1, 0 or ?)", rowno)
            cells[edge_index(col, r, n) - 1] = _TRI_CHARS[ch]
    return EdgeColoring(n, bytes(cells))


def emit_triangle_matrix(c: EdgeColoring) -> str:
    """Inverse of :func:`parse_triangle_matrix`; lossless for partial colorings."""
    rows = []
    for r in range(1, c.n):
        rows.append("".join(_TRI_EMIT[c.color(col, r)] for col in range(r)))
    return "\n".join(rows) + "\n" if rows else ""
