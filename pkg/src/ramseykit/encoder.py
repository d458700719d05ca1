"""Clause generation for Ramsey instances: full, Z-constrained, and residual.

Hard clauses are never materialized as a whole; every producer is a
generator in strict lexicographic subset order (negative K_s clauses first,
then positive K_t clauses), so two traversals yield identical sequences and
golden DIMACS files are diff-stable.  Z-clauses are small (O(n^2)) and are
materialized as lists.

Variable numbering: edge (i, j) gets the lexicographic pair index 1..C(n,2);
distance variables follow as C(n,2)+k for k = 1..n-1 (per-partition blocks
appended contiguously in partition-id order when a partition rule is used).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .colorings import Color, EdgeColoring, edge_count, edge_index
from .errors import DomainError, ParseError

log = logging.getLogger(__name__)

Clause = list[int]


def ramsey_counts(s: int, t: int, n: int) -> tuple[int, int]:
    """(variable count, clause count) of the plain instance: C(n,2), C(n,s)+C(n,t)."""
    _check_sizes(s, t, n)
    return edge_count(n), math.comb(n, s) + math.comb(n, t)


def _check_sizes(s: int, t: int, n: int) -> None:
    if s < 2 or t < 2:
        raise DomainError("clique sizes must be >= 2")
    if s > n or t > n:
        raise DomainError(f"clique sizes ({s},{t}) exceed n={n}")


def stream_ramsey_clauses(s: int, t: int, n: int) -> Iterator[Clause]:
    """One negative clause per s-subset, one positive clause per t-subset.

    Memory stays O(n): clauses are computed on the fly, never stored.
    """
    _check_sizes(s, t, n)
    lit = _pair_literal_table(n)
    for sub in combinations(range(n), s):
        yield [-lit[p] for p in combinations(sub, 2)]
    for sub in combinations(range(n), t):
        yield [lit[p] for p in combinations(sub, 2)]


def _pair_literal_table(n: int) -> dict[tuple[int, int], int]:
    return {
        (i, j): edge_index(i, j, n) for i in range(n) for j in range(i + 1, n)
    }


@dataclass(frozen=True)
class PartitionFn:
    """Total rule (row, column) -> partition id with row = max(i,j)."""

    name: str
    parts: int
    rule: Callable[[int, int], int]

    def part_of(self, i: int, j: int) -> int:
        row, col = (i, j) if i > j else (j, i)
        p = self.rule(row, col)
        if not (0 <= p < self.parts):
            raise DomainError(f"partition id {p} outside 0..{self.parts - 1}")
        return p


def band_partition(lo: int = 24, hi: int = 33) -> PartitionFn:
    """Two blocks: id 0 when lo <= row <= hi, id 1 otherwise."""
    return PartitionFn(
        name=f"band-{lo}-{hi}", parts=2, rule=lambda row, col: 0 if lo <= row <= hi else 1
    )


PARTITION_PRESETS: dict[str, Callable[[], PartitionFn]] = {
    "band-24-33": band_partition,
}


@dataclass(frozen=True)
class ZMode:
    """Which circulant constraint family to attach, if any.

    kind: "none" | "full" | "symmetric" | "imperfect" | "partitioned".
    imperfect omits both clauses of every pair whose distance is in `omitted`;
    partitioned replaces the single z family by one family per partition id.
    """

    kind: str = "none"
    omitted: frozenset[int] = frozenset()
    partition: PartitionFn | None = None

    @staticmethod
    def none() -> "ZMode":
        return ZMode("none")

    @staticmethod
    def full() -> "ZMode":
        return ZMode("full")

    @staticmethod
    def symmetric() -> "ZMode":
        return ZMode("symmetric")

    @staticmethod
    def imperfect(omitted: Iterable[int]) -> "ZMode":
        return ZMode("imperfect", omitted=frozenset(omitted))

    @staticmethod
    def partitioned(fn: PartitionFn) -> "ZMode":
        return ZMode("partitioned", partition=fn)

    def z_var_count(self, n: int) -> int:
        if self.kind == "none":
            return 0
        if self.kind == "partitioned":
            assert self.partition is not None
            return self.partition.parts * (n - 1)
        return n - 1


def z_var(n: int, k: int, part: int = 0) -> int:
    """Variable id of z_k (block `part` when partitioned)."""
    if not (1 <= k <= n - 1):
        raise DomainError(f"distance {k} outside 1..{n - 1}")
    return edge_count(n) + part * (n - 1) + k


def stream_z_clauses(n: int, mode: ZMode) -> list[Clause]:
    """Materialized Z-clauses for the given mode, in pair order.

    full: (−e_ij ∨ z_{j−i}) ∧ (e_ij ∨ −z_{j−i}) for every pair, 2·C(n,2)
    clauses.  symmetric: full plus the palindrome equivalences on z.
    imperfect: full minus both clauses of every omitted distance.
    partitioned: e_ij is tied to its own partition's z family.
    """
    if n < 2:
        raise DomainError("need n >= 2 for Z-clauses")
    if mode.kind == "none":
        return []
    for d in mode.omitted:
        if not (1 <= d <= n - 1):
            raise DomainError(f"omitted distance {d} outside 1..{n - 1}")
    out: list[Clause] = []
    for i in range(n):
        for j in range(i + 1, n):
            k = j - i
            if mode.kind == "imperfect" and k in mode.omitted:
                continue
            part = mode.partition.part_of(i, j) if mode.kind == "partitioned" else 0
            e = edge_index(i, j, n)
            z = z_var(n, k, part)
            out.append([-e, z])
            out.append([e, -z])
    if mode.kind == "symmetric":
        for k in range(1, (n - 1) // 2 + 1):
            if k == n - k:
                continue
            a, b = z_var(n, k), z_var(n, n - k)
            out.append([-a, b])
            out.append([a, -b])
    return out


def z_clause_count(n: int, mode: ZMode) -> int:
    """Closed-form count matching :func:`stream_z_clauses`."""
    if mode.kind == "none":
        return 0
    base = 2 * edge_count(n)
    if mode.kind == "imperfect":
        return base - sum(2 * (n - d) for d in mode.omitted)
    if mode.kind == "symmetric":
        return base + 2 * ((n - 1) // 2 if n % 2 == 1 else (n - 2) // 2)
    return base


@dataclass(frozen=True)
class ClauseSource:
    """A complete instance: streamed hard clauses plus materialized soft Z-clauses.

    With `fixed` present the hard stream is the residual of the partial
    coloring (settled clauses dropped, decided literals removed) and the
    Z-clauses are restricted to pairs with at least one undecided edge.
    """

    n: int
    s: int
    t: int
    z_mode: ZMode = field(default_factory=ZMode.none)
    fixed: EdgeColoring | None = None

    def __post_init__(self):
        _check_sizes(self.s, self.t, self.n)
        if self.fixed is not None and self.fixed.n != self.n:
            raise DomainError("fixed coloring must live on the instance's n vertices")
        if self.z_mode.kind == "symmetric" and self.fixed is not None:
            raise DomainError("symmetric Z on residual instances is not supported")

    @property
    def var_count(self) -> int:
        return edge_count(self.n) + self.z_mode.z_var_count(self.n)

    def z_vars(self) -> list[int]:
        first = edge_count(self.n) + 1
        return list(range(first, first + self.z_mode.z_var_count(self.n)))

    def hard_clauses(self) -> Iterator[Clause]:
        if self.fixed is None:
            yield from stream_ramsey_clauses(self.s, self.t, self.n)
        else:
            yield from _residual_stream(self.fixed, self.s, self.t)

    def hard_clause_count(self) -> int:
        if self.fixed is None:
            return ramsey_counts(self.s, self.t, self.n)[1]
        return residual_clauses(self.fixed, self.s, self.t)[1]

    def soft_clauses(self) -> list[Clause]:
        clauses = stream_z_clauses(self.n, self.z_mode)
        if self.fixed is None:
            return clauses
        ec = edge_count(self.n)
        decided = self.fixed.cells
        return [
            cl
            for cl in clauses
            if any(1 <= abs(l) <= ec and decided[abs(l) - 1] == 0 for l in cl)
        ]


def residual_clauses(
    fixed: EdgeColoring,
    s: int,
    t: int,
    sink: Callable[[Clause], None] | None = None,
) -> tuple[int, int]:
    """Stream unsettled clauses of the partial coloring; returns (vars, clauses).

    A K_s clause is settled iff some edge of its subset is fixed COLOR2 (the
    clause is already satisfied); dually a K_t clause is settled iff some edge
    is fixed COLOR1.  Surviving clauses drop their decided (falsified)
    literals.  vars = number of undecided edges.

    Enumeration is a pruned lexicographic DFS: a partial subset containing a
    settling edge is abandoned wholesale, so work scales with the number of
    unsettled prefixes rather than C(n, k).
    """
    n = fixed.n
    _check_sizes(s, t, n)
    unsettled_vars = fixed.undecided_count
    emitted = 0

    if sink is None:
        for _, k, settle_color in _residual_sides(s, t):
            allow = _allow_masks(fixed, settle_color)
            emitted += sum(1 for _ in _iter_subsets(n, k, allow))
    else:
        for cl in _residual_stream(fixed, s, t):
            sink(cl)
            emitted += 1
    return unsettled_vars, emitted


def _residual_sides(s: int, t: int) -> tuple[tuple[bool, int, Color], ...]:
    return ((True, s, Color.COLOR2), (False, t, Color.COLOR1))


def _allow_masks(fixed: EdgeColoring, settle_color: Color) -> list[int]:
    """u may extend a subset containing v iff edge (u,v) does not settle it."""
    n = fixed.n
    full = (1 << n) - 1
    allow = [full & ~(1 << v) for v in range(n)]
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            if fixed.cells[idx] == settle_color:
                allow[i] &= ~(1 << j)
                allow[j] &= ~(1 << i)
            idx += 1
    return allow


def _iter_subsets(n: int, k: int, allow: list[int]) -> Iterator[tuple[int, ...]]:
    """Lexicographic k-subsets whose pairs all stay within the allow masks."""

    def rec(prefix: tuple[int, ...], cand: int, need: int) -> Iterator[tuple[int, ...]]:
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if need == 1:
                yield prefix + (v,)
            else:
                nxt = cand & allow[v]
                if nxt.bit_count() >= need - 1:
                    yield from rec(prefix + (v,), nxt, need - 1)
            if cand.bit_count() < need:
                return

    return rec((), (1 << n) - 1, k)


def _residual_stream(fixed: EdgeColoring, s: int, t: int) -> Iterator[Clause]:
    n = fixed.n
    cells = fixed.cells
    for negative, k, settle_color in _residual_sides(s, t):
        allow = _allow_masks(fixed, settle_color)
        for sub in _iter_subsets(n, k, allow):
            clause: Clause = []
            for a, b in combinations(sub, 2):
                e = edge_index(a, b, n)
                if cells[e - 1] == Color.UNDECIDED:
                    clause.append(-e if negative else e)
            yield clause


def emit_dimacs(source: ClauseSource, out) -> tuple[int, int]:
    """Write the instance as DIMACS CNF; returns (vars, clauses) of the header."""
    soft = source.soft_clauses()
    nvars = source.var_count
    nclauses = source.hard_clause_count() + len(soft)
    out.write(f"p cnf {nvars} {nclauses}\n")
    for cl in source.hard_clauses():
        out.write(" ".join(map(str, cl)) + " 0\n")
    for cl in soft:
        out.write(" ".join(map(str, cl)) + " 0\n")
    return nvars, nclauses


def parse_model(text: str, n: int) -> EdgeColoring:
    """Decode a solver model into a total coloring.

    Accepts "SAT" headers, "v "-prefixed lines, and bare literal lines, all
    0-terminated or not.  A positive edge literal means COLOR1.  Distance
    (z) literals are ignored for reconstruction but checked against the edge
    colors; inconsistencies are reported as warnings via logging.
    """
    values: dict[int, bool] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line in ("SAT", "s SATISFIABLE"):
            continue
        if line.startswith("v "):
            line = line[2:]
        if line.startswith(("c", "s ")):
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                continue
            values[abs(lit)] = lit > 0
    ec = edge_count(n)
    missing = [v for v in range(1, ec + 1) if v not in values]
    if missing:
        raise ParseError(
            f"model is missing {len(missing)} edge literals (first: {missing[0]})"
        )
    cells = bytearray(ec)
    for v in range(1, ec + 1):
        cells[v - 1] = Color.COLOR1 if values[v] else Color.COLOR2
    coloring = EdgeColoring(n, bytes(cells))
    _warn_z_inconsistencies(values, coloring)
    return coloring


def _warn_z_inconsistencies(values: dict[int, bool], coloring: EdgeColoring) -> None:
    n = coloring.n
    ec = edge_count(n)
    for k in range(1, n):
        zv = values.get(ec + k)
        if zv is None:
            continue
        for i in range(n - k):
            expect = Color.COLOR1 if zv else Color.COLOR2
            got = coloring.color(i, i + k)
            if got != expect:
                log.warning(
                    "model z_%d=%s disagrees with edge (%d,%d)=%s",
                    k, zv, i, i + k, got.name,
                )
                break


def model_to_assignment(model: dict[int, bool], n: int, z_mode: ZMode) -> list[int]:
    """Dense literal list (for check_model round-trips and DIMACS v-lines)."""
    total = edge_count(n) + z_mode.z_var_count(n)
    return [v if model.get(v, False) else -v for v in range(1, total + 1)]


def coloring_to_model_text(c: EdgeColoring) -> str:
    """Model text whose parse_model round-trips to `c` (total colorings)."""
    lits = []
    idx = 0
    for i in range(c.n):
        for j in range(i + 1, c.n):
            e = idx + 1
            idx += 1
            lits.append(e if c.cells[e - 1] == Color.COLOR1 else -e)
    return " ".join(map(str, lits)) + " 0\n"


def decode_model_coloring(source: ClauseSource, model: dict[int, bool]) -> EdgeColoring:
    """Coloring named by a model of `source`: fixed cells kept, undecided filled."""
    n = source.n
    cells = bytearray(edge_count(n)) if source.fixed is None else bytearray(source.fixed.cells)
    for idx in range(edge_count(n)):
        if cells[idx] == Color.UNDECIDED:
            val = model.get(idx + 1)
            if val is None:
                raise DomainError(f"model leaves edge variable {idx + 1} unassigned")
            cells[idx] = Color.COLOR1 if val else Color.COLOR2
    return EdgeColoring(n, bytes(cells))
