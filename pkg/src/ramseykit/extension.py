"""Grow a larger witness from a smaller one by solving only the new edges.

The base coloring is pinned on vertices 0..m-1, the remaining edges stay
undecided, and the solver sees the residual Ramsey clauses as hard
constraints plus the circulant clauses touching at least one undecided edge
as the soft set, relaxed per the usual loop.
"""

from __future__ import annotations

from .cliques import verify_ramsey
from .colorings import EdgeColoring, edge_count, edge_index
from .encoder import ClauseSource, ZMode, residual_clauses
from .errors import DomainError, PreconditionError
from .relaxation import RelaxPolicy, RelaxTrace, relax_solve


def embed_base(base: EdgeColoring, n_target: int) -> EdgeColoring:
    """Partial coloring on K_{n_target} that fixes `base` on the prefix."""
    if n_target < base.n:
        raise DomainError(f"target n={n_target} smaller than base n={base.n}")
    cells = bytearray(edge_count(n_target))
    for i in range(base.n):
        for j in range(i + 1, base.n):
            cells[edge_index(i, j, n_target) - 1] = base.color(i, j)
    return EdgeColoring(n_target, bytes(cells))


def residual_source(base: EdgeColoring, s: int, t: int, n_target: int) -> ClauseSource:
    return ClauseSource(
        n=n_target, s=s, t=t, z_mode=ZMode.full(), fixed=embed_base(base, n_target)
    )


def unsettled_counts(
    base: EdgeColoring, s: int, t: int, n_target: int
) -> tuple[int, int]:
    """(undecided edge variables, surviving Ramsey clauses) without solving."""
    return residual_clauses(embed_base(base, n_target), s, t)


def extend(
    base: EdgeColoring,
    s: int,
    t: int,
    n_target: int,
    policy: RelaxPolicy | None = None,
    base_params: tuple[int, int] | None = None,
) -> tuple[EdgeColoring | None, RelaxTrace]:
    """Search for an (s, t)-witness on K_{n_target} extending `base`.

    The base must verify against `base_params` (defaults to (s, t); a base
    valid for a stricter pair such as (s, t-1) passes either way).  Any
    returned coloring restricts to the base byte-for-byte.
    """
    if base.n >= n_target:
        raise DomainError("extension needs n_target > base.n")
    check_s, check_t = base_params if base_params is not None else (s, t)
    report = verify_ramsey(base, check_s, check_t)
    if not report.valid:
        raise PreconditionError(
            f"base is not a valid ({check_s},{check_t})-coloring: "
            f"{[(int(c), list(v)) for c, v in report.violations]}"
        )
    source = residual_source(base, s, t, n_target)
    soft = source.soft_clauses()
    coloring, trace = relax_solve(source, soft, policy)
    if coloring is not None:
        _assert_prefix(coloring, base)
    return coloring, trace


def _assert_prefix(coloring: EdgeColoring, base: EdgeColoring) -> None:
    for i in range(base.n):
        for j in range(i + 1, base.n):
            if coloring.color(i, j) != base.color(i, j):
                raise AssertionError(f"extension mutated fixed edge ({i},{j})")
