"""Direct search over circulant distance vectors, no CNF machinery involved.

A two-coloring satisfying the circulant constraint is determined by the
colors of the distances 1..n-1, so the search walks z_1, z_2, ... in order
(COLOR2 before COLOR1) and prunes a branch the moment the decided distances
already contain a forbidden monochromatic clique.  Deciding distances in
increasing order means every clique among decided distances is fully
decided, so leaves reached by the walk are exactly the valid vectors; each
leaf is still re-checked with the clique verifier as an independent guard.

In symmetric mode z_{n-k} is tied to z_k, halving the free distances.

Exhaustive runs can be split across processes: the tree is partitioned by
the first b decided distances into 2^b independent subtrees whose results
are merged in prefix order, so solutions and counts do not depend on the
worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .cliques import verify_ramsey
from .colorings import Color, ZVector, coloring_from_z
from .errors import DomainError


@dataclass(frozen=True)
class ZSearchResult:
    n: int
    s: int
    t: int
    mode: str  # "full" | "symmetric"
    solutions: tuple[ZVector, ...]
    count: int
    exhaustive: bool
    nodes: int

    def bitstrings(self) -> list[str]:
        return [z.as_bitstring() for z in self.solutions]


def _free_distances(n: int, symmetric: bool) -> list[int]:
    if symmetric:
        return [k for k in range(1, n) if k <= n - k]
    return list(range(1, n))


def _has_clique(dist_color: list[int], n: int, color: int, k: int) -> bool:
    """Is there a k-clique using only decided distances of this color?

    Cliques are translation-invariant, so the minimum vertex is pinned to 0
    and the rest come from {m : color(m) = color} with adjacency through
    distance colors.
    """
    members = 0
    cnt = 0
    for m in range(1, n):
        if dist_color[m] == color:
            members |= 1 << m
            cnt += 1
    if cnt < k - 1:
        return False

    def walk(cand: int, need: int) -> bool:
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if need == 1:
                return True
            nxt = 0
            rest = cand
            while rest:
                u = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if dist_color[u - v] == color:
                    nxt |= 1 << u
            if nxt.bit_count() >= need - 1 and walk(nxt, need - 1):
                return True
            if cand.bit_count() < need:
                return False
        return False

    return walk(members, k - 1)


def _walk_subtree(args: tuple) -> tuple[list[str], int, bool]:
    """DFS below a fixed prefix of the free distances (picklable for pools).

    Returns (solution bitstrings in DFS order, nodes visited, truncated).
    """
    s, t, n, symmetric, want, node_limit, prefix = args
    order = _free_distances(n, symmetric)
    dist_color = [0] * n

    def assign(k: int, color: int) -> None:
        dist_color[k] = color
        if symmetric and n - k != k:
            dist_color[n - k] = color

    def clear(k: int) -> None:
        dist_color[k] = 0
        if symmetric and n - k != k:
            dist_color[n - k] = 0

    # prefix colors are trusted to be pre-checked by the caller
    for pos, color in enumerate(prefix):
        assign(order[pos], color)

    solutions: list[str] = []
    state = {"nodes": 0, "stop": False, "truncated": False}

    def leaf() -> None:
        z = ZVector(
            n,
            tuple(dist_color[k] == Color.COLOR1 for k in range(1, n)),
            symmetric=symmetric,
        )
        if not verify_ramsey(coloring_from_z(z), s, t).valid:
            raise AssertionError("pruned walk reached an invalid leaf")
        solutions.append(z.as_bitstring())
        if want == "first":
            state["stop"] = True

    def dfs(i: int) -> None:
        if state["stop"]:
            return
        if i == len(order):
            leaf()
            return
        k = order[i]
        for color in (Color.COLOR2, Color.COLOR1):
            state["nodes"] += 1
            if node_limit is not None and state["nodes"] > node_limit:
                state["truncated"] = True
                state["stop"] = True
                return
            assign(k, color)
            forbid = s if color == Color.COLOR1 else t
            if not _has_clique(dist_color, n, color, forbid):
                dfs(i + 1)
            clear(k)
            if state["stop"]:
                return

    dfs(len(prefix))
    return solutions, state["nodes"], state["truncated"]


def search_z(
    s: int,
    t: int,
    n: int,
    mode: str = "full",
    want: str = "all",
    node_limit: int | None = None,
    workers: int = 1,
) -> ZSearchResult:
    """Enumerate (or find one of) the valid Z-vectors for (s, t) on K_n.

    workers > 1 splits an exhaustive run over a process pool (want="first"
    stays sequential); node_limit then applies per subtree.
    """
    if n < 2:
        raise DomainError("need n >= 2")
    if mode not in ("full", "symmetric"):
        raise DomainError(f"unknown mode {mode!r}")
    if want not in ("all", "first"):
        raise DomainError(f"want must be 'all' or 'first', got {want!r}")
    symmetric = mode == "symmetric"
    order = _free_distances(n, symmetric)

    if workers > 1 and want == "all" and len(order) > 3:
        bits = min(max(workers - 1, 1).bit_length(), len(order) - 1)
        strings, nodes, truncated = _run_pool(
            s, t, n, symmetric, node_limit, workers, bits
        )
    else:
        strings, nodes, truncated = _walk_subtree(
            (s, t, n, symmetric, want, node_limit, ())
        )

    solutions = tuple(ZVector.from_bitstring(b, symmetric=symmetric) for b in strings)
    if truncated:
        exhaustive = False
    elif want == "first" and solutions:
        # stopped at the first hit; emptiness was not proved
        exhaustive = False
    else:
        exhaustive = True
    return ZSearchResult(
        n=n,
        s=s,
        t=t,
        mode=mode,
        solutions=solutions,
        count=len(solutions),
        exhaustive=exhaustive,
        nodes=nodes,
    )


def _run_pool(
    s: int,
    t: int,
    n: int,
    symmetric: bool,
    node_limit: int | None,
    workers: int,
    bits: int,
) -> tuple[list[str], int, bool]:
    order = _free_distances(n, symmetric)
    dist_color = [0] * n
    tasks = []
    nodes = 0
    # enumerate viable prefixes in DFS order; prune dead ones up front
    for combo in product((Color.COLOR2, Color.COLOR1), repeat=bits):
        ok = True
        for pos, color in enumerate(combo):
            k = order[pos]
            dist_color[k] = color
            if symmetric and n - k != k:
                dist_color[n - k] = color
            nodes += 1
            forbid = s if color == Color.COLOR1 else t
            if _has_clique(dist_color, n, color, forbid):
                ok = False
                break
        decided = pos + 1 if not ok else bits
        for p in range(decided - 1, -1, -1):
            k = order[p]
            dist_color[k] = 0
            if symmetric and n - k != k:
                dist_color[n - k] = 0
        if ok:
            tasks.append((s, t, n, symmetric, "all", node_limit, combo))
    strings: list[str] = []
    truncated = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for sols, sub_nodes, sub_trunc in pool.map(_walk_subtree, tasks):
            strings.extend(sols)
            nodes += sub_nodes
            truncated = truncated or sub_trunc
    return strings, nodes, truncated


def largest_z(
    s: int,
    t: int,
    n_max: int,
    mode: str = "full",
    node_limit: int | None = None,
    workers: int = 1,
) -> tuple[int, int]:
    """Largest n <= n_max with a nonempty exhaustive count, and that count.

    Valid vectors restrict to valid vectors on fewer vertices, so counts are
    nonempty on a prefix of n; the scan stops at the first empty level.
    """
    best = (0, 0)
    for n in range(2, n_max + 1):
        res = search_z(s, t, n, mode=mode, want="all", node_limit=node_limit, workers=workers)
        if not res.exhaustive:
            raise DomainError(
                f"node limit hit at n={n}; raise it for an exhaustive scan"
            )
        if res.count > 0:
            best = (n, res.count)
        else:
            break
    return best
