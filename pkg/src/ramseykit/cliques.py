"""Monochromatic clique detection and Ramsey-graph certification.

The search is a recursive bitset walk in strict lexicographic vertex order:
the first clique found is the lexicographically smallest, and enumeration
yields cliques in lexicographic order.  That determinism is load-bearing for
golden tests and for the edit service's stable violation lists, so no pivot
reordering is applied; candidate sets shrink through neighbor-mask
intersection and a popcount bound prunes dead branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colorings import Color, EdgeColoring
from .errors import DomainError, IncompleteColoringError


@dataclass(frozen=True)
class VerificationReport:
    """Verdict for one coloring against the (s, t) clique constraints."""

    valid: bool
    s: int
    t: int
    n: int
    violations: tuple[tuple[Color, tuple[int, ...]], ...] = ()
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "s": self.s,
            "t": self.t,
            "n": self.n,
            "truncated": self.truncated,
            "violations": [
                {"color": int(color), "vertices": list(vs)} for color, vs in self.violations
            ],
        }


def _require_total(c: EdgeColoring) -> None:
    if not c.is_total:
        raise IncompleteColoringError(
            f"coloring has {c.undecided_count} undecided edges; decide them first"
        )


def find_monochromatic_clique(
    c: EdgeColoring, k: int, color: Color
) -> tuple[int, ...] | None:
    """First (lexicographically smallest) k-clique entirely in `color`, if any."""
    _require_total(c)
    if k < 1:
        raise DomainError("clique size must be >= 1")
    if k > c.n:
        return None
    if k == 1:
        return (0,)
    masks = c.neighbor_masks(color)
    full = (1 << c.n) - 1

    def walk(cand: int, need: int) -> list[int] | None:
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if need == 1:
                return [v]
            nxt = cand & masks[v]
            if nxt.bit_count() >= need - 1:
                rest = walk(nxt, need - 1)
                if rest is not None:
                    rest.insert(0, v)
                    return rest
            if cand.bit_count() < need:
                return None
        return None

    found = walk(full, k)
    return tuple(found) if found is not None else None


def _enumerate_cliques(
    c: EdgeColoring, k: int, color: Color, limit: int
) -> tuple[list[tuple[int, ...]], bool]:
    """Up to `limit` k-cliques in `color`, lexicographic; returns (cliques, more_exist)."""
    if k > c.n or limit < 1:
        more = k <= c.n and find_monochromatic_clique(c, k, color) is not None
        return [], more
    if k == 1:
        out = [(v,) for v in range(min(c.n, limit))]
        return out, c.n > limit
    masks = c.neighbor_masks(color)
    full = (1 << c.n) - 1
    found: list[tuple[int, ...]] = []
    overflow = False

    def walk(prefix: list[int], cand: int, need: int) -> bool:
        nonlocal overflow
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if need == 1:
                if len(found) >= limit:
                    overflow = True
                    return False
                found.append(tuple(prefix + [v]))
            else:
                nxt = cand & masks[v]
                if nxt.bit_count() >= need - 1:
                    prefix.append(v)
                    if not walk(prefix, nxt, need - 1):
                        prefix.pop()
                        return False
                    prefix.pop()
            if cand.bit_count() < need:
                return True
        return True

    walk([], full, k)
    return found, overflow


def verify_ramsey(c: EdgeColoring, s: int, t: int) -> VerificationReport:
    """Certify that `c` has no COLOR1 K_s and no COLOR2 K_t.

    On failure the report carries one witness clique per offending color.
    """
    _require_total(c)
    if s < 1 or t < 1:
        raise DomainError("clique sizes must be >= 1")
    violations: list[tuple[Color, tuple[int, ...]]] = []
    hit1 = find_monochromatic_clique(c, s, Color.COLOR1)
    if hit1 is not None:
        violations.append((Color.COLOR1, hit1))
    hit2 = find_monochromatic_clique(c, t, Color.COLOR2)
    if hit2 is not None:
        violations.append((Color.COLOR2, hit2))
    return VerificationReport(
        valid=not violations, s=s, t=t, n=c.n, violations=tuple(violations)
    )


def enumerate_violations(c: EdgeColoring, s: int, t: int, limit: int) -> VerificationReport:
    """All violating cliques up to `limit` per color, lexicographic order."""
    _require_total(c)
    if limit < 1:
        raise DomainError("limit must be >= 1")
    ones, more1 = _enumerate_cliques(c, s, Color.COLOR1, limit)
    twos, more2 = _enumerate_cliques(c, t, Color.COLOR2, limit)
    violations = tuple((Color.COLOR1, v) for v in ones) + tuple(
        (Color.COLOR2, v) for v in twos
    )
    return VerificationReport(
        valid=not violations and not (more1 or more2),
        s=s,
        t=t,
        n=c.n,
        violations=violations,
        truncated=more1 or more2,
    )
