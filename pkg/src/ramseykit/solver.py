"""Conflict-driven SAT search with soft clauses whose conflicts are tolerated.

Hard clauses get standard CDCL treatment: two-literal watches, 1UIP conflict
analysis, activity-driven decisions with phase saving, Luby restarts.  Soft
clauses propagate like hard ones while active, but a conflict they cause is
not resolved — the clause's penalty is bumped, the clause is deactivated for
the remainder of the attempt, and the search carries on.

Soundness bookkeeping: a clause learned from an analysis whose cut contains
soft reasons is itself stored as soft ("tainted"), carrying the set of
original soft clauses it derives from.  Hard-learned clauses therefore follow
from the hard set alone, and HARD_UNSAT is reported only for a refutation
with a pure-hard support chain.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

Clause = list[int]


@dataclass(frozen=True)
class SolveBudget:
    """Bounds for one attempt; at least one of conflicts/seconds must be finite."""

    max_conflicts: int | None = None
    max_seconds: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_conflicts is None and self.max_seconds is None:
            raise DomainError("budget needs a finite conflict or time bound")


class Status(Enum):
    MODEL = "model"
    HARD_UNSAT = "hard_unsat"
    EXHAUSTED = "exhausted"


class PenaltyLedger:
    """Per-soft-clause conflict counters; counters only grow within an attempt."""

    def __init__(self, size: int):
        self._counts = [0] * size

    def bump(self, soft_id: int) -> None:
        self._counts[soft_id] += 1

    def get(self, soft_id: int) -> int:
        return self._counts[soft_id]

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self._counts)

    def dominates(self, earlier: Sequence[int]) -> bool:
        return all(a >= b for a, b in zip(self._counts, earlier, strict=True))

    def __len__(self) -> int:
        return len(self._counts)


@dataclass
class SolveStats:
    conflicts: int = 0
    soft_conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0


@dataclass
class SolveOutcome:
    status: Status
    model: dict[int, bool] | None
    penalties: PenaltyLedger
    stats: SolveStats


def _luby(i: int) -> int:
    """i-th element (1-based) of the Luby restart sequence."""
    k = 1
    while (1 << (k + 1)) - 1 <= i:
        k += 1
    while (1 << k) - 1 != i:
        i = i - (1 << (k - 1)) + 1
        k = 1
        while (1 << (k + 1)) - 1 <= i:
            k += 1
    return 1 << (k - 1)


class _Cl:
    __slots__ = ("lits", "sources", "active")

    def __init__(self, lits: Clause, sources: frozenset[int]):
        self.lits = lits
        self.sources = sources  # empty = hard; original soft carry their own id
        self.active = True


def _iter_hard(hard) -> Iterator[Clause]:
    if hasattr(hard, "hard_clauses"):
        return hard.hard_clauses()
    return iter(hard)


class Solver:
    """One solve attempt over a fixed clause set.  Deterministic given the seed."""

    RESTART_UNIT = 100
    VAR_DECAY = 0.95

    def __init__(
        self,
        hard: Iterable[Clause],
        soft: Sequence[Clause] = (),
        var_count: int | None = None,
        prefer_vars: Iterable[int] = (),
        seed: int = 0,
    ):
        hard_list = [list(c) for c in _iter_hard(hard)]
        soft_list = [list(c) for c in soft]
        if var_count is None:
            if hasattr(hard, "var_count"):
                var_count = hard.var_count
            else:
                var_count = max(
                    (abs(l) for c in hard_list + soft_list for l in c), default=0
                )
        self.nvars = var_count
        for c in hard_list + soft_list:
            for l in c:
                if l == 0 or abs(l) > self.nvars:
                    raise DomainError(f"literal {l} out of range 1..{self.nvars}")

        self.ledger = PenaltyLedger(len(soft_list))
        self.stats = SolveStats()

        self.clauses: list[_Cl] = []
        self.watches: dict[int, list[int]] = {}
        self.hard_unsat_now = False
        for c in hard_list:
            self._add_clause(c, frozenset())
        self.soft_clause_ids: list[int] = []
        for i, c in enumerate(soft_list):
            self.soft_clause_ids.append(len(self.clauses))
            self._add_clause(c, frozenset((i,)))

        V = self.nvars
        self.assign = [0] * (V + 1)  # 0 unassigned, 1 true, -1 false
        self.level = [0] * (V + 1)
        self.reason: list[int | None] = [None] * (V + 1)
        self.l0_hard = [False] * (V + 1)  # level-0 assignment has pure-hard support
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.phase = [False] * (V + 1)
        rng = random.Random(seed)
        self.activity = [0.0] + [rng.random() * 1e-6 for _ in range(V)]
        self.var_inc = 1.0
        self.prefer = sorted(set(prefer_vars))
        for v in self.prefer:
            if not (1 <= v <= V):
                raise DomainError(f"preferred variable {v} out of range")

    # ---------- clause plumbing ----------

    def _add_clause(self, lits: Clause, sources: frozenset[int]) -> int | None:
        idx = len(self.clauses)
        cl = _Cl(lits, sources)
        self.clauses.append(cl)
        if not lits:
            if sources:
                cl.active = False
                self._penalize([idx])
            else:
                self.hard_unsat_now = True
            return idx
        if len(lits) >= 2:
            self._watch(lits[0], idx)
            self._watch(lits[1], idx)
        return idx

    def _watch(self, lit: int, idx: int) -> None:
        self.watches.setdefault(lit, []).append(idx)

    def _penalize(self, clause_ids: Iterable[int]) -> None:
        seen: set[int] = set()
        for ci in clause_ids:
            seen |= self.clauses[ci].sources
        for sid in sorted(seen):
            self.ledger.bump(sid)

    # ---------- assignment plumbing ----------

    def _value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        return v if lit > 0 else -v

    def _enqueue(self, lit: int, reason_idx: int | None) -> None:
        v = abs(lit)
        self.assign[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason_idx
        if not self.trail_lim:
            self.l0_hard[v] = self._pure_hard_support(lit, reason_idx)
        self.trail.append(lit)

    def _pure_hard_support(self, lit: int, reason_idx: int | None) -> bool:
        if reason_idx is None:
            return True
        cl = self.clauses[reason_idx]
        if cl.sources:
            return False
        return all(self.l0_hard[abs(q)] for q in cl.lits if q != lit)

    def _backjump(self, target_level: int) -> None:
        while len(self.trail_lim) > target_level:
            lim = self.trail_lim[-1]
            while len(self.trail) > lim:
                lit = self.trail.pop()
                v = abs(lit)
                self.phase[v] = lit > 0
                self.assign[v] = 0
                self.reason[v] = None
            self.trail_lim.pop()
        self.qhead = min(self.qhead, len(self.trail))

    # ---------- propagation ----------

    def _propagate(self) -> int | None:
        """Propagate to fixpoint; returns a falsified *hard* clause index or None.

        Falsified soft clauses never surface as conflicts: they are penalized,
        deactivated, and skipped on the spot.
        """
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            self.stats.propagations += 1
            false_lit = -lit
            wl = self.watches.get(false_lit)
            if not wl:
                continue
            i = 0
            while i < len(wl):
                ci = wl[i]
                cl = self.clauses[ci]
                if not cl.active:
                    wl[i] = wl[-1]
                    wl.pop()
                    continue
                lits = cl.lits
                # normalize: watched lits sit at positions 0 and 1
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], lits[0]
                other = lits[0]
                if self._value(other) == 1:
                    i += 1
                    continue
                moved = False
                for j in range(2, len(lits)):
                    if self._value(lits[j]) != -1:
                        lits[1], lits[j] = lits[j], lits[1]
                        self._watch(lits[1], ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        moved = True
                        break
                if moved:
                    continue
                # clause is unit or falsified under the watch
                if self._value(other) == 0:
                    self._enqueue(other, ci)
                    i += 1
                    continue
                # falsified
                if cl.sources:
                    self.stats.soft_conflicts += 1
                    self._penalize([ci])
                    cl.active = False
                    wl[i] = wl[-1]
                    wl.pop()
                    continue
                return ci
        return None

    # ---------- conflict analysis ----------

    def _analyze(self, confl_idx: int) -> tuple[Clause, int, frozenset[int], list[int]]:
        """1UIP resolution.  Returns (learnt, backjump_level, sources, implicated)."""
        current = len(self.trail_lim)
        seen = bytearray(self.nvars + 1)
        learnt: Clause = [0]
        to_clear: list[int] = []
        sources: set[int] = set()
        implicated: list[int] = []
        path = 0
        p_lit = 0
        idx = len(self.trail) - 1
        ci = confl_idx
        while True:
            cl = self.clauses[ci]
            if cl.sources:
                implicated.append(ci)
                sources |= cl.sources
            for q in cl.lits:
                if q == p_lit:
                    continue
                v = abs(q)
                if seen[v]:
                    continue
                if self.level[v] > 0:
                    seen[v] = 1
                    to_clear.append(v)
                    self._bump_var(v)
                    if self.level[v] == current:
                        path += 1
                    else:
                        learnt.append(q)
                elif not self.l0_hard[v]:
                    # level-0 literal with soft support cannot be dropped
                    seen[v] = 1
                    to_clear.append(v)
                    learnt.append(q)
            while not seen[abs(self.trail[idx])] or self.level[abs(self.trail[idx])] != current:
                idx -= 1
            p_lit = self.trail[idx]
            idx -= 1
            v = abs(p_lit)
            seen[v] = 0
            path -= 1
            if path == 0:
                break
            ci = self.reason[v]  # non-decision by 1UIP invariant
        learnt[0] = -p_lit
        bj = 0
        if len(learnt) > 1:
            # put a deepest literal second so the watches stay healthy
            best = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            bj = self.level[abs(learnt[1])]
        for v in to_clear:
            seen[v] = 0
        return learnt, bj, frozenset(sources), implicated

    def _bump_var(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            scale = 1e-100
            for u in range(1, self.nvars + 1):
                self.activity[u] *= scale
            self.var_inc *= scale

    def _soft_support_frontier(self, confl_idx: int) -> list[int]:
        """Nearest soft/tainted clauses supporting a level-0 hard conflict."""
        out: list[int] = []
        seen_vars = set()
        stack = [q for q in self.clauses[confl_idx].lits]
        if self.clauses[confl_idx].sources:
            out.append(confl_idx)
        while stack:
            lit = stack.pop()
            v = abs(lit)
            if v in seen_vars:
                continue
            seen_vars.add(v)
            ri = self.reason[v]
            if ri is None:
                continue
            cl = self.clauses[ri]
            if cl.sources:
                if ri not in out:
                    out.append(ri)
            else:
                stack.extend(q for q in cl.lits if abs(q) != v)
        return out

    # ---------- level-0 (re)construction ----------

    def _rebuild_level0(self) -> Status | None:
        """Clear the trail and re-derive level 0 from active unit clauses."""
        while True:
            self.trail.clear()
            self.trail_lim.clear()
            self.qhead = 0
            for v in range(1, self.nvars + 1):
                self.assign[v] = 0
                self.reason[v] = None
                self.l0_hard[v] = False
            retry = False
            for ci, cl in enumerate(self.clauses):
                if not cl.active or len(cl.lits) != 1:
                    continue
                lit = cl.lits[0]
                val = self._value(lit)
                if val == 1:
                    continue
                if val == 0:
                    self._enqueue(lit, ci)
                    continue
                # contradiction among units
                if self._handle_l0_conflict(ci) is Status.HARD_UNSAT:
                    return Status.HARD_UNSAT
                if self._exhausted():
                    return Status.EXHAUSTED
                retry = True
                break
            if retry:
                continue
            confl = self._propagate()
            if confl is None:
                return None
            if self._handle_l0_conflict(confl) is Status.HARD_UNSAT:
                return Status.HARD_UNSAT
            if self._exhausted():
                return Status.EXHAUSTED

    def _handle_l0_conflict(self, confl_idx: int) -> Status | None:
        """Deactivate the soft frontier of a level-0 conflict, or report unsat."""
        frontier = self._soft_support_frontier(confl_idx)
        if not frontier:
            return Status.HARD_UNSAT
        self.stats.soft_conflicts += 1
        self._penalize(frontier)
        for ci in frontier:
            self.clauses[ci].active = False
        return None

    # ---------- decisions ----------

    def _decide(self) -> int | None:
        v = self._pick(self.prefer)
        if v is None:
            v = self._pick(range(1, self.nvars + 1))
        if v is None:
            return None
        self.stats.decisions += 1
        self.trail_lim.append(len(self.trail))
        lit = v if self.phase[v] else -v
        self._enqueue(lit, None)
        return v

    def _pick(self, candidates: Iterable[int]) -> int | None:
        best = None
        best_act = -1.0
        for v in candidates:
            if self.assign[v] == 0 and self.activity[v] > best_act:
                best = v
                best_act = self.activity[v]
        return best

    # ---------- main loop ----------

    def _exhausted(self) -> bool:
        b = self._budget
        if b.max_conflicts is not None and (
            self.stats.conflicts + self.stats.soft_conflicts >= b.max_conflicts
        ):
            return True
        return self._deadline is not None and time.monotonic() >= self._deadline

    def solve(self, budget: SolveBudget) -> SolveOutcome:
        self._budget = budget
        self._deadline = (
            time.monotonic() + budget.max_seconds if budget.max_seconds is not None else None
        )

        def out(status: Status, model: dict[int, bool] | None = None) -> SolveOutcome:
            return SolveOutcome(status, model, self.ledger, self.stats)

        exhausted = self._exhausted

        if self.hard_unsat_now:
            return out(Status.HARD_UNSAT)
        if exhausted():
            return out(Status.EXHAUSTED)
        status0 = self._rebuild_level0()
        if status0 is Status.HARD_UNSAT:
            return out(Status.HARD_UNSAT)
        if status0 is Status.EXHAUSTED:
            return out(Status.EXHAUSTED)

        conflicts_at_restart = 0
        restart_budget = self.RESTART_UNIT * _luby(1)

        while True:
            confl = self._propagate()
            if confl is not None:
                if len(self.trail_lim) == 0:
                    status = self._handle_l0_conflict(confl)
                    if status is Status.HARD_UNSAT:
                        return out(Status.HARD_UNSAT)
                    if exhausted():
                        return out(Status.EXHAUSTED)
                    status = self._rebuild_level0()
                    if status is not None:
                        return out(status)
                    continue
                self.stats.conflicts += 1
                learnt, bj, sources, implicated = self._analyze(confl)
                if implicated:
                    self._penalize(implicated)
                self.var_inc /= self.VAR_DECAY
                self._backjump(bj)
                ci = self._add_clause(learnt, sources)
                if len(learnt) == 1 and bj == 0:
                    # learned unit: re-derive level 0 so support flags stay exact
                    status = self._rebuild_level0()
                    if status is not None:
                        return out(status)
                else:
                    self._enqueue(learnt[0], ci)
                conflicts_at_restart += 1
                if exhausted():
                    return out(Status.EXHAUSTED)
                if conflicts_at_restart >= restart_budget:
                    self.stats.restarts += 1
                    conflicts_at_restart = 0
                    restart_budget = self.RESTART_UNIT * _luby(self.stats.restarts + 1)
                    self._backjump(0)
                continue
            if exhausted():
                return out(Status.EXHAUSTED)
            if len(self.trail) == self.nvars:
                self._audit_soft()
                model = {v: self.assign[v] > 0 for v in range(1, self.nvars + 1)}
                return out(Status.MODEL, model)
            self._decide()

    def _audit_soft(self) -> None:
        # With exhaustive watches no active soft clause can be falsified here;
        # kept as a defensive sweep so MODEL's contract survives any watch bug.
        for ci, cl in enumerate(self.clauses):
            if cl.active and cl.sources and all(self._value(l) == -1 for l in cl.lits):
                self.stats.soft_conflicts += 1
                self._penalize([ci])
                cl.active = False

    def active_soft_ids(self) -> list[int]:
        """Original soft clauses still active (not deactivated this attempt)."""
        return [
            sid
            for sid, ci in enumerate(self.soft_clause_ids)
            if self.clauses[ci].active
        ]


def solve(
    hard,
    soft: Sequence[Clause] = (),
    budget: SolveBudget | None = None,
    prefer_vars: Iterable[int] | None = None,
) -> SolveOutcome:
    """Solve hard ∧ soft with penalty-tolerated soft conflicts.

    `hard` is a ClauseSource-like object (``hard_clauses()``/``var_count``)
    or a plain iterable of clauses.  A MODEL satisfies every hard clause and
    every soft clause still active at the end of the attempt.
    """
    if budget is None:
        budget = SolveBudget(max_conflicts=1_000_000)
    if prefer_vars is None and hasattr(hard, "z_vars"):
        prefer_vars = hard.z_vars()
    solver = Solver(hard, soft, prefer_vars=prefer_vars or (), seed=budget.seed)
    return solver.solve(budget)


def check_model(hard, assignment) -> bool:
    """True iff every streamed hard clause is satisfied; memory stays O(vars).

    `assignment` may be a dict var->bool or a sequence of nonzero literals.
    """
    if isinstance(assignment, dict):
        truth = assignment
    else:
        truth = {abs(l): l > 0 for l in assignment if l != 0}
    for clause in _iter_hard(hard):
        for lit in clause:
            val = truth.get(abs(lit))
            if val is not None and val == (lit > 0):
                break
        else:
            return False
    return True
