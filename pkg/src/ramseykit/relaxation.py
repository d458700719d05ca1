"""Relax-and-restart outer loop over the penalty-tracked solver.

Each round runs one solve attempt.  On failure the highest-penalty soft
clauses are removed from the working set (ties broken by lowest clause id)
and a fresh attempt starts; the loop ends with a model, with a hard
refutation, or after the soft set has been relaxed away without success.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cliques import verify_ramsey
from .colorings import EdgeColoring
from .encoder import ClauseSource, decode_model_coloring
from .errors import DomainError
from .solver import Clause, PenaltyLedger, SolveBudget, SolveOutcome, Solver, Status


@dataclass(frozen=True)
class RelaxPolicy:
    """Knobs for the outer loop; drop_fraction is applied per failed round."""

    drop_fraction: float = 0.5
    max_rounds: int = 10
    budget: SolveBudget = field(default_factory=lambda: SolveBudget(max_conflicts=100_000))
    cumulative_penalties: bool = False

    def __post_init__(self):
        if not (0 < self.drop_fraction <= 1):
            raise DomainError("drop_fraction must lie in (0, 1]")
        if self.max_rounds < 1:
            raise DomainError("need at least one round")


@dataclass(frozen=True)
class RelaxRound:
    round_no: int
    status: Status
    conflicts: int
    soft_conflicts: int
    decisions: int
    restarts: int
    active_before: int
    dropped: int
    active_after: int
    kept_fraction: float  # of the original soft set, after this round's drops

    def log_line(self) -> str:
        return (
            f"round={self.round_no} status={self.status.value}"
            f" conflicts={self.conflicts} soft_conflicts={self.soft_conflicts}"
            f" decisions={self.decisions} restarts={self.restarts}"
            f" active={self.active_before} dropped={self.dropped}"
            f" remaining={self.active_after} kept={self.kept_fraction:.3f}"
        )


class FinalStatus:
    MODEL = "model"
    HARD_UNSAT = "hard_unsat"
    TOTALLY_RELAXED_FAILURE = "totally_relaxed_failure"


@dataclass
class RelaxTrace:
    rounds: list[RelaxRound] = field(default_factory=list)
    final: str = FinalStatus.TOTALLY_RELAXED_FAILURE

    def log_lines(self) -> list[str]:
        return [r.log_line() for r in self.rounds] + [f"final={self.final}"]


def pick_victims(
    ledger: PenaltyLedger | dict[int, int],
    active: list[int],
    fraction: float,
) -> list[int]:
    """The ceil(fraction * |active|) clause ids of highest penalty.

    Ties break toward the lowest clause id so runs are reproducible.
    """
    if not (0 < fraction <= 1):
        raise DomainError("fraction must lie in (0, 1]")
    if not active:
        return []
    take = math.ceil(fraction * len(active))
    ranked = sorted(active, key=lambda cid: (-_penalty_of(ledger, cid), cid))
    return ranked[:take]


def _penalty_of(ledger, cid: int) -> int:
    if isinstance(ledger, dict):
        return ledger.get(cid, 0)
    return ledger.get(cid)


def relax_solve(
    hard: ClauseSource,
    soft: list[Clause],
    policy: RelaxPolicy | None = None,
) -> tuple[EdgeColoring | None, RelaxTrace]:
    """Run the relax-and-restart loop; returns (witness coloring or None, trace).

    A returned coloring satisfies every hard clause (and therefore passes a
    from-scratch clique verification, which is asserted before returning).
    """
    if policy is None:
        policy = RelaxPolicy()
    trace = RelaxTrace()
    original = list(range(len(soft)))
    active = list(original)
    carried: dict[int, int] = {cid: 0 for cid in original}

    for round_no in range(1, policy.max_rounds + 1):
        budget = SolveBudget(
            max_conflicts=policy.budget.max_conflicts,
            max_seconds=policy.budget.max_seconds,
            seed=policy.budget.seed + round_no - 1,
        )
        active_clauses = [soft[cid] for cid in active]
        solver = Solver(
            hard,
            active_clauses,
            prefer_vars=hard.z_vars() if hasattr(hard, "z_vars") else (),
            seed=budget.seed,
        )
        outcome = solver.solve(budget)

        penalties = {
            cid: outcome.penalties.get(pos) for pos, cid in enumerate(active)
        }
        if policy.cumulative_penalties:
            for cid in active:
                carried[cid] += penalties[cid]
            penalties = {cid: carried[cid] for cid in active}

        if outcome.status is Status.MODEL:
            _record(trace, round_no, outcome, active, dropped=0, original=original)
            trace.final = FinalStatus.MODEL
            coloring = decode_model_coloring(hard, outcome.model)
            report = verify_ramsey(coloring, hard.s, hard.t)
            if not report.valid:
                raise AssertionError(
                    "solver model failed independent clique verification"
                )
            return coloring, trace
        if outcome.status is Status.HARD_UNSAT:
            _record(trace, round_no, outcome, active, dropped=0, original=original)
            trace.final = FinalStatus.HARD_UNSAT
            return None, trace

        # attempt failed: relax
        if not active:
            _record(trace, round_no, outcome, active, dropped=0, original=original)
            trace.final = FinalStatus.TOTALLY_RELAXED_FAILURE
            return None, trace
        victims = pick_victims(penalties, active, policy.drop_fraction)
        _record(trace, round_no, outcome, active, dropped=len(victims), original=original)
        active = [cid for cid in active if cid not in set(victims)]

    trace.final = FinalStatus.TOTALLY_RELAXED_FAILURE
    return None, trace


def _record(
    trace: RelaxTrace,
    round_no: int,
    outcome: SolveOutcome,
    active: list[int],
    dropped: int,
    original: list[int],
) -> None:
    remaining = len(active) - dropped
    denom = len(original) or 1
    trace.rounds.append(
        RelaxRound(
            round_no=round_no,
            status=outcome.status,
            conflicts=outcome.stats.conflicts,
            soft_conflicts=outcome.stats.soft_conflicts,
            decisions=outcome.stats.decisions,
            restarts=outcome.stats.restarts,
            active_before=len(active),
            dropped=dropped,
            active_after=remaining,
            kept_fraction=remaining / denom,
        )
    )
