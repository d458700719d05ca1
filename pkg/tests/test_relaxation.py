from __future__ import annotations

import pytest

import ramseykit as rk
from ramseykit.encoder import ClauseSource, ZMode
from ramseykit.errors import DomainError
from ramseykit.relaxation import FinalStatus, RelaxPolicy, pick_victims, relax_solve
from ramseykit.solver import SolveBudget, Status


def contradiction_fixture(pairs: int = 60):
    """Satisfiable hard clauses (R(3,4) = 9 leaves room on K_6) plus a soft
    set made of repeated contradictory distance units."""
    src = ClauseSource(n=6, s=3, t=4, z_mode=ZMode.full())
    zv = rk.edge_count(6) + 1
    soft: list[list[int]] = []
    for _ in range(pairs):
        soft.append([zv])
        soft.append([-zv])
    return src, soft


def test_pick_victims_by_penalty_then_id():
    assert pick_victims({0: 5, 1: 3, 2: 3, 3: 0}, [0, 1, 2, 3], 0.5) == [0, 1]


def test_pick_victims_whole_set():
    assert pick_victims({i: 0 for i in range(4)}, [0, 1, 2, 3], 1.0) == [0, 1, 2, 3]


def test_pick_victims_pure_id_tiebreak():
    assert pick_victims({i: 0 for i in range(4)}, [0, 1, 2, 3], 0.25) == [0]


def test_pick_victims_empty_and_validation():
    assert pick_victims({}, [], 0.5) == []
    with pytest.raises(DomainError):
        pick_victims({}, [0], 0.0)


def test_model_in_round_one_keeps_all_soft():
    src = ClauseSource(n=5, s=3, t=3, z_mode=ZMode.full())
    policy = RelaxPolicy(
        drop_fraction=0.5, max_rounds=5, budget=SolveBudget(max_conflicts=10_000, seed=3)
    )
    coloring, trace = relax_solve(src, src.soft_clauses(), policy)
    assert coloring is not None
    assert rk.verify_ramsey(coloring, 3, 3).valid
    assert trace.final == FinalStatus.MODEL
    assert len(trace.rounds) == 1
    assert trace.rounds[0].dropped == 0
    assert trace.rounds[0].kept_fraction == 1.0


def test_hard_unsat_short_circuits():
    src = ClauseSource(n=2, s=2, t=2, z_mode=ZMode.full())
    coloring, trace = relax_solve(
        src,
        src.soft_clauses(),
        RelaxPolicy(max_rounds=7, budget=SolveBudget(max_conflicts=1000, seed=0)),
    )
    assert coloring is None
    assert trace.final == FinalStatus.HARD_UNSAT
    assert len(trace.rounds) == 1


def test_hard_unsat_with_soft_present():
    src = ClauseSource(n=6, s=3, t=3, z_mode=ZMode.full())
    coloring, trace = relax_solve(
        src,
        src.soft_clauses(),
        RelaxPolicy(drop_fraction=0.5, max_rounds=8, budget=SolveBudget(max_conflicts=200_000)),
    )
    assert coloring is None
    assert trace.final == FinalStatus.HARD_UNSAT


def test_total_relaxation_round_two_is_plain_sat():
    src, soft = contradiction_fixture()
    policy = RelaxPolicy(
        drop_fraction=1.0, max_rounds=3, budget=SolveBudget(max_conflicts=50, seed=0)
    )
    coloring, trace = relax_solve(src, soft, policy)
    assert trace.rounds[0].status is Status.EXHAUSTED
    assert trace.rounds[0].dropped == len(soft)
    assert trace.rounds[1].status is Status.MODEL
    assert trace.rounds[1].active_before == 0
    assert trace.final == FinalStatus.MODEL
    assert coloring is not None and rk.verify_ramsey(coloring, 3, 4).valid


def test_soft_sets_strictly_decrease():
    src, soft = contradiction_fixture(pairs=30)
    policy = RelaxPolicy(
        drop_fraction=0.3, max_rounds=6, budget=SolveBudget(max_conflicts=20, seed=1)
    )
    coloring, trace = relax_solve(src, soft, policy)
    actives = [r.active_before for r in trace.rounds]
    assert all(a > b for a, b in zip(actives, actives[1:]))
    for r in trace.rounds[:-1]:
        assert r.dropped >= 1
        assert r.active_after == r.active_before - r.dropped


def test_any_round_model_is_verified():
    # drop slowly so the model lands in a later round
    src, soft = contradiction_fixture(pairs=40)
    policy = RelaxPolicy(
        drop_fraction=0.4, max_rounds=10, budget=SolveBudget(max_conflicts=30, seed=2)
    )
    coloring, trace = relax_solve(src, soft, policy)
    if coloring is not None:
        assert rk.verify_ramsey(coloring, 3, 4).valid
        assert trace.final == FinalStatus.MODEL
        assert len(trace.rounds) >= 2


def test_totally_relaxed_failure_vocabulary():
    # unsatisfiable hard set never turns into TOTALLY_RELAXED_FAILURE
    src = ClauseSource(n=6, s=3, t=3, z_mode=ZMode.full())
    _, trace = relax_solve(
        src, [], RelaxPolicy(max_rounds=2, budget=SolveBudget(max_conflicts=500_000))
    )
    assert trace.final == FinalStatus.HARD_UNSAT


def test_trace_log_lines_stable_fields():
    src, soft = contradiction_fixture(pairs=10)
    policy = RelaxPolicy(
        drop_fraction=1.0, max_rounds=2, budget=SolveBudget(max_conflicts=5, seed=0)
    )
    _, trace = relax_solve(src, soft, policy)
    for line in trace.log_lines()[:-1]:
        keys = [tok.split("=")[0] for tok in line.split()]
        assert keys == [
            "round",
            "status",
            "conflicts",
            "soft_conflicts",
            "decisions",
            "restarts",
            "active",
            "dropped",
            "remaining",
            "kept",
        ]
    assert trace.log_lines()[-1].startswith("final=")


def test_policy_validation():
    with pytest.raises(DomainError):
        RelaxPolicy(drop_fraction=0.0)
    with pytest.raises(DomainError):
        RelaxPolicy(max_rounds=0)
