from __future__ import annotations

import itertools
import random

import pytest

import ramseykit as rk
from ramseykit.encoder import ClauseSource, ZMode, decode_model_coloring
from ramseykit.errors import DomainError
from ramseykit.solver import (
    PenaltyLedger,
    SolveBudget,
    Status,
    check_model,
    solve,
)


def exhaustive_ramsey_sat(s: int, t: int, n: int) -> bool:
    """Oracle: enumerate every coloring of K_n as an edge bitmask."""
    e = rk.edge_count(n)
    pairs = list(itertools.combinations(range(n), 2))
    at = {p: i for i, p in enumerate(pairs)}
    smasks = [
        sum(1 << at[p] for p in itertools.combinations(sub, 2))
        for sub in itertools.combinations(range(n), s)
    ]
    tmasks = [
        sum(1 << at[p] for p in itertools.combinations(sub, 2))
        for sub in itertools.combinations(range(n), t)
    ]
    for m in range(1 << e):
        if any(m & sm == sm for sm in smasks):
            continue
        if any(m & tm == 0 for tm in tmasks):
            continue
        return True
    return False


def test_unit_contradiction_is_hard_unsat():
    out = solve([[1], [-1]], budget=SolveBudget(max_conflicts=10))
    assert out.status is Status.HARD_UNSAT


def test_budget_zero_exhausts_immediately():
    out = solve([[1, 2]], budget=SolveBudget(max_conflicts=0))
    assert out.status is Status.EXHAUSTED


def test_budget_requires_a_bound():
    with pytest.raises(DomainError):
        SolveBudget()


def test_literal_out_of_range_rejected():
    from ramseykit.solver import Solver

    with pytest.raises(DomainError):
        Solver([[1, 5]], var_count=3)
    # var_count from a source is authoritative
    src = ClauseSource(n=3, s=3, t=3)
    with pytest.raises(DomainError):
        solve(src, soft=[[99]], budget=SolveBudget(max_conflicts=10))


def test_z5_model_satisfies_all_soft():
    src = ClauseSource(n=5, s=3, t=3, z_mode=ZMode.full())
    soft = src.soft_clauses()
    out = solve(src, soft, budget=SolveBudget(max_conflicts=10_000, seed=1))
    assert out.status is Status.MODEL
    coloring = decode_model_coloring(src, out.model)
    assert rk.verify_ramsey(coloring, 3, 3).valid
    for clause in soft:
        assert any(out.model[abs(l)] == (l > 0) for l in clause)
    # the witness is genuinely circulant
    for i in range(5):
        for j in range(i + 1, 5):
            assert coloring.color(i, j) == coloring.color(0, j - i)


def test_z6_is_hard_unsat():
    # R(3,3) = 6: the hard clauses alone are contradictory
    src = ClauseSource(n=6, s=3, t=3, z_mode=ZMode.full())
    out = solve(src, src.soft_clauses(), budget=SolveBudget(max_conflicts=100_000))
    assert out.status is Status.HARD_UNSAT


def test_agreement_with_exhaustive_enumeration_subset():
    for s, t, n in [(3, 3, 5), (3, 3, 6), (2, 3, 4), (3, 4, 6), (4, 4, 6), (2, 2, 2)]:
        src = ClauseSource(n=n, s=s, t=t)
        out = solve(src, budget=SolveBudget(max_conflicts=100_000))
        assert out.status is not Status.EXHAUSTED
        assert (out.status is Status.MODEL) == exhaustive_ramsey_sat(s, t, n)
        if out.status is Status.MODEL:
            assert check_model(src, out.model)
            coloring = decode_model_coloring(src, out.model)
            assert rk.verify_ramsey(coloring, s, t).valid


def test_determinism_same_seed():
    src = ClauseSource(n=6, s=3, t=4, z_mode=ZMode.full())
    soft = src.soft_clauses()
    runs = [
        solve(src, soft, budget=SolveBudget(max_conflicts=50_000, seed=7))
        for _ in range(2)
    ]
    assert runs[0].status == runs[1].status
    assert runs[0].model == runs[1].model
    assert runs[0].stats == runs[1].stats
    assert runs[0].penalties.snapshot() == runs[1].penalties.snapshot()


def test_penalty_ledger_monotone_and_dominates():
    led = PenaltyLedger(3)
    early = led.snapshot()
    led.bump(1)
    led.bump(1)
    led.bump(2)
    late = led.snapshot()
    assert led.dominates(early)
    assert late == (0, 2, 1)
    assert all(a >= b for a, b in zip(late, early))


def test_soft_conflicts_penalize_and_deactivate():
    # satisfiable hard clauses; soft units force z one way then the other
    src = ClauseSource(n=4, s=3, t=3, z_mode=ZMode.full())
    zv = rk.edge_count(4) + 1
    soft = [[zv], [-zv]]
    out = solve(src, soft, budget=SolveBudget(max_conflicts=1000, seed=0))
    assert out.status is Status.MODEL
    assert sum(out.penalties.snapshot()) >= 1


def test_check_model_examples(witness):
    src = ClauseSource(n=3, s=3, t=3)
    assert check_model(src, [1, 2, 3]) is False  # all-COLOR1 violates the negative clause
    assert check_model(src, [1, -2, -3]) is True
    # a solver model always re-validates against its own source
    out = solve(src, budget=SolveBudget(max_conflicts=100))
    assert out.status is Status.MODEL and check_model(src, out.model)


@pytest.mark.slow
def test_check_model_witness_full_instance(witness):
    # streams all C(57,4) + C(57,8) clauses; ~20 minutes of pure iteration
    from ramseykit.encoder import coloring_to_model_text

    src = ClauseSource(n=57, s=4, t=8)
    lits = [int(tok) for tok in coloring_to_model_text(witness).split() if tok != "0"]
    assert check_model(src, lits) is True
