from __future__ import annotations

import pytest

import ramseykit as rk


@pytest.fixture(scope="session")
def witness_text() -> str:
    return rk.bundled_witness_text()


@pytest.fixture(scope="session")
def witness(witness_text) -> rk.EdgeColoring:
    return rk.parse_adjacency_list(witness_text)


@pytest.fixture(scope="session")
def base48(witness) -> rk.EdgeColoring:
    return rk.induced_subcoloring(witness, 48)


@pytest.fixture(scope="session")
def circulant_335() -> rk.EdgeColoring:
    return rk.coloring_from_z(rk.ZVector.total(5, [True, False, False, True]))
