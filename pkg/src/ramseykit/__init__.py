"""Toolkit for finding, extending, verifying and editing Ramsey-graph witnesses."""

from importlib import resources

from .cliques import VerificationReport, enumerate_violations, find_monochromatic_clique, verify_ramsey
from .colorings import (
    Color,
    EdgeColoring,
    ZVector,
    coloring_from_z,
    edge_count,
    edge_index,
    emit_adjacency_list,
    emit_triangle_matrix,
    flip_edge,
    induced_subcoloring,
    parse_adjacency_list,
    parse_triangle_matrix,
)
from .encoder import (
    ClauseSource,
    PartitionFn,
    ZMode,
    band_partition,
    emit_dimacs,
    parse_model,
    ramsey_counts,
    residual_clauses,
    stream_ramsey_clauses,
    stream_z_clauses,
    z_clause_count,
)
from .extension import extend, unsettled_counts
from .relaxation import RelaxPolicy, RelaxTrace, pick_victims, relax_solve
from .solver import PenaltyLedger, SolveBudget, SolveOutcome, Status, check_model, solve
from .zsearch import ZSearchResult, largest_z, search_z

__version__ = "0.1.0"


def bundled_witness_text() -> str:
    """Adjacency list of the bundled 57-vertex (4,8) witness."""
    return (
        resources.files("ramseykit.data").joinpath("r_4_8_57.adj").read_text("utf-8")
    )


def bundled_witness() -> EdgeColoring:
    return parse_adjacency_list(bundled_witness_text())
