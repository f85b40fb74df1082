"""Finite stuquandles, stuck link colorings and RNA arc-diagram invariants."""

from .algebra import (
    AffineParams,
    AxiomReport,
    FiniteStuquandle,
    affine,
    are_isomorphic,
    check_axioms,
    count_all,
    enumerate_affine,
    enumerate_all,
    load_stuquandle,
    make_affine,
    parse_block_matrix,
    serialize_block_matrix,
    shipped,
    shipped_stuquandles,
)
from .coloring import (
    brute_force_count,
    constraints,
    count_colorings,
    list_colorings,
    presentation,
    simplify,
)
from .diagram import (
    Crossing,
    CrossingKind,
    StuckDiagram,
    braid_closure,
    fixture,
    fixtures,
    move_pairs,
    signed_sticking_number,
    validate,
)
from .rna import ArcDiagram, parse_arc_diagram, rna_invariant, to_stuck_diagram

__all__ = [name for name in dir() if not name.startswith("_")]
