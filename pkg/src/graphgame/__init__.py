"""Exact solving and strategy verification for edge-colouring score games.

Two players alternately colour edges of a shared base graph (red for the
first player, blue for the second, with configurable per-round move quotas).
When every edge is coloured, each colour class is scored — largest clique,
largest star, captured vertices, or largest colex-graph embedding — and the
pair of scores decides the winner.  This package computes exact outcomes by
layered retrograde analysis over isomorphism classes, and machine-checks
hand-crafted blocking strategies by exhausting every opposing line.
"""

from .board import (
    CapacityError,
    ColoredBoard,
    EdgeId,
    EdgeState,
    FormatError,
    GameKind,
    GameSpec,
    IllegalMoveError,
    Player,
    apply_move,
    board_from_edges,
    board_from_text,
    board_to_text,
    colex_board,
    colex_index,
    colex_order,
    complete_board,
    decode,
    edge_count,
    edge_endpoints,
    encode,
    load_base_graph,
)
from .canonical import (
    CanonicalResult,
    automorphisms,
    canonical_form,
    canonical_full,
    edge_orbits,
    is_isomorphic,
    relabel,
)
from .generator import Layer, build_layers, layer_sizes, mover_at, red_quota
from .report import TableRow, compute_row, compute_table, render_figure, write_csv
from .scoring import (
    Outcome,
    clique_score,
    colex_score,
    decode_objective,
    objective,
    score_pair,
    star_score,
    vc_score,
    winner,
)
from .solver import (
    SolveResult,
    best_move,
    naive_minimax,
    solve,
    solve_with_cache,
    verify_vc_mirror,
)
from .strategies import (
    STRATEGIES,
    Strategy,
    StrategyError,
    StrategyMemory,
    StrategyReport,
    Trace,
    bob12_respond,
    bob13_respond,
    verify_strategy,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalResult",
    "CapacityError",
    "ColoredBoard",
    "EdgeId",
    "EdgeState",
    "FormatError",
    "GameKind",
    "GameSpec",
    "IllegalMoveError",
    "Layer",
    "Outcome",
    "Player",
    "STRATEGIES",
    "SolveResult",
    "Strategy",
    "StrategyError",
    "StrategyMemory",
    "StrategyReport",
    "TableRow",
    "Trace",
    "apply_move",
    "automorphisms",
    "best_move",
    "board_from_edges",
    "board_from_text",
    "board_to_text",
    "bob12_respond",
    "bob13_respond",
    "build_layers",
    "canonical_form",
    "canonical_full",
    "clique_score",
    "colex_board",
    "colex_index",
    "colex_order",
    "colex_score",
    "complete_board",
    "compute_row",
    "compute_table",
    "decode",
    "decode_objective",
    "edge_count",
    "edge_endpoints",
    "edge_orbits",
    "encode",
    "is_isomorphic",
    "layer_sizes",
    "load_base_graph",
    "mover_at",
    "naive_minimax",
    "objective",
    "red_quota",
    "relabel",
    "render_figure",
    "score_pair",
    "solve",
    "solve_with_cache",
    "star_score",
    "vc_score",
    "verify_strategy",
    "verify_vc_mirror",
    "winner",
    "write_csv",
]
