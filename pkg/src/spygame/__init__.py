"""Exact solver and experimentation workbench for the (s,d)-spy game on graphs."""

from spygame.expr import ParseError, eval_expr, format_expr, graph_from_expr, parse_graph_expr
from spygame.formulas import (
    CombinedGuardStrategy,
    SpiderShape,
    combine_strong_strategies,
    gn_join,
    gn_lex,
    gn_path,
    gn_spider,
    gn_union,
    strong_upper,
)
from spygame.graph import (
    Graph,
    GraphError,
    cartesian_product,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    join,
    lexicographic_product,
    path_graph,
    spider_graph,
    strong_product,
)
from spygame.io import format_graph, parse_graph, read_graph, write_graph
from spygame.kernels import BACKEND
from spygame.primeval import NotDecomposable, decompose, fpt_guard_number
from spygame.reduction import (
    SetCoverInstance,
    brute_min_cover,
    build_reduction,
    classify_case,
    reduction_params,
    verify_reduction,
)
from spygame.solver import (
    BudgetExceeded,
    Configuration,
    GameParams,
    Order,
    SolveResult,
    Turn,
    Winner,
    decide,
    decide_from,
    guard_moves,
    guard_number,
    is_spy_winning,
    solve_attractor,
    spy_moves,
)
from spygame.strategy import extract_guard_strategy, extract_spy_strategy, simulate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "CombinedGuardStrategy",
    "Configuration",
    "GameParams",
    "Graph",
    "GraphError",
    "NotDecomposable",
    "Order",
    "ParseError",
    "SetCoverInstance",
    "SolveResult",
    "SpiderShape",
    "Turn",
    "Winner",
    "brute_min_cover",
    "build_reduction",
    "cartesian_product",
    "classify_case",
    "combine_strong_strategies",
    "complement",
    "complete_graph",
    "cycle_graph",
    "decide",
    "decide_from",
    "decompose",
    "disjoint_union",
    "empty_graph",
    "eval_expr",
    "extract_guard_strategy",
    "extract_spy_strategy",
    "format_expr",
    "format_graph",
    "fpt_guard_number",
    "gn_join",
    "gn_lex",
    "gn_path",
    "gn_spider",
    "gn_union",
    "graph_from_expr",
    "guard_moves",
    "guard_number",
    "is_spy_winning",
    "join",
    "lexicographic_product",
    "parse_graph",
    "parse_graph_expr",
    "path_graph",
    "read_graph",
    "reduction_params",
    "simulate",
    "solve_attractor",
    "spider_graph",
    "spy_moves",
    "strong_product",
    "strong_upper",
    "verify_reduction",
    "write_graph",
]
