"""Shortest-path engine over CSR graphs.

Frontier relaxation in two alternating passes (propose, then commit)
over flat vertex/edge/weight arrays, with saturating unsigned costs, a
classical heap-based oracle for verification, shortest-path recovery,
deterministic graph generation, file formats, an HTTP service, and a
CLI.
"""

from .apsp import DEFAULT_MEMORY_BUDGET, ApspResult, run_apsp
from .bench import BenchRecord, bench, cost_checksum, records_to_jsonl
from .engine import (RunStats, SsspResult, init_sssp, kernel1_pass,
                     kernel1_pass_ordered, kernel2_pass, mask_nonempty,
                     relax_vertex, run_sssp)
from .errors import (BrokenPathError, CsrPathError, GraphParseError,
                     GraphTooLargeError, InconsistentCostsError,
                     IterationLimitError, MemoryBudgetError,
                     StackCapacityError, StackUnderflowError,
                     UnreachableVertexError, UsageError, VertexRangeError)
from .generate import generate_graph, splitmix64
from .graph import (INF, CsrGraph, SsspState, ValidationReport, Violation,
                    out_edge_range, saturating_add, validate_graph)
from .io import (load_graph, read_costs, read_graph_binary, read_graph_text,
                 save_graph, write_costs, write_graph_binary,
                 write_graph_text)
from .oracle import (dijkstra_reference, exhaustive_shortest_paths,
                     fold_relax_oracle)
from .paths import (ReverseIndex, VertexStack, build_reverse_index,
                    path_cost, recover_path)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "ApspResult",
    "BenchRecord",
    "BrokenPathError",
    "CsrGraph",
    "CsrPathError",
    "DEFAULT_MEMORY_BUDGET",
    "GraphParseError",
    "GraphTooLargeError",
    "InconsistentCostsError",
    "IterationLimitError",
    "MemoryBudgetError",
    "ReverseIndex",
    "RunStats",
    "SsspResult",
    "SsspState",
    "StackCapacityError",
    "StackUnderflowError",
    "UnreachableVertexError",
    "UsageError",
    "ValidationReport",
    "VertexRangeError",
    "VertexStack",
    "Violation",
    "bench",
    "build_reverse_index",
    "cost_checksum",
    "dijkstra_reference",
    "exhaustive_shortest_paths",
    "fold_relax_oracle",
    "generate_graph",
    "init_sssp",
    "kernel1_pass",
    "kernel1_pass_ordered",
    "kernel2_pass",
    "load_graph",
    "mask_nonempty",
    "out_edge_range",
    "path_cost",
    "read_costs",
    "read_graph_binary",
    "read_graph_text",
    "recover_path",
    "relax_vertex",
    "run_apsp",
    "run_sssp",
    "saturating_add",
    "save_graph",
    "splitmix64",
    "validate_graph",
    "write_costs",
    "write_graph_binary",
    "write_graph_text",
]
