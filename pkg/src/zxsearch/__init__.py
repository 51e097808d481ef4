"""Exhaustive-search quantum circuit optimization over ZX diagrams."""

from .diagram import Diagram, DiagramError, EdgeType, VertexKind, is_graph_like, to_graph_like
from .metrics import Metric, metric_value
from .phase import Phase, phase_add
from .qasm import Circuit, Gate, circuit_to_zx, parse_qasm, print_qasm, unitary_of_circuit
from .rules import Rewrite, RuleId, apply, apply_bundled, find_matches
from .search import SearchConfig, SearchResult, Strategy, brute_force_min, dfs, iddfs, search
from .serialize import deserialize, serialize

__version__ = "0.1.0"

__all__ = [
    "Circuit", "Diagram", "DiagramError", "EdgeType", "Gate", "Metric", "Phase", "Rewrite",
    "RuleId", "SearchConfig", "SearchResult", "Strategy", "VertexKind", "apply", "apply_bundled",
    "brute_force_min", "circuit_to_zx", "deserialize", "dfs", "find_matches", "iddfs",
    "is_graph_like", "metric_value", "parse_qasm", "phase_add", "print_qasm", "search",
    "serialize", "to_graph_like", "unitary_of_circuit",
]
