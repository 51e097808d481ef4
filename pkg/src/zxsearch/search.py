"""Exhaustive DFS / IDDFS over bundled rewrites.

Pruning: unfusion is never generated, every rule is applied as one
bundled batch per node, colour change never follows colour change,
HadamardSplit is capped per root-to-node path, and a wall-clock limit
is checked once per node expansion.
"""

from __future__ import annotations

import enum
import time
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .diagram import Diagram, to_graph_like
from .metrics import Metric, metric_value
from .oracle.gflow import gflow_exists
from .rules import RuleId, apply_bundled, has_match

DEFAULT_RULE_ORDER: tuple[RuleId, ...] = (
    RuleId.LOCAL_COMP, RuleId.PIVOT, RuleId.BIALGEBRA, RuleId.PI_COPY, RuleId.STATE_COPY,
    RuleId.FUSION, RuleId.IDENTITY, RuleId.HADAMARD_CANCEL, RuleId.HADAMARD_SPLIT,
    RuleId.COLOUR_CHANGE,
)


class Strategy(enum.Enum):
    DFS = "dfs"
    IDDFS = "iddfs"


class Extractability(enum.Enum):
    ALWAYS = "always"
    GFLOW = "gflow"


class Termination(enum.Enum):
    DEPTH_EXHAUSTED = "DepthExhausted"
    TIME_LIMIT = "TimeLimit"


def _extractable(kind: Extractability, d: Diagram) -> bool:
    if kind is Extractability.ALWAYS:
        return True
    try:
        return gflow_exists(d)
    except ValueError:
        # gflow is only decided for graph-like diagrams; anything else fails extraction
        return False


@dataclass(frozen=True)
class SearchConfig:
    strategy: Strategy = Strategy.IDDFS
    metric: Metric = Metric.TCOUNT
    depth_limit: int = 6
    time_limit: float | None = 60.0
    rule_order: tuple[RuleId, ...] = DEFAULT_RULE_ORDER
    hd_budget: int = 2
    extractability: Extractability = Extractability.ALWAYS
    normalize_root: bool = True

    def __post_init__(self) -> None:
        if self.depth_limit < 0:
            raise ValueError("depth_limit must be non-negative")
        if self.hd_budget < 0:
            raise ValueError("hd_budget must be non-negative")
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be non-negative")
        if not self.rule_order:
            raise ValueError("rule_order needs at least one rule")
        if len(set(self.rule_order)) != len(self.rule_order):
            raise ValueError("rule_order contains a duplicate rule")


@dataclass(frozen=True)
class SearchNode:
    diagram: Diagram
    depth: int = 0
    path: tuple[RuleId, ...] = ()
    hd_used: int = 0

    @property
    def last_rule(self) -> RuleId | None:
        return self.path[-1] if self.path else None


@dataclass(frozen=True)
class TracePoint:
    elapsed_ms: int
    best_value: int
    nodes_expanded: int


@dataclass
class SearchResult:
    best: Diagram
    best_value: int
    nodes_expanded: int = 0
    leaves_evaluated: int = 0
    trace: list[TracePoint] = field(default_factory=list)
    terminated_by: Termination = Termination.DEPTH_EXHAUSTED
    best_path: tuple[RuleId, ...] = ()


def _allowed_rules(node: SearchNode, cfg: SearchConfig) -> list[RuleId]:
    return [
        rule for rule in cfg.rule_order
        if not (rule is RuleId.COLOUR_CHANGE and node.last_rule is RuleId.COLOUR_CHANGE)
        and not (rule is RuleId.HADAMARD_SPLIT and node.hd_used >= cfg.hd_budget)
    ]


def has_children(node: SearchNode, cfg: SearchConfig) -> bool:
    """Whether some allowed rule other than colour change applies.

    Colour change alone never makes a node interior: it always applies.
    """
    return any(has_match(rule, node.diagram) for rule in _allowed_rules(node, cfg)
               if rule is not RuleId.COLOUR_CHANGE)


def children(node: SearchNode, cfg: SearchConfig) -> list[SearchNode]:
    """One bundled child per applicable rule, in ``cfg.rule_order``.

    Empty when only colour change would apply.
    """
    if not has_children(node, cfg):
        return []
    out = []
    for rule in _allowed_rules(node, cfg):
        is_hd = rule is RuleId.HADAMARD_SPLIT
        child = apply_bundled(rule, node.diagram)
        if child is None:
            continue
        out.append(SearchNode(child, node.depth + 1, node.path + (rule,), node.hd_used + is_hd))
    return out


class _Clock:
    def __init__(self, limit: float | None) -> None:
        self.start = time.perf_counter()
        self.limit = limit

    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def expired(self) -> bool:
        return self.limit is not None and self.elapsed() >= self.limit


def is_leaf(node: SearchNode, cfg: SearchConfig, bound: int | None = None, clock: _Clock | None = None) -> bool:
    bound = cfg.depth_limit if bound is None else bound
    if node.depth >= bound or (clock is not None and clock.expired()):
        return True
    return not has_children(node, cfg)


class _Incumbent:
    """Best-so-far bookkeeping shared by all DFS passes of one search."""

    def __init__(self, root: SearchNode, cfg: SearchConfig, clock: _Clock) -> None:
        self.cfg = cfg
        self.clock = clock
        self.result = SearchResult(best=root.diagram, best_value=metric_value(cfg.metric, root.diagram))
        self.result.trace.append(TracePoint(0, self.result.best_value, 0))

    def evaluate_leaf(self, node: SearchNode) -> bool:
        """Record ``node`` if strictly better and extractable (checked in that order)."""
        r = self.result
        r.leaves_evaluated += 1
        value = metric_value(self.cfg.metric, node.diagram)
        if value >= r.best_value or not _extractable(self.cfg.extractability, node.diagram):
            return False
        r.best, r.best_value, r.best_path = node.diagram, value, node.path
        elapsed = int(self.clock.elapsed() * 1000)
        if r.trace and elapsed <= r.trace[-1].elapsed_ms:
            elapsed = r.trace[-1].elapsed_ms + 1
        r.trace.append(TracePoint(elapsed, value, r.nodes_expanded))
        return True


def _dfs_pass(root: SearchNode, bound: int, inc: _Incumbent,
              visit: Callable[[SearchNode], None] | None) -> tuple[bool, bool]:
    """One bounded DFS.  Returns ``(timed_out, cut_off)``; ``cut_off`` means some
    node at the bound still had children, so a deeper pass could see more."""
    cfg = inc.cfg
    stack = [root]
    cut_off = False
    while stack:
        if inc.clock.expired():
            return True, cut_off
        node = stack.pop()
        inc.result.nodes_expanded += 1
        if visit is not None:
            visit(node)
        if node.depth >= bound:
            cut_off = cut_off or has_children(node, cfg)
            inc.evaluate_leaf(node)
            continue
        kids = children(node, cfg)
        if not kids:
            inc.evaluate_leaf(node)
            continue
        stack.extend(reversed(kids))
    return False, cut_off


def _prepare(d0: Diagram, cfg: SearchConfig) -> SearchNode:
    return SearchNode(to_graph_like(d0) if cfg.normalize_root else d0.copy())


def dfs(d0: Diagram, cfg: SearchConfig, visit: Callable[[SearchNode], None] | None = None) -> SearchResult:
    """Depth-first search bounded by ``cfg.depth_limit``.

    ``visit`` is called on every expanded node (instrumentation hook).
    """
    clock = _Clock(cfg.time_limit)
    root = _prepare(d0, cfg)
    inc = _Incumbent(root, cfg, clock)
    timed_out, _ = _dfs_pass(root, cfg.depth_limit, inc, visit)
    inc.result.terminated_by = Termination.TIME_LIMIT if timed_out else Termination.DEPTH_EXHAUSTED
    return inc.result


def iddfs(d0: Diagram, cfg: SearchConfig, visit: Callable[[SearchNode], None] | None = None) -> SearchResult:
    """DFS under bounds 1, 2, ..., ``cfg.depth_limit``, carrying the incumbent.

    Stops early once a pass never reaches a node with unexplored children
    at its bound, since deeper passes would revisit the same tree.
    """
    clock = _Clock(cfg.time_limit)
    root = _prepare(d0, cfg)
    inc = _Incumbent(root, cfg, clock)
    if cfg.depth_limit == 0:
        timed_out, _ = _dfs_pass(root, 0, inc, visit)
    else:
        timed_out = False
        for bound in range(1, cfg.depth_limit + 1):
            timed_out, cut_off = _dfs_pass(root, bound, inc, visit)
            if timed_out or not cut_off:
                break
    inc.result.terminated_by = Termination.TIME_LIMIT if timed_out else Termination.DEPTH_EXHAUSTED
    return inc.result


def search(d0: Diagram, cfg: SearchConfig, visit: Callable[[SearchNode], None] | None = None) -> SearchResult:
    return (dfs if cfg.strategy is Strategy.DFS else iddfs)(d0, cfg, visit)


class StateBudgetExceeded(RuntimeError):
    pass


def brute_force_min(d0: Diagram, cfg: SearchConfig, max_states: int = 100_000) -> int:
    """Minimum metric over every node within ``cfg.depth_limit``, by BFS.

    Test oracle: enumerates the same child relation with no incumbent,
    no leaf logic and no time limit.
    """
    root = _prepare(d0, cfg)
    best = metric_value(cfg.metric, root.diagram)
    queue = deque([root])
    seen = 1
    while queue:
        node = queue.popleft()
        value = metric_value(cfg.metric, node.diagram)
        if value < best and _extractable(cfg.extractability, node.diagram):
            best = value
        if node.depth >= cfg.depth_limit:
            continue
        for kid in children(node, cfg):
            seen += 1
            if seen > max_states:
                raise StateBudgetExceeded(f"more than {max_states} states")
            queue.append(kid)
    return best


def parse_rule_order(names: Sequence[str] | str) -> tuple[RuleId, ...]:
    from .rules import rule_from_name

    if isinstance(names, str):
        names = [n for n in names.split(",") if n.strip()]
    return tuple(rule_from_name(n) for n in names)
