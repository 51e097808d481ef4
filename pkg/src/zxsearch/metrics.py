"""Diagram-level cost functions minimized by the search."""

from __future__ import annotations

import enum

from .diagram import Diagram


class Metric(enum.Enum):
    TCOUNT = "tcount"
    EDGES = "edges"
    SPIDERS = "spiders"


def tcount(d: Diagram) -> int:
    """Number of spiders whose phase is an odd multiple of pi/4."""
    return sum(1 for v in d.spiders() if d.phase(v).is_t_like)


def edge_count(d: Diagram) -> int:
    return d.num_edges()


def spider_count(d: Diagram) -> int:
    return len(d.spiders())


_METRICS = {
    Metric.TCOUNT: tcount,
    Metric.EDGES: edge_count,
    Metric.SPIDERS: spider_count,
}


def metric_value(metric: Metric | str, d: Diagram) -> int:
    return _METRICS[Metric(metric)](d)


def all_metrics(d: Diagram) -> dict[str, int]:
    return {m.value: fn(d) for m, fn in _METRICS.items()}
