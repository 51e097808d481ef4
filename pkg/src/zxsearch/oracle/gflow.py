"""Generalized-flow existence for graph-like diagrams.

The open graph is the diagram's underlying simple graph with boundary
vertices included: inputs are the input boundaries, outputs the output
boundaries, and every other vertex is measured in the XY plane.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from ..diagram import Diagram, is_graph_like
from ._gf2 import solve_gf2


class NotGraphLikeError(ValueError):
    pass


def find_gflow(d: Diagram) -> tuple[dict[int, set[int]], dict[int, int]] | None:
    """Maximally delayed gflow as ``(corrections, layer)``, or None if none exists.

    Layers are built backwards from the outputs (layer 0); each round
    solves one GF(2) system for all still-unsolved vertices at once.
    """
    if not is_graph_like(d):
        raise NotGraphLikeError("gflow is only defined here for graph-like diagrams")
    verts = d.vertices()
    index = {v: i for i, v in enumerate(verts)}
    adj = np.zeros((len(verts), len(verts)), dtype=np.uint8)
    for u, v, _ in d.edges():
        adj[index[u], index[v]] = adj[index[v], index[u]] = 1
    inputs = set(d.inputs)
    solved = set(d.outputs)
    correctors = sorted(solved - inputs)
    layer = {v: 0 for v in solved}
    g: dict[int, set[int]] = {}
    k = 1
    while True:
        unsolved = [v for v in verts if v not in solved]
        if not unsolved:
            return g, layer
        if not correctors:
            return None
        rows = [index[v] for v in unsolved]
        cols = [index[v] for v in correctors]
        a = adj[np.ix_(rows, cols)]
        ok, x = solve_gf2(a, np.eye(len(rows), dtype=np.uint8))
        fresh = [v for v, good in zip(unsolved, ok) if good]
        if not fresh:
            return None
        for j, v in enumerate(unsolved):
            if ok[j]:
                g[v] = {correctors[i] for i in np.flatnonzero(x[:, j])}
                layer[v] = k
        solved.update(fresh)
        correctors = sorted(solved - inputs)
        k += 1


def gflow_exists(d: Diagram) -> bool:
    return find_gflow(d) is not None


def odd_neighbourhood(d: Diagram, s) -> set[int]:
    out: set[int] = set()
    for v in s:
        out.symmetric_difference_update(d.incident(v))
    return out


def gflow_exists_bruteforce(d: Diagram) -> bool:
    """Exhaustive search over measurement orders and correction sets.

    Places measured vertices front to back; the next vertex ``u`` needs
    some ``S`` among later non-input vertices whose odd neighbourhood meets
    the not-later vertices exactly in ``{u}``.  Exponential: tiny graphs only.
    """
    if not is_graph_like(d):
        raise NotGraphLikeError("gflow is only defined here for graph-like diagrams")
    verts = frozenset(d.vertices())
    inputs = frozenset(d.inputs)
    outputs = frozenset(d.outputs)

    def has_correction(u: int, later: frozenset[int]) -> bool:
        pool = sorted(later - inputs)
        earlier = verts - later
        for r in range(len(pool) + 1):
            for s in combinations(pool, r):
                if odd_neighbourhood(d, s) & earlier == {u}:
                    return True
        return False

    @lru_cache(maxsize=None)
    def placeable(remaining: frozenset[int]) -> bool:
        if not remaining:
            return True
        return any(
            has_correction(u, (remaining - {u}) | outputs) and placeable(remaining - {u})
            for u in sorted(remaining)
        )

    return placeable(verts - outputs)


def verify_gflow(d: Diagram, g: dict[int, set[int]], layer: dict[int, int]) -> bool:
    """Check the XY-plane gflow conditions for a candidate ``(g, layer)``."""
    inputs, outputs = set(d.inputs), set(d.outputs)
    for u in d.vertices():
        if u in outputs:
            continue
        if u not in g:
            return False
        s = g[u]
        if u in s or s & inputs:
            return False
        odd = odd_neighbourhood(d, s)
        if u not in odd:
            return False
        for v in (s | odd) - {u}:
            if layer.get(v, -1) >= layer[u]:
                return False
    return True
