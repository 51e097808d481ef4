"""ZX diagrams as simple open graphs with typed edges.

Hadamard boxes live on edges (``EdgeType.HADAMARD``) instead of being
vertices.  Whenever an edge insertion would create a parallel edge or a
self-loop, :meth:`Diagram.add_edge` rewrites it away on the spot, using
identities that hold up to a nonzero scalar.
"""

from __future__ import annotations

import enum
from collections.abc import Iterator

from .phase import PI, ZERO, Phase


class VertexKind(enum.Enum):
    Z = "Z"
    X = "X"
    BOUNDARY = "B"


class EdgeType(enum.Enum):
    PLAIN = "plain"
    HADAMARD = "h"

    def toggled(self) -> EdgeType:
        return EdgeType.HADAMARD if self is EdgeType.PLAIN else EdgeType.PLAIN


def compose_edges(a: EdgeType, b: EdgeType) -> EdgeType:
    """Edge type of two wires joined through a phase-free degree-2 spider."""
    return EdgeType.PLAIN if a is b else EdgeType.HADAMARD


class DiagramError(ValueError):
    """A diagram violates a structural invariant."""


class Diagram:
    """Undirected open graph of spiders and boundary vertices.

    Operations in :mod:`zxsearch.rules` never mutate their argument; they
    :meth:`copy` first and mutate the copy.  The mutating methods here are
    for builders (parsers, rewrites) working on a diagram they own.
    """

    __slots__ = ("_kind", "_phase", "_adj", "inputs", "outputs", "_next_id")

    def __init__(self) -> None:
        self._kind: dict[int, VertexKind] = {}
        self._phase: dict[int, Phase] = {}
        self._adj: dict[int, dict[int, EdgeType]] = {}
        self.inputs: list[int] = []
        self.outputs: list[int] = []
        self._next_id = 0

    # -- construction -------------------------------------------------

    def copy(self) -> Diagram:
        d = Diagram.__new__(Diagram)
        d._kind = dict(self._kind)
        d._phase = dict(self._phase)
        d._adj = {v: dict(nb) for v, nb in self._adj.items()}
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        d._next_id = self._next_id
        return d

    def add_vertex(self, kind: VertexKind, phase: Phase = ZERO, vid: int | None = None) -> int:
        if vid is None:
            vid = self._next_id
        elif vid in self._kind:
            raise DiagramError(f"duplicate vertex id {vid}")
        if kind is VertexKind.BOUNDARY and not phase.is_zero:
            raise DiagramError("boundary vertices carry phase 0")
        self._kind[vid] = kind
        self._phase[vid] = phase
        self._adj[vid] = {}
        self._next_id = max(self._next_id, vid + 1)
        return vid

    def add_input(self) -> int:
        v = self.add_vertex(VertexKind.BOUNDARY)
        self.inputs.append(v)
        return v

    def add_output(self) -> int:
        v = self.add_vertex(VertexKind.BOUNDARY)
        self.outputs.append(v)
        return v

    def remove_vertex(self, v: int) -> None:
        for w in self._adj.pop(v):
            del self._adj[w][v]
        del self._kind[v]
        del self._phase[v]

    def remove_edge(self, u: int, v: int) -> None:
        del self._adj[u][v]
        del self._adj[v][u]

    def set_phase(self, v: int, phase: Phase) -> None:
        if self._kind[v] is VertexKind.BOUNDARY and not phase.is_zero:
            raise DiagramError("boundary vertices carry phase 0")
        self._phase[v] = phase

    def add_to_phase(self, v: int, phase: Phase) -> None:
        self.set_phase(v, self._phase[v] + phase)

    def set_kind(self, v: int, kind: VertexKind) -> None:
        self._kind[v] = kind

    def set_edge_type(self, u: int, v: int, et: EdgeType) -> None:
        self._adj[u][v] = et
        self._adj[v][u] = et

    def add_edge(self, u: int, v: int, et: EdgeType = EdgeType.PLAIN) -> None:
        """Insert an edge, reducing self-loops and parallel edges immediately.

        Reductions (all sound up to scalar):
          * plain self-loop: dropped;
          * Hadamard self-loop: dropped, adds pi to the spider;
          * parallel edge between spiders u, v: with "plain-like" meaning
            plain for same-coloured and Hadamard for opposite-coloured
            spiders, plain-like + plain-like = plain-like, H-like + H-like
            cancel (Hopf), and plain-like + H-like = plain-like with pi
            added to u.
        """
        ku, kv = self._kind[u], self._kind[v]
        if u == v:
            if ku is VertexKind.BOUNDARY:
                raise DiagramError("self-loop on a boundary vertex")
            if et is EdgeType.HADAMARD:
                self._phase[u] = self._phase[u] + PI
            return
        existing = self._adj[u].get(v)
        if existing is None:
            self._adj[u][v] = et
            self._adj[v][u] = et
            return
        if ku is VertexKind.BOUNDARY or kv is VertexKind.BOUNDARY:
            raise DiagramError("parallel edge at a boundary vertex")
        plain_like = EdgeType.PLAIN if ku is kv else EdgeType.HADAMARD
        old_plain = existing is plain_like
        new_plain = et is plain_like
        if old_plain and new_plain:
            return
        if not old_plain and not new_plain:
            self.remove_edge(u, v)
            return
        self._adj[u][v] = plain_like
        self._adj[v][u] = plain_like
        self._phase[u] = self._phase[u] + PI

    # -- queries ------------------------------------------------------

    def vertices(self) -> list[int]:
        return sorted(self._kind)

    def __contains__(self, v: object) -> bool:
        return v in self._kind

    def num_vertices(self) -> int:
        return len(self._kind)

    def spiders(self) -> list[int]:
        return sorted(v for v, k in self._kind.items() if k is not VertexKind.BOUNDARY)

    def kind(self, v: int) -> VertexKind:
        return self._kind[v]

    def phase(self, v: int) -> Phase:
        return self._phase[v]

    def is_boundary(self, v: int) -> bool:
        return self._kind[v] is VertexKind.BOUNDARY

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def incident(self, v: int) -> dict[int, EdgeType]:
        """Read-only view of ``{neighbour: edge type}``; do not mutate."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def connected(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edge_type(self, u: int, v: int) -> EdgeType:
        return self._adj[u][v]

    def edges(self) -> Iterator[tuple[int, int, EdgeType]]:
        for u in sorted(self._adj):
            for v, et in sorted(self._adj[u].items()):
                if u < v:
                    yield u, v, et

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    # -- comparison ---------------------------------------------------

    def _key(self):
        return (
            tuple((v, self._kind[v].value, self._phase[v].numerator, self._phase[v].denominator)
                  for v in sorted(self._kind)),
            tuple((u, v, et.value) for u, v, et in self.edges()),
            tuple(self.inputs),
            tuple(self.outputs),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (f"Diagram(spiders={len(self.spiders())}, edges={self.num_edges()}, "
                f"inputs={self.inputs}, outputs={self.outputs})")

    def relabel(self, mapping: dict[int, int]) -> Diagram:
        """Return a copy with vertex ids renamed through ``mapping``."""
        d = Diagram()
        for v in self.vertices():
            d.add_vertex(self._kind[v], self._phase[v], vid=mapping[v])
        for u, v, et in self.edges():
            d.add_edge(mapping[u], mapping[v], et)
        d.inputs = [mapping[v] for v in self.inputs]
        d.outputs = [mapping[v] for v in self.outputs]
        return d

    def compact(self) -> Diagram:
        """Relabel to ids ``0..n-1`` preserving vertex order."""
        return self.relabel({v: i for i, v in enumerate(self.vertices())})

    def check(self) -> None:
        """Raise :class:`DiagramError` if any structural invariant fails."""
        boundary = {v for v, k in self._kind.items() if k is VertexKind.BOUNDARY}
        listed = self.inputs + self.outputs
        if len(set(listed)) != len(listed):
            raise DiagramError("boundary listed more than once")
        for v in listed:
            if v not in self._kind:
                raise DiagramError(f"unknown vertex {v} in inputs/outputs")
            if v not in boundary:
                raise DiagramError(f"vertex {v} in inputs/outputs is not a boundary")
        if set(listed) != boundary:
            raise DiagramError("boundary vertex missing from inputs/outputs")
        for v in boundary:
            if len(self._adj[v]) != 1:
                raise DiagramError(f"boundary degree of vertex {v} is {len(self._adj[v])}, expected 1")
            if not self._phase[v].is_zero:
                raise DiagramError("boundary vertices carry phase 0")
        for u, nb in self._adj.items():
            if u in nb:
                raise DiagramError(f"self-loop at vertex {u}")
            for v, et in nb.items():
                if self._adj.get(v, {}).get(u) is not et:
                    raise DiagramError(f"asymmetric adjacency between {u} and {v}")


def identity_diagram(n: int) -> Diagram:
    """``n`` bare wires."""
    d = Diagram()
    ins = [d.add_input() for _ in range(n)]
    outs = [d.add_output() for _ in range(n)]
    for i, o in zip(ins, outs):
        d.add_edge(i, o)
    return d


def is_graph_like(d: Diagram) -> bool:
    """Only Z spiders; spider-spider edges Hadamard; each boundary has one plain edge to a spider."""
    for v in d.vertices():
        k = d.kind(v)
        if k is VertexKind.X:
            return False
        if k is VertexKind.BOUNDARY:
            nb = d.incident(v)
            if len(nb) != 1:
                return False
            (w, et), = nb.items()
            if d.is_boundary(w) or et is not EdgeType.PLAIN:
                return False
    for u, v, et in d.edges():
        if not d.is_boundary(u) and not d.is_boundary(v) and et is not EdgeType.HADAMARD:
            return False
    return True


def _fuse_into(d: Diagram, keep: int, gone: int) -> None:
    d.add_to_phase(keep, d.phase(gone))
    moved = [(w, et) for w, et in d.incident(gone).items() if w != keep]
    d.remove_vertex(gone)
    for w, et in moved:
        d.add_edge(keep, w, et)


def to_graph_like(d: Diagram) -> Diagram:
    """Equivalent graph-like diagram (up to scalar); graph-like input is returned unchanged."""
    if is_graph_like(d):
        return d.copy()
    g = d.copy()
    for v in g.spiders():
        if g.kind(v) is VertexKind.X:
            g.set_kind(v, VertexKind.Z)
            for w, et in list(g.incident(v).items()):
                g.set_edge_type(v, w, et.toggled())
    while True:
        site = next(((u, v) for u, v, et in g.edges()
                     if et is EdgeType.PLAIN and not g.is_boundary(u) and not g.is_boundary(v)), None)
        if site is None:
            break
        _fuse_into(g, *site)
    for b in g.inputs + g.outputs:
        (w, et), = g.incident(b).items()
        if g.is_boundary(w):
            if b > w:
                continue  # handled from the other end
            g.remove_edge(b, w)
            if et is EdgeType.PLAIN:
                z = g.add_vertex(VertexKind.Z)
                g.add_edge(b, z)
                g.add_edge(z, w)
            else:
                z1 = g.add_vertex(VertexKind.Z)
                z2 = g.add_vertex(VertexKind.Z)
                g.add_edge(b, z1)
                g.add_edge(z1, z2, EdgeType.HADAMARD)
                g.add_edge(z2, w)
        elif et is EdgeType.HADAMARD:
            g.remove_edge(b, w)
            z = g.add_vertex(VertexKind.Z)
            g.add_edge(b, z)
            g.add_edge(z, w, EdgeType.HADAMARD)
    return g
