"""JSON (de)serialization of diagrams.

Format::

    {"vertices": [{"id": 0, "kind": "B", "phase": "0/1"}, ...],
     "edges": [{"src": 0, "dst": 2, "type": "plain"}, ...],
     "inputs": [0], "outputs": [1]}
"""

from __future__ import annotations

import json
from typing import Any

from .diagram import Diagram, DiagramError, EdgeType, VertexKind
from .phase import Phase


class DiagramFormatError(ValueError):
    pass


def to_dict(d: Diagram) -> dict[str, Any]:
    return {
        "vertices": [{"id": v, "kind": d.kind(v).value, "phase": str(d.phase(v))}
                     for v in d.vertices()],
        "edges": [{"src": u, "dst": v, "type": et.value} for u, v, et in d.edges()],
        "inputs": list(d.inputs),
        "outputs": list(d.outputs),
    }


def serialize(d: Diagram, indent: int | None = 2) -> str:
    return json.dumps(to_dict(d), indent=indent)


def _int(value: Any, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DiagramFormatError(f"malformed {what}: expected integer, got {value!r}")
    return value


def from_dict(data: Any) -> Diagram:
    if not isinstance(data, dict):
        raise DiagramFormatError("malformed diagram: top level must be an object")
    for key in ("vertices", "edges", "inputs", "outputs"):
        if not isinstance(data.get(key), list):
            raise DiagramFormatError(f"malformed diagram: missing list {key!r}")
    d = Diagram()
    for item in data["vertices"]:
        if not isinstance(item, dict):
            raise DiagramFormatError("malformed vertex entry")
        vid = _int(item.get("id"), "vertex id")
        try:
            kind = VertexKind(item.get("kind"))
        except ValueError:
            raise DiagramFormatError(f"unknown kind {item.get('kind')!r} for vertex {vid}") from None
        text = item.get("phase", "0/1")
        if not isinstance(text, str):
            raise DiagramFormatError(f"malformed phase for vertex {vid}")
        try:
            n, _, den = text.partition("/")
            phase = Phase(int(n), int(den))
        except ValueError as exc:
            msg = str(exc)
            if "not reduced" in msg:
                raise DiagramFormatError(f"phase not reduced: {text!r} on vertex {vid}") from None
            if "normalized" in msg:
                raise DiagramFormatError(f"phase not normalized: {text!r} on vertex {vid}") from None
            raise DiagramFormatError(f"malformed phase {text!r} on vertex {vid}") from None
        try:
            d.add_vertex(kind, phase, vid=vid)
        except DiagramError as exc:
            raise DiagramFormatError(str(exc)) from None
    for item in data["edges"]:
        if not isinstance(item, dict):
            raise DiagramFormatError("malformed edge entry")
        u = _int(item.get("src"), "edge src")
        v = _int(item.get("dst"), "edge dst")
        if u not in d or v not in d:
            raise DiagramFormatError(f"edge ({u}, {v}) refers to an unknown vertex")
        if u == v:
            raise DiagramFormatError(f"self-loop at vertex {u}")
        if d.connected(u, v):
            raise DiagramFormatError(f"duplicate edge ({u}, {v})")
        try:
            et = EdgeType(item.get("type"))
        except ValueError:
            raise DiagramFormatError(f"unknown edge type {item.get('type')!r}") from None
        d.add_edge(u, v, et)
    d.inputs = [_int(v, "input id") for v in data["inputs"]]
    d.outputs = [_int(v, "output id") for v in data["outputs"]]
    try:
        d.check()
    except DiagramError as exc:
        raise DiagramFormatError(str(exc)) from None
    return d


def deserialize(text: str) -> Diagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramFormatError(f"malformed JSON: {exc}") from None
    return from_dict(data)
