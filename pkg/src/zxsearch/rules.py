"""Match-and-apply rewrite rules.

Each rule is a pair ``(check, mutate)``: ``check(d, site)`` decides whether
the site is a valid match in ``d``, and ``mutate(d, site)`` rewrites ``d`` in
place.  The public functions never mutate their argument.

Sites are vertex-id tuples:

========  ==========================  ==========================================
rule      site                        precondition
========  ==========================  ==========================================
f         (u, v), u < v               same-coloured spiders, plain edge
lc        (v,)                        phase +-pi/2, all neighbours same-coloured
                                      spiders via Hadamard edges
pivot     (u, v), u < v               Hadamard edge, phases in {0, pi}, all
                                      neighbours same-coloured spiders via
                                      Hadamard edges
h         (v,)                        any spider
i1 / i2   (v,)                        phase 0, degree 2 (i2: both edges Hadamard)
b         (u, v), u < v               Z(0) and X(0), plain edge, degree 3 each,
                                      disjoint outer neighbourhoods
pi        (p, s)                      p: degree 2, phase pi; s: opposite colour,
                                      plain edge
c         (p, s)                      p: degree 1, phase 0 or pi; s: opposite
                                      colour, phase 0, plain edge
hd        (u, v), u < v               Hadamard edge
========  ==========================  ==========================================
"""

from __future__ import annotations

import enum
from collections.abc import Callable
from dataclasses import dataclass
from itertools import combinations

from .diagram import Diagram, EdgeType, VertexKind, compose_edges
from .phase import HALF_PI, PI

Site = tuple[int, ...]


class RuleId(enum.Enum):
    FUSION = "f"
    LOCAL_COMP = "lc"
    PIVOT = "pivot"
    COLOUR_CHANGE = "h"
    IDENTITY = "i1"
    HADAMARD_CANCEL = "i2"
    BIALGEBRA = "b"
    PI_COPY = "pi"
    STATE_COPY = "c"
    HADAMARD_SPLIT = "hd"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Rewrite:
    rule: RuleId
    site: Site

    def __str__(self) -> str:
        return f"{self.rule.value}@{','.join(map(str, self.site))}"


class StaleRewriteError(ValueError):
    """The rewrite's site does not match the diagram it is applied to."""


def _opposite(k: VertexKind) -> VertexKind:
    return VertexKind.X if k is VertexKind.Z else VertexKind.Z


def _spider(d: Diagram, v: int) -> bool:
    return v in d and not d.is_boundary(v)


def _hadamard_star(d: Diagram, v: int) -> bool:
    k = d.kind(v)
    for w, et in d.incident(v).items():
        if et is not EdgeType.HADAMARD or d.kind(w) is not k:
            return False
    return True


# -- fusion --------------------------------------------------------------

def _check_fusion(d: Diagram, site: Site) -> bool:
    u, v = site
    return (u < v and _spider(d, u) and _spider(d, v) and d.connected(u, v)
            and d.kind(u) is d.kind(v) and d.edge_type(u, v) is EdgeType.PLAIN)


def _do_fusion(d: Diagram, site: Site) -> None:
    keep, gone = site
    d.add_to_phase(keep, d.phase(gone))
    moved = [(w, et) for w, et in d.incident(gone).items() if w != keep]
    d.remove_vertex(gone)
    for w, et in moved:
        d.add_edge(keep, w, et)


def _edge_sites(d: Diagram) -> list[Site]:
    return [(u, v) for u, v, _ in d.edges()]


# -- local complementation and pivoting ------------------------------------

def _check_lc(d: Diagram, site: Site) -> bool:
    (v,) = site
    return _spider(d, v) and d.phase(v).is_proper_clifford and _hadamard_star(d, v)


def _do_lc(d: Diagram, site: Site) -> None:
    (v,) = site
    alpha = d.phase(v)
    nbrs = d.neighbors(v)
    d.remove_vertex(v)
    for w in nbrs:
        d.add_to_phase(w, -alpha)
    for a, b in combinations(nbrs, 2):
        d.add_edge(a, b, EdgeType.HADAMARD)


def _check_pivot(d: Diagram, site: Site) -> bool:
    u, v = site
    return (u < v and _spider(d, u) and _spider(d, v) and d.connected(u, v)
            and d.edge_type(u, v) is EdgeType.HADAMARD and d.kind(u) is d.kind(v)
            and d.phase(u).is_pauli and d.phase(v).is_pauli
            and _hadamard_star(d, u) and _hadamard_star(d, v))


def _do_pivot(d: Diagram, site: Site) -> None:
    u, v = site
    au, av = d.phase(u), d.phase(v)
    nu = set(d.incident(u)) - {v}
    nv = set(d.incident(v)) - {u}
    both = nu & nv
    only_u = sorted(nu - both)
    only_v = sorted(nv - both)
    both = sorted(both)
    d.remove_vertex(u)
    d.remove_vertex(v)
    for w in only_u:
        d.add_to_phase(w, av)
    for w in only_v:
        d.add_to_phase(w, au)
    for w in both:
        d.add_to_phase(w, au + av + PI)
    for group_a, group_b in ((only_u, only_v), (only_u, both), (only_v, both)):
        for a in group_a:
            for b in group_b:
                d.add_edge(a, b, EdgeType.HADAMARD)


# -- colour change and identities ----------------------------------------------

def _check_colour(d: Diagram, site: Site) -> bool:
    (v,) = site
    return _spider(d, v)


def _do_colour(d: Diagram, site: Site) -> None:
    (v,) = site
    d.set_kind(v, _opposite(d.kind(v)))
    for w, et in list(d.incident(v).items()):
        d.set_edge_type(v, w, et.toggled())


def _identity_types(d: Diagram, v: int) -> tuple[EdgeType, EdgeType] | None:
    if not _spider(d, v) or not d.phase(v).is_zero or d.degree(v) != 2:
        return None
    a, b = d.incident(v).values()
    return a, b


def _check_i1(d: Diagram, site: Site) -> bool:
    types = _identity_types(d, site[0])
    return types is not None and types != (EdgeType.HADAMARD, EdgeType.HADAMARD)


def _check_i2(d: Diagram, site: Site) -> bool:
    return _identity_types(d, site[0]) == (EdgeType.HADAMARD, EdgeType.HADAMARD)


def _do_identity(d: Diagram, site: Site) -> None:
    (v,) = site
    (a, ta), (b, tb) = sorted(d.incident(v).items())
    d.remove_vertex(v)
    d.add_edge(a, b, compose_edges(ta, tb))


# -- bialgebra -------------------------------------------------------------

def _check_bialgebra(d: Diagram, site: Site) -> bool:
    u, v = site
    if not (u < v and _spider(d, u) and _spider(d, v) and d.connected(u, v)):
        return False
    if {d.kind(u), d.kind(v)} != {VertexKind.Z, VertexKind.X}:
        return False
    if d.edge_type(u, v) is not EdgeType.PLAIN:
        return False
    if not (d.phase(u).is_zero and d.phase(v).is_zero and d.degree(u) == 3 and d.degree(v) == 3):
        return False
    return not (set(d.incident(u)) - {v}) & (set(d.incident(v)) - {u})


def _do_bialgebra(d: Diagram, site: Site) -> None:
    u, v = site
    z, x = (u, v) if d.kind(u) is VertexKind.Z else (v, u)
    z_legs = sorted((w, et) for w, et in d.incident(z).items() if w != x)
    x_legs = sorted((w, et) for w, et in d.incident(x).items() if w != z)
    d.remove_vertex(z)
    d.remove_vertex(x)
    new_x = []
    for w, et in z_legs:
        n = d.add_vertex(VertexKind.X)
        d.add_edge(n, w, et)
        new_x.append(n)
    new_z = []
    for w, et in x_legs:
        n = d.add_vertex(VertexKind.Z)
        d.add_edge(n, w, et)
        new_z.append(n)
    for a in new_x:
        for b in new_z:
            d.add_edge(a, b)


# -- copy rules --------------------------------------------------------------

def _check_pi_copy(d: Diagram, site: Site) -> bool:
    p, s = site
    return (_spider(d, p) and _spider(d, s) and d.degree(p) == 2 and d.phase(p) == PI
            and d.connected(p, s) and d.edge_type(p, s) is EdgeType.PLAIN
            and d.kind(s) is _opposite(d.kind(p)))


def _do_pi_copy(d: Diagram, site: Site) -> None:
    p, s = site
    kind = d.kind(p)
    ((q, tq),) = [(w, et) for w, et in d.incident(p).items() if w != s]
    d.remove_vertex(p)
    d.set_phase(s, -d.phase(s))
    for w, et in sorted(d.incident(s).items()):
        d.remove_edge(s, w)
        n = d.add_vertex(kind, PI)
        d.add_edge(s, n)
        d.add_edge(n, w, et)
    d.add_edge(q, s, tq)


def _check_state_copy(d: Diagram, site: Site) -> bool:
    p, s = site
    return (_spider(d, p) and _spider(d, s) and d.degree(p) == 1 and d.phase(p).is_pauli
            and d.connected(p, s) and d.edge_type(p, s) is EdgeType.PLAIN
            and d.kind(s) is _opposite(d.kind(p)) and d.phase(s).is_zero)


def _do_state_copy(d: Diagram, site: Site) -> None:
    p, s = site
    kind, phase = d.kind(p), d.phase(p)
    legs = sorted((w, et) for w, et in d.incident(s).items() if w != p)
    d.remove_vertex(p)
    d.remove_vertex(s)
    for w, et in legs:
        n = d.add_vertex(kind, phase)
        d.add_edge(n, w, et)


def _pair_sites(d: Diagram) -> list[Site]:
    return sorted((p, s) for p in d.spiders() for s in d.incident(p))


# -- Hadamard split ------------------------------------------------------------

def _check_hd(d: Diagram, site: Site) -> bool:
    u, v = site
    return u < v and u in d and v in d and d.connected(u, v) and d.edge_type(u, v) is EdgeType.HADAMARD


def _do_hd(d: Diagram, site: Site) -> None:
    u, v = site
    d.remove_edge(u, v)
    z1 = d.add_vertex(VertexKind.Z, HALF_PI)
    x = d.add_vertex(VertexKind.X, HALF_PI)
    z2 = d.add_vertex(VertexKind.Z, HALF_PI)
    d.add_edge(u, z1)
    d.add_edge(z1, x)
    d.add_edge(x, z2)
    d.add_edge(z2, v)


def _vertex_sites(d: Diagram) -> list[Site]:
    return [(v,) for v in d.spiders()]


@dataclass(frozen=True)
class _Rule:
    candidates: Callable[[Diagram], list[Site]]
    check: Callable[[Diagram, Site], bool]
    mutate: Callable[[Diagram, Site], None]


_RULES: dict[RuleId, _Rule] = {
    RuleId.FUSION: _Rule(_edge_sites, _check_fusion, _do_fusion),
    RuleId.LOCAL_COMP: _Rule(_vertex_sites, _check_lc, _do_lc),
    RuleId.PIVOT: _Rule(_edge_sites, _check_pivot, _do_pivot),
    RuleId.COLOUR_CHANGE: _Rule(_vertex_sites, _check_colour, _do_colour),
    RuleId.IDENTITY: _Rule(_vertex_sites, _check_i1, _do_identity),
    RuleId.HADAMARD_CANCEL: _Rule(_vertex_sites, _check_i2, _do_identity),
    RuleId.BIALGEBRA: _Rule(_edge_sites, _check_bialgebra, _do_bialgebra),
    RuleId.PI_COPY: _Rule(_pair_sites, _check_pi_copy, _do_pi_copy),
    RuleId.STATE_COPY: _Rule(_pair_sites, _check_state_copy, _do_state_copy),
    RuleId.HADAMARD_SPLIT: _Rule(_edge_sites, _check_hd, _do_hd),
}

ALL_RULES: tuple[RuleId, ...] = tuple(RuleId)


def rule_from_name(name: str) -> RuleId:
    try:
        return RuleId(name.strip())
    except ValueError:
        names = ", ".join(r.value for r in RuleId)
        raise ValueError(f"unknown rule {name!r} (expected one of: {names})") from None


def is_match(d: Diagram, rw: Rewrite) -> bool:
    try:
        return _RULES[rw.rule].check(d, rw.site)
    except (KeyError, ValueError):
        return False


def has_match(rule: RuleId, d: Diagram) -> bool:
    r = _RULES[rule]
    return any(r.check(d, s) for s in r.candidates(d))


def find_matches(rule: RuleId, d: Diagram) -> list[Rewrite]:
    """All sites where ``rule`` applies, in ascending site order."""
    r = _RULES[rule]
    return [Rewrite(rule, s) for s in r.candidates(d) if r.check(d, s)]


def apply(d: Diagram, rw: Rewrite) -> Diagram:
    """Apply one rewrite to a copy of ``d``."""
    if not is_match(d, rw):
        raise StaleRewriteError(f"{rw} does not match this diagram")
    out = d.copy()
    _RULES[rw.rule].mutate(out, rw.site)
    return out


def apply_bundled(rule: RuleId, d: Diagram) -> Diagram | None:
    """Apply a maximal non-overlapping batch of ``rule``'s matches.

    Greedy in ascending site order; a match is skipped when a site vertex
    was already part of an applied match, or when earlier rewrites in the
    batch invalidated it.  Returns None when ``rule`` has no match.
    """
    r = _RULES[rule]
    sites = [s for s in r.candidates(d) if r.check(d, s)]
    if not sites:
        return None
    out = d.copy()
    consumed: set[int] = set()
    for s in sites:
        if consumed.intersection(s) or not r.check(out, s):
            continue
        r.mutate(out, s)
        consumed.update(s)
    return out
