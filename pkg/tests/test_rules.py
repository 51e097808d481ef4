import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import chain, diagram_corpus, random_diagram, random_graph_like
from zxsearch.diagram import Diagram, EdgeType, VertexKind
from zxsearch.metrics import tcount
from zxsearch.oracle import compare_up_to_scalar, tensor_of_diagram
from zxsearch.phase import HALF_PI, PI, ZERO, Phase
from zxsearch.rules import (
    ALL_RULES,
    Rewrite,
    RuleId,
    StaleRewriteError,
    apply,
    apply_bundled,
    find_matches,
    has_match,
    is_match,
    rule_from_name,
)

Z, X = VertexKind.Z, VertexKind.X
PLAIN, H = EdgeType.PLAIN, EdgeType.HADAMARD
Q = Phase(1, 4)


def equivalent(a, b):
    return compare_up_to_scalar(tensor_of_diagram(a), tensor_of_diagram(b)).equal


def star(centre_phase, leaf_phases, edge=H, kind=Z, wired=True):
    """Centre spider joined to leaves by ``edge``; each leaf gets its own output wire."""
    d = Diagram()
    c = d.add_vertex(kind, centre_phase)
    leaves = []
    for p in leaf_phases:
        w = d.add_vertex(kind, p)
        d.add_edge(c, w, edge)
        if wired:
            d.add_edge(w, d.add_output())
        leaves.append(w)
    return d, c, leaves


def test_rule_names():
    assert [r.value for r in ALL_RULES] == ["f", "lc", "pivot", "h", "i1", "i2", "b", "pi", "c", "hd"]
    assert rule_from_name(" pivot ") is RuleId.PIVOT
    with pytest.raises(ValueError, match="unknown rule"):
        rule_from_name("unfuse")
    assert str(Rewrite(RuleId.FUSION, (1, 2))) == "f@1,2"


def test_fusion_match_and_apply():
    d = chain([Q, Q])
    (rw,) = find_matches(RuleId.FUSION, d)
    out = apply(d, rw)
    assert [out.phase(v) for v in out.spiders()] == [HALF_PI]
    assert equivalent(d, out)


def test_fusion_needs_plain_edge():
    assert find_matches(RuleId.FUSION, chain([Q, Q], et=H)) == []


def test_identity_in_chain():
    d = chain([Q, ZERO, Q])
    ms = find_matches(RuleId.IDENTITY, d)
    assert [m.site for m in ms] == [(d.spiders()[1],)]
    out = apply(d, ms[0])
    assert len(out.spiders()) == 2
    assert equivalent(d, out)


def test_identity_split_by_edge_types():
    hh = chain([Q, ZERO, Q], et=H)
    assert find_matches(RuleId.IDENTITY, hh) == []
    (rw,) = find_matches(RuleId.HADAMARD_CANCEL, hh)
    out = apply(hh, rw)
    a, b = out.spiders()
    assert out.edge_type(a, b) is PLAIN
    assert equivalent(hh, out)


def test_lc_connects_neighbours():
    d, c, (a, b) = star(HALF_PI, [Q, ZERO])
    assert not d.connected(a, b)
    (rw,) = find_matches(RuleId.LOCAL_COMP, d)
    assert rw.site == (c,)
    out = apply(d, rw)
    assert c not in out
    assert out.connected(a, b) and out.edge_type(a, b) is H
    assert out.phase(a) == Q - HALF_PI
    assert equivalent(d, out)


def test_lc_twice_restores_adjacency():
    rng = random.Random(9)
    for _ in range(20):
        d = random_graph_like(rng, 5, 1, 1)
        v = d.add_vertex(Z, HALF_PI)
        nbrs = [w for w in d.spiders() if w != v and rng.random() < 0.6]
        for w in nbrs:
            d.add_edge(v, w, H)
        once = apply(d, Rewrite(RuleId.LOCAL_COMP, (v,)))
        again = once.copy()
        v2 = again.add_vertex(Z, HALF_PI)
        for w in nbrs:
            again.add_edge(v2, w, H)
        twice = apply(again, Rewrite(RuleId.LOCAL_COMP, (v2,)))
        rest = [w for w in d.spiders() if w != v]
        adj = lambda g: {(a, b) for a in rest for b in rest if a < b and g.connected(a, b)}
        assert adj(twice) == adj(d)


def test_lc_rejects_boundary_neighbour():
    d, c, _ = star(HALF_PI, [ZERO])
    d.add_edge(c, d.add_input())
    assert find_matches(RuleId.LOCAL_COMP, d) == []


def test_pivot():
    d = Diagram()
    u, v = d.add_vertex(Z, PI), d.add_vertex(Z, ZERO)
    d.add_edge(u, v, H)
    outs = []
    for host, phase in ((u, Q), (u, ZERO), (v, HALF_PI)):
        w = d.add_vertex(Z, phase)
        d.add_edge(host, w, H)
        d.add_edge(w, d.add_output())
        outs.append(w)
    shared = d.add_vertex(Z, Q)
    d.add_edge(u, shared, H)
    d.add_edge(v, shared, H)
    d.add_edge(shared, d.add_output())
    (rw,) = find_matches(RuleId.PIVOT, d)
    assert rw.site == (u, v)
    out = apply(d, rw)
    assert u not in out and v not in out
    assert out.connected(outs[0], outs[2]) and out.connected(outs[2], shared)
    assert equivalent(d, out)


def test_colour_change_involution():
    d = chain([Q, HALF_PI], et=H)
    v = d.spiders()[0]
    once = apply(d, Rewrite(RuleId.COLOUR_CHANGE, (v,)))
    assert once.kind(v) is X
    assert equivalent(d, once)
    assert apply(once, Rewrite(RuleId.COLOUR_CHANGE, (v,))) == d


def bialgebra_diagram():
    d = Diagram()
    z, x = d.add_vertex(Z), d.add_vertex(X)
    d.add_edge(z, x)
    for host in (z, z, x, x):
        w = d.add_vertex(Z if host == x else X, Q)
        d.add_edge(host, w)
        d.add_edge(w, d.add_output())
    return d, z, x


def test_bialgebra():
    d, z, x = bialgebra_diagram()
    (rw,) = find_matches(RuleId.BIALGEBRA, d)
    out = apply(d, rw)
    assert len(out.spiders()) == len(d.spiders()) + 2
    assert equivalent(d, out)


def test_bialgebra_needs_zero_phases():
    d, z, _ = bialgebra_diagram()
    d.set_phase(z, Q)
    assert find_matches(RuleId.BIALGEBRA, d) == []


def test_pi_copy():
    d = Diagram()
    i = d.add_input()
    p = d.add_vertex(X, PI)
    s = d.add_vertex(Z, Q)
    d.add_edge(i, p)
    d.add_edge(p, s)
    for _ in range(2):
        d.add_edge(s, d.add_output())
    (rw,) = find_matches(RuleId.PI_COPY, d)
    assert rw.site == (p, s)
    out = apply(d, rw)
    assert out.phase(s) == -Q
    assert sum(out.phase(v) == PI for v in out.spiders()) == 2
    assert equivalent(d, out)


@pytest.mark.parametrize("state", [ZERO, PI])
def test_state_copy(state):
    d = Diagram()
    p = d.add_vertex(X, state)
    s = d.add_vertex(Z)
    d.add_edge(p, s)
    for _ in range(3):
        d.add_edge(s, d.add_output())
    (rw,) = find_matches(RuleId.STATE_COPY, d)
    out = apply(d, rw)
    assert s not in out
    assert [out.phase(v) for v in out.spiders()] == [state] * 3
    assert equivalent(d, out)


def test_hd_then_refuse():
    d = chain([Q, Q], et=H)
    a, b = d.spiders()
    split = apply(d, Rewrite(RuleId.HADAMARD_SPLIT, (a, b)))
    assert len(split.spiders()) == 5
    assert not split.connected(a, b)
    assert equivalent(d, split)
    # fuse the Z(pi/2) ends back and compare the whole chain
    g = split
    while (ms := find_matches(RuleId.FUSION, g)):
        g = apply(g, ms[0])
    assert equivalent(d, g)


def test_stale_rewrite():
    d = chain([Q, Q])
    (rw,) = find_matches(RuleId.FUSION, d)
    out = apply(d, rw)
    with pytest.raises(StaleRewriteError):
        apply(out, rw)
    assert not is_match(out, rw)
    assert not is_match(d, Rewrite(RuleId.FUSION, (99, 100)))


def test_apply_does_not_mutate():
    d = chain([Q, Q])
    before = d.copy()
    apply(d, find_matches(RuleId.FUSION, d)[0])
    assert d == before


def test_bundled_disjoint_pairs():
    d = Diagram()
    for _ in range(2):
        i, o = d.add_input(), d.add_output()
        a, b = d.add_vertex(Z, Q), d.add_vertex(Z, Q)
        d.add_edge(i, a)
        d.add_edge(a, b)
        d.add_edge(b, o)
    out = apply_bundled(RuleId.FUSION, d)
    assert len(out.spiders()) == 2
    assert find_matches(RuleId.FUSION, out) == []


def test_bundled_overlap_takes_leftmost():
    d = chain([Q, HALF_PI, PI])
    a, b, c = d.spiders()
    out = apply_bundled(RuleId.FUSION, d)
    assert out.spiders() == [a, c]
    assert out.phase(a) == Q + HALF_PI
    assert len(find_matches(RuleId.FUSION, out)) == 1
    assert equivalent(d, out)


def test_bundled_no_match():
    d = chain([Q, Q], et=H)
    assert apply_bundled(RuleId.FUSION, d) is None
    assert not has_match(RuleId.FUSION, d)


def test_matches_deterministic():
    for d in diagram_corpus(21, 20, max_spiders=14):
        for r in RuleId:
            ms = find_matches(r, d)
            assert ms == find_matches(r, d.copy())
            assert ms == sorted(ms)
            assert has_match(r, d) == bool(ms)


NON_INCREASING = {RuleId.FUSION, RuleId.LOCAL_COMP, RuleId.PIVOT, RuleId.IDENTITY,
                  RuleId.HADAMARD_CANCEL, RuleId.PI_COPY, RuleId.STATE_COPY}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31))
def test_soundness_property(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, max_boundary=6, max_spiders=14)
    for r in RuleId:
        for rw in find_matches(r, d):
            out = apply(d, rw)
            out.check()
            assert equivalent(d, out), rw
            if r in NON_INCREASING:
                assert tcount(out) <= tcount(d)
        bundled = apply_bundled(r, d)
        if bundled is not None:
            bundled.check()
            assert equivalent(d, bundled)
