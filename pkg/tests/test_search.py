import random
import sys

import pytest

from corpus import chain, circuit_corpus, random_graph_like
from zxsearch.diagram import Diagram, EdgeType, VertexKind, to_graph_like
from zxsearch.metrics import Metric, metric_value
from zxsearch.oracle import equal_up_to_scalar, gflow_exists, tensor_of_diagram
from zxsearch.phase import HALF_PI, ZERO, Phase
from zxsearch.qasm import Circuit, circuit_to_zx
from zxsearch.rules import RuleId, find_matches
from zxsearch.search import (
    DEFAULT_RULE_ORDER,
    Extractability,
    SearchConfig,
    SearchNode,
    StateBudgetExceeded,
    Strategy,
    Termination,
    _Clock,
    _Incumbent,
    brute_force_min,
    children,
    dfs,
    iddfs,
    is_leaf,
    parse_rule_order,
    search,
)

Q = Phase(1, 4)
H = EdgeType.HADAMARD


def cfg(**kw):
    kw.setdefault("time_limit", None)
    return SearchConfig(**kw)


def fusion_chain():
    return chain([Q, ZERO, Q, ZERO])


def test_default_order():
    assert [r.value for r in DEFAULT_RULE_ORDER] == ["lc", "pivot", "b", "pi", "c", "f", "i1", "i2", "hd", "h"]
    assert parse_rule_order("lc, f,i1") == (RuleId.LOCAL_COMP, RuleId.FUSION, RuleId.IDENTITY)


@pytest.mark.parametrize("kw", [
    {"depth_limit": -1}, {"hd_budget": -1}, {"time_limit": -1.0}, {"rule_order": ()},
    {"rule_order": (RuleId.FUSION, RuleId.FUSION)},
])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        SearchConfig(**kw)


def test_children_one_per_rule():
    d = Diagram()
    c = d.add_vertex(VertexKind.Z, HALF_PI)
    a, b = d.add_vertex(VertexKind.Z, Q), d.add_vertex(VertexKind.Z, Q)
    d.add_edge(c, a, H)
    d.add_edge(c, b, H)
    e = d.add_vertex(VertexKind.Z, Q)
    d.add_edge(b, e)
    for v in (a, e):
        d.add_edge(v, d.add_output())
    kids = children(SearchNode(d), cfg(rule_order=(RuleId.LOCAL_COMP, RuleId.FUSION)))
    assert [k.last_rule for k in kids] == [RuleId.LOCAL_COMP, RuleId.FUSION]
    assert all(k.depth == 1 for k in kids)


def test_no_consecutive_colour_change():
    d = chain([Q])
    node = SearchNode(d, 1, (RuleId.COLOUR_CHANGE,))
    assert children(node, cfg(rule_order=(RuleId.COLOUR_CHANGE,))) == []


def test_colour_change_alone_is_leaf():
    g = to_graph_like(chain([Q, HALF_PI], et=H))
    c = cfg(hd_budget=0)
    assert all(not find_matches(r, g) for r in RuleId if r is not RuleId.COLOUR_CHANGE
               and r is not RuleId.HADAMARD_SPLIT)
    assert find_matches(RuleId.COLOUR_CHANGE, g)
    node = SearchNode(g)
    assert children(node, c) == []
    assert is_leaf(node, c)


def test_colour_change_child_when_other_rules_apply():
    d = chain([Q, Q])
    kids = children(SearchNode(d), cfg(rule_order=(RuleId.FUSION, RuleId.COLOUR_CHANGE)))
    assert [k.last_rule for k in kids] == [RuleId.FUSION, RuleId.COLOUR_CHANGE]


def test_hd_budget():
    d = chain([Q, Q], et=H)
    c = cfg(rule_order=(RuleId.HADAMARD_SPLIT,), hd_budget=1)
    (kid,) = children(SearchNode(d), c)
    assert kid.hd_used == 1
    assert children(kid, c) == []


def test_is_leaf():
    c = cfg(depth_limit=3)
    assert is_leaf(SearchNode(circuit_to_zx(Circuit(2))), c)
    assert is_leaf(SearchNode(fusion_chain(), depth=3), c)
    assert not is_leaf(SearchNode(fusion_chain()), c)
    assert is_leaf(SearchNode(fusion_chain()), c, clock=_Clock(0.0))


def test_evaluate_leaf_order(monkeypatch):
    root = SearchNode(chain([Q] * 7, et=H))
    c = cfg(extractability=Extractability.GFLOW)
    inc = _Incumbent(root, c, _Clock(None))
    assert inc.result.best_value == 7
    calls = []
    mod = sys.modules["zxsearch.search"]
    original = mod._extractable
    monkeypatch.setattr(mod, "_extractable", lambda kind, d: calls.append(d) or original(kind, d))
    assert not inc.evaluate_leaf(SearchNode(chain([Q] * 9, et=H)))
    assert calls == []  # worse value: predicate never consulted
    better = SearchNode(chain([Q] * 5, et=H))
    assert inc.evaluate_leaf(better)
    assert inc.result.best_value == 5 and len(calls) == 1
    blocked = to_graph_like(chain([Q] * 3, et=H))
    blocked.add_vertex(VertexKind.Z, Q)  # isolated spider: no gflow
    assert not inc.evaluate_leaf(SearchNode(blocked))
    assert inc.result.best_value == 5
    assert [p.best_value for p in inc.result.trace] == [7, 5]


def test_dfs_depth_zero():
    d = fusion_chain()
    r = dfs(d, cfg(depth_limit=0))
    assert r.nodes_expanded == 1
    assert r.best == to_graph_like(d)


def test_time_limit_zero():
    for strategy in Strategy:
        r = search(fusion_chain(), cfg(strategy=strategy, time_limit=0.0))
        assert r.terminated_by is Termination.TIME_LIMIT
        assert r.best == to_graph_like(fusion_chain())


def test_chain_minimum():
    c = cfg(rule_order=(RuleId.FUSION, RuleId.IDENTITY), depth_limit=4, normalize_root=False)
    r = dfs(fusion_chain(), c)
    # two pi/4 phases fuse to pi/2, which is not a T phase
    assert r.best_value == 0
    assert [r.best.phase(v) for v in r.best.spiders()] == [HALF_PI]
    assert iddfs(fusion_chain(), c).best_value == r.best_value == brute_force_min(fusion_chain(), c)


def test_iddfs_depth_one_matches_dfs():
    for c0 in circuit_corpus(5, 10, max_qubits=3, max_gates=8):
        d = circuit_to_zx(c0)
        a = dfs(d, cfg(depth_limit=1))
        b = iddfs(d, cfg(depth_limit=1))
        assert a.best == b.best and a.leaves_evaluated == b.leaves_evaluated


def test_bundled_node_count():
    d = Diagram()
    for _ in range(4):
        i, o = d.add_input(), d.add_output()
        a, b = d.add_vertex(VertexKind.Z, Q), d.add_vertex(VertexKind.Z, Q)
        d.add_edge(i, a)
        d.add_edge(a, b)
        d.add_edge(b, o)
    r = dfs(d, cfg(rule_order=(RuleId.FUSION,), normalize_root=False))
    assert r.nodes_expanded == 2
    assert r.best_value == 0


def test_invariants_on_corpus():
    for c0 in circuit_corpus(6, 12, max_qubits=3, max_gates=8):
        d = circuit_to_zx(c0)
        for strategy in Strategy:
            for metric in Metric:
                r = search(d, cfg(strategy=strategy, metric=metric, depth_limit=3))
                assert r.best_value == metric_value(metric, r.best)
                values = [p.best_value for p in r.trace]
                assert values == sorted(values, reverse=True)
                times = [p.elapsed_ms for p in r.trace]
                assert times == sorted(set(times))
                assert r.best_value <= metric_value(metric, to_graph_like(d))
                assert equal_up_to_scalar(tensor_of_diagram(d), tensor_of_diagram(r.best))


def test_gflow_mode_keeps_extractable():
    for c0 in circuit_corpus(13, 8, max_qubits=3, max_gates=8):
        d = circuit_to_zx(c0)
        r = iddfs(d, cfg(depth_limit=3, extractability=Extractability.GFLOW))
        assert gflow_exists(r.best)


def test_brute_force_budget():
    d = to_graph_like(random_graph_like(random.Random(0), 6, 2, 2, p_edge=0.6))
    with pytest.raises(StateBudgetExceeded):
        brute_force_min(d, cfg(depth_limit=6), max_states=5)
    assert brute_force_min(d, cfg(depth_limit=0)) == metric_value(Metric.TCOUNT, d)


def test_visit_hook_sees_every_node():
    seen = []
    r = iddfs(fusion_chain(), cfg(depth_limit=3, normalize_root=False), visit=seen.append)
    assert len(seen) == r.nodes_expanded
    assert seen[0].depth == 0
