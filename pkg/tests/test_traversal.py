import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbnet import errors
from bbnet.generator import Assignment, GeneratorConfig, generate
from bbnet.model import Network
from bbnet.traversal import (
    Graph,
    ReachabilityCache,
    both_traversable,
    link_traverse,
    reachability_closure,
    rule_traverse,
    traverse,
)


def test_identity_pair(chain, backend):
    net, (f1, _, _), _ = chain
    for res in (rule_traverse(net, f1, f1, backend=backend), link_traverse(net, f1, f1, backend=backend)):
        assert res.found and res.hops == 0


def test_chain_path(chain, backend):
    net, (f1, f2, f3), (r1, r2) = chain
    res = rule_traverse(net, f1, f3, backend=backend)
    assert res.found
    assert res.path == [f1, r1, f2, r2, f3]
    assert res.hops == 2
    back = rule_traverse(net, f3, f1, backend=backend)
    assert not back.found and back.path == [] and back.hops == 0
    assert back.nodes_visited == 1


def test_chain_closure_has_three_pairs(chain):
    net, _, _ = chain
    m = reachability_closure(net, Graph.RULES)
    assert m.sum() - np.trace(m) == 3


def test_unknown_fact(chain):
    net, _, _ = chain
    with pytest.raises(errors.UnknownFact):
        rule_traverse(net, 0, 77)
    with pytest.raises(errors.UnknownFact):
        link_traverse(net, 77, 0)


def test_link_unassigned_is_not_found(chain):
    net, (f1, f2, _), _ = chain
    assert not link_traverse(net, f1, f2).found


def test_link_direction_matters(backend):
    net = Network()
    a, b = net.add_container("a"), net.add_container("b")
    fa, fb = net.add_fact("x", True), net.add_fact("y", True)
    net.assign_fact(fa, a)
    net.assign_fact(fb, b)
    lid = net.add_link("to", a, b)
    fwd = link_traverse(net, fa, fb, backend=backend)
    assert fwd.found and fwd.path == [a, lid, b] and fwd.hops == 1
    assert not link_traverse(net, fb, fa, backend=backend).found
    net.add_link("back", b, a)  # index rebuilt after the change
    assert link_traverse(net, fb, fa, backend=backend).found


def test_same_container_needs_no_link():
    net = Network()
    c = net.add_container("c")
    a, b = net.add_fact("a", True), net.add_fact("b", True)
    net.assign_fact(a, c)
    net.assign_fact(b, c)
    res = link_traverse(net, a, b)
    assert res.found and res.hops == 0 and res.path == [c] and res.nodes_visited == 1


def test_employee_jane_reaches_office(employee, backend):
    jane = employee.facts_named("jane_name")[0]
    office = employee.facts_named("office_name")[0]
    res = traverse(employee, jane, office, "links", backend=backend)
    assert res.found and res.hops == 1
    assert employee.links[res.path[1]].description == "works at"


def test_link_filter(equipment):
    c1 = equipment.facts_named("computer1_os_windows")[0]
    srv = equipment.facts_named("server_hosts_web_page")[0]
    assert link_traverse(equipment, c1, srv).found
    wired = link_traverse(equipment, c1, srv, link_filter=lambda l: l.description == "wired")
    assert not wired.found


def test_ticks_are_nonnegative_ints(employee):
    res = rule_traverse(employee, 0, 1)
    assert isinstance(res.ticks, int) and res.ticks >= 0


def _all_simple_paths_min(adj, a, b):
    """Fewest edges over all simple paths, by exhaustive DFS."""
    best = None
    stack = [(a, (a,))]
    while stack:
        u, seen = stack.pop()
        if u == b:
            steps = len(seen) - 1
            best = steps if best is None else min(best, steps)
            continue
        for v in adj.get(u, ()):
            if v not in seen:
                stack.append((v, seen + (v,)))
    return best


def _fact_adjacency(net):
    adj = {}
    for rule in net.rules.values():
        for x in rule.input_facts:
            adj.setdefault(x, set()).update(rule.output_facts)
    return adj


def _container_adjacency(net):
    adj = {}
    for l in net.links.values():
        adj.setdefault(l.start, set()).add(l.end)
    return adj


def _check_path(net, res, a, b, via):
    """The returned path alternates node/edge ids and uses real edges."""
    if via is Graph.RULES:
        facts, rules = res.path[0::2], res.path[1::2]
        assert facts[0] == a and facts[-1] == b
        for x, rid, y in zip(facts, rules, facts[1:]):
            assert x in net.rule(rid).input_facts and y in net.rule(rid).output_facts
    else:
        conts, links = res.path[0::2], res.path[1::2]
        assert conts[0] == net.fact(a).container and conts[-1] == net.fact(b).container
        for x, lid, y in zip(conts, links, conts[1:]):
            assert (net.links[lid].start, net.links[lid].end) == (x, y)


small_cfgs = st.builds(
    lambda f, r, c, l, m, seed: GeneratorConfig(
        facts=f, rules=r if f >= 3 else 0, containers=c, links=l if c >= 2 else 0,
        assignment=m, rule_inputs=1 + seed % 2, rule_outputs=1, seed=seed,
    ),
    st.integers(1, 10), st.integers(0, 12), st.integers(1, 5), st.integers(0, 8),
    st.sampled_from(list(Assignment) + [None]), st.integers(0, 2**32),
)


@settings(max_examples=120, deadline=None)
@given(small_cfgs)
def test_shortest_paths_match_exhaustive_search(cfg):
    net = generate(cfg)
    fadj, cadj = _fact_adjacency(net), _container_adjacency(net)
    for a, b in itertools.product(net.facts, repeat=2):
        res = rule_traverse(net, a, b)
        best = _all_simple_paths_min(fadj, a, b)
        assert res.found == (best is not None)
        if res.found:
            assert res.hops == best
            _check_path(net, res, a, b, Graph.RULES)
        lres = link_traverse(net, a, b)
        ca, cb = net.fact(a).container, net.fact(b).container
        if ca is None or cb is None:
            assert lres.found == (a == b)
            continue
        best = _all_simple_paths_min(cadj, ca, cb)
        assert lres.found == (best is not None)
        if lres.found:
            assert lres.hops == best
            _check_path(net, lres, a, b, Graph.LINKS)


@settings(max_examples=60, deadline=None)
@given(small_cfgs)
def test_closure_matches_traversal(cfg):
    net = generate(cfg)
    rules = reachability_closure(net, Graph.RULES)
    links = reachability_closure(net, Graph.LINKS)
    cache = ReachabilityCache(net)
    for a, b in itertools.product(net.facts, repeat=2):
        assert rule_traverse(net, a, b).found == rules[a, b] == cache.by_rules(a, b)
        assert link_traverse(net, a, b).found == links[a, b] == cache.by_links(a, b)


def test_both_traversable_matches_closures():
    net = generate(GeneratorConfig(facts=20, rules=25, containers=5, links=6,
                                   rule_inputs=1, rule_outputs=1, seed=99))
    both = reachability_closure(net, Graph.RULES) & reachability_closure(net, Graph.LINKS)
    pairs = [(a, b) for a in net.facts for b in net.facts if a != b]
    assert len(pairs) == 380
    got = [both_traversable(net, a, b) for a, b in pairs]
    assert got == [bool(both[a, b]) for a, b in pairs]
    assert 0 < sum(got) < 380


def test_backends_agree_on_base_network():
    from bbnet.kernels import available_backends

    if len(available_backends()) < 2:
        pytest.skip("compiled backend not built")
    net = generate(GeneratorConfig(seed=4))
    rnd = random.Random(4)
    for _ in range(200):
        a, b = rnd.sample(sorted(net.facts), 2)
        for fn in (rule_traverse, link_traverse):
            x, y = fn(net, a, b, backend="cython"), fn(net, a, b, backend="python")
            assert (x.found, x.path, x.hops, x.nodes_visited) == (y.found, y.path, y.hops, y.nodes_visited)


def test_counters_are_deterministic(backend):
    cfg = GeneratorConfig(seed=21)
    one, two = generate(cfg), generate(cfg)
    for a, b in [(0, 500), (10, 999), (3, 4)]:
        r1, r2 = rule_traverse(one, a, b, backend=backend), rule_traverse(two, a, b, backend=backend)
        assert (r1.path, r1.nodes_visited) == (r2.path, r2.nodes_visited)
