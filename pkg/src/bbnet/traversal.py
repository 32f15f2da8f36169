"""Fact-to-fact search over rules and over containers and links.

Rule traversal walks the rule-fact network as a bipartite graph. A fact
leads to each rule that reads it, and a rule leads to each fact it writes.
Both facts and rules are nodes there, so ``nodes_visited`` counts every fact
and rule taken off the BFS queue. ``hops`` counts the rules on the returned
path.

Link traversal lifts both facts to their containers and searches the
directed link graph. ``nodes_visited`` counts containers dequeued and
``hops`` counts links.

Both searches are breadth-first and test for the goal when a node is
dequeued. Neighbours are expanded by ascending id of the connecting rule or
link, then ascending id of the reached node. Timed regions cover the search
and path reconstruction only. Adjacency indexes are built on first use and
cached on the network until its structure changes.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .kernels import CSRGraph
from .model import ContainerId, FactId, Link, Network


class Graph(enum.Enum):
    RULES = "rules"
    LINKS = "links"


@dataclass
class TraversalResult:
    found: bool
    path: list[int] = field(default_factory=list)
    hops: int = 0
    nodes_visited: int = 0
    ticks: int = 0  # 100 ns units


def _now() -> int:
    return time.perf_counter_ns()


@dataclass
class _Indexes:
    version: int
    n_facts: int
    rule_graph: CSRGraph
    link_graph: CSRGraph


def _build_rule_graph(net: Network, n_facts: int) -> CSRGraph:
    n_rules = net._next["rule"]
    src, dst, lab = [], [], []
    for rid, rule in net.rules.items():
        rnode = n_facts + rid
        for f, _ in rule.inputs:
            src.append(f)
            dst.append(rnode)
            lab.append(rid)
        for f, _ in rule.outputs:
            src.append(rnode)
            dst.append(f)
            lab.append(-1)
    return CSRGraph.from_edges(n_facts + n_rules, src, dst, lab)


def _build_link_graph(net: Network, keep: Callable[[Link], bool] | None = None) -> CSRGraph:
    links = [l for l in net.links.values() if keep is None or keep(l)]
    return CSRGraph.from_edges(
        net._next["container"],
        [l.start for l in links],
        [l.end for l in links],
        [l.id for l in links],
    )


def indexes(net: Network) -> _Indexes:
    cached = getattr(net, "_indexes", None)
    if cached is not None and cached.version == net.version:
        return cached
    n_facts = net._next["fact"]
    built = _Indexes(net.version, n_facts, _build_rule_graph(net, n_facts), _build_link_graph(net))
    net._indexes = built
    return built


def _backend(name: str | None):
    return kernels.backend if name is None else kernels.load_backend(name)


def rule_traverse(net: Network, start: FactId, end: FactId, *, backend: str | None = None) -> TraversalResult:
    net.fact(start)
    net.fact(end)
    k = _backend(backend)
    idx = indexes(net)
    n_facts = idx.n_facts

    t0 = _now()
    visited, nodes, _ = k.bfs_path(idx.rule_graph, start, end)
    if nodes is None:
        t1 = _now()
        return TraversalResult(False, [], 0, visited, (t1 - t0) // 100)
    path = [u if u < n_facts else u - n_facts for u in nodes]
    t1 = _now()
    return TraversalResult(True, path, len(path) // 2, visited, (t1 - t0) // 100)


def link_traverse(
    net: Network,
    start: FactId,
    end: FactId,
    *,
    backend: str | None = None,
    link_filter: Callable[[Link], bool] | None = None,
) -> TraversalResult:
    """Search from ``start``'s container to ``end``'s container over links.

    ``link_filter`` restricts the search to links it accepts (for example by
    description). It is off the benchmark path: the filtered graph is built
    per call.
    """
    facts = net.facts
    net.fact(start)
    net.fact(end)
    k = _backend(backend)
    graph = indexes(net).link_graph if link_filter is None else _build_link_graph(net, link_filter)

    t0 = _now()
    a = facts[start].container
    b = facts[end].container
    if a is None or b is None:
        t1 = _now()
        # a fact always reaches itself, container or not
        return TraversalResult(start == end, [], 0, 0, (t1 - t0) // 100)
    visited, nodes, edges = k.bfs_path(graph, a, b)
    if nodes is None:
        t1 = _now()
        return TraversalResult(False, [], 0, visited, (t1 - t0) // 100)
    path = [nodes[0]]
    for e, c in zip(edges, nodes[1:]):
        path.append(e)
        path.append(c)
    t1 = _now()
    return TraversalResult(True, path, len(edges), visited, (t1 - t0) // 100)


def traverse(net: Network, start: FactId, end: FactId, via: Graph | str, **kw) -> TraversalResult:
    if Graph(via) is Graph.RULES:
        return rule_traverse(net, start, end, **kw)
    return link_traverse(net, start, end, **kw)


class ReachabilityCache:
    """Untimed reachability queries, memoised per source fact or container."""

    def __init__(self, net: Network, *, backend: str | None = None):
        self.net = net
        self._k = _backend(backend)
        self._idx = indexes(net)
        self._rule: dict[FactId, bytearray] = {}
        self._link: dict[ContainerId, bytearray] = {}

    def by_rules(self, a: FactId, b: FactId) -> bool:
        mask = self._rule.get(a)
        if mask is None:
            mask = self._rule[a] = self._k.reachable(self._idx.rule_graph, a)
        return bool(mask[b])

    def by_links(self, a: FactId, b: FactId) -> bool:
        if a == b:
            return True
        ca = self.net.facts[a].container
        cb = self.net.facts[b].container
        if ca is None or cb is None:
            return False
        mask = self._link.get(ca)
        if mask is None:
            mask = self._link[ca] = self._k.reachable(self._idx.link_graph, ca)
        return bool(mask[cb])

    def both(self, a: FactId, b: FactId) -> bool:
        return self.by_links(a, b) and self.by_rules(a, b)


def both_traversable(net: Network, start: FactId, end: FactId, *, backend: str | None = None) -> bool:
    net.fact(start)
    net.fact(end)
    return ReachabilityCache(net, backend=backend).both(start, end)


def _warshall(adj: np.ndarray) -> np.ndarray:
    m = adj.copy()
    for k in range(m.shape[0]):
        m |= np.outer(m[:, k], m[k, :])
    return m


def reachability_closure(net: Network, graph: Graph | str) -> np.ndarray:
    """Reflexive transitive closure over facts, indexed by fact id.

    Computed by boolean Warshall relaxation over every intermediate node, with
    no early exit. It shares no code with the BFS kernels, which is the point:
    tests use it as the oracle for both engines.
    """
    graph = Graph(graph)
    n = max(net.facts, default=-1) + 1
    diag = np.array(sorted(net.facts), dtype=np.int64)

    if graph is Graph.RULES:
        adj = np.zeros((n, n), dtype=bool)
        for rule in net.rules.values():
            for a in rule.input_facts:
                for b in rule.output_facts:
                    adj[a, b] = True
        adj[diag, diag] = True
        return _warshall(adj)

    nc = max(net.containers, default=-1) + 1
    cadj = np.eye(nc, dtype=bool)
    for link in net.links.values():
        cadj[link.start, link.end] = True
    creach = _warshall(cadj)
    home = np.full(n, -1, dtype=np.int64)
    for f in net.facts.values():
        if f.container is not None:
            home[f.id] = f.container
    placed = home >= 0
    out = np.zeros((n, n), dtype=bool)
    pi = np.flatnonzero(placed)
    out[np.ix_(pi, pi)] = creach[np.ix_(home[pi], home[pi])]
    out[diag, diag] = True
    return out
