"""Pure-Python kernels; reference behaviour for ``_ckernels``."""

from collections import deque


def bfs_path(g, start, goal):
    if not (0 <= start < g.n and 0 <= goal < g.n):
        raise IndexError(f"node out of range for graph of {g.n} nodes")
    adj, eadj = g.lists()
    parent = {start: -1}
    via = {}
    queue = deque((start,))
    visited = 0
    while queue:
        u = queue.popleft()
        visited += 1
        if u == goal:
            nodes = [u]
            edges = []
            while parent[u] != -1:
                edges.append(via[u])
                u = parent[u]
                nodes.append(u)
            nodes.reverse()
            edges.reverse()
            return visited, nodes, edges
        for v, e in zip(adj[u], eadj[u]):
            if v not in parent:
                parent[v] = u
                via[v] = e
                queue.append(v)
    return visited, None, None


def reachable(g, start):
    if not 0 <= start < g.n:
        raise IndexError(f"node out of range for graph of {g.n} nodes")
    adj, _ = g.lists()
    seen = bytearray(g.n)
    seen[start] = 1
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = 1
                stack.append(v)
    return seen
