# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``bbnet.kernels`` for the contract."""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc


cdef int64_t _bfs(const int64_t[::1] indptr, const int64_t[::1] indices,
                  const int64_t[::1] edge_ids, int64_t n, int64_t start, int64_t goal,
                  int64_t* parent, int64_t* via, int64_t* queue, int64_t* visited) noexcept nogil:
    cdef int64_t head = 0, tail = 0, u, v, k, count = 0
    for k in range(n):
        parent[k] = -2
    parent[start] = -1
    queue[tail] = start
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        count += 1
        if u == goal:
            visited[0] = count
            return 1
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if parent[v] == -2:
                parent[v] = u
                via[v] = edge_ids[k]
                queue[tail] = v
                tail += 1
    visited[0] = count
    return 0


def bfs_path(g, start, goal):
    cdef const int64_t[::1] indptr = g.indptr
    cdef const int64_t[::1] indices = g.indices
    cdef const int64_t[::1] edge_ids = g.edge_ids
    cdef int64_t n = g.n, s = start, t = goal, visited = 0, found, u
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError(f"node out of range for graph of {n} nodes")
    cdef int64_t* buf = <int64_t*> malloc(3 * (n if n > 0 else 1) * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    cdef int64_t* parent = buf
    cdef int64_t* via = buf + n
    cdef int64_t* queue = buf + 2 * n
    try:
        with nogil:
            found = _bfs(indptr, indices, edge_ids, n, s, t, parent, via, queue, &visited)
        if not found:
            return visited, None, None
        nodes = [t]
        edges = []
        u = t
        while parent[u] != -1:
            edges.append(via[u])
            u = parent[u]
            nodes.append(u)
        nodes.reverse()
        edges.reverse()
        return visited, nodes, edges
    finally:
        free(buf)


def reachable(g, start):
    cdef const int64_t[::1] indptr = g.indptr
    cdef const int64_t[::1] indices = g.indices
    cdef int64_t n = g.n, s = start, top = 0, u, v, k
    if not 0 <= s < n:
        raise IndexError(f"node out of range for graph of {n} nodes")
    out = bytearray(n)
    cdef unsigned char[::1] seen = out
    cdef int64_t* stack = <int64_t*> malloc((n if n > 0 else 1) * sizeof(int64_t))
    if stack == NULL:
        raise MemoryError()
    try:
        with nogil:
            seen[s] = 1
            stack[top] = s
            top += 1
            while top > 0:
                top -= 1
                u = stack[top]
                for k in range(indptr[u], indptr[u + 1]):
                    v = indices[k]
                    if not seen[v]:
                        seen[v] = 1
                        stack[top] = v
                        top += 1
    finally:
        free(stack)
    return out
