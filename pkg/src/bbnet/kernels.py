"""Graph kernels behind the traversal engines.

Two interchangeable backends implement the same functions:

``cython``
    ``bbnet._ckernels``, compiled from ``_ckernels.pyx``. The search loop
    runs over typed CSR arrays without the GIL.
``python``
    ``bbnet._pykernels``, plain lists and a deque.

The compiled backend is picked at import when it was built. Set
``BBNET_PURE_PYTHON=1`` to force the fallback. Both backends produce
identical visit counts and paths; only wall time differs.

Kernel functions (``g`` is a :class:`CSRGraph`):

``bfs_path(g, start, goal) -> (visited, nodes, edges)``
    Breadth-first search that tests for the goal when a node is dequeued.
    ``visited`` is the number of nodes dequeued. ``nodes``/``edges`` give the
    shortest path (``edges[i]`` joins ``nodes[i]`` and ``nodes[i + 1]``), or
    are ``None`` when the goal is unreachable.
``reachable(g, start) -> bytearray``
    Mask of nodes reachable from ``start``, including ``start``.
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

import numpy as np


class CSRGraph:
    """Directed graph in compressed sparse row form.

    Neighbours of ``u`` are ``indices[indptr[u]:indptr[u + 1]]``, in the
    order they are expanded; ``edge_ids`` carries a label per edge (``-1``
    when edges have no identity of their own).
    """

    __slots__ = ("n", "indptr", "indices", "edge_ids", "_lists")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray, edge_ids: np.ndarray):
        self.n = int(n)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.edge_ids = np.ascontiguousarray(edge_ids, dtype=np.int64)
        self._lists = None

    @classmethod
    def from_edges(cls, n: int, src, dst, labels=None) -> "CSRGraph":
        """Build from parallel edge arrays; neighbour order is ``(label, dst)``.

        Without labels the order is ascending ``dst``.
        """
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        labels = np.full(len(src), -1, dtype=np.int64) if labels is None else np.asarray(labels, dtype=np.int64)
        order = np.lexsort((dst, labels, src))
        src, dst, labels = src[order], dst[order], labels[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst, labels)

    def lists(self) -> tuple[list[list[int]], list[list[int]]]:
        """Adjacency as Python lists, cached, for the pure-Python backend."""
        if self._lists is None:
            ptr = self.indptr.tolist()
            idx = self.indices.tolist()
            eid = self.edge_ids.tolist()
            self._lists = (
                [idx[ptr[u]:ptr[u + 1]] for u in range(self.n)],
                [eid[ptr[u]:ptr[u + 1]] for u in range(self.n)],
            )
        return self._lists

    @property
    def edge_count(self) -> int:
        return int(self.indices.shape[0])


BACKENDS = ("cython", "python")
_MODULES = {"cython": "bbnet._ckernels", "python": "bbnet._pykernels"}


def load_backend(name: str) -> ModuleType:
    if name not in _MODULES:
        raise ValueError(f"unknown kernel backend {name!r}; choose from {BACKENDS}")
    return importlib.import_module(_MODULES[name])


def available_backends() -> list[str]:
    found = []
    for name in BACKENDS:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


def _select() -> tuple[str, ModuleType]:
    if os.environ.get("BBNET_PURE_PYTHON", "").strip() not in ("", "0"):
        return "python", load_backend("python")
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", load_backend("python")


BACKEND_NAME, backend = _select()
