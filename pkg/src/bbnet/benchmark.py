"""Rule traversal versus link traversal on random networks.

One *test* generates a fresh network, samples an ordered fact pair that is
reachable both over rules and over links, and times one traversal with each
engine. A *condition* is an (assignment method, scale mode, percentage)
triple that runs a fixed number of tests. The full matrix is 3 methods x 5
modes x 6 percentages = 90 conditions.

Node counts and paths depend only on the base seed. Tick columns depend on
the machine.
"""

from __future__ import annotations

import csv
import json
import math
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import astuple, dataclass, fields, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from . import rng as rngmod
from .errors import ConditionFailed, EmptyInput, IoFailure, NoPairFound, ParseFailure
from .generator import SCALE_PERCENTAGES, Assignment, GeneratorConfig, ScaleMode, generate, scale_config
from .kernels import BACKEND_NAME
from .model import Network
from .traversal import ReachabilityCache, link_traverse, rule_traverse

MAX_PAIR_ATTEMPTS = 10_000
MAX_REGENERATIONS = 25
_PAIR_BATCH = 256

METHODS = tuple(Assignment)
MODES = tuple(ScaleMode)


@dataclass(frozen=True)
class TestRecord:
    __test__ = False  # keep pytest from collecting it

    method: str
    mode: str
    pct: int
    run_index: int
    seed: int
    start_fact: int
    end_fact: int
    rule_ticks: int
    link_ticks: int
    rule_nodes: int
    link_nodes: int
    rule_hops: int
    link_hops: int


@dataclass(frozen=True)
class ConditionSummary:
    method: str
    mode: str
    pct: int
    runs: int
    mean_rule_ticks: float
    mean_link_ticks: float
    mean_rule_nodes: float
    mean_link_nodes: float
    ratio: float


Condition = tuple[Assignment, ScaleMode, int]

_warm_lock = threading.Lock()
_warmed: set[str] = set()
_timing_lock = threading.Lock()


def _warm_up(net: Network, a: int, b: int, backend: str | None) -> None:
    key = backend or BACKEND_NAME
    if key in _warmed:
        return
    with _warm_lock:
        if key not in _warmed:
            rule_traverse(net, a, b, backend=backend)
            link_traverse(net, a, b, backend=backend)
            _warmed.add(key)


def sample_pair(net: Network, gen: np.random.Generator, *, max_attempts: int = MAX_PAIR_ATTEMPTS,
                backend: str | None = None) -> tuple[int, int]:
    """Rejection-sample an ordered pair of distinct facts reachable by both engines."""
    facts = np.array(sorted(net.facts), dtype=np.int64)
    n = len(facts)
    if n < 2:
        raise NoPairFound("fewer than two facts")
    reach = ReachabilityCache(net, backend=backend)
    tried = 0
    while tried < max_attempts:
        size = min(_PAIR_BATCH, max_attempts - tried)
        starts = gen.integers(0, n, size=size)
        ends = gen.integers(0, n - 1, size=size)
        ends += ends >= starts
        for i, j in zip(facts[starts].tolist(), facts[ends].tolist()):
            tried += 1
            if reach.both(i, j):
                return i, j
    raise NoPairFound(f"no dually traversable pair in {max_attempts} attempts")


def run_single_test(
    net: Network,
    gen: np.random.Generator,
    *,
    meta: tuple[str, str, int] = ("", "", 0),
    run_index: int = 0,
    seed: int = 0,
    max_attempts: int = MAX_PAIR_ATTEMPTS,
    swap_order: bool = False,
    serial_timing: bool = False,
    backend: str | None = None,
) -> TestRecord:
    a, b = sample_pair(net, gen, max_attempts=max_attempts, backend=backend)
    _warm_up(net, a, b, backend)
    with _timing_lock if serial_timing else nullcontext():
        if swap_order:
            lr = link_traverse(net, a, b, backend=backend)
            rr = rule_traverse(net, a, b, backend=backend)
        else:
            rr = rule_traverse(net, a, b, backend=backend)
            lr = link_traverse(net, a, b, backend=backend)
    if not (rr.found and lr.found):
        raise AssertionError(f"sampled pair {a}->{b} not traversable by both engines")
    method, mode, pct = meta
    return TestRecord(method, mode, pct, run_index, seed, a, b,
                      rr.ticks, lr.ticks, rr.nodes_visited, lr.nodes_visited, rr.hops, lr.hops)


def _meta(cfg: GeneratorConfig, meta) -> tuple[str, str, int]:
    if meta is None:
        method = cfg.assignment.value if cfg.assignment is not None else ""
        return method, ScaleMode.ALL.value, 100
    method, mode, pct = meta
    return Assignment(method).value, ScaleMode(mode).value, int(pct)


def run_condition(
    cfg: GeneratorConfig,
    runs: int,
    meta: tuple | None = None,
    *,
    max_regenerations: int = MAX_REGENERATIONS,
    max_attempts: int = MAX_PAIR_ATTEMPTS,
    swap_order: bool = False,
    serial_timing: bool = False,
    backend: str | None = None,
) -> list[TestRecord]:
    """Run ``runs`` tests, each on a network generated from a per-run seed.

    Run ``i`` uses ``derive_seed(cfg.seed, i)``. When no pair is found, the
    network is regenerated from ``derive_seed(cfg.seed, i, attempt)``.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    cfg.check()
    tag = _meta(cfg, meta)
    out = []
    for i in range(runs):
        for attempt in range(max_regenerations + 1):
            seed = rngmod.derive_seed(cfg.seed, i) if attempt == 0 else rngmod.derive_seed(cfg.seed, i, attempt)
            net = generate(replace(cfg, seed=seed))
            try:
                rec = run_single_test(
                    net, rngmod.stream(seed, rngmod.PAIRS), meta=tag, run_index=i, seed=seed,
                    max_attempts=max_attempts, swap_order=swap_order,
                    serial_timing=serial_timing, backend=backend,
                )
            except NoPairFound:
                continue
            out.append(rec)
            break
        else:
            raise ConditionFailed(tag, cfg.seed, f"run {i}: no pair after {max_regenerations} regenerations")
    return out


def conditions(
    methods: Sequence[Assignment] = METHODS,
    modes: Sequence[ScaleMode] = MODES,
    percentages: Sequence[int] = SCALE_PERCENTAGES,
) -> list[Condition]:
    return [(m, s, p) for m in methods for s in modes for p in percentages]


def run_matrix(
    base: GeneratorConfig,
    runs: int,
    *,
    threads: int = 1,
    swap_order: bool = False,
    serial_timing: bool = False,
    backend: str | None = None,
    matrix: Sequence[Condition] | None = None,
    progress: Callable[[Condition, list[TestRecord]], None] | None = None,
) -> list[TestRecord]:
    if runs < 1:
        raise ValueError("runs must be at least 1")
    todo = conditions() if matrix is None else list(matrix)

    def one(cond: Condition) -> list[TestRecord]:
        method, mode, pct = cond
        cfg = replace(scale_config(base, mode, pct), assignment=method)
        recs = run_condition(cfg, runs, (method, mode, pct), swap_order=swap_order,
                             serial_timing=serial_timing, backend=backend)
        if progress is not None:
            progress(cond, recs)
        return recs

    if threads <= 1:
        chunks = [one(c) for c in todo]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(one, todo))
    return [r for chunk in chunks for r in chunk]


def _order_key(method: str, mode: str, pct: int):
    return ([m.value for m in METHODS].index(method), [s.value for s in MODES].index(mode), pct)


def summarize(records: Iterable[TestRecord]) -> list[ConditionSummary]:
    groups: dict[tuple[str, str, int], list[TestRecord]] = {}
    for r in records:
        groups.setdefault((r.method, r.mode, r.pct), []).append(r)
    if not groups:
        raise EmptyInput("no records to summarize")
    out = []
    for key in sorted(groups, key=lambda k: _order_key(*k)):
        rs = groups[key]
        n = len(rs)
        rt = sum(r.rule_ticks for r in rs) / n
        lt = sum(r.link_ticks for r in rs) / n
        if lt:
            ratio = rt / lt
        else:
            ratio = math.inf if rt else math.nan
        out.append(ConditionSummary(*key, n, rt, lt,
                                    sum(r.rule_nodes for r in rs) / n,
                                    sum(r.link_nodes for r in rs) / n, ratio))
    return out


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return np.format_float_positional(v, trim="-")
    return str(v)


def write_csv(items: Sequence[TestRecord] | Sequence[ConditionSummary], path, kind: type | None = None) -> None:
    """Header plus one row per item, columns in dataclass field order."""
    kind = kind or (type(items[0]) if items else None)
    if kind is None:
        raise EmptyInput("cannot infer CSV columns from an empty list; pass kind=")
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([f.name for f in fields(kind)])
            for it in items:
                w.writerow([_fmt(v) for v in astuple(it)])
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def _read_csv(path, kind: type) -> list:
    cols = fields(kind)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    if not rows or rows[0] != [c.name for c in cols]:
        raise ParseFailure("line 1", f"expected header {[c.name for c in cols]}")
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(cols):
            raise ParseFailure(f"line {lineno}", f"expected {len(cols)} fields, got {len(row)}")
        vals = []
        for c, raw in zip(cols, row):
            conv = {"str": str, "int": int, "float": float}[c.type if isinstance(c.type, str) else c.type.__name__]
            try:
                vals.append(conv(raw))
            except ValueError:
                raise ParseFailure(f"line {lineno}", f"field {c.name}: bad value {raw!r}") from None
        out.append(kind(*vals))
    return out


def read_records_csv(path) -> list[TestRecord]:
    return _read_csv(path, TestRecord)


def read_summary_csv(path) -> list[ConditionSummary]:
    return _read_csv(path, ConditionSummary)


def manifest(base: GeneratorConfig, runs: int | None = None, **extra) -> dict:
    from . import __version__

    doc = {
        "config": base.to_dict(),
        "tool_version": __version__,
        "kernel_backend": BACKEND_NAME,
        "warmup": "one untimed traversal per engine per process",
        "self_links": "forbidden",
        "duplicate_links": "allowed",
    }
    if runs is not None:
        doc["runs"] = runs
    doc.update(extra)
    return doc


def write_manifest(path, doc: dict) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def manifest_path(out_path) -> str:
    return os.fspath(out_path) + ".manifest.json"


def default_threads() -> int:
    raw = os.environ.get("BB_LC_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"BB_LC_THREADS must be an integer, got {raw!r}") from None
