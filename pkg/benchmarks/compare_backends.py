"""Time the compiled and pure-Python BFS kernels on identical work.

Both backends traverse the same generated networks and the same sampled
fact pairs; node counts are checked for equality before any timing is
reported.

    python benchmarks/compare_backends.py --networks 5 --pairs 200
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from dataclasses import replace

from bbnet import rng
from bbnet.benchmark import sample_pair
from bbnet.generator import BASE_CONFIG, generate
from bbnet.kernels import available_backends
from bbnet.traversal import indexes, link_traverse, rule_traverse


def _workload(networks: int, pairs: int, seed: int):
    out = []
    for i in range(networks):
        s = rng.derive_seed(seed, i)
        net = generate(replace(BASE_CONFIG, seed=s))
        indexes(net)  # build adjacency outside the timed loop
        gen = rng.stream(s, rng.PAIRS)
        out.append((net, [sample_pair(net, gen) for _ in range(pairs)]))
    return out


def _time(work, backend: str, repeat: int):
    best = {}
    counts = []
    for fn in (rule_traverse, link_traverse):
        per_rep = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            for net, pairs in work:
                for a, b in pairs:
                    fn(net, a, b, backend=backend)
            per_rep.append(time.perf_counter() - t0)
        best[fn.__name__] = min(per_rep)
    for net, pairs in work:
        for a, b in pairs:
            counts.append((rule_traverse(net, a, b, backend=backend).nodes_visited,
                           link_traverse(net, a, b, backend=backend).nodes_visited))
    return best, counts


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--networks", type=int, default=5)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    args = p.parse_args(argv)

    backends = available_backends()
    if len(backends) < 2:
        print("compiled backend is not built; only", backends, file=sys.stderr)
    work = _workload(args.networks, args.pairs, args.seed)
    n = sum(len(pairs) for _, pairs in work)
    results = {b: _time(work, b, args.repeat) for b in backends}

    counts = [c for _, c in results.values()]
    if any(c != counts[0] for c in counts[1:]):
        print("backends disagree on node counts", file=sys.stderr)
        return 1
    mean_nodes = [statistics.fmean(col) for col in zip(*counts[0])]
    print(f"{n} pairs on {len(work)} base-scale networks; mean nodes rule {mean_nodes[0]:.1f}, "
          f"link {mean_nodes[1]:.1f}")
    print(f"{'backend':8s} {'rule us/query':>14s} {'link us/query':>14s}")
    for b, (best, _) in results.items():
        print(f"{b:8s} {1e6 * best['rule_traverse'] / n:14.2f} {1e6 * best['link_traverse'] / n:14.2f}")
    if len(results) == 2:
        c, py = results["cython"][0], results["python"][0]
        print(f"speedup  {py['rule_traverse'] / c['rule_traverse']:14.1f}x "
              f"{py['link_traverse'] / c['link_traverse']:13.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
