"""Command-line driver.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable, malformed or
invalid input, or validation findings), 3 benchmark condition failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import __version__, benchmark
from .errors import (
    BlackboardError,
    ConditionFailed,
    IntegrityFailure,
    InvalidConfig,
    IoFailure,
    ParseFailure,
)
from .generator import Assignment, GeneratorConfig, generate
from .inference import run_inference
from .kernels import BACKENDS
from .model import Network
from .storage import load_network, save_network
from .traversal import Graph, traverse
from .validation import validate

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise UsageError(f"expected true or false, got {text!r}")


def resolve_fact(net: Network, ref: str) -> int:
    """A fact reference is a numeric id or a description that names exactly one fact."""
    if ref.isdigit() and int(ref) in net.facts:
        return int(ref)
    hits = net.facts_named(ref)
    if len(hits) == 1:
        return hits[0]
    if not hits:
        raise UsageError(f"no fact with id or description {ref!r}")
    raise UsageError(f"fact reference {ref!r} is ambiguous; candidate ids: {hits}")


def _write_manifest(out: str, doc: dict) -> None:
    benchmark.write_manifest(benchmark.manifest_path(out), doc)


def cmd_generate(args) -> int:
    cfg = GeneratorConfig(
        facts=args.facts, rules=args.rules, containers=args.containers, links=args.links,
        assignment=Assignment(args.assignment), rule_inputs=args.rule_inputs,
        rule_outputs=args.rule_outputs, seed=args.seed,
    )
    try:
        cfg.check()
    except InvalidConfig as exc:
        raise UsageError(str(exc)) from None
    net = generate(cfg)
    save_network(net, args.out)
    _write_manifest(args.out, {"command": "generate", "config": cfg.to_dict(), "tool_version": __version__})
    print(f"wrote {args.out}: {len(net.facts)} facts, {len(net.rules)} rules, "
          f"{len(net.containers)} containers, {len(net.links)} links")
    return EXIT_OK


def cmd_validate(args) -> int:
    net = load_network(args.file)
    found = validate(net, lint=not args.no_lint)
    for v in found:
        print(v)
    print(f"{len(found)} violation(s)")
    return EXIT_OK if not found else EXIT_DATA


def cmd_infer(args) -> int:
    net = load_network(args.file)
    for item in args.set or ():
        ref, sep, val = item.rpartition("=")
        if not sep or not ref:
            raise UsageError(f"--set expects FACT=true|false, got {item!r}")
        net.set_fact(resolve_fact(net, ref), _bool(val))
    report = run_inference(net)
    print(f"rounds: {report.rounds}")
    print(f"rules fired: {report.rules_fired}")
    for f, old, new in report.facts_changed:
        print(f"fact {f} ({net.facts[f].description}): {str(old).lower()} -> {str(new).lower()}")
    if args.out:
        save_network(net, args.out)
        _write_manifest(args.out, {"command": "infer", "input": args.file, "set": args.set or [],
                                   "rules_fired": report.rules_fired, "tool_version": __version__})
    return EXIT_OK


def cmd_traverse(args) -> int:
    net = load_network(args.file)
    a, b = resolve_fact(net, args.start), resolve_fact(net, args.end)
    res = traverse(net, a, b, Graph(args.via), backend=args.backend)
    print(f"found: {str(res.found).lower()}")
    print(f"hops: {res.hops}")
    print(f"nodes_visited: {res.nodes_visited}")
    print(f"ticks: {res.ticks}")
    print(f"path: {res.path}")
    return EXIT_OK


def cmd_bench(args) -> int:
    base = GeneratorConfig()
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                base = GeneratorConfig.loads(fh.read())
        except InvalidConfig as exc:
            raise ParseFailure("config", str(exc)) from None
        except OSError as exc:
            raise IoFailure(f"cannot read {args.config}: {exc.strerror or exc}") from exc
    base = replace(base, seed=args.base_seed)
    try:
        base.check()
    except InvalidConfig as exc:
        raise UsageError(str(exc)) from None
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    threads = args.threads if args.threads is not None else benchmark.default_threads()

    def progress(cond, recs):
        if not args.quiet:
            m, s, p = cond
            print(f"{m.value:8s} {s.value:10s} {p:4d}%  {len(recs)} runs", file=sys.stderr)

    records = benchmark.run_matrix(
        base, args.runs, threads=threads, swap_order=args.swap_order,
        serial_timing=args.serial_timing, backend=args.backend, progress=progress,
    )
    summaries = benchmark.summarize(records)
    benchmark.write_csv(records, args.out_records, benchmark.TestRecord)
    benchmark.write_csv(summaries, args.out_summary, benchmark.ConditionSummary)
    doc = benchmark.manifest(base, args.runs, command="bench", swap_order=args.swap_order,
                             serial_timing=args.serial_timing, threads=threads,
                             records=len(records), conditions=len(summaries))
    if args.backend:
        doc["kernel_backend"] = args.backend
    _write_manifest(args.out_records, doc)
    _write_manifest(args.out_summary, doc)
    print(f"{len(records)} records over {len(summaries)} conditions -> {args.out_records}, {args.out_summary}")
    return EXIT_OK


def cmd_summarize(args) -> int:
    records = benchmark.read_records_csv(args.records)
    summaries = benchmark.summarize(records)
    benchmark.write_csv(summaries, args.out, benchmark.ConditionSummary)
    _write_manifest(args.out, {"command": "summarize", "input": args.records,
                               "records": len(records), "tool_version": __version__})
    print(f"{len(summaries)} condition(s) -> {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bbnet", description="Blackboard networks with containers and links.")
    p.add_argument("--version", action="version", version=f"bbnet {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random network")
    g.add_argument("--facts", type=int, default=1000)
    g.add_argument("--rules", type=int, default=1000)
    g.add_argument("--containers", type=int, default=100)
    g.add_argument("--links", type=int, default=400)
    g.add_argument("--assignment", choices=[a.value for a in Assignment], default="uniform")
    g.add_argument("--rule-inputs", type=int, default=GeneratorConfig.rule_inputs)
    g.add_argument("--rule-outputs", type=int, default=GeneratorConfig.rule_outputs)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("validate", help="report integrity violations and lints")
    v.add_argument("file")
    v.add_argument("--no-lint", action="store_true", help="integrity checks only")
    v.set_defaults(func=cmd_validate)

    i = sub.add_parser("infer", help="run forward chaining")
    i.add_argument("file")
    i.add_argument("--set", action="append", metavar="FACT=BOOL")
    i.add_argument("--out")
    i.set_defaults(func=cmd_infer)

    t = sub.add_parser("traverse", help="search between two facts")
    t.add_argument("file")
    t.add_argument("--from", dest="start", required=True, metavar="FACT")
    t.add_argument("--to", dest="end", required=True, metavar="FACT")
    t.add_argument("--via", choices=[x.value for x in Graph], required=True)
    t.add_argument("--backend", choices=BACKENDS)
    t.set_defaults(func=cmd_traverse)

    b = sub.add_parser("bench", help="run the 90-condition rule-vs-link matrix")
    b.add_argument("--base-seed", "--seed", dest="base_seed", type=int, default=0)
    b.add_argument("--runs", type=int, default=100)
    b.add_argument("--config", help="base GeneratorConfig document (JSON)")
    b.add_argument("--serial-timing", action="store_true")
    b.add_argument("--swap-order", action="store_true", help="time link traversal before rule traversal")
    b.add_argument("--threads", type=int, help="worker threads (default: BB_LC_THREADS or 1)")
    b.add_argument("--backend", choices=BACKENDS)
    b.add_argument("--out-records", required=True)
    b.add_argument("--out-summary", required=True)
    b.add_argument("--quiet", action="store_true")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("summarize", help="recompute condition summaries from a records CSV")
    s.add_argument("records")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_summarize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version, or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bbnet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionFailed as exc:
        print(f"bbnet: condition failed: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except (ParseFailure, IntegrityFailure, IoFailure) as exc:
        print(f"bbnet: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:  # e.g. a malformed BB_LC_THREADS value
        print(f"bbnet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BlackboardError as exc:
        print(f"bbnet: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
