"""Integrity checks and lints over a whole network.

Violations are returned as data. Integrity violations (dangling ids, broken
membership, self links, malformed rules) mean the network is corrupt. Lint
violations flag rules that ignore container boundaries, or repeated fact
descriptions inside one container. Randomly generated benchmark networks
are container-blind by construction, so callers checking those pass
``lint=False``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .inference import cross_container_rule_check, linked_pairs
from .model import Network

INTEGRITY_KINDS = frozenset({"identity", "dangling_reference", "membership", "self_link", "rule_shape"})
LINT_KINDS = frozenset({"cross_container_rule", "duplicate_description"})


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    ids: tuple[int, ...] = ()

    @property
    def is_lint(self) -> bool:
        return self.kind in LINT_KINDS

    def __str__(self) -> str:
        return f"[{self.kind}] {self.message}"


def integrity_violations(net: Network) -> list[Violation]:
    out: list[Violation] = []
    add = out.append

    for kind, table in (("fact", net.facts), ("rule", net.rules),
                        ("container", net.containers), ("link", net.links)):
        for key, obj in table.items():
            if obj.id != key:
                add(Violation("identity", f"{kind} stored under {key} carries id {obj.id}", (key,)))

    for f in net.facts.values():
        if f.container is None:
            continue
        c = net.containers.get(f.container)
        if c is None:
            add(Violation("dangling_reference",
                          f"fact {f.id} names missing container {f.container}", (f.id,)))
        elif f.id not in c.members:
            add(Violation("membership",
                          f"fact {f.id} claims container {c.id} but is not a member", (f.id, c.id)))

    for c in net.containers.values():
        for m in sorted(c.members):
            f = net.facts.get(m)
            if f is None:
                add(Violation("dangling_reference",
                              f"container {c.id} lists missing fact {m}", (c.id,)))
            elif f.container != c.id:
                add(Violation("membership",
                              f"container {c.id} lists fact {m} owned by {f.container}", (c.id, m)))

    for r in net.rules.values():
        if not r.inputs or not r.outputs:
            add(Violation("rule_shape", f"rule {r.id} has an empty side", (r.id,)))
        missing = [f for f in r.facts if f not in net.facts]
        if missing:
            add(Violation("dangling_reference",
                          f"rule {r.id} references missing facts {missing}", (r.id,)))
        both = set(r.input_facts) & set(r.output_facts)
        if both:
            add(Violation("rule_shape",
                          f"rule {r.id} uses facts {sorted(both)} on both sides", (r.id,)))

    for l in net.links.values():
        for end in (l.start, l.end):
            if end not in net.containers:
                add(Violation("dangling_reference",
                              f"link {l.id} names missing container {end}", (l.id,)))
        if l.start == l.end:
            add(Violation("self_link", f"link {l.id} starts and ends at {l.start}", (l.id,)))
    return out


def lint_violations(net: Network) -> list[Violation]:
    out: list[Violation] = []
    pairs = linked_pairs(net)
    for rid, rule in net.rules.items():
        if any(f not in net.facts for f in rule.facts):
            continue  # already an integrity violation
        res = cross_container_rule_check(net, rid, pairs)
        if not res:
            where = sorted(res.containers)
            out.append(Violation("cross_container_rule",
                                 f"rule {rid} fails two-container check ({res.reason}; containers {where})",
                                 (rid, *where)))
    seen = Counter((f.container, f.description) for f in net.facts.values() if f.container is not None)
    for (cid, desc), n in sorted(seen.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        if n > 1:
            out.append(Violation("duplicate_description",
                                 f"{n} facts named {desc!r} in container {cid}", (cid,)))
    return out


def validate(net: Network, *, lint: bool = True) -> list[Violation]:
    found = integrity_violations(net)
    if lint:
        found.extend(lint_violations(net))
    return found
