"""Forward chaining over boolean facts and the two-container rule lint.

Rules are scanned in ascending id order. A rule fires when every input fact
holds its required value, and then writes all of its output assignments
immediately, so later rules in the same scan see the new values. Each rule
fires at most once per :func:`run_inference` call. That bound is what
guarantees termination when rules can set facts back to false.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import ContainerId, FactId, Network, RuleId


@dataclass
class InferenceReport:
    rules_fired: list[RuleId] = field(default_factory=list)
    facts_changed: list[tuple[FactId, bool, bool]] = field(default_factory=list)
    rounds: int = 0


@dataclass(frozen=True)
class LintResult:
    passed: bool
    reason: str  # "ok", "unassigned", "too_many_containers" or "unlinked"
    containers: frozenset[ContainerId]

    def __bool__(self) -> bool:
        return self.passed


def evaluate_rule(net: Network, rid: RuleId) -> bool:
    rule = net.rule(rid)
    facts = net.facts
    return all(facts[f].value == required for f, required in rule.inputs)


def run_inference(net: Network) -> InferenceReport:
    report = InferenceReport()
    before = net.snapshot_values()
    order: list[FactId] = []
    touched: set[FactId] = set()
    fired: set[RuleId] = set()
    facts = net.facts
    rule_ids = sorted(net.rules)

    while True:
        report.rounds += 1
        fired_this_scan = False
        for rid in rule_ids:
            if rid in fired:
                continue
            rule = net.rules[rid]
            if not all(facts[f].value == req for f, req in rule.inputs):
                continue
            fired.add(rid)
            fired_this_scan = True
            report.rules_fired.append(rid)
            for f, assigned in rule.outputs:
                facts[f].value = assigned
                if f not in touched:
                    touched.add(f)
                    order.append(f)
        if not fired_this_scan:
            break

    # net change only: a fact flipped and flipped back is not reported
    report.facts_changed = [
        (f, before[f], facts[f].value) for f in order if facts[f].value != before[f]
    ]
    return report


def linked_pairs(net: Network) -> set[tuple[ContainerId, ContainerId]]:
    """Unordered container pairs joined by at least one link."""
    pairs = set()
    for link in net.links.values():
        pairs.add((link.start, link.end))
        pairs.add((link.end, link.start))
    return pairs


def cross_container_rule_check(
    net: Network, rid: RuleId, _pairs: set[tuple[ContainerId, ContainerId]] | None = None
) -> LintResult:
    """Check that a rule only touches facts of at most two linked containers."""
    rule = net.rule(rid)
    homes = [net.facts[f].container if f in net.facts else None for f in rule.facts]
    placed = frozenset(c for c in homes if c is not None)
    if len(placed) != len(set(homes)):
        return LintResult(False, "unassigned", placed)
    if len(placed) > 2:
        return LintResult(False, "too_many_containers", placed)
    if len(placed) == 2:
        a, b = sorted(placed)
        pairs = linked_pairs(net) if _pairs is None else _pairs
        if (a, b) not in pairs:
            return LintResult(False, "unlinked", placed)
    return LintResult(True, "ok", placed)
