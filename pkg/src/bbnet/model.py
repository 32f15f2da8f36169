"""Network store: facts, rules, containers and links.

A :class:`Network` owns four id-keyed collections. Ids are dense integers
handed out per kind in creation order and never reused. Fact membership is
stored on the fact (``Fact.container``) and mirrored in the owning
container's ``members`` set; every mutator keeps the two in agreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    EmptyRuleSide,
    OverlappingSides,
    SelfLink,
    UnknownContainer,
    UnknownFact,
    UnknownRule,
)

FactId = int
RuleId = int
ContainerId = int
LinkId = int


@dataclass
class Fact:
    id: FactId
    description: str
    value: bool
    container: ContainerId | None = None


@dataclass(frozen=True)
class Rule:
    """Inputs are ``(fact, required)`` pairs, outputs ``(fact, assigned)`` pairs."""

    id: RuleId
    inputs: tuple[tuple[FactId, bool], ...]
    outputs: tuple[tuple[FactId, bool], ...]

    @property
    def input_facts(self) -> tuple[FactId, ...]:
        return tuple(f for f, _ in self.inputs)

    @property
    def output_facts(self) -> tuple[FactId, ...]:
        return tuple(f for f, _ in self.outputs)

    @property
    def facts(self) -> tuple[FactId, ...]:
        return self.input_facts + self.output_facts


@dataclass
class Container:
    id: ContainerId
    description: str
    members: set[FactId] = field(default_factory=set)


@dataclass(frozen=True)
class Link:
    id: LinkId
    description: str
    start: ContainerId
    end: ContainerId


def _pairs(side: Iterable[tuple[FactId, bool]]) -> tuple[tuple[FactId, bool], ...]:
    return tuple((int(f), bool(v)) for f, v in side)


class Network:
    """Mutable store of facts, rules, containers and links.

    Single writer: mutate from one thread at a time. Concurrent readers are
    fine while no mutation is in flight.
    """

    def __init__(self) -> None:
        self.facts: dict[FactId, Fact] = {}
        self.rules: dict[RuleId, Rule] = {}
        self.containers: dict[ContainerId, Container] = {}
        self.links: dict[LinkId, Link] = {}
        self._next = {"fact": 0, "rule": 0, "container": 0, "link": 0}
        # bumped on every structural change; traversal indexes key on it
        self.version = 0

    def __repr__(self) -> str:
        return (
            f"Network(facts={len(self.facts)}, rules={len(self.rules)}, "
            f"containers={len(self.containers)}, links={len(self.links)})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.facts == other.facts
            and self.rules == other.rules
            and self.containers == other.containers
            and self.links == other.links
        )

    __hash__ = None  # type: ignore[assignment]

    def _fresh(self, kind: str) -> int:
        ident = self._next[kind]
        self._next[kind] = ident + 1
        self.version += 1
        return ident

    # lookups

    def fact(self, fid: FactId) -> Fact:
        try:
            return self.facts[fid]
        except KeyError:
            raise UnknownFact(fid) from None

    def rule(self, rid: RuleId) -> Rule:
        try:
            return self.rules[rid]
        except KeyError:
            raise UnknownRule(rid) from None

    def container(self, cid: ContainerId) -> Container:
        try:
            return self.containers[cid]
        except KeyError:
            raise UnknownContainer(cid) from None

    # mutators

    def add_fact(self, description: str, value: bool) -> FactId:
        fid = self._fresh("fact")
        self.facts[fid] = Fact(fid, description, bool(value))
        return fid

    def add_rule(
        self,
        inputs: Sequence[tuple[FactId, bool]],
        outputs: Sequence[tuple[FactId, bool]],
    ) -> RuleId:
        ins, outs = _pairs(inputs), _pairs(outputs)
        if not ins or not outs:
            raise EmptyRuleSide("a rule needs at least one input and one output")
        for f, _ in ins + outs:
            if f not in self.facts:
                raise UnknownFact(f)
        shared = {f for f, _ in ins} & {f for f, _ in outs}
        if shared:
            raise OverlappingSides(f"facts {sorted(shared)} are both input and output")
        rid = self._fresh("rule")
        self.rules[rid] = Rule(rid, ins, outs)
        return rid

    def add_container(self, description: str) -> ContainerId:
        cid = self._fresh("container")
        self.containers[cid] = Container(cid, description)
        return cid

    def assign_fact(self, fid: FactId, cid: ContainerId) -> None:
        """Move ``fid`` into container ``cid``, leaving any previous container."""
        f = self.fact(fid)
        target = self.container(cid)
        if f.container == cid:
            return
        if f.container is not None and f.container in self.containers:
            self.containers[f.container].members.discard(fid)
        f.container = cid
        target.members.add(fid)
        self.version += 1

    def add_link(self, description: str, start: ContainerId, end: ContainerId) -> LinkId:
        self.container(start)
        self.container(end)
        if start == end:
            raise SelfLink(f"link from container {start} to itself")
        lid = self._fresh("link")
        self.links[lid] = Link(lid, description, start, end)
        return lid

    def set_fact(self, fid: FactId, value: bool) -> None:
        # value changes do not touch traversal structure, so version stays
        self.fact(fid).value = bool(value)

    # queries

    def incoming_links(self, cid: ContainerId) -> list[LinkId]:
        self.container(cid)
        return [l.id for l in self.links.values() if l.end == cid]

    def outgoing_links(self, cid: ContainerId) -> list[LinkId]:
        self.container(cid)
        return [l.id for l in self.links.values() if l.start == cid]

    def facts_named(self, description: str) -> list[FactId]:
        return [f.id for f in self.facts.values() if f.description == description]

    def containers_named(self, description: str) -> list[ContainerId]:
        return [c.id for c in self.containers.values() if c.description == description]

    def snapshot_values(self) -> dict[FactId, bool]:
        return {fid: f.value for fid, f in self.facts.items()}


def new_network() -> Network:
    return Network()
