"""Seeded random benchmark networks.

``generate`` is a pure function of its :class:`GeneratorConfig`. Rule facts,
link endpoints, container placement and fact values each come from their
own :mod:`bbnet.rng` stream. Changing, say, the link count therefore leaves
the generated rules untouched.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, replace
from typing import Any

import numpy as np

from . import rng as rngmod
from .errors import InvalidConfig, NoContainers, ParseFailure
from .model import Network


class Assignment(enum.Enum):
    UNIFORM = "uniform"
    RANDOM = "random"
    LOADED = "loaded"


class ScaleMode(enum.Enum):
    FACTS = "facts"
    RULES = "rules"
    CONTAINERS = "containers"
    LINKS = "links"
    ALL = "all"


SCALE_PERCENTAGES = (50, 75, 100, 125, 150, 200)


@dataclass(frozen=True)
class GeneratorConfig:
    facts: int = 1000
    rules: int = 1000
    containers: int = 100
    links: int = 400
    assignment: Assignment | None = Assignment.UNIFORM
    # two preconditions, one conclusion; see README "Rule arity"
    rule_inputs: int = 2
    rule_outputs: int = 1
    seed: int = 0

    def check(self) -> None:
        for name in ("facts", "rules", "containers", "links", "rule_inputs", "rule_outputs", "seed"):
            val = getattr(self, name)
            if isinstance(val, bool) or not isinstance(val, (int, np.integer)) or val < 0:
                raise InvalidConfig(f"{name} must be a non-negative integer, got {val!r}")
        if self.seed > rngmod.MASK64:
            raise InvalidConfig("seed must fit in 64 bits")
        if self.assignment is not None and self.facts > 0 and self.containers < 1:
            raise InvalidConfig("assigning facts needs at least one container")
        if self.links > 0 and self.containers < 2:
            raise InvalidConfig("links need at least two containers")
        if self.rules > 0:
            if self.rule_inputs < 1 or self.rule_outputs < 1:
                raise InvalidConfig("rules need at least one input and one output")
            if self.rule_inputs + self.rule_outputs > self.facts:
                raise InvalidConfig(
                    f"rule arity {self.rule_inputs}+{self.rule_outputs} exceeds fact count {self.facts}"
                )

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["assignment"] = None if self.assignment is None else self.assignment.value
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GeneratorConfig":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise ParseFailure("config", f"unknown fields {sorted(extra)}")
        kw = dict(d)
        if kw.get("assignment") is not None:
            try:
                kw["assignment"] = Assignment(kw["assignment"])
            except ValueError:
                raise ParseFailure("config.assignment", f"unknown method {kw['assignment']!r}") from None
        cfg = cls(**kw)
        cfg.check()
        return cfg

    def dumps(self) -> str:
        return json.dumps({"config": self.to_dict()}, indent=1) + "\n"

    @classmethod
    def loads(cls, text: str) -> "GeneratorConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseFailure(f"line {exc.lineno}", exc.msg) from None
        if not isinstance(doc, dict) or not isinstance(doc.get("config"), dict):
            raise ParseFailure("config", "expected a top-level 'config' object")
        return cls.from_dict(doc["config"])


BASE_CONFIG = GeneratorConfig()


def distinct_rows(gen: np.random.Generator, n: int, rows: int, k: int) -> np.ndarray:
    """``rows`` independent uniform ordered samples of ``k`` distinct values from ``range(n)``.

    Draw ``j`` picks an index into the values not yet taken in its row and
    maps it past the earlier picks in ascending order.
    """
    out = np.empty((rows, k), dtype=np.int64)
    for j in range(k):
        x = gen.integers(0, n - j, size=rows, dtype=np.int64)
        taken = np.sort(out[:, :j], axis=1)
        for col in range(j):
            x += x >= taken[:, col]
        out[:, j] = x
    return out


def _round_robin(net: Network, order: np.ndarray, targets: list[int]) -> None:
    n = len(targets)
    for i, fid in enumerate(order.tolist()):
        net.assign_fact(fid, targets[i % n])


def _containers(net: Network) -> list[int]:
    if not net.containers:
        raise NoContainers("network has no containers")
    return sorted(net.containers)


def assign_uniform(net: Network, gen: np.random.Generator) -> None:
    """Deal facts to containers round-robin, picking a random unassigned fact each turn."""
    targets = _containers(net)
    _round_robin(net, gen.permutation(np.array(sorted(net.facts), dtype=np.int64)), targets)


def assign_random(net: Network, gen: np.random.Generator) -> None:
    targets = _containers(net)
    facts = sorted(net.facts)
    picks = gen.integers(0, len(targets), size=len(facts))
    for fid, p in zip(facts, picks.tolist()):
        net.assign_fact(fid, targets[p])


def assign_loaded(net: Network, gen: np.random.Generator) -> int:
    """Deal all facts round-robin over a random subset of ``k`` containers.

    ``k`` is uniform on ``[1, containers]``; the subset is drawn without
    replacement. Returns ``k``.
    """
    targets = _containers(net)
    k = int(gen.integers(1, len(targets) + 1))
    chosen = sorted(np.asarray(targets)[gen.choice(len(targets), size=k, replace=False)].tolist())
    _round_robin(net, gen.permutation(np.array(sorted(net.facts), dtype=np.int64)), chosen)
    return k


ASSIGNERS = {
    Assignment.UNIFORM: assign_uniform,
    Assignment.RANDOM: assign_random,
    Assignment.LOADED: assign_loaded,
}


def generate(cfg: GeneratorConfig) -> Network:
    cfg.check()
    structure = rngmod.stream(cfg.seed, rngmod.STRUCTURE)
    values = rngmod.stream(cfg.seed, rngmod.VALUES)
    net = Network()

    for i, v in enumerate(values.integers(0, 2, size=cfg.facts).tolist()):
        net.add_fact(f"fact {i}", bool(v))
    for i in range(cfg.containers):
        net.add_container(f"container {i}")

    if cfg.rules:
        arity = cfg.rule_inputs + cfg.rule_outputs
        picks = distinct_rows(structure, cfg.facts, cfg.rules, arity).tolist()
        flags = values.integers(0, 2, size=(cfg.rules, arity)).astype(bool).tolist()
        cut = cfg.rule_inputs
        for fs, bs in zip(picks, flags):
            pairs = list(zip(fs, bs))
            net.add_rule(pairs[:cut], pairs[cut:])

    if cfg.links:
        starts = structure.integers(0, cfg.containers, size=cfg.links)
        ends = structure.integers(0, cfg.containers - 1, size=cfg.links)
        ends += ends >= starts
        for a, b in zip(starts.tolist(), ends.tolist()):
            net.add_link("link", a, b)

    if cfg.assignment is not None and cfg.facts:
        ASSIGNERS[cfg.assignment](net, rngmod.stream(cfg.seed, rngmod.ASSIGNMENT))
    return net


def scale_config(base: GeneratorConfig, mode: ScaleMode | str, pct: float) -> GeneratorConfig:
    """Scale the count(s) picked by ``mode`` to ``pct`` percent.

    Rounds half up with a floor of 1; a count that is already 0 stays 0.
    """
    mode = ScaleMode(mode)
    if pct <= 0:
        raise InvalidConfig(f"scale percentage must be positive, got {pct}")

    def scaled(n: int) -> int:
        return max(1, math.floor(n * pct / 100 + 0.5)) if n else 0

    names = ("facts", "rules", "containers", "links") if mode is ScaleMode.ALL else (mode.value,)
    return replace(base, **{name: scaled(getattr(base, name)) for name in names})
