"""JSON network files.

Layout::

    {
      "facts":      [{"id", "description", "value", "container"}],
      "rules":      [{"id", "inputs": [{"fact", "required"}], "outputs": [{"fact", "assigned"}]}],
      "containers": [{"id", "description"}],
      "links":      [{"id", "description", "start", "end"}]
    }

Container membership is not written; it is rebuilt from each fact's
``container`` field. Entities are written in ascending id order, so saving
the same network twice gives identical bytes.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .errors import IntegrityFailure, IoFailure, ParseFailure
from .model import Container, Fact, Link, Network, Rule
from .validation import integrity_violations


def network_to_dict(net: Network) -> dict[str, list[dict[str, Any]]]:
    return {
        "facts": [
            {"id": f.id, "description": f.description, "value": f.value, "container": f.container}
            for _, f in sorted(net.facts.items())
        ],
        "rules": [
            {
                "id": r.id,
                "inputs": [{"fact": f, "required": v} for f, v in r.inputs],
                "outputs": [{"fact": f, "assigned": v} for f, v in r.outputs],
            }
            for _, r in sorted(net.rules.items())
        ],
        "containers": [
            {"id": c.id, "description": c.description} for _, c in sorted(net.containers.items())
        ],
        "links": [
            {"id": l.id, "description": l.description, "start": l.start, "end": l.end}
            for _, l in sorted(net.links.items())
        ],
    }


def dumps(net: Network) -> str:
    return json.dumps(network_to_dict(net), indent=1) + "\n"


def _field(obj: Any, name: str, where: str, kind: type, nullable: bool = False):
    if not isinstance(obj, dict):
        raise ParseFailure(where, "expected an object")
    if name not in obj:
        raise ParseFailure(f"{where}.{name}", "missing field")
    val = obj[name]
    if val is None and nullable:
        return None
    # bool is an int subclass; keep the two apart
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ParseFailure(f"{where}.{name}", f"expected integer, got {val!r}")
    if kind is int and val < 0:
        raise ParseFailure(f"{where}.{name}", f"expected non-negative id, got {val}")
    if kind is not int and not isinstance(val, kind):
        raise ParseFailure(f"{where}.{name}", f"expected {kind.__name__}, got {val!r}")
    return val


def _array(doc: dict, name: str) -> list:
    if name not in doc:
        raise ParseFailure(name, "missing top-level array")
    val = doc[name]
    if not isinstance(val, list):
        raise ParseFailure(name, "expected an array")
    return val


def _unique(table: dict, ident: int, where: str) -> None:
    if ident in table:
        raise ParseFailure(f"{where}.id", f"duplicate id {ident}")


def network_from_dict(doc: Any) -> Network:
    if not isinstance(doc, dict):
        raise ParseFailure("document", "expected a JSON object")
    net = Network()

    for i, raw in enumerate(_array(doc, "containers")):
        where = f"containers[{i}]"
        cid = _field(raw, "id", where, int)
        _unique(net.containers, cid, where)
        net.containers[cid] = Container(cid, _field(raw, "description", where, str))

    for i, raw in enumerate(_array(doc, "facts")):
        where = f"facts[{i}]"
        fid = _field(raw, "id", where, int)
        _unique(net.facts, fid, where)
        home = _field(raw, "container", where, int, nullable=True)
        net.facts[fid] = Fact(fid, _field(raw, "description", where, str),
                              _field(raw, "value", where, bool), home)
        if home is not None and home in net.containers:
            net.containers[home].members.add(fid)

    for i, raw in enumerate(_array(doc, "rules")):
        where = f"rules[{i}]"
        rid = _field(raw, "id", where, int)
        _unique(net.rules, rid, where)
        sides = []
        for side, flag in (("inputs", "required"), ("outputs", "assigned")):
            items = _field(raw, side, where, list)
            sides.append(tuple(
                (_field(it, "fact", f"{where}.{side}[{j}]", int),
                 _field(it, flag, f"{where}.{side}[{j}]", bool))
                for j, it in enumerate(items)
            ))
        net.rules[rid] = Rule(rid, sides[0], sides[1])

    for i, raw in enumerate(_array(doc, "links")):
        where = f"links[{i}]"
        lid = _field(raw, "id", where, int)
        _unique(net.links, lid, where)
        net.links[lid] = Link(lid, _field(raw, "description", where, str),
                              _field(raw, "start", where, int), _field(raw, "end", where, int))

    for kind, table in (("fact", net.facts), ("rule", net.rules),
                        ("container", net.containers), ("link", net.links)):
        net._next[kind] = max(table, default=-1) + 1

    bad = integrity_violations(net)
    if bad:
        raise IntegrityFailure(bad)
    return net


def loads(text: str) -> Network:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"line {exc.lineno}", exc.msg) from None
    return network_from_dict(doc)


def save_network(net: Network, path: str | os.PathLike) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(net))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def load_network(path: str | os.PathLike) -> Network:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    return loads(text)


FIXTURES = ("employee", "equipment")


def fixture_path(name: str) -> str:
    """Path of a shipped example network: ``employee`` or ``equipment``."""
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return os.path.join(os.path.dirname(__file__), "fixtures", f"{name}.bb")


def load_fixture(name: str) -> Network:
    return load_network(fixture_path(name))
