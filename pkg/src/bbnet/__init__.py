"""Blackboard networks with containers and links.

Facts, rules, containers and links live in a :class:`Network`. Forward
chaining is in :mod:`bbnet.inference`, the two traversal engines in
:mod:`bbnet.traversal`, random benchmark networks in :mod:`bbnet.generator`
and the rule-versus-link experiment in :mod:`bbnet.benchmark`.
"""

from .errors import *  # noqa: F401,F403
from .generator import Assignment, GeneratorConfig, ScaleMode, generate, scale_config
from .inference import cross_container_rule_check, evaluate_rule, run_inference
from .kernels import BACKEND_NAME
from .model import Container, Fact, Link, Network, Rule, new_network
from .storage import load_network, save_network
from .traversal import (
    Graph,
    TraversalResult,
    both_traversable,
    link_traverse,
    reachability_closure,
    rule_traverse,
)
from .validation import Violation, validate

__version__ = "0.1.0"
