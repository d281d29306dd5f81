"""Python access to the pseudospace core. Graphs are plain dicts in the JSON layout."""

import json

from . import _core
from ._core import ParseError, normal_form, run_cli

__all__ = [
    "ParseError",
    "acl",
    "check",
    "generate",
    "independent",
    "normal_form",
    "replay",
    "run_cli",
    "to_dot",
    "verify_ample",
    "verify_building",
]


def _text(graph):
    return graph if isinstance(graph, str) else json.dumps(graph)


def generate(n, budget, seed=0, variant="saturated"):
    """Returns (graph, recipe)."""
    graph, recipe = _core.generate(n, budget, seed, variant)
    return json.loads(graph), json.loads(recipe)


def replay(recipe):
    return json.loads(_core.replay(_text(recipe)))


def check(graph, variant="kn"):
    return json.loads(_core.check(_text(graph), variant))


def acl(graph, vertices):
    return sorted(_core.acl(_text(graph), set(vertices)))


def independent(graph, a, b, c=()):
    return _core.independent(_text(graph), set(a), set(b), set(c))


def verify_building(graph, word_bound=4):
    return json.loads(_core.verify_building(_text(graph), word_bound))


def verify_ample(graph, instance):
    return json.loads(_core.verify_ample(_text(graph), _text(instance)))


def to_dot(graph):
    return _core.to_dot(_text(graph))
