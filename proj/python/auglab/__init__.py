"""Alternating link diagrams: hypothesis checks, vertical-component planning
and belted-sum volume arithmetic."""

import json as _json

from . import _core
from ._core import DEFAULT_CAP, OCT_VOLUME, AuglabError, canonical_pd, run_cli

__all__ = [
    "AuglabError",
    "DEFAULT_CAP",
    "OCT_VOLUME",
    "augment",
    "canonical_pd",
    "check",
    "faces",
    "run_cli",
    "volume",
]


def check(pd):
    """Hypothesis report for a PD code string."""
    return _json.loads(_core.check(pd))


def faces(pd):
    return _json.loads(_core.faces(pd))


def augment(pd, pairs, cap=DEFAULT_CAP, maximal=False):
    """Realize vertical components for face pairs (a, b).

    Raises AuglabError("HypothesisFailure", ...) when the diagram fails the gate.
    """
    return _json.loads(_core.augment(pd, [tuple(p) for p in pairs], cap, maximal))


def volume(expression, bindings=None, opaque_borromean=False, require_numeric=False):
    """Evaluate an expression tree given as a dict or JSON text."""
    text = expression if isinstance(expression, str) else _json.dumps(expression)
    return _json.loads(_core.volume(text, dict(bindings or {}), opaque_borromean, require_numeric))
