"""Impartial selection on nomination graphs.

Graphs are lists of targets: ``targets[v - 1]`` is the vertex that ``v``
nominates. Probabilities and ratios come back as ``fractions.Fraction``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import _impsel
from ._impsel import CapacityError, PreconditionError, figure3_csv, format_graph, mechanisms

__version__ = _impsel.__version__

_RATIONAL = re.compile(r"^-?\d+/\d+$")


def _fractions(value):
    if isinstance(value, str) and _RATIONAL.match(value):
        return Fraction(value)
    if isinstance(value, list):
        return [_fractions(v) for v in value]
    if isinstance(value, dict):
        return {k: _fractions(v) for k, v in value.items()}
    return value


def parse_graph(text: str) -> list[int]:
    return _impsel.parse_graph(text)


def generate(spec: str) -> list[int]:
    """Graph from a family spec such as ``"family=lower_bound delta=2 nprime=3"``."""
    return _impsel.generate(spec)


def random_graph(n: int, seed: int) -> list[int]:
    return _impsel.random_graph(n, seed)


def lower_bound_family(delta: int, nprime: int) -> list[int]:
    return _impsel.lower_bound_family(delta, nprime)


def exact(mechanism: str, targets: list[int], jobs: int = 1) -> list[Fraction]:
    """Selection probability of each vertex, in vertex order."""
    return [Fraction(p) for p in _impsel.exact(mechanism, targets, jobs)]


def ratio(mechanism: str, targets: list[int], jobs: int = 1) -> Fraction:
    """Expected indegree of the selected vertex over the maximum indegree."""
    return Fraction(_impsel.ratio(mechanism, targets, jobs))


def sample_counts(mechanism: str, targets: list[int], samples: int, seed: int) -> tuple[list[int], int]:
    """Per-vertex selection counts and the number of draws that selected nobody."""
    return _impsel.sample_counts(mechanism, targets, samples, seed)


def check_impartial(mechanism: str, n: int, *, sampled: bool = False, seed: int = 0,
                    samples: int = 1000, jobs: int = 0) -> dict:
    return _fractions(json.loads(_impsel.check_impartial_json(mechanism, n, sampled, seed, samples, jobs)))


def worst_case(mechanism: str, n: int, jobs: int = 0) -> dict:
    return _fractions(json.loads(_impsel.worst_case_json(mechanism, n, jobs)))


def verify_ub_chain(mechanism: str, n: int = 6) -> dict:
    """Raises PreconditionError when the mechanism is not symmetric on the family."""
    return _fractions(json.loads(_impsel.verify_ub_chain_json(mechanism, n)))


def correlation(targets: list[int]) -> dict:
    return _fractions(json.loads(_impsel.correlation_json(targets)))


def perm_alpha(delta: int) -> Fraction:
    return Fraction(_impsel.perm_alpha(delta))


def prugd_alpha(delta: int) -> Fraction:
    return Fraction(_impsel.prugd_alpha(delta))


def upper_bound(n: int) -> Fraction:
    return Fraction(_impsel.upper_bound(n))


def mix_guarantee(delta_max: int = 15) -> Fraction:
    return Fraction(_impsel.mix_guarantee(delta_max))


__all__ = [
    "CapacityError", "PreconditionError", "check_impartial", "correlation", "exact", "figure3_csv",
    "format_graph", "generate", "lower_bound_family", "mechanisms", "mix_guarantee", "parse_graph",
    "perm_alpha", "prugd_alpha", "random_graph", "ratio", "sample_counts", "upper_bound",
    "verify_ub_chain", "worst_case",
]
