"""One-dimensional model configurations for graphs with trivial comparison.

Every edge is weighted by the labeled distance of its ends, and each vertex
is placed at plus or minus its weighted distance from a special vertex
``w``: plus above ``w``'s level, minus otherwise.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .classifier import Trivial, check_proposition, classify_connected
from .graph import Graph, NotConnectedError, is_connected
from .metric import ComparisonInstance


class LineModelError(ValueError):
    pass


def weighted_distances(inst: ComparisonInstance) -> np.ndarray:
    """Least total labeled length over paths of the graph, for every vertex pair."""
    g = inst.graph
    if not is_connected(g):
        raise NotConnectedError("weighted distances need a connected graph")
    return shortest_paths(g, inst.labeled_distances())


def shortest_paths(g: Graph, weights) -> np.ndarray:
    """All-pairs shortest paths over the edges of ``g``, edge ``(i, j)`` costing ``weights[i, j]``."""
    weights = np.asarray(weights, dtype=float)
    w = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(w, 0.0)
    for i, j in g.edges:
        w[i, j] = w[j, i] = weights[i, j]
    for k in range(g.n):
        np.minimum(w, w[:, k, None] + w[None, k, :], out=w)
    return w


def choose_special_vertex(g: Graph, levels: Sequence[int], seq: Sequence[int]) -> int:
    """A vertex alone on its level, as close to the middle as the level counts allow."""
    if check_proposition(seq) is not None:
        raise LineModelError("graph does not have trivial comparison")
    m = len(seq) - 1
    low = min(levels)

    def on_level(i: int) -> int:
        return next(v for v, lvl in enumerate(levels) if lvl - low == i)

    if m >= 4:
        return on_level(2)
    if m == 3:
        return on_level(2 if seq[2] == 1 else 1)
    if m == 2:
        if seq[1] == 1:
            return on_level(1)
        return on_level(0 if seq[0] == 1 else 2)
    return 0


def build_line_model(inst: ComparisonInstance, w: int | None = None, levels: Sequence[int] | None = None) -> np.ndarray:
    """Coordinates on the real line, one per vertex.

    ``w`` and ``levels`` default to the ones derived from the graph's
    classification; the graph must have trivial comparison.
    """
    g = inst.graph
    cls = classify_connected(g) if is_connected(g) else None
    if not isinstance(cls, Trivial):
        if cls is None:
            raise NotConnectedError("line models need a connected graph")
        raise LineModelError("graph has nontrivial comparison")
    if levels is None:
        levels = cls.levels
    if w is None:
        w = choose_special_vertex(g, levels, cls.sequence)
    dist = weighted_distances(inst)[w]
    return np.array([dist[v] if levels[v] > levels[w] else -dist[v] for v in range(g.n)])
