"""Finite metric spaces and labeled comparison instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .graph import Graph


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str  # "shape", "asymmetry", "diagonal", "negative", "triangle", "nonfinite"
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind} at {self.indices}"


def validate_metric(d) -> list[Violation]:
    """Every way ``d`` fails to be a metric; empty when it is one.

    Triangle violations are reported as ``(i, k, j)`` with
    ``d[i, j] > d[i, k] + d[k, j]`` and ``i < j``.  The check is exact:
    no tolerance is applied.
    """
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricError(f"distance matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    out = []
    if not np.all(np.isfinite(d)):
        out.extend(Violation("nonfinite", (int(i), int(j))) for i, j in np.argwhere(~np.isfinite(d)))
        return out
    for i in range(n):
        if d[i, i] != 0:
            out.append(Violation("diagonal", (i,)))
        for j in range(i + 1, n):
            if d[i, j] != d[j, i]:
                out.append(Violation("asymmetry", (i, j)))
            if d[i, j] < 0 or d[j, i] < 0:
                out.append(Violation("negative", (i, j)))
    for i in range(n):
        for j in range(i + 1, n):
            via = d[i, :] + d[:, j]
            for k in np.flatnonzero(d[i, j] > via):
                out.append(Violation("triangle", (i, int(k), j)))
    return out


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    d: np.ndarray

    def __post_init__(self) -> None:
        d = np.array(self.d, dtype=float)
        problems = validate_metric(d)
        if problems:
            shown = ", ".join(map(str, problems[:5]))
            raise MetricError(f"not a metric: {shown}")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteMetricSpace) and np.array_equal(self.d, other.d)

    def scaled(self, factor: float) -> FiniteMetricSpace:
        return FiniteMetricSpace(self.d * factor)


def metric_repair(d) -> FiniteMetricSpace:
    """Shortest-path closure of a symmetric nonnegative matrix with zero diagonal.

    Floyd-Warshall sweeps are repeated until nothing changes, so the result
    satisfies the triangle inequality exactly in floating point.
    """
    d = np.array(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricError("distance matrix must be square")
    if np.any(d < 0) or np.any(np.diag(d) != 0) or not np.array_equal(d, d.T):
        raise MetricError("repair needs a symmetric nonnegative matrix with zero diagonal")
    while True:
        before = d.copy()
        for k in range(d.shape[0]):
            np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
        if np.array_equal(before, d):
            return FiniteMetricSpace(d)


def cycle_metric(k: int) -> FiniteMetricSpace:
    if k < 3:
        raise MetricError("cycle metric needs k >= 3")
    i = np.arange(k)
    diff = np.abs(i[:, None] - i[None, :])
    return FiniteMetricSpace(np.minimum(diff, k - diff).astype(float))


def star_metric(legs: int, r: float = 1.0) -> FiniteMetricSpace:
    """Center (point 0) at distance ``r`` from each of ``legs`` leaves."""
    if legs < 2 or not r > 0:
        raise MetricError("star metric needs legs >= 2 and r > 0")
    n = legs + 1
    d = np.full((n, n), 2.0 * r)
    d[0, :] = d[:, 0] = r
    np.fill_diagonal(d, 0.0)
    return FiniteMetricSpace(d)


def euclidean_metric(points) -> FiniteMetricSpace:
    """Distances between the rows of ``points``, closed under shortest paths.

    The closure only guards against last-bit rounding breaking the triangle
    inequality; it leaves exactly Euclidean input untouched.
    """
    p = np.atleast_2d(np.asarray(points, dtype=float))
    diff = p[:, None, :] - p[None, :, :]
    d = np.sqrt(np.sum(diff * diff, axis=-1))
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return metric_repair(d)


@dataclass(frozen=True, eq=False)
class ComparisonInstance:
    graph: Graph
    space: FiniteMetricSpace
    labeling: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        labeling = tuple(int(x) for x in self.labeling)
        if len(labeling) != self.graph.n:
            raise MetricError(
                f"labeling has {len(labeling)} entries for {self.graph.n} vertices"
            )
        if any(not 0 <= x < self.space.n for x in labeling):
            raise MetricError("labeling refers to a point outside the space")
        object.__setattr__(self, "labeling", labeling)

    def labeled_distances(self) -> np.ndarray:
        """``D[i, j]`` = distance between the points labeled by vertices ``i`` and ``j``."""
        idx = np.asarray(self.labeling)
        return self.space.d[np.ix_(idx, idx)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ComparisonInstance)
            and self.graph == other.graph
            and self.space == other.space
            and self.labeling == other.labeling
        )


def identity_instance(graph: Graph, space: FiniteMetricSpace) -> ComparisonInstance:
    return ComparisonInstance(graph, space, tuple(range(graph.n)))


def random_metric(n: int, rng: np.random.Generator, low: float = 0.1, high: float = 1.0) -> FiniteMetricSpace:
    """Uniform symmetric weights in ``[low, high)``, repaired into a metric."""
    w = rng.uniform(low, high, size=(n, n))
    w = np.triu(w, 1)
    return metric_repair(w + w.T)


def random_instances(
    g: Graph,
    mode: str = "euclidean",
    seed: int = 0,
    dim: int = 2,
    points: int | None = None,
) -> Iterator[ComparisonInstance]:
    """Endless seeded stream of instances on ``g``.

    ``mode="euclidean"`` samples ``points`` standard normal points in
    ``dim`` dimensions; ``mode="random"`` repairs a random symmetric matrix.
    Labelings are drawn uniformly with repetition.
    """
    if mode not in ("euclidean", "random"):
        raise MetricError(f"unknown instance mode {mode!r}")
    rng = np.random.default_rng(seed)
    npts = points or g.n
    while True:
        if mode == "euclidean":
            space = euclidean_metric(rng.standard_normal((npts, dim)))
        else:
            space = random_metric(npts, rng)
        labeling = tuple(int(x) for x in rng.integers(0, npts, size=g.n))
        yield ComparisonInstance(g, space, labeling)

