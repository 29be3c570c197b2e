"""Numerical decision of a comparison instance.

The unknown is the matrix ``S`` of squared model distances.  Edges bound
``S[i, j]`` above by ``D[i, j]**2`` and non-edges bound it below, which is a
box.  ``S`` comes from points in Hilbert space exactly when ``-V S V / 2`` is
positive semidefinite, ``V`` being the centering projector, which is a
closed convex cone.  Dykstra's alternating projections between the box and
the cone either find a common point or settle on the gap between them.

Vertices joined by an edge of zero labeled length must share a model
point, so they are merged before solving.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .linalg import anchored_gram, embed_gram, eigh, project_psd
from .metric import ComparisonInstance


class FeasibilityError(ValueError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-7
    infeas_margin: float = 1e-3
    max_iter: int = 20000
    restarts: int = 5
    eig_tol: float = 1e-12
    seed: int = 0
    check_every: int = 10
    window: int = 200
    eigensolver: str = "lapack"

    def __post_init__(self) -> None:
        for name in ("tol", "infeas_margin", "eig_tol"):
            if not getattr(self, name) > 0:
                raise FeasibilityError(f"{name} must be positive")
        for name in ("max_iter", "restarts", "check_every", "window"):
            if getattr(self, name) < 1:
                raise FeasibilityError(f"{name} must be at least 1")
        if not self.infeas_margin > self.tol:
            raise FeasibilityError("infeas_margin must exceed tol")
        if self.eigensolver not in ("lapack", "jacobi"):
            raise FeasibilityError(f"unknown eigensolver {self.eigensolver!r}")


@dataclass(frozen=True, eq=False)
class Feasible:
    coords: np.ndarray
    max_violation: float
    iterations: int
    config: SolverConfig

    verdict = "feasible"


@dataclass(frozen=True)
class Infeasible:
    gap: float
    iterations: int
    config: SolverConfig
    gaps: tuple[float, ...] = ()

    verdict = "infeasible"


@dataclass(frozen=True)
class Indeterminate:
    residual: float
    iterations: int
    config: SolverConfig

    verdict = "indeterminate"


FeasibilityVerdict = Union[Feasible, Infeasible, Indeterminate]


def verify_model(inst: ComparisonInstance, coords) -> float:
    """Largest violation of the comparison inequalities by ``coords``; ``<= 0`` means a valid model.

    Edges contribute ``|x_i - x_j| - D[i, j]``, non-edges ``D[i, j] - |x_i - x_j|``.
    """
    x = np.asarray(coords, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    g = inst.graph
    if x.shape[0] != g.n:
        raise FeasibilityError(f"expected {g.n} points, got {x.shape[0]}")
    if g.n < 2:
        return 0.0
    diff = x[:, None, :] - x[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    d = inst.labeled_distances()
    adj = _adjacency(g)
    signed = np.where(adj, dist - d, d - dist)
    iu = np.triu_indices(g.n, 1)
    return float(signed[iu].max())


def _adjacency(g) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for i, j in g.edges:
        a[i, j] = a[j, i] = True
    return a


def negative_type_check(s, tol: float = 1e-9) -> bool:
    """True when squared distances ``s`` embed isometrically in Hilbert space."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise FeasibilityError("squared-distance matrix must be square")
    if s.shape[0] < 2:
        return True
    g = anchored_gram(s)
    w, _ = eigh(g, min(tol, 1e-12), "jacobi")
    return bool(w[0] >= -tol * max(1.0, np.abs(g).max()))


# -- solver -------------------------------------------------------------------


def _merge_classes(inst: ComparisonInstance) -> tuple[np.ndarray, int]:
    """Class index per vertex, joining edges of zero labeled length."""
    d = inst.labeled_distances()
    parent = list(range(inst.graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in inst.graph.edges:
        if d[i, j] == 0:
            parent[find(i)] = find(j)
    roots = sorted({find(v) for v in range(inst.graph.n)})
    index = {r: k for k, r in enumerate(roots)}
    return np.array([index[find(v)] for v in range(inst.graph.n)]), len(roots)


def _bounds(inst: ComparisonInstance, cls: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    d2 = inst.labeled_distances() ** 2
    adj = _adjacency(inst.graph)
    lower = np.zeros((r, r))
    upper = np.full((r, r), np.inf)
    rep = np.zeros((r, r))
    n = inst.graph.n
    for i in range(n):
        for j in range(n):
            a, b = cls[i], cls[j]
            if a == b:
                continue
            rep[a, b] = d2[i, j]
            if adj[i, j]:
                upper[a, b] = min(upper[a, b], d2[i, j])
            else:
                lower[a, b] = max(lower[a, b], d2[i, j])
    np.fill_diagonal(upper, 0.0)
    return lower, upper, rep


class _Problem:
    def __init__(self, inst: ComparisonInstance, cfg: SolverConfig):
        self.inst = inst
        self.cfg = cfg
        self.cls, self.r = _merge_classes(inst)
        self.lower, self.upper, self.start = _bounds(inst, self.cls, self.r)
        self.v = np.eye(self.r) - 1.0 / self.r

    def project_box(self, s: np.ndarray) -> np.ndarray:
        out = np.clip((s + s.T) / 2, self.lower, self.upper)
        np.fill_diagonal(out, 0.0)
        return out

    def project_cone(self, s: np.ndarray) -> np.ndarray:
        c = self.v @ ((s + s.T) / 2) @ self.v
        return (s + s.T) / 2 - project_psd(c, self.cfg.eig_tol, self.cfg.eigensolver)

    def coords_from(self, s_box: np.ndarray, s_cone: np.ndarray) -> tuple[np.ndarray, float]:
        candidates = []
        g = project_psd(anchored_gram(s_box), self.cfg.eig_tol, self.cfg.eigensolver)
        candidates.append(embed_gram(g, self.cfg.eig_tol, self.cfg.eigensolver))
        centered = project_psd(-0.5 * self.v @ s_cone @ self.v, self.cfg.eig_tol, self.cfg.eigensolver)
        w, q = eigh(centered, self.cfg.eig_tol, self.cfg.eigensolver)
        keep = w > self.cfg.eig_tol * max(1.0, abs(w).max(initial=0.0))
        candidates.append(q[:, keep] * np.sqrt(w[keep]))
        best = None
        for pts in candidates:
            if not pts.shape[1]:
                pts = np.zeros((self.r, 1))
            viol = self.violation(pts)
            if best is None or viol < best[1]:
                best = (pts[self.cls], viol)
        return best

    def violation(self, pts: np.ndarray) -> float:
        """``verify_model`` in terms of the merged bounds, one point per class."""
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=-1))
        with np.errstate(invalid="ignore"):
            over = np.where(np.isfinite(self.upper), dist - np.sqrt(self.upper), -np.inf)
        under = np.sqrt(self.lower) - dist
        iu = np.triu_indices(self.r, 1)
        return float(np.maximum(over, under)[iu].max())


def _run(
    prob: _Problem, s0: np.ndarray, trace: list[float] | None = None
) -> tuple[str, float, int, np.ndarray | None, float]:
    """One Dykstra run: (status, residual, iterations, coords, violation)."""
    cfg = prob.cfg
    x = s0.copy()
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    history: list[float] = []
    best = (None, np.inf)
    res = np.inf
    for it in range(1, cfg.max_iter + 1):
        y = prob.project_box(x + p)
        p = x + p - y
        x = prob.project_cone(y + q)
        q = y + q - x
        res = float(np.linalg.norm(x - y))
        history.append(res)
        if trace is not None:
            trace.append(res)
        if it % cfg.check_every == 0 or it == 1 or res <= cfg.tol:
            coords, viol = prob.coords_from(y, x)
            if viol < best[1]:
                best = (coords, viol)
            if viol <= cfg.tol:
                return "feasible", res, it, coords, viol
        if it > 2 * cfg.window:
            before = history[-cfg.window - 1]
            if abs(before - res) <= 1e-9 * max(res, 1e-300) + 1e-15:
                status = "infeasible" if res >= cfg.infeas_margin else "stalled"
                return status, res, it, best[0], best[1]
    settled = len(history) > cfg.window and abs(history[-cfg.window - 1] - res) <= 1e-3 * res
    status = "infeasible" if res >= cfg.infeas_margin and settled else "stalled"
    return status, res, cfg.max_iter, best[0], best[1]


def check_comparison(inst: ComparisonInstance, cfg: SolverConfig | None = None) -> FeasibilityVerdict:
    """Decide whether ``inst`` admits a model configuration.

    Restart 0 starts from the labeled squared distances; later restarts
    start from seeded random perturbations of them.  ``Infeasible`` needs a
    settled gap of at least ``infeas_margin`` on every restart; the first
    restart that stalls below the margin ends the search as ``Indeterminate``.
    """
    cfg = cfg or SolverConfig()
    return _decide(_Problem(inst, cfg))


def _decide(prob: _Problem, trace: list[float] | None = None) -> FeasibilityVerdict:
    inst, cfg = prob.inst, prob.cfg
    if prob.r == 1:
        coords = np.zeros((inst.graph.n, 1))
        return Feasible(coords, verify_model(inst, coords), 0, cfg)
    rng = np.random.default_rng(cfg.seed)
    total = 0
    gaps = []
    for k in range(cfg.restarts):
        s0 = prob.start.copy()
        if k:
            z = rng.standard_normal(s0.shape)
            s0 = s0 * np.exp(0.5 * (z + z.T))
        status, res, its, coords, viol = _run(prob, s0, trace)
        total += its
        if status == "feasible":
            return Feasible(coords, viol, total, cfg)
        if status != "infeasible":
            # Infeasible is now ruled out, and Dykstra reaches the same
            # intersection from any start, so more restarts cannot help.
            return Indeterminate(res, total, cfg)
        gaps.append(res)
    return Infeasible(min(gaps), total, cfg, tuple(gaps))
