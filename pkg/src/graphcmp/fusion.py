"""Vertex fusion, fusion certificates and breadth-first fusion search.

A fusion step removes ``v1`` and ``v2`` and adds a new last vertex ``w``.
Neighbours of both stay neighbours of ``w``, non-neighbours of both stay
non-neighbours, and every remaining ("mixed") vertex is decided by the
step's ``choices``.  Surviving vertices keep their relative order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

from .graph import (
    Graph,
    GraphError,
    _bits,
    bfs_distances,
    canonical_form,
    find_isomorphism,
    induced_subgraph,
    is_connected,
    NotConnectedError,
)

DEFAULT_STATE_BUDGET = 2_000_000


class FusionError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, states: int):
        super().__init__(f"fusion search stopped after {states} states")
        self.states = states


@dataclass(frozen=True)
class FusionStep:
    v1: int
    v2: int
    choices: Mapping[int, bool] = field(default_factory=dict)  # True = adjacent to w


class Fusion(NamedTuple):
    graph: Graph
    w: int
    vertex_map: list[int]  # old vertex -> new vertex


@dataclass(frozen=True)
class FusionCertificate:
    source: Graph
    steps: tuple[FusionStep, ...]
    target: Graph


def mixed_neighbors(g: Graph, v1: int, v2: int) -> list[int]:
    pair = (1 << v1) | (1 << v2)
    return list(_bits((g.adj[v1] ^ g.adj[v2]) & ~pair))


def _aligned_with(g: Graph, step: FusionStep, v: int) -> bool:
    return all(step.choices[u] == g.adjacent(u, v) for u in step.choices)


def fuse(g: Graph, step: FusionStep) -> Fusion:
    v1, v2 = step.v1, step.v2
    if not (0 <= v1 < g.n and 0 <= v2 < g.n):
        raise FusionError(f"fusion pair ({v1}, {v2}) out of range")
    if v1 == v2:
        raise FusionError("cannot fuse a vertex with itself")
    mixed = mixed_neighbors(g, v1, v2)
    if set(step.choices) != set(mixed):
        raise FusionError(
            f"choices must cover exactly the mixed neighbours {mixed}, got {sorted(step.choices)}"
        )
    if not g.adjacent(v1, v2) and not (
        _aligned_with(g, step, v1) or _aligned_with(g, step, v2)
    ):
        # soundness of free choices is only established for adjacent pairs
        raise FusionError(
            f"non-adjacent pair ({v1}, {v2}) may only be fused with choices copied from one of them"
        )
    survivors = [u for u in range(g.n) if u != v1 and u != v2]
    vmap = [0] * g.n
    for i, u in enumerate(survivors):
        vmap[u] = i
    w = len(survivors)
    vmap[v1] = vmap[v2] = w
    edges = [
        (vmap[a], vmap[b]) for a, b in g.edges if a not in (v1, v2) and b not in (v1, v2)
    ]
    for u in survivors:
        both = g.adjacent(u, v1) and g.adjacent(u, v2)
        if both or step.choices.get(u, False):
            edges.append((vmap[u], w))
    return Fusion(Graph.from_edges(w + 1, edges), w, vmap)


def replay(source: Graph, steps: Sequence[FusionStep]) -> tuple[Graph, list[int]]:
    """Apply ``steps`` in order; return the final graph and the composed vertex map."""
    g = source
    vmap = list(range(source.n))
    for step in steps:
        fused = fuse(g, step)
        vmap = [fused.vertex_map[v] for v in vmap]
        g = fused.graph
    return g, vmap


def certificate_problem(cert: FusionCertificate) -> str | None:
    """Reason the certificate fails, or None when it is valid."""
    try:
        final, _ = replay(cert.source, cert.steps)
    except (FusionError, GraphError) as exc:
        return f"replay failed: {exc}"
    if find_isomorphism(final, cert.target) is None:
        return "replayed graph is not isomorphic to the target"
    return None


def verify_certificate(cert: FusionCertificate) -> bool:
    return certificate_problem(cert) is None


def absorb(g: Graph, victim: int, host: int) -> FusionStep:
    """Fusion step that deletes ``victim``; the new vertex inherits ``host``'s relations."""
    if victim == host or not g.adjacent(victim, host):
        raise FusionError(f"vertex {victim} is not adjacent to host {host}")
    choices = {u: g.adjacent(u, host) for u in mixed_neighbors(g, victim, host)}
    return FusionStep(victim, host, choices)


def induced_certificate(g: Graph, keep) -> FusionCertificate:
    """Certificate reducing connected ``g`` to the subgraph induced on ``keep``.

    Outside vertices are absorbed farthest-from-``keep`` first, which keeps
    every intermediate graph connected.
    """
    keep = set(keep)
    if not keep:
        raise GraphError("cannot reduce to an empty vertex set")
    if not is_connected(g):
        raise NotConnectedError("induced certificates need a connected graph")
    target, _ = induced_subgraph(g, keep)
    dist_to_keep = [min(bfs_distances(g, s)[v] for s in keep) for v in range(g.n)]
    order = sorted((v for v in range(g.n) if v not in keep), key=lambda v: (-dist_to_keep[v], v))

    steps = []
    cur = g
    index = list(range(g.n))  # original vertex -> current index
    alive = set(range(g.n))
    for victim in order:
        hosts = [u for u in sorted(alive) if u != victim and cur.adjacent(index[victim], index[u])]
        hosts.sort(key=lambda u: (u in keep, u))
        host = hosts[0]
        step = absorb(cur, index[victim], index[host])
        fused = fuse(cur, step)
        steps.append(step)
        alive.discard(victim)
        for v in alive:
            index[v] = fused.vertex_map[index[v]]
        cur = fused.graph
    return FusionCertificate(g, tuple(steps), target)


def compose(first: FusionCertificate, second: FusionCertificate) -> FusionCertificate:
    """Chain two certificates; ``second.source`` must equal the replay of ``first``."""
    mid, _ = replay(first.source, first.steps)
    if mid != second.source:
        raise FusionError("certificates do not chain")
    return FusionCertificate(first.source, first.steps + second.steps, second.target)


def single_fusions(g: Graph, adjacent_only: bool = True):
    """Every fusion of ``g`` in deterministic order (pair, then choice bitmask).

    With ``adjacent_only=False`` non-adjacent pairs are included, but only
    with choices copied from one of the two vertices, as ``fuse`` requires.
    """
    for v1 in range(g.n):
        for v2 in range(v1 + 1, g.n):
            adjacent = g.adjacent(v1, v2)
            if adjacent_only and not adjacent:
                continue
            mixed = mixed_neighbors(g, v1, v2)
            for mask in range(1 << len(mixed)):
                step = FusionStep(v1, v2, {u: bool(mask >> i & 1) for i, u in enumerate(mixed)})
                if adjacent or _aligned_with(g, step, v1) or _aligned_with(g, step, v2):
                    yield step


def fusion_reachable(
    g: Graph, target: Graph, budget: int = DEFAULT_STATE_BUDGET
) -> FusionCertificate | None:
    """Shortest certificate from ``g`` to a copy of ``target``, or None if none exists.

    States are deduplicated by canonical form, one frontier at a time.
    Raises :class:`SearchBudgetExceeded` when more than ``budget`` states
    would be generated.
    """
    if target.n > g.n:
        raise FusionError("target has more vertices than the source")
    goal = canonical_form(target)
    # key -> (graph, parent key, step)
    frontier: dict[str, tuple[Graph, str | None, FusionStep | None]] = {
        canonical_form(g): (g, None, None)
    }
    history = [frontier]
    states = 1
    while True:
        level_n = next(iter(frontier.values()))[0].n
        if level_n == target.n:
            if goal in frontier:
                return _unwind(history, goal, g, target)
            return None
        nxt: dict[str, tuple[Graph, str | None, FusionStep | None]] = {}
        for key, (state, _, _) in frontier.items():
            for step in single_fusions(state):
                states += 1
                if states > budget:
                    raise SearchBudgetExceeded(states)
                child = fuse(state, step).graph
                ck = canonical_form(child)
                if ck not in nxt:
                    nxt[ck] = (child, key, step)
            if level_n - 1 == target.n and goal in nxt:
                break
        if not nxt:
            return None
        history.append(nxt)
        frontier = nxt


def _unwind(history, goal: str, source: Graph, target: Graph) -> FusionCertificate:
    steps = []
    key = goal
    for level in reversed(history[1:]):
        _, parent, step = level[key]
        steps.append(step)
        key = parent
    return FusionCertificate(source, tuple(reversed(steps)), target)


def lift_labeling(cert: FusionCertificate, labels: Sequence[int] | Mapping[int, int]) -> list[int]:
    """Point index for every source vertex, pulled back through the fusions."""
    if isinstance(labels, Mapping):
        missing = [v for v in range(cert.target.n) if v not in labels]
        labels = [labels[v] for v in range(cert.target.n)] if not missing else None
    if labels is None or len(labels) != cert.target.n:
        raise FusionError("labels must cover every target vertex")
    final, vmap = replay(cert.source, cert.steps)
    phi = find_isomorphism(final, cert.target)
    if phi is None:
        raise FusionError("certificate does not reach its target")
    return [labels[phi[vmap[v]]] for v in range(cert.source.n)]
