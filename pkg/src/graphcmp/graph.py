"""Finite simple graphs: path metric, multipath levels, canonical forms.

Vertices are the integers ``0..n-1``.  Adjacency is stored as one neighbour
bitmask per vertex, which keeps graphs hashable and cheap to copy.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

CANONICAL_MAX_N = 10


class GraphError(ValueError):
    pass


class NotConnectedError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if mask >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in _bits(mask):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        adj = [0] * n
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, tuple(adj))

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i]) if i < j]

    @property
    def edge_count(self) -> int:
        return sum(bin(m).count("1") for m in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- constructors ----------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and ``leaves`` leaves; ``star_graph(3)`` is the tripod."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def fan_graph() -> Graph:
    """Hub 0 joined to every vertex of the rim path 1-2-3-4."""
    return Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (0, 1), (0, 2), (0, 3), (0, 4)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((i + offset, j + offset) for i, j in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def multipath_graph(counts: Sequence[int]) -> Graph:
    """Multipath with ``counts[i]`` vertices on level ``i``; vertices numbered level by level."""
    if not counts or any(k < 1 for k in counts):
        raise GraphError("level counts must be positive")
    levels = [lvl for lvl, k in enumerate(counts) for _ in range(k)]
    n = len(levels)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(levels[i] - levels[j]) <= 1
    ]
    return Graph.from_edges(n, edges)


C4 = cycle_graph(4)
T3 = star_graph(3)


# -- metric and connectivity -----------------------------------------------


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Edge-count distances from ``source``; unreachable vertices get ``g.n``."""
    dist = [g.n] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in _bits(g.adj[v]):
            if dist[u] == g.n:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def path_metric(g: Graph) -> list[list[int]]:
    """All-pairs shortest path lengths; disconnected pairs carry the sentinel ``g.n``."""
    return [bfs_distances(g, v) for v in range(g.n)]


def connected_components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices``; returns it with the list mapping new index -> old index."""
    keep = sorted(set(vertices))
    if not keep:
        raise GraphError("induced subgraph of an empty vertex set")
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[i], pos[j]) for i, j in g.edges if i in pos and j in pos]
    return Graph.from_edges(len(keep), edges), keep


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[i], perm[j]) for i, j in g.edges])


# -- multipaths ------------------------------------------------------------


@dataclass(frozen=True)
class NotMultipath:
    """Level assignment failed; ``pair`` is a pair on which the level test disagrees."""

    pair: tuple[int, int]
    levels: tuple[int, ...]


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise NotConnectedError("graph is not connected")


def recognize_multipath(g: Graph) -> tuple[int, ...] | NotMultipath:
    """Return a level function (one integer per vertex) or ``NotMultipath``.

    The levels come from a diametral pair ``(p, q)``: distance from ``p`` when
    that is at least 2, otherwise ``d`` minus the distance from ``q`` when
    that is at least 2, otherwise 1.  The result is then checked on every
    pair, so any graph that is not a multipath is rejected here.
    """
    _require_connected(g)
    dist = path_metric(g)
    diameter = max(max(row) for row in dist)
    if diameter <= 1:
        return (0,) * g.n
    p, q = next(
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if dist[i][j] == diameter
    )
    levels = []
    for w in range(g.n):
        if dist[p][w] >= 2:
            levels.append(dist[p][w])
        elif dist[q][w] >= 2:
            levels.append(diameter - dist[q][w])
        else:
            levels.append(1)
    levels_t = tuple(levels)
    bad = _multipath_violation(g, levels_t)
    if bad is not None:
        return NotMultipath(bad, levels_t)
    return levels_t


def _multipath_violation(g: Graph, levels: Sequence[int]) -> tuple[int, int] | None:
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if g.adjacent(i, j) != (abs(levels[i] - levels[j]) <= 1):
                return (i, j)
    return None


def is_level_function(g: Graph, levels: Sequence[int]) -> bool:
    return len(levels) == g.n and _multipath_violation(g, levels) is None


def sequence_of(g: Graph, levels: Sequence[int]) -> tuple[int, ...]:
    """Number of vertices on each level, lowest level first."""
    if len(levels) != g.n:
        raise GraphError("level function does not cover every vertex")
    low = min(levels)
    counts = [0] * (max(levels) - low + 1)
    for lvl in levels:
        counts[lvl - low] += 1
    if 0 in counts:
        raise GraphError("levels are not contiguous")
    return tuple(counts)


# -- canonical form and isomorphism ----------------------------------------


def canonical_form(g: Graph) -> str:
    """Lexicographically least upper-triangle adjacency string over all relabelings.

    Bits are read row by row, ``(0,1), (0,2), ..., (0,n-1), (1,2), ...``.
    """
    return _canonical(g)[0]


def canonical_order(g: Graph) -> tuple[int, ...]:
    """Vertex order realizing :func:`canonical_form` (position -> vertex)."""
    return _canonical(g)[1]


@lru_cache(maxsize=1 << 18)
def _canonical(g: Graph) -> tuple[str, tuple[int, ...]]:
    if g.n > CANONICAL_MAX_N:
        raise GraphError(f"canonical form is limited to {CANONICAL_MAX_N} vertices")
    best: list = [None, None]
    _search(g, [], [list(range(g.n))], "", best)
    return best[0], tuple(best[1])


def _search(g: Graph, placed: list[int], cells: list[list[int]], prefix: str, best: list) -> None:
    # ``cells`` partition the unplaced vertices into ordered position blocks.
    # Row i of the permuted matrix only depends on which cell each later
    # position lies in, so the least row is obtained by putting the chosen
    # vertex's non-neighbours first inside every cell.
    if best[0] is not None and prefix > best[0][: len(prefix)]:
        return
    if not cells:
        if best[0] is None or prefix < best[0]:
            best[0], best[1] = prefix, list(placed)
        return
    head = cells[0]
    options = []
    for v in head:
        row = []
        new_cells = []
        for cell in cells:
            rest = [u for u in cell if u != v]
            zeros = [u for u in rest if not g.adjacent(u, v)]
            ones = [u for u in rest if g.adjacent(u, v)]
            row.append("0" * len(zeros) + "1" * len(ones))
            new_cells.extend(c for c in (zeros, ones) if c)
        options.append(("".join(row), v, new_cells))
    least = min(o[0] for o in options)
    tried: list[int] = []
    for row, v, new_cells in options:
        if row != least:
            continue
        # swapping two twins fixes everything placed so far, so one suffices
        if any(_twins(g, v, u) for u in tried):
            continue
        tried.append(v)
        _search(g, placed + [v], new_cells, prefix + row, best)


def _twins(g: Graph, u: int, v: int) -> bool:
    mask = ~((1 << u) | (1 << v))
    return g.adj[u] & mask == g.adj[v] & mask


def isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.edge_count == h.edge_count and canonical_form(g) == canonical_form(h)


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Bijection ``phi`` (as a list) with ``g.adjacent(u, v) == h.adjacent(phi[u], phi[v])``."""
    if not isomorphic(g, h):
        return None
    og, oh = canonical_order(g), canonical_order(h)
    phi = [0] * g.n
    for a, b in zip(og, oh):
        phi[a] = b
    return phi


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One connected representative per isomorphism class on ``n`` vertices (1 <= n <= 7).

    Every connected graph has a vertex whose removal leaves it connected, so
    all classes arise by attaching a new vertex to a connected graph on
    ``n - 1`` vertices through a nonempty neighbour set.
    """
    if not 1 <= n <= 7:
        raise GraphError("enumeration supports 1 <= n <= 7")
    yield from _connected_classes(n)


@lru_cache(maxsize=None)
def _connected_classes(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    seen: dict[str, Graph] = {}
    for base in _connected_classes(n - 1):
        for mask in range(1, 1 << (n - 1)):
            adj = [a | ((mask >> v & 1) << (n - 1)) for v, a in enumerate(base.adj)]
            adj.append(mask)
            g = Graph(n, tuple(adj))
            key = canonical_form(g)
            if key not in seen:
                seen[key] = g
    return tuple(seen[k] for k in sorted(seen))
