"""Trivial/nontrivial classification of graph comparisons.

A connected graph has trivial comparison exactly when it is a multipath
whose level counts pass :func:`check_proposition`.  Trivial graphs get a
canonical :class:`FiveArray`; every other graph gets a fusion certificate
ending in ``C4`` or ``T3``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

from .fusion import (
    FusionCertificate,
    FusionStep,
    fuse,
    fusion_reachable,
    induced_certificate,
    replay,
    verify_certificate,
)
from .graph import (
    C4,
    T3,
    Graph,
    GraphError,
    NotMultipath,
    bfs_distances,
    connected_components,
    fan_graph,
    find_isomorphism,
    induced_subgraph,
    is_connected,
    isomorphic,
    multipath_graph,
    path_metric,
    recognize_multipath,
    sequence_of,
)

TARGETS = {"C4": C4, "T3": T3}

INDUCED_CYCLE = "induced_cycle"
GEODESIC_SPIDER = "geodesic_spider"
GEODESIC_UNION = "geodesic_union"
FAN = "fan"
PATTERN_11211 = "pattern_11211"
PATTERN_1221 = "pattern_1221"
PATTERN_222 = "pattern_222"


class ClassificationError(ValueError):
    pass


@dataclass(frozen=True)
class FiveArray:
    """Path of length ``l`` with ``k1`` vertices of ``K_m1`` on its left end, ``k2`` of ``K_m2`` on the right."""

    m1: int
    k1: int
    l: int
    k2: int
    m2: int

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ClassificationError("path length must be nonnegative")
        for m, k in ((self.m1, self.k1), (self.m2, self.k2)):
            if not m >= k >= 0:
                raise ClassificationError(f"need m >= k >= 0, got m={m}, k={k}")
            if m > 0 and k == 0:
                raise ClassificationError("a nonempty clique must be attached")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.m1, self.k1, self.l, self.k2, self.m2)

    def reversed(self) -> FiveArray:
        return FiveArray(self.m2, self.k2, self.l, self.k1, self.m1)

    @property
    def n(self) -> int:
        return self.l + 1 + self.m1 + self.m2


@dataclass(frozen=True)
class Obstruction:
    kind: str
    vertices: tuple[int, ...]
    # cycle: cyclic order; spider: center then legs; fan: hub, then rim in path
    # order; patterns: vertices by level; geodesic union: sorted
    legs: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class Trivial:
    five: FiveArray
    levels: tuple[int, ...]
    sequence: tuple[int, ...]

    verdict = "trivial"


@dataclass(frozen=True)
class Nontrivial:
    target: str
    certificate: FusionCertificate
    obstruction: Obstruction | None = None

    verdict = "nontrivial"


Classification = Union[Trivial, Nontrivial]


@dataclass(frozen=True)
class ComponentClassification:
    vertices: tuple[int, ...]
    graph: Graph
    result: Classification


# -- level counts and five-arrays -------------------------------------------


@dataclass(frozen=True)
class PropositionViolation:
    case: str  # "a", "b" or "c"
    level: int | None = None  # for case (a): a middle level with two or more vertices


def check_proposition(seq: Sequence[int]) -> PropositionViolation | None:
    """None when the level counts ``k_0..k_m`` allow trivial comparison.

    ``m >= 4`` needs ``k_2..k_{m-2}`` all 1, ``m == 3`` needs ``k_1 == 1`` or
    ``k_2 == 1``, and ``m == 2`` needs some level with a single vertex.
    """
    if not seq:
        raise ClassificationError("empty level sequence")
    m = len(seq) - 1
    if m >= 4:
        for i in range(2, m - 1):
            if seq[i] != 1:
                return PropositionViolation("a", i)
    elif m == 3:
        if seq[1] != 1 and seq[2] != 1:
            return PropositionViolation("b")
    elif m == 2:
        if 1 not in seq:
            return PropositionViolation("c")
    return None


def _is_path_tail(m: int, k: int) -> bool:
    # K1 on one vertex, or K2 on one vertex, just extends the path
    return (m, k) in ((1, 1), (2, 1))


def five_array_from(seq: Sequence[int]) -> FiveArray:
    """Canonical five-array of the trivial multipath with level counts ``seq``.

    Complete graphs map to ``(n-1, n-1, 0, 0, 0)``.  Otherwise the first
    ``a`` and last ``b`` levels (``a, b <= 2``) become the end cliques and
    the all-ones middle becomes the path.  Among all such splits of either
    orientation, end cliques that merely extend the path are excluded, the
    shortest path wins, and ties go to the lexicographically smallest array.
    """
    seq = tuple(seq)
    if check_proposition(seq) is not None:
        raise ClassificationError(f"sequence {seq} violates the level-count condition")
    n = sum(seq)
    if len(seq) <= 2:
        return FiveArray(n - 1, n - 1, 0, 0, 0)
    best = None
    for s in (seq, seq[::-1]):
        for a, b in itertools.product(range(3), repeat=2):
            middle = s[a : len(s) - b]
            if not middle or any(k != 1 for k in middle):
                continue
            m1, k1 = _end_clique(s[:a])
            m2, k2 = _end_clique(s[len(s) - b :][::-1])
            if _is_path_tail(m1, k1) or _is_path_tail(m2, k2):
                continue
            f = FiveArray(m1, k1, len(middle) - 1, k2, m2)
            key = (f.l, f.as_tuple())
            if best is None or key < best[0]:
                best = (key, f)
    if best is None:
        raise ClassificationError(f"no five-array for sequence {seq}")
    return best[1]


def _end_clique(levels: Sequence[int]) -> tuple[int, int]:
    # levels listed from the outer end inward: (free vertices, attached vertices)
    if not levels:
        return 0, 0
    if len(levels) == 1:
        return levels[0], levels[0]
    return levels[0] + levels[1], levels[1]


def graph_from_five_array(f: FiveArray) -> Graph:
    """Path ``0..l``, then the left clique, then the right clique; attached clique vertices come first."""
    path = list(range(f.l + 1))
    left = list(range(f.l + 1, f.l + 1 + f.m1))
    right = list(range(f.l + 1 + f.m1, f.n))
    edges = [(i, i + 1) for i in path[:-1]]
    for clique, k, end in ((left, f.k1, path[0]), (right, f.k2, path[-1])):
        edges.extend(itertools.combinations(clique, 2))
        edges.extend((end, v) for v in clique[:k])
    return Graph.from_edges(f.n, edges)


def canonical_five_array(f: FiveArray) -> FiveArray:
    """The canonical representative of the graph described by ``f``."""
    g = graph_from_five_array(f)
    levels = recognize_multipath(g)
    return five_array_from(sequence_of(g, levels))


# -- the (*) condition --------------------------------------------------------


@dataclass(frozen=True)
class StarCheck:
    holds: bool
    u: int
    v: int
    w: int
    distances: tuple[int, int, int]  # |u-w|, |u-v|, |v-w|


def check_star_inequality(g: Graph, u: int, v: int, w: int, dist=None) -> StarCheck:
    """Evaluate: ``|u-w| >= |u-v| >= |v-w| >= 2`` implies ``|u-w| = |u-v| + |v-w|``.

    The triple is first reordered so the distances are in that order.
    """
    dist = dist or path_metric(g)
    trio = [u, v, w]
    a, c = max(itertools.combinations(trio, 2), key=lambda p: dist[p[0]][p[1]])
    (b,) = [x for x in trio if x not in (a, c)]
    if dist[a][b] < dist[b][c]:
        a, c = c, a
    d = (dist[a][c], dist[a][b], dist[b][c])
    holds = d[2] < 2 or d[0] == d[1] + d[2]
    return StarCheck(holds, a, b, c, d)


def _star_violation(g: Graph, dist) -> StarCheck | None:
    found = None
    for trio in itertools.combinations(range(g.n), 3):
        chk = check_star_inequality(g, *trio, dist=dist)
        if not chk.holds and (found is None or sum(chk.distances) < sum(found.distances)):
            found = chk
    return found


def _geodesic(g: Graph, a: int, b: int) -> list[int]:
    dist = bfs_distances(g, b)
    path = [a]
    while path[-1] != b:
        x = path[-1]
        path.append(min(y for y in g.neighbors(x) if dist[y] == dist[x] - 1))
    return path


# -- obstruction search -------------------------------------------------------


def _shortest_hole(g: Graph) -> list[int] | None:
    """Shortest induced cycle of length at least 4, in cyclic order."""
    best = None
    for b in range(g.n):
        nb = g.neighbors(b)
        for a, c in itertools.combinations(nb, 2):
            if g.adjacent(a, c):
                continue
            banned = {b} | (set(nb) - {a, c})
            path = _bfs_path(g, a, c, banned)
            if path is not None and (best is None or len(path) + 1 < len(best)):
                best = [b] + path
    return best


def _bfs_path(g: Graph, a: int, c: int, banned: set[int]) -> list[int] | None:
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == c:
            out = [c]
            while parent[out[-1]] is not None:
                out.append(parent[out[-1]])
            return out[::-1]
        for y in g.neighbors(x):
            if y not in parent and y not in banned:
                parent[y] = x
                queue.append(y)
    return None


def _spider(g: Graph) -> tuple[int, tuple[tuple[int, ...], ...]] | None:
    """Center and legs if ``g`` is a subdivided tripod, else None."""
    if g.edge_count != g.n - 1 or not is_connected(g):
        return None
    degs = [g.degree(v) for v in range(g.n)]
    if sorted(degs)[-1] != 3 or degs.count(3) != 1 or any(d > 3 for d in degs):
        return None
    center = degs.index(3)
    legs = []
    for start in g.neighbors(center):
        leg = [start]
        prev = center
        while degs[leg[-1]] == 2:
            nxt = [y for y in g.neighbors(leg[-1]) if y != prev][0]
            prev = leg[-1]
            leg.append(nxt)
        legs.append(tuple(leg))
    return center, tuple(legs)


def _induced_fan(g: Graph) -> tuple[int, ...] | None:
    """``(hub, p, u, w, q)`` of an induced fan, lexicographically first vertex set."""
    target = fan_graph()
    for five in itertools.combinations(range(g.n), 5):
        sub, keep = induced_subgraph(g, five)
        if sub.edge_count != 7:
            continue
        phi = find_isomorphism(target, sub)
        if phi is not None:
            return tuple(keep[phi[i]] for i in range(5))
    return None


def _nontrivial(g: Graph) -> bool:
    levels = recognize_multipath(g)
    if isinstance(levels, NotMultipath):
        return True
    return check_proposition(sequence_of(g, levels)) is not None


def _shrink(g: Graph, vertices: Sequence[int]) -> list[int]:
    """Drop vertices while the induced subgraph stays connected and nontrivial."""
    keep = sorted(vertices)
    changed = True
    while changed:
        changed = False
        for v in list(keep):
            trial = [u for u in keep if u != v]
            sub, _ = induced_subgraph(g, trial)
            if is_connected(sub) and _nontrivial(sub):
                keep = trial
                changed = True
                break
    return keep


def _obstruction_in(g: Graph, vertices: Sequence[int]) -> Obstruction:
    # a nontrivial induced piece found by the (*) scan, named by its structure
    sub, keep = induced_subgraph(g, vertices)
    spider = _spider(sub)
    if spider is not None:
        center, legs = spider
        return Obstruction(
            GEODESIC_SPIDER,
            (keep[center],) + tuple(keep[x] for leg in legs for x in leg),
            tuple(tuple(keep[x] for x in leg) for leg in legs),
        )
    hole = _shortest_hole(sub)
    if hole is not None:
        return Obstruction(INDUCED_CYCLE, tuple(keep[x] for x in hole))
    fan = _induced_fan(sub) if sub.n >= 5 else None
    if fan is not None:
        return Obstruction(FAN, tuple(keep[x] for x in fan))
    return Obstruction(GEODESIC_UNION, tuple(_shrink(g, vertices)))


def find_obstruction(g: Graph) -> Obstruction | None:
    """Locate an induced piece of ``g`` that fuses down to ``C4`` or ``T3``.

    Scans, in order: a triple breaking (*) (smallest perimeter first) and the
    union of its geodesics; induced cycles of length >= 4; induced fans; and
    finally the multipath patterns (1,1,2,1,1), (1,2,2,1), (2,2,2).
    Returns None for graphs with trivial comparison.
    """
    if not is_connected(g):
        raise GraphError("find_obstruction needs a connected graph")
    dist = path_metric(g)
    bad = _star_violation(g, dist)
    if bad is not None:
        union = set(_geodesic(g, bad.u, bad.v)) | set(_geodesic(g, bad.v, bad.w))
        union |= set(_geodesic(g, bad.u, bad.w))
        return _obstruction_in(g, sorted(union))
    hole = _shortest_hole(g)
    if hole is not None:
        return Obstruction(INDUCED_CYCLE, tuple(hole))
    if g.n >= 5:
        fan = _induced_fan(g)
        if fan is not None:
            return Obstruction(FAN, fan)
    levels = recognize_multipath(g)
    if isinstance(levels, NotMultipath):
        return None
    violation = check_proposition(sequence_of(g, levels))
    if violation is None:
        return None
    return _pattern(levels, violation)


def _pattern(levels: Sequence[int], violation: PropositionViolation) -> Obstruction:
    low = min(levels)
    by_level: dict[int, list[int]] = {}
    for v, lvl in enumerate(levels):
        by_level.setdefault(lvl - low, []).append(v)
    if violation.case == "a":
        i = violation.level
        take = [(i - 2, 1), (i - 1, 1), (i, 2), (i + 1, 1), (i + 2, 1)]
        kind = PATTERN_11211
    elif violation.case == "b":
        take = [(0, 1), (1, 2), (2, 2), (3, 1)]
        kind = PATTERN_1221
    else:
        take = [(0, 2), (1, 2), (2, 2)]
        kind = PATTERN_222
    return Obstruction(kind, tuple(v for lvl, k in take for v in by_level[lvl][:k]))


# -- certificates for obstructions ------------------------------------------

# Two-step reductions of the pattern multipaths and the one-step fan
# reduction, found once by fusion search and frozen.  Indices refer to
# ``multipath_graph(seq)`` / ``fan_graph()`` numbering at each step.
RECIPES: dict[str, tuple[Graph, str, tuple[FusionStep, ...]]] = {
    FAN: (fan_graph(), "T3", (FusionStep(2, 3, {1: False, 4: False}),)),
    PATTERN_11211: (
        multipath_graph((1, 1, 2, 1, 1)),
        "T3",
        (FusionStep(0, 1, {2: True, 3: False}), FusionStep(0, 2, {3: True, 4: True})),
    ),
    PATTERN_1221: (
        multipath_graph((1, 2, 2, 1)),
        "C4",
        (FusionStep(0, 1, {3: True, 4: False}), FusionStep(1, 3, {0: False, 4: True})),
    ),
    PATTERN_222: (
        multipath_graph((2, 2, 2)),
        "C4",
        (FusionStep(0, 2, {4: True, 5: False}), FusionStep(0, 1, {2: False, 3: True})),
    ),
}


def transport_steps(steps: Sequence[FusionStep], phi: Sequence[int]) -> list[FusionStep]:
    """Rewrite steps valid on ``P`` as steps on ``H``, where ``phi: H -> P`` is an isomorphism."""
    inv = [0] * len(phi)
    for h, p in enumerate(phi):
        inv[p] = h
    out = []
    n = len(phi)
    for step in steps:
        h1, h2 = inv[step.v1], inv[step.v2]
        out.append(FusionStep(h1, h2, {inv[u]: c for u, c in step.choices.items()}))
        # both fusions compact survivors in order and append w, so the new
        # isomorphism follows from the two vertex maps
        p_surv = [u for u in range(n) if u not in (step.v1, step.v2)]
        h_surv = [u for u in range(n) if u not in (h1, h2)]
        p_pos = {u: i for i, u in enumerate(p_surv)}
        new_inv = [0] * (n - 1)
        for i, h in enumerate(h_surv):
            new_inv[p_pos[phi[h]]] = i
        new_inv[n - 2] = n - 2
        phi = [0] * (n - 1)
        for p, h in enumerate(new_inv):
            phi[h] = p
        inv = new_inv
        n -= 1
    return out


def _contract_cycle(h: Graph) -> list[FusionStep]:
    steps = []
    while h.n > 4:
        a = 0
        b = h.neighbors(a)[0]
        mixed = [x for x in h.neighbors(a) + h.neighbors(b) if x not in (a, b)]
        step = FusionStep(a, b, {x: True for x in mixed})
        steps.append(step)
        h = fuse(h, step).graph
    return steps


def _contract_spider(h: Graph) -> list[FusionStep]:
    steps = []
    while h.n > 4:
        leaf = next(v for v in range(h.n) if h.degree(v) == 1 and h.degree(h.neighbors(v)[0]) == 2)
        (x,) = h.neighbors(leaf)
        (before,) = [y for y in h.neighbors(x) if y != leaf]
        step = FusionStep(x, leaf, {before: True})
        steps.append(step)
        h = fuse(h, step).graph
    return steps


def obstruction_certificate(g: Graph, o: Obstruction) -> tuple[str, FusionCertificate]:
    """Fusion certificate from ``g`` down to ``C4`` or ``T3`` through the obstruction."""
    head = induced_certificate(g, o.vertices)
    h, _ = replay(g, head.steps)
    if o.kind == INDUCED_CYCLE:
        if h.n < 4 or h.edge_count != h.n or any(h.degree(v) != 2 for v in range(h.n)):
            raise ClassificationError("obstruction is not an induced cycle of g")
        name, tail = "C4", _contract_cycle(h)
    elif o.kind == GEODESIC_SPIDER:
        if _spider(h) is None:
            raise ClassificationError("obstruction is not an induced spider of g")
        name, tail = "T3", _contract_spider(h)
    elif o.kind in RECIPES:
        pattern, name, recipe = RECIPES[o.kind]
        phi = find_isomorphism(h, pattern)
        if phi is None:
            raise ClassificationError(f"obstruction does not induce the {o.kind} graph")
        tail = transport_steps(recipe, phi)
    elif o.kind == GEODESIC_UNION:
        name, tail = _search_tail(h)
    else:
        raise ClassificationError(f"unknown obstruction kind {o.kind!r}")
    cert = FusionCertificate(g, head.steps + tuple(tail), TARGETS[name])
    if not verify_certificate(cert):
        raise ClassificationError("obstruction certificate does not verify")
    return name, cert


def _search_tail(h: Graph) -> tuple[str, list[FusionStep]]:
    for name in ("C4", "T3"):
        cert = fusion_reachable(h, TARGETS[name])
        if cert is not None:
            return name, list(cert.steps)
    raise ClassificationError("graph fuses to neither C4 nor T3")


# -- classification ---------------------------------------------------------


def classify_connected(g: Graph) -> Classification:
    if not is_connected(g):
        raise GraphError("classify_connected needs a connected graph")
    levels = recognize_multipath(g)
    if not isinstance(levels, NotMultipath):
        seq = sequence_of(g, levels)
        if check_proposition(seq) is None:
            return Trivial(five_array_from(seq), levels, seq)
    for name, target in TARGETS.items():
        if isomorphic(g, target):
            return Nontrivial(name, FusionCertificate(g, (), target))
    obstruction = find_obstruction(g)
    if obstruction is not None:
        name, cert = obstruction_certificate(g, obstruction)
        return Nontrivial(name, cert, obstruction)
    name, tail = _search_tail(g)
    return Nontrivial(name, FusionCertificate(g, tuple(tail), TARGETS[name]))


def classify(g: Graph) -> list[ComponentClassification]:
    out = []
    for comp in connected_components(g):
        sub, keep = induced_subgraph(g, comp)
        out.append(ComponentClassification(tuple(keep), sub, classify_connected(sub)))
    return out


def is_trivial(g: Graph) -> bool:
    return all(isinstance(c.result, Trivial) for c in classify(g))
