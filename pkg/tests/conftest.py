import itertools

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphcmp.graph import Graph, is_connected

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, b in zip(pairs, bits) if b]
    if connected:
        # a random spanning tree keeps the draw connected
        order = draw(st.permutations(range(n)))
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            a, b = sorted((order[i], order[j]))
            edges.append((a, b))
    g = Graph.from_edges(n, sorted(set(edges)))
    assert not connected or is_connected(g)
    return g


def brute_canonical(g: Graph) -> str:
    best = None
    for perm in itertools.permutations(range(g.n)):
        s = "".join(
            "1" if g.adjacent(perm[i], perm[j]) else "0"
            for i in range(g.n)
            for j in range(i + 1, g.n)
        )
        if best is None or s < best:
            best = s
    return best


def seeded(seed):
    return np.random.default_rng(seed)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
