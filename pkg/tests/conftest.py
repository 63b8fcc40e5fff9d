"""Shared fixtures: small-graph enumeration and common builders.

The exhaustive suites run over all connected graphs up to a vertex count,
one representative per isomorphism class.  Representatives are built by
vertex augmentation (every connected (k+1)-graph arises from a connected
k-graph by adding one vertex with a non-empty neighborhood) and deduplicated
by an exact canonical form computed with individualization-refinement, which
is cheap at n <= 8.
"""

from __future__ import annotations

import pytest

from blowup.graphs import Graph


def gr(n: int, edges) -> Graph:
    return Graph.from_edges(n, edges)


def path(n: int) -> Graph:
    return gr(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return gr(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return gr(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def canonical_form(n: int, adj: tuple[tuple[int, ...], ...]) -> int:
    """Canonical adjacency encoding, invariant under relabeling."""

    def refine(colors: list[int]) -> list[int]:
        while True:
            keyed = [
                (colors[v], tuple(sorted(colors[w] for w in adj[v])))
                for v in range(n)
            ]
            ranks = {key: i for i, key in enumerate(sorted(set(keyed)))}
            new = [ranks[keyed[v]] for v in range(n)]
            if new == colors:
                return colors
            colors = new

    def encode(order: list[int]) -> int:
        pos = {v: i for i, v in enumerate(order)}
        word = 0
        bit = 0
        for i in range(n):
            for j in range(i + 1, n):
                if order[j] in adj[order[i]]:
                    word |= 1 << bit
                bit += 1
        return word

    def search(colors: list[int]) -> int:
        colors = refine(colors)
        by_color: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            by_color.setdefault(c, []).append(v)
        big = [c for c in sorted(by_color) if len(by_color[c]) > 1]
        if not big:
            order = sorted(range(n), key=lambda v: colors[v])
            return encode(order)
        target = by_color[big[0]]
        best = None
        for v in target:
            branched = [2 * c + 1 for c in colors]
            branched[v] = 2 * colors[v]
            cand = search(branched)
            if best is None or cand < best:
                best = cand
        return best

    return search([len(a) for a in adj])


_CACHE: dict[int, list[Graph]] = {}


def connected_graphs_exactly(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected n-vertex graphs."""
    if n in _CACHE:
        return _CACHE[n]
    if n == 1:
        _CACHE[1] = [Graph(1, ((),))]
        return _CACHE[1]
    seen: set[int] = set()
    out: list[Graph] = []
    for parent in connected_graphs_exactly(n - 1):
        for nb in range(1, 1 << (n - 1)):
            adj = [list(a) for a in parent.adj] + [[]]
            for w in range(n - 1):
                if nb >> w & 1:
                    adj[w].append(n - 1)
                    adj[n - 1].append(w)
            tadj = tuple(tuple(sorted(a)) for a in adj)
            key = canonical_form(n, tadj)
            if key not in seen:
                seen.add(key)
                out.append(Graph(n, tadj))
    _CACHE[n] = out
    return out


def connected_graphs_upto(n_max: int) -> list[Graph]:
    graphs: list[Graph] = []
    for n in range(1, n_max + 1):
        graphs.extend(connected_graphs_exactly(n))
    return graphs


@pytest.fixture(scope="session")
def sweep7() -> list[Graph]:
    return connected_graphs_upto(7)


@pytest.fixture(scope="session")
def sweep8() -> list[Graph]:
    return connected_graphs_upto(8)
