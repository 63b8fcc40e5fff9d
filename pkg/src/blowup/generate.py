"""Deterministic graph generators for experiments and tests.

Planar kinds (grids, stacked triangulations) come with straight-line
coordinates, so their rotation systems are read off by sorting neighbors by
angle, counterclockwise.
"""

from __future__ import annotations

import math
import random

from .graphs import Graph
from .planar import RotationSystem


class BadParams(ValueError):
    pass


def _rotation_from_coords(g: Graph, coords: list[tuple[float, float]]) -> RotationSystem:
    rot = []
    for v in range(g.n):
        x, y = coords[v]
        rot.append(
            tuple(
                sorted(
                    g.adj[v],
                    key=lambda w: math.atan2(coords[w][1] - y, coords[w][0] - x),
                )
            )
        )
    return RotationSystem(tuple(rot))


def grid(rows: int, cols: int) -> tuple[Graph, RotationSystem]:
    """rows x cols grid; vertex (i, j) gets id i*cols + j."""
    if rows < 1 or cols < 1:
        raise BadParams("grid needs positive dimensions")
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    g = Graph.from_edges(rows * cols, edges)
    coords = [(float(j), float(-i)) for i in range(rows) for j in range(cols)]
    return g, _rotation_from_coords(g, coords)


def apollonian(n: int, seed: int) -> tuple[Graph, RotationSystem]:
    """Random stacked triangulation: start from K_4 and repeatedly put a new
    vertex inside a uniformly random inner face."""
    if n < 4:
        raise BadParams("stacked triangulations need n >= 4")
    rng = random.Random(seed)
    coords = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    coords.append(
        ((coords[0][0] + coords[1][0] + coords[2][0]) / 3,
         (coords[0][1] + coords[1][1] + coords[2][1]) / 3)
    )
    edges = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    faces = [(0, 1, 3), (0, 2, 3), (1, 2, 3)]
    for v in range(4, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        coords.append(
            ((coords[a][0] + coords[b][0] + coords[c][0]) / 3,
             (coords[a][1] + coords[b][1] + coords[c][1]) / 3)
        )
        edges += [(a, v), (b, v), (c, v)]
        faces += [(a, b, v), (a, c, v), (b, c, v)]
    g = Graph.from_edges(n, edges)
    return g, _rotation_from_coords(g, coords)


def ktree(n: int, k: int, seed: int) -> Graph:
    """Random k-tree: each new vertex attaches to a random existing k-clique."""
    if n < k + 1 or k < 1:
        raise BadParams("k-tree needs n >= k + 1 >= 2")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(k + 1) for j in range(i + 1, k + 1)]
    cliques = [tuple(c for c in range(k + 1) if c != i) for i in range(k + 1)]
    for v in range(k + 1, n):
        base = cliques[rng.randrange(len(cliques))]
        edges += [(u, v) for u in base]
        cliques += [tuple(sorted(set(base) - {u} | {v})) for u in base]
    return Graph.from_edges(n, edges)


def complete(n: int) -> Graph:
    if n < 1:
        raise BadParams("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)
