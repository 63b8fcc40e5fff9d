"""Planar embeddings by rotation system, layered decompositions, and the
planar product-structure pipeline.

Embeddings are inputs: a rotation system lists each vertex's neighbors in
cyclic order, faces are traced with next(u->v) = (v, predecessor of u in the
rotation at v), and an Euler-formula check guards consistency.  From a
triangulation, a breadth-first tree plus the dual spanning tree on non-tree
edges yields a tree-decomposition whose bags meet every breadth-first layer
in at most three vertices; combined with the rooted partition engine this
embeds any planar graph into (quotient) x (path) x (3-clique).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .decomp import Layering, TreeDecomposition, bfs_layering, validate_td
from .engine import (
    MinorWitness,
    PartitionResult,
    layered_width,
    partition_rooted_main,
)
from .graphs import Graph
from .verify import ProductEmbedding


class BadEmbedding(ValueError):
    """Rotation system inconsistent with the graph or not planar."""


class NotTriangulation(ValueError):
    """A face of length other than three was found."""


@dataclass(frozen=True)
class RotationSystem:
    rot: tuple[tuple[int, ...], ...]
    outer_face: tuple[int, ...] | None = None


@dataclass(frozen=True)
class LayeredTD:
    td: TreeDecomposition
    layering: Layering

    @property
    def ltw(self) -> int:
        return layered_width(self.td, self.layering)


def rotation_to_json(rot: RotationSystem) -> str:
    return json.dumps(
        {
            "rot": [list(r) for r in rot.rot],
            "outer_face": None if rot.outer_face is None else list(rot.outer_face),
        },
        sort_keys=True,
    )


def rotation_from_json(text: str) -> RotationSystem:
    obj = json.loads(text)
    outer = obj.get("outer_face")
    return RotationSystem(
        tuple(tuple(r) for r in obj["rot"]),
        None if outer is None else tuple(outer),
    )


def _check_rotation(g: Graph, rot: RotationSystem) -> None:
    if len(rot.rot) != g.n:
        raise BadEmbedding("rotation table size differs from vertex count")
    for v in range(g.n):
        if sorted(rot.rot[v]) != list(g.adj[v]):
            raise BadEmbedding(f"rotation at vertex {v} does not list its neighbors")


def trace_faces(g: Graph, rot: RotationSystem) -> list[list[int]]:
    """Face walks of the embedding, each as its cyclic vertex sequence.

    Walks are found by scanning directed edges in (vertex, rotation position)
    order, so the face order is reproducible.  Raises when the face count
    violates Euler's formula (the rotation system is not planar).
    """
    _check_rotation(g, rot)
    pos = [{u: i for i, u in enumerate(r)} for r in rot.rot]

    def nxt(u: int, v: int) -> tuple[int, int]:
        r = rot.rot[v]
        return v, r[(pos[v][u] - 1) % len(r)]

    seen: set[tuple[int, int]] = set()
    faces: list[list[int]] = []
    for u in range(g.n):
        for w in rot.rot[u]:
            if (u, w) in seen:
                continue
            walk = []
            edge = (u, w)
            while edge not in seen:
                seen.add(edge)
                walk.append(edge[0])
                edge = nxt(*edge)
            if edge != (u, w):
                raise BadEmbedding("face walk did not close")
            faces.append(walk)
    if g.n >= 1 and g.n - g.m + len(faces) != 2:
        raise BadEmbedding(
            f"Euler check failed: n={g.n} m={g.m} f={len(faces)} (connected input?)"
        )
    return faces


def _bfs_rotation_tree(g: Graph, rot: RotationSystem, root: int) -> tuple[list[int], list[int]]:
    """Breadth-first parents/depths, expanding neighbors in rotation order."""
    parent = [-1] * g.n
    depth = [-1] * g.n
    depth[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in rot.rot[u]:
            if depth[w] == -1:
                depth[w] = depth[u] + 1
                parent[w] = u
                queue.append(w)
    if any(d == -1 for d in depth):
        raise BadEmbedding("graph is not connected")
    return parent, depth


def eppstein_ltw3(g: Graph, rot: RotationSystem, root: int = 0) -> LayeredTD:
    """Tree-decomposition of a planar triangulation with layered width <= 3.

    One bag per face: the union of the three tree paths from the face's
    corners up to the breadth-first root.  The decomposition tree is the dual
    spanning tree formed by the duals of non-tree edges; a breadth-first tree
    path has at most one vertex per distance layer, so every bag meets every
    layer in at most three vertices.  Both properties are asserted on every
    run.
    """
    if g.n < 3:
        raise NotTriangulation("need at least 3 vertices")
    faces = trace_faces(g, rot)
    for walk in faces:
        if len(walk) != 3 or len(set(walk)) != 3:
            raise NotTriangulation(f"face {walk} is not a triangle")
    parent, depth = _bfs_rotation_tree(g, rot, root)
    tree_edges = {frozenset((v, parent[v])) for v in range(g.n) if parent[v] != -1}

    face_of: dict[tuple[int, int], int] = {}
    for i, walk in enumerate(faces):
        for a, b in zip(walk, walk[1:] + walk[:1]):
            face_of[(a, b)] = i
    dual_edges = []
    for u, v in g.edges():
        if frozenset((u, v)) not in tree_edges:
            f1, f2 = face_of[(u, v)], face_of[(v, u)]
            if f1 == f2:
                raise BadEmbedding(f"edge {u}-{v} has one face on both sides")
            dual_edges.append((min(f1, f2), max(f1, f2)))
    if len(dual_edges) != len(faces) - 1:
        raise BadEmbedding("dual non-tree edges do not form a spanning tree")

    path_cache: dict[int, frozenset[int]] = {}

    def root_path(v: int) -> frozenset[int]:
        if v not in path_cache:
            out = [v]
            while parent[out[-1]] != -1:
                out.append(parent[out[-1]])
            path_cache[v] = frozenset(out)
        return path_cache[v]

    bags = tuple(root_path(a) | root_path(b) | root_path(c) for a, b, c in faces)
    td = TreeDecomposition(bags, tuple(sorted(set(dual_edges))))
    err = validate_td(g, td)
    if err is not None:
        raise BadEmbedding(f"face decomposition invalid: {err}")
    layering = bfs_layering(g, root)
    depth_of = layering.index_of()
    for bag in bags:
        per_layer: dict[int, int] = {}
        for v in bag:
            per_layer[depth_of[v]] = per_layer.get(depth_of[v], 0) + 1
        assert max(per_layer.values()) <= 3, "a bag meets a layer in > 3 vertices"
    return LayeredTD(td, layering)


def triangulate(g: Graph, rot: RotationSystem) -> tuple[Graph, RotationSystem]:
    """Add chords until every face is a triangle; the rotation system is
    maintained alongside.

    Each face walk is reduced by ear clipping: scanning corners from the
    walk's lowest-numbered vertex, a chord is drawn across the first corner
    whose endpoints are distinct and not yet adjacent.  Repeated corner
    vertices (cut vertices, pendant edges) are skipped until a legal chord
    appears, which also resolves them.
    """
    if g.n < 3:
        raise BadEmbedding("need at least 3 vertices")
    faces = trace_faces(g, rot)
    adj = [set(a) for a in g.adj]
    rot_l = [list(r) for r in rot.rot]

    def clip(walk: list[int], i: int) -> list[int]:
        k = len(walk)
        p, x, y, z = walk[(i - 1) % k], walk[i], walk[(i + 1) % k], walk[(i + 2) % k]
        q = walk[(i + 3) % k]
        # rot[x]: ... y p ...  ->  ... y z p ...
        px = rot_l[x].index(p)
        assert rot_l[x][px - 1] == y, "rotation drifted from face walk"
        rot_l[x].insert(px, z)
        # rot[z]: ... q y ...  ->  ... q x y ...
        py = rot_l[z].index(y)
        assert rot_l[z][py - 1] == q, "rotation drifted from face walk"
        rot_l[z].insert(py, x)
        adj[x].add(z)
        adj[z].add(x)
        j = (i + 1) % k
        return walk[:j] + walk[j + 1 :]

    for walk in faces:
        w = list(walk)
        while len(w) > 3:
            start = w.index(min(w))
            w = w[start:] + w[:start]
            clipped = False
            for i in range(len(w)):
                x, y, z = w[i], w[(i + 1) % len(w)], w[(i + 2) % len(w)]
                if x != z and z not in adj[x]:
                    w = clip(w, i)
                    clipped = True
                    break
            if not clipped:
                raise BadEmbedding("face cannot be triangulated by chords")
    g2 = Graph(g.n, tuple(tuple(sorted(a)) for a in adj), g.labels)
    rot2 = RotationSystem(tuple(tuple(r) for r in rot_l))
    if g2.m != 3 * g2.n - 6:
        raise BadEmbedding(f"triangulation has {g2.m} edges, wanted {3 * g2.n - 6}")
    for walk in trace_faces(g2, rot2):
        if len(walk) != 3:
            raise BadEmbedding("a non-triangular face survived")
    return g2, rot2


def planar_product_structure(
    g: Graph, rot: RotationSystem, root: int = 0
) -> tuple[PartitionResult, Layering, ProductEmbedding]:
    """Partition + layering + explicit embedding into quotient x path x K_3.

    Triangulates, builds the layered-width-3 decomposition, and runs the
    decomposition-relative engine with (s, t) = (3, 2); every part then lies
    inside a single bag, hence meets each layer in at most three vertices.
    A minor witness can only mean the input embedding was not planar.
    """
    out = triangulate(g, rot)
    tg, trot = out
    ltd = eppstein_ltw3(tg, trot, root)
    res = partition_rooted_main(tg, ltd.td, [frozenset([root])], 3, 2)
    if isinstance(res, MinorWitness):
        raise BadEmbedding("engine found a 5-clique pattern; input not planar")
    part_of = {}
    for i, part in enumerate(res.parts):
        for v in part:
            part_of[v] = i
    depth_of = ltd.layering.index_of()
    cells: dict[tuple[int, int], list[int]] = {}
    for v in range(g.n):
        cells.setdefault((part_of[v], depth_of[v]), []).append(v)
    assign = []
    for v in range(g.n):
        cell = sorted(cells[(part_of[v], depth_of[v])])
        assert len(cell) <= 3, "a part meets a layer in > 3 vertices"
        assign.append((part_of[v], depth_of[v], cell.index(v) + 1))
    emb = ProductEmbedding(tuple(assign), 3)
    return res, ltd.layering, emb
