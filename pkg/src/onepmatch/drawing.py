"""Combinatorial 1-planar drawings stored as planarized rotation systems.

Every edge ``e`` owns darts ``4e`` (the end at ``u``) and ``4e+1`` (the end
at ``v``).  A crossed edge additionally owns ``4e+2`` and ``4e+3``, the ends
of its ``u``- and ``v``-segment at the crossing dummy.  Real vertices are
nodes ``0..n-1``; the dummy of crossing ``c`` is node ``-1-c``.

Face traversal follows ``next(d) = succ(twin(d))`` where ``succ`` is the
cyclic successor in the rotation of the node holding ``twin(d)``.  The angle
between a dart ``t`` and ``succ(t)`` belongs to the cell traversed by
``succ(t)``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class DrawingError(ValueError):
    """Raised when a drawing violates a structural invariant."""


def crossing_node(c: int) -> int:
    return -1 - c


def node_crossing(node: int) -> int:
    return -1 - node


def is_crossing_node(node: int) -> bool:
    return node < 0


def node_label(node: int) -> str:
    return f"x{node_crossing(node)}" if node < 0 else f"v{node}"


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    k = min(range(len(seq)), key=seq.__getitem__)
    return tuple(seq[k:]) + tuple(seq[:k])


def _twin(d: int, crossed: bool) -> int:
    k = d & 3
    if crossed:
        return d + 2 if k < 2 else d - 2
    return d ^ 1


@dataclass(frozen=True)
class Cell:
    """One face of the planarization.

    Attributes:
        id: Index in the list returned by :func:`compute_cells`.
        boundary: Circuits of darts; each dart leaves the node it sits at.
        singletons: Vertices forming one-vertex circuits.
        corners: Nodes met along the circuits, in walk order.
        m_f: Number of edge-incidences (segments of the planarization).
        comp: Number of boundary circuits, singletons included.
        degree: ``m_f + 2*comp - 2``.
        crossed: True iff some corner is a crossing dummy.
    """

    id: int
    boundary: tuple[tuple[int, ...], ...]
    singletons: tuple[int, ...]
    corners: tuple[int, ...]
    m_f: int
    comp: int
    degree: int
    crossed: bool

    @property
    def vertices(self) -> tuple[int, ...]:
        """Distinct real vertices on the cell, sorted."""
        return tuple(sorted({c for c in self.corners if c >= 0} | set(self.singletons)))


@dataclass(frozen=True)
class Drawing:
    """Immutable planarized rotation system of a connected 1-planar drawing.

    Attributes:
        n: Number of real vertices.
        edges: ``(id, u, v)`` records sorted by id.
        crossings: ``(id, e1, e2)`` records sorted by id.
        rotation: Node to cyclic dart tuple, each starting at its smallest dart.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    crossings: tuple[tuple[int, int, int], ...]
    rotation: Mapping[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in self.edges)))
        object.__setattr__(
            self, "crossings", tuple(sorted(tuple(c) for c in self.crossings))
        )
        rot = {int(k): _canonical_cycle(list(v)) for k, v in self.rotation.items()}
        object.__setattr__(self, "rotation", dict(sorted(rot.items(), key=_node_order)))
        self._check()

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.crossings, tuple(self.rotation.items())))

    # -- basic lookups -------------------------------------------------------

    @cached_property
    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {e: (u, v) for e, u, v in self.edges}

    @cached_property
    def crossing_of(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c, e1, e2 in self.crossings:
            out[e1] = c
            out[e2] = c
        return out

    @cached_property
    def partner(self) -> dict[int, int]:
        """Edge id to the edge id crossing it."""
        out: dict[int, int] = {}
        for _, e1, e2 in self.crossings:
            out[e1] = e2
            out[e2] = e1
        return out

    def is_crossed(self, e: int) -> bool:
        return e in self.crossing_of

    def dart_node(self, d: int) -> int:
        e, k = divmod(d, 4)
        if k < 2:
            return self.endpoints[e][k]
        return crossing_node(self.crossing_of[e])

    def twin(self, d: int) -> int:
        return _twin(d, (d >> 2) in self.crossing_of)

    def far_vertex(self, d: int) -> int:
        """Real endpoint of the edge reached by following dart ``d`` outwards."""
        u, v = self.endpoints[d >> 2]
        k = d & 3
        if k == 0:
            return v
        if k == 1:
            return u
        return u if k == 2 else v

    @cached_property
    def succ(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for darts in self.rotation.values():
            for i, d in enumerate(darts):
                out[d] = darts[(i + 1) % len(darts)]
        return out

    @cached_property
    def pred(self) -> dict[int, int]:
        return {b: a for a, b in self.succ.items()}

    @cached_property
    def darts(self) -> tuple[int, ...]:
        return tuple(sorted(self.succ))

    def next_dart(self, d: int) -> int:
        return self.succ[self.twin(d)]

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    # -- faces ---------------------------------------------------------------

    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        return tuple(_compute_cells(self))

    @cached_property
    def face_of_dart(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for cell in self.cells:
            for circuit in cell.boundary:
                for d in circuit:
                    out[d] = cell.id
        return out

    def cell_at_angle(self, t: int) -> int:
        """Cell containing the angle that follows dart ``t`` in its rotation."""
        return self.face_of_dart[self.succ[t]]

    # -- structural checks ----------------------------------------------------

    def _check(self) -> None:
        if self.n < 0:
            raise DrawingError("negative vertex count")
        seen_edges: set[int] = set()
        for e, u, v in self.edges:
            if e < 0 or e in seen_edges:
                raise DrawingError(f"bad or duplicate edge id {e}")
            seen_edges.add(e)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DrawingError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
        ends = {e: (u, v) for e, u, v in self.edges}
        crossed: dict[int, int] = {}
        seen_cross: set[int] = set()
        for c, e1, e2 in self.crossings:
            if c < 0 or c in seen_cross:
                raise DrawingError(f"bad or duplicate crossing id {c}")
            seen_cross.add(c)
            for e in (e1, e2):
                if e not in ends:
                    raise DrawingError(f"crossing {c} refers to unknown edge {e}")
                if e in crossed:
                    raise DrawingError(f"edge crossed twice: edge {e}")
                crossed[e] = c
            if e1 == e2:
                raise DrawingError(f"crossing {c} pairs edge {e1} with itself")
            for e in (e1, e2):
                if ends[e][0] == ends[e][1]:
                    raise DrawingError(f"loop participating in a crossing: edge {e}")
            if set(ends[e1]) & set(ends[e2]):
                raise DrawingError(f"crossing {c} pairs edges sharing an endpoint")
        expected_nodes = set(range(self.n)) | {crossing_node(c) for c in seen_cross}
        if set(self.rotation) != expected_nodes:
            extra = sorted(set(self.rotation) - expected_nodes)
            missing = sorted(expected_nodes - set(self.rotation))
            raise DrawingError(f"rotation keys mismatch (extra {extra}, missing {missing})")
        owner: dict[int, int] = {}
        for e, (u, v) in ends.items():
            owner[4 * e] = u
            owner[4 * e + 1] = v
            if e in crossed:
                owner[4 * e + 2] = owner[4 * e + 3] = crossing_node(crossed[e])
        placed: set[int] = set()
        for node, darts in self.rotation.items():
            for d in darts:
                if d not in owner:
                    raise DrawingError(f"dangling dart {d} at {node_label(node)}")
                if owner[d] != node:
                    raise DrawingError(f"dart {d} placed at {node_label(node)}, belongs elsewhere")
                if d in placed:
                    raise DrawingError(f"dart {d} appears twice")
                placed.add(d)
        if placed != set(owner):
            raise DrawingError(f"darts missing from rotation: {sorted(set(owner) - placed)}")
        for c, e1, e2 in self.crossings:
            darts = self.rotation[crossing_node(c)]
            if len(darts) != 4:
                raise DrawingError(f"crossing {c} rotation must have 4 darts")
            kinds = [d >> 2 for d in darts]
            if kinds[0] != kinds[2] or kinds[1] != kinds[3] or kinds[0] == kinds[1]:
                raise DrawingError(f"non-alternating crossing rotation at crossing {c}")
        if not _planarization_connected(self):
            raise DrawingError("planarization is not connected")
        v_p = self.n + len(self.crossings)
        e_p = len(self.edges) + 2 * len(self.crossings)
        if e_p and v_p - e_p + len(self.cells) != 2:
            raise DrawingError("rotation system is not planar (Euler characteristic != 2)")


def _node_order(item: tuple[int, object]) -> tuple[int, int]:
    node = item[0]
    return (1, node_crossing(node)) if node < 0 else (0, node)


def _planarization_connected(d: Drawing) -> bool:
    nodes = list(d.rotation)
    if len(nodes) <= 1:
        return True
    adj: dict[int, list[int]] = defaultdict(list)
    for dart in d.darts:
        adj[d.dart_node(dart)].append(d.dart_node(d.twin(dart)))
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def face_walks(darts: Iterable[int], nxt) -> list[tuple[int, ...]]:
    """Partition ``darts`` into cycles of ``nxt``; each cycle starts at its smallest dart."""
    seen: set[int] = set()
    walks: list[tuple[int, ...]] = []
    for start in sorted(darts):
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = nxt(d)
        if d != start:
            raise DrawingError("face traversal did not close up")
        walks.append(tuple(walk))
    return walks


def _compute_cells(d: Drawing) -> list[Cell]:
    if not d.succ:
        singles = tuple(range(d.n))
        return [
            Cell(
                id=0,
                boundary=(),
                singletons=singles,
                corners=(),
                m_f=0,
                comp=len(singles),
                degree=2 * len(singles) - 2,
                crossed=False,
            )
        ]
    cells = []
    for i, walk in enumerate(face_walks(d.darts, d.next_dart)):
        corners = tuple(d.dart_node(x) for x in walk)
        cells.append(
            Cell(
                id=i,
                boundary=(walk,),
                singletons=(),
                corners=corners,
                m_f=len(walk),
                comp=1,
                degree=len(walk),
                crossed=any(c < 0 for c in corners),
            )
        )
    return cells


def compute_cells(d: Drawing) -> list[Cell]:
    """Cells of ``d``; every dart lies on exactly one circuit."""
    return list(d.cells)


# -- file format -------------------------------------------------------------


def serialize(d: Drawing) -> str:
    """Canonical text form; ``parse_drawing(serialize(d)) == d``."""
    lines = ["{", f'  "n": {d.n},']
    lines.append('  "edges": [' + ", ".join(json.dumps(list(e)) for e in d.edges) + "],")
    lines.append(
        '  "crossings": [' + ", ".join(json.dumps(list(c)) for c in d.crossings) + "],"
    )
    rot_lines = [
        f'    "{node_label(node)}": {json.dumps(list(darts))}'
        for node, darts in d.rotation.items()
    ]
    if rot_lines:
        lines.append('  "rotation": {\n' + ",\n".join(rot_lines) + "\n  }")
    else:
        lines.append('  "rotation": {}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_drawing(text: str) -> Drawing:
    """Parse the drawing file format and validate every structural invariant."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DrawingError(f"malformed syntax: {exc}") from exc
    if not isinstance(data, dict):
        raise DrawingError("malformed syntax: top level must be an object")
    missing = {"n", "edges", "crossings", "rotation"} - set(data)
    if missing:
        raise DrawingError(f"malformed syntax: missing fields {sorted(missing)}")
    try:
        n = int(data["n"])
        edges = [tuple(int(x) for x in rec) for rec in data["edges"]]
        crossings = [tuple(int(x) for x in rec) for rec in data["crossings"]]
        rotation: dict[int, tuple[int, ...]] = {}
        for key, darts in data["rotation"].items():
            if key[:1] == "v":
                node = int(key[1:])
            elif key[:1] == "x":
                node = crossing_node(int(key[1:]))
            else:
                raise ValueError(f"bad rotation key {key!r}")
            if node in rotation:
                raise ValueError(f"duplicate rotation key {key!r}")
            rotation[node] = tuple(int(x) for x in darts)
    except (TypeError, ValueError) as exc:
        raise DrawingError(f"malformed syntax: {exc}") from exc
    if any(len(r) != 3 for r in edges) or any(len(r) != 3 for r in crossings):
        raise DrawingError("malformed syntax: records must have three fields")
    return Drawing(n=n, edges=tuple(edges), crossings=tuple(crossings), rotation=rotation)


# -- analysis ---------------------------------------------------------------


@dataclass(frozen=True)
class KiteQuadrant:
    """One quadrant of a crossing: endpoints, the cell there and its kite-edge."""

    endpoints: tuple[int, int]
    cell: int
    edge: int | None


def kite_edge_status(d: Drawing, x: int) -> list[KiteQuadrant]:
    """Report, for each quadrant around crossing ``x``, its kite-edge if present."""
    node = crossing_node(x)
    if node not in d.rotation:
        raise DrawingError(f"unknown crossing id {x}")
    rot = d.rotation[node]
    out = []
    for k in range(4):
        a, b = rot[k], rot[(k + 1) % 4]
        va, vb = d.far_vertex(a), d.far_vertex(b)
        cell = d.cell_at_angle(a)
        found = None
        for circuit in d.cells[cell].boundary:
            for dart in circuit:
                u, v = d.endpoints[dart >> 2]
                if {u, v} == {va, vb} and u != v:
                    if found is None or (dart >> 2) < found:
                        found = dart >> 2
        out.append(KiteQuadrant(endpoints=(va, vb), cell=cell, edge=found))
    return out


def has_all_kite_edges(d: Drawing) -> bool:
    return all(q.edge is not None for c, _, _ in d.crossings for q in kite_edge_status(d, c))


@dataclass(frozen=True)
class Diagnostics:
    """Non-simplicity flags of a drawing.

    Attributes:
        n1: No loops.
        n2: At most one crossed copy in every parallel class.
        n3: Every parallel class with two or more copies is entirely uncrossed.
        simple: No loops and no parallel edges.
        triangulated: Every cell has degree 3.
        loops: Ids of loop edges.
        parallel_classes: Edge-id groups with two or more copies.
        n2_violations: Parallel classes with more than one crossed copy.
        n3_violations: Parallel classes containing a crossed copy.
        non_triangular_cells: Ids of cells whose degree is not 3.
    """

    n1: bool
    n2: bool
    n3: bool
    simple: bool
    triangulated: bool
    loops: tuple[int, ...]
    parallel_classes: tuple[tuple[int, ...], ...]
    n2_violations: tuple[tuple[int, ...], ...]
    n3_violations: tuple[tuple[int, ...], ...]
    non_triangular_cells: tuple[int, ...]


def parallel_classes(d: Drawing) -> dict[tuple[int, int], list[int]]:
    classes: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e, u, v in d.edges:
        classes[(min(u, v), max(u, v))].append(e)
    return dict(classes)


def validate(d: Drawing) -> Diagnostics:
    loops = tuple(e for e, u, v in d.edges if u == v)
    multi = [tuple(ids) for ids in parallel_classes(d).values() if len(ids) > 1]
    n2_bad = tuple(c for c in multi if sum(d.is_crossed(e) for e in c) > 1)
    n3_bad = tuple(c for c in multi if any(d.is_crossed(e) for e in c))
    bad_cells = tuple(c.id for c in d.cells if c.degree != 3)
    return Diagnostics(
        n1=not loops,
        n2=not n2_bad,
        n3=not n3_bad,
        simple=not loops and not multi,
        triangulated=not bad_cells,
        loops=loops,
        parallel_classes=tuple(multi),
        n2_violations=n2_bad,
        n3_violations=n3_bad,
        non_triangular_cells=bad_cells,
    )


def adjacency(d: Drawing) -> list[set[int]]:
    """Underlying simple graph: loops dropped, parallel edges collapsed."""
    adj: list[set[int]] = [set() for _ in range(d.n)]
    for _, u, v in d.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def has_edge(d: Drawing, a: int, b: int) -> bool:
    return b in adjacency_cache(d)[a]


def adjacency_cache(d: Drawing) -> list[set[int]]:
    cache = d.__dict__.get("_adjacency")
    if cache is None:
        cache = adjacency(d)
        d.__dict__["_adjacency"] = cache
    return cache


def components_minus(d: Drawing, s: Iterable[int]) -> tuple[int, int, list[list[int]]]:
    """``(comp(G-S), odd(G-S), components)`` of the underlying graph."""
    removed = set(s)
    adj = adjacency_cache(d)
    seen = set(removed)
    comps: list[list[int]] = []
    for start in range(d.n):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    odd = sum(len(c) % 2 for c in comps)
    return len(comps), odd, comps


def _articulation_free(adj: list[set[int]], alive: list[bool]) -> bool:
    """True iff the alive part is connected and has no cut-vertex."""
    nodes = [v for v in range(len(adj)) if alive[v]]
    if len(nodes) <= 2:
        return True
    disc = [-1] * len(adj)
    low = [0] * len(adj)
    root = nodes[0]
    timer = 0
    disc[root] = low[root] = timer
    root_children = 0
    stack = [(root, -1, iter(sorted(adj[root])))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if not alive[w]:
                continue
            if disc[w] == -1:
                timer += 1
                disc[w] = low[w] = timer
                stack.append((w, v, iter(sorted(adj[w]))))
                advanced = True
                break
            if w != parent:
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent != -1:
            low[parent] = min(low[parent], low[v])
            if parent == root:
                root_children += 1
            elif low[v] >= disc[parent]:
                return False
    if any(disc[v] == -1 for v in nodes):
        return False
    return root_children <= 1


def is_three_connected(d: Drawing) -> bool:
    """No cut-vertex and no cutting pair in the underlying simple graph."""
    if d.n < 4:
        raise DrawingError("3-connectivity needs at least 4 vertices")
    adj = adjacency(d)
    alive = [True] * d.n
    if not _articulation_free(adj, alive):
        return False
    # a cutting pair {a, b} shows up as a cut-vertex b of G - a
    for a in range(d.n):
        alive[a] = False
        ok = _articulation_free(adj, alive)
        alive[a] = True
        if not ok:
            return False
    return True


# -- mutable builder ------------------------------------------------------------


class Embedding:
    """Mutable rotation system used to construct and modify drawings.

    Corners are named by an outgoing dart: a new dart inserted at corner
    ``d`` goes immediately before ``d`` in the rotation of its node.
    """

    def __init__(self, n: int = 0) -> None:
        self.n = n
        self.edges: dict[int, tuple[int, int]] = {}
        self.crossings: dict[int, tuple[int, int]] = {}
        self.cross_of: dict[int, int] = {}
        self.rot: dict[int, list[int]] = {v: [] for v in range(n)}

    @classmethod
    def from_drawing(cls, d: Drawing) -> "Embedding":
        emb = cls(d.n)
        emb.edges = {e: (u, v) for e, u, v in d.edges}
        emb.crossings = {c: (e1, e2) for c, e1, e2 in d.crossings}
        emb.cross_of = dict(d.crossing_of)
        emb.rot = {node: list(darts) for node, darts in d.rotation.items()}
        return emb

    def freeze(self) -> Drawing:
        return Drawing(
            n=self.n,
            edges=tuple((e, u, v) for e, (u, v) in self.edges.items()),
            crossings=tuple((c, a, b) for c, (a, b) in self.crossings.items()),
            rotation={k: tuple(v) for k, v in self.rot.items()},
        )

    def copy(self) -> "Embedding":
        emb = Embedding(self.n)
        emb.edges = dict(self.edges)
        emb.crossings = dict(self.crossings)
        emb.cross_of = dict(self.cross_of)
        emb.rot = {k: list(v) for k, v in self.rot.items()}
        return emb

    # lookups

    def node_of(self, d: int) -> int:
        e, k = divmod(d, 4)
        if k < 2:
            return self.edges[e][k]
        return crossing_node(self.cross_of[e])

    def twin(self, d: int) -> int:
        return _twin(d, (d >> 2) in self.cross_of)

    def succ(self, d: int) -> int:
        darts = self.rot[self.node_of(d)]
        return darts[(darts.index(d) + 1) % len(darts)]

    def next_dart(self, d: int) -> int:
        return self.succ(self.twin(d))

    def faces(self) -> list[tuple[int, ...]]:
        darts = [x for darts in self.rot.values() for x in darts]
        return face_walks(darts, self.next_dart)

    def face_containing(self, d: int) -> tuple[int, ...]:
        walk = [d]
        x = self.next_dart(d)
        while x != d:
            walk.append(x)
            x = self.next_dart(x)
        return tuple(walk)

    def face_vertices(self, walk: Sequence[int]) -> set[int]:
        return {self.node_of(x) for x in walk if self.node_of(x) >= 0}

    def corner(self, walk: Sequence[int], node: int) -> int:
        """The unique outgoing dart of ``walk`` at ``node``."""
        hits = [x for x in walk if self.node_of(x) == node]
        if len(hits) != 1:
            raise DrawingError(f"node {node_label(node)} occurs {len(hits)} times on the cell")
        return hits[0]

    def find_face(self, vertices: Iterable[int], exact: bool = True) -> tuple[int, ...]:
        """First face (by smallest dart) whose real corners equal (or contain) ``vertices``."""
        want = set(vertices)
        for walk in self.faces():
            have = self.face_vertices(walk)
            if (have == want) if exact else want <= have:
                return walk
        raise DrawingError(f"no cell with vertices {sorted(want)}")

    def _new_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def _insert_before(self, d: int, new: int) -> None:
        darts = self.rot[self.node_of(d)]
        darts.insert(darts.index(d), new)

    # primitives

    def add_vertex(self) -> int:
        v = self.n
        self.n += 1
        self.rot[v] = []
        return v

    def add_edge(self, u: int, v: int, at_u: int | None = None, at_v: int | None = None) -> int:
        """New uncrossed edge; each end goes before the given dart or at the end of the rotation."""
        e = self._new_edge_id()
        self.edges[e] = (u, v)
        for node, at, dart in ((u, at_u, 4 * e), (v, at_v, 4 * e + 1)):
            if at is None:
                self.rot[node].append(dart)
            else:
                self._insert_before(at, dart)
        return e

    def add_chord(self, da: int, db: int, eid: int | None = None) -> int:
        """New uncrossed edge from corner ``da`` to corner ``db`` of one cell."""
        e = self._new_edge_id() if eid is None else eid
        u, v = self.node_of(da), self.node_of(db)
        self.edges[e] = (u, v)
        self._insert_before(da, 4 * e)
        self._insert_before(db, 4 * e + 1)
        return e

    def add_star(self, corners: Sequence[int], eids: Sequence[int] | None = None) -> int:
        """New vertex inside a cell joined to the given corners (in walk order)."""
        z = self.add_vertex()
        new = []
        for i, d in enumerate(corners):
            e = self._new_edge_id() if eids is None else eids[i]
            self.edges[e] = (self.node_of(d), z)
            self._insert_before(d, 4 * e)
            new.append(4 * e + 1)
        self.rot[z] = list(reversed(new))
        return z

    def add_pendant(self, corner: int) -> int:
        """New degree-1 vertex hanging off a corner."""
        z = self.add_vertex()
        e = self._new_edge_id()
        self.edges[e] = (self.node_of(corner), z)
        self._insert_before(corner, 4 * e)
        self.rot[z] = [4 * e + 1]
        return z

    def add_crossing_edge(self, da: int, db: int, df: int, eid: int | None = None) -> int:
        """New edge from corner ``da`` to corner ``db`` crossing the segment of ``df``.

        ``da`` must lie on the cell traversed by ``df`` and ``db`` on the cell
        traversed by ``twin(df)``; the edge of ``df`` must be uncrossed.
        """
        f = df >> 2
        if f in self.cross_of:
            raise DrawingError(f"edge crossed twice: edge {f}")
        e = self._new_edge_id() if eid is None else eid
        a, b = self.node_of(da), self.node_of(db)
        if a in self.edges[f] or b in self.edges[f]:
            raise DrawingError("crossing edges would share an endpoint")
        c = max(self.crossings, default=-1) + 1
        self.edges[e] = (a, b)
        self.crossings[c] = (f, e)
        self.cross_of[f] = c
        self.cross_of[e] = c
        xp = 4 * f + 2 if df & 1 == 0 else 4 * f + 3
        xq = xp ^ 1
        self.rot[crossing_node(c)] = [xp, 4 * e + 2, xq, 4 * e + 3]
        self._insert_before(da, 4 * e)
        self._insert_before(db, 4 * e + 1)
        return e

    def remove_edge(self, e: int) -> None:
        u, v = self.edges.pop(e)
        for d in (4 * e, 4 * e + 1):
            node = u if d & 1 == 0 else v
            self.rot[node].remove(d)
        if e in self.cross_of:
            c = self.cross_of.pop(e)
            f = [g for g in self.crossings.pop(c) if g != e][0]
            del self.cross_of[f]
            del self.rot[crossing_node(c)]
            # renumber crossings so ids stay contiguous
            self._compact_crossings()

    def _compact_crossings(self) -> None:
        old = sorted(self.crossings)
        mapping = {c: i for i, c in enumerate(old)}
        if all(c == i for c, i in mapping.items()):
            return
        self.crossings = {mapping[c]: pair for c, pair in self.crossings.items()}
        self.cross_of = {e: mapping[c] for e, c in self.cross_of.items()}
        new_rot = {k: v for k, v in self.rot.items() if k >= 0}
        for c, i in mapping.items():
            new_rot[crossing_node(i)] = self.rot[crossing_node(c)]
        self.rot = new_rot

    def cross_through(self, a: int, b: int, f: int, eid: int | None = None) -> int:
        """Add edge ``(a, b)`` crossing uncrossed edge ``f``, locating corners automatically."""
        for df in (4 * f, 4 * f + 1):
            left = self.face_containing(df)
            right = self.face_containing(self.twin(df))
            if a in {self.node_of(x) for x in left} and b in {self.node_of(x) for x in right}:
                return self.add_crossing_edge(self.corner(left, a), self.corner(right, b), df, eid)
        raise DrawingError(f"edge {f} does not separate cells at {a} and {b}")
