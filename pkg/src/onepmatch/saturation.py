"""Saturation checks and the parallel-edge triangulation procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .drawing import Drawing, DrawingError, Embedding, adjacency_cache, validate


class SaturationError(ValueError):
    """Raised when triangulation meets a cell that saturation should have ruled out."""


@dataclass(frozen=True)
class Insertion:
    """A legal new edge ``(u, v)``.

    ``mode`` is ``"cell"`` for an uncrossed chord of cell ``where`` or
    ``"cross"`` for an edge crossing the uncrossed edge ``where``.  ``darts``
    holds the corner darts (and for crossings the dart of the crossed edge on
    the side of ``u``) needed to realize the insertion with :class:`Embedding`.
    """

    u: int
    v: int
    mode: str
    where: int
    darts: tuple[int, ...] = field(compare=False, default=())

    def apply(self, d: Drawing) -> Drawing:
        emb = Embedding.from_drawing(d)
        if self.mode == "cell":
            emb.add_chord(*self.darts)
        else:
            emb.add_crossing_edge(*self.darts)
        return emb.freeze()


@dataclass(frozen=True)
class SaturationReport:
    s1: bool
    s2: bool
    s3: bool
    s4: bool
    s1_violations: tuple[tuple[int, tuple[int, int]], ...]
    s2_violations: tuple[tuple[int, tuple[int, int]], ...]
    s3_cells: tuple[int, ...]
    s4_cells: tuple[int, ...]
    simple: bool
    simple_saturated: bool
    proper_cell: bool
    proper_cell_saturated: bool
    insertable: tuple[Insertion, ...]


def _cell_vertex_darts(d: Drawing, cell_id: int) -> list[tuple[int, int]]:
    """``(position, dart)`` of real-vertex corners, along the first circuit."""
    out = []
    for circuit in d.cells[cell_id].boundary:
        for pos, dart in enumerate(circuit):
            if d.dart_node(dart) >= 0:
                out.append((pos, dart))
    return out


def _side_cells(d: Drawing, e: int) -> tuple[int, int]:
    return d.face_of_dart[4 * e], d.face_of_dart[4 * e + 1]


def _insertions(d: Drawing, proper: bool) -> list[Insertion]:
    adj = adjacency_cache(d)
    found: dict[tuple, Insertion] = {}

    def keep(ins: Insertion) -> None:
        key = (min(ins.u, ins.v), max(ins.u, ins.v), ins.mode, ins.where)
        if key not in found:
            found[key] = ins

    for cell in d.cells:
        if len(cell.boundary) != 1:
            continue
        walk = cell.boundary[0]
        k = len(walk)
        corners = _cell_vertex_darts(d, cell.id)
        for (i, da), (j, db) in combinations(corners, 2):
            u, v = d.dart_node(da), d.dart_node(db)
            if u == v:
                continue
            if proper:
                gap = j - i
                if gap < 2 or k - gap < 2:
                    continue
            elif v in adj[u]:
                continue
            keep(Insertion(min(u, v), max(u, v), "cell", cell.id, (da, db) if u < v else (db, da)))

    for f, p, q in d.edges:
        if d.is_crossed(f) or p == q:
            continue
        for df in (4 * f, 4 * f + 1):
            left = d.face_of_dart[df]
            right = d.face_of_dart[d.twin(df)]
            for _, da in _cell_vertex_darts(d, left):
                z0 = d.dart_node(da)
                if z0 in (p, q):
                    continue
                for _, db in _cell_vertex_darts(d, right):
                    z1 = d.dart_node(db)
                    if z1 in (p, q) or z1 == z0:
                        continue
                    if not proper and z1 in adj[z0]:
                        continue
                    keep(Insertion(z0, z1, "cross", f, (da, db, df)))
    return sorted(found.values(), key=lambda x: (x.u, x.v, x.mode, x.where))


def enumerate_insertions(d: Drawing, mode: str = "simple") -> list[Insertion]:
    """Every legal new edge.

    ``mode="simple"`` forbids loops and parallel edges.  ``mode="proper"``
    allows parallel copies but every resulting cell must have degree 3 or more.
    """
    if mode not in ("simple", "proper"):
        raise ValueError(f"unknown insertion mode {mode!r}")
    return _insertions(d, proper=(mode == "proper"))


def check_proper_cell(d: Drawing) -> tuple[bool, bool]:
    proper = all(c.degree >= 3 for c in d.cells)
    return proper, proper and not _insertions(d, proper=True)


def check_saturation(d: Drawing) -> SaturationReport:
    adj = adjacency_cache(d)
    s1_bad = []
    s3_bad = []
    s4_bad = []
    for cell in d.cells:
        verts = cell.vertices
        for u, v in combinations(verts, 2):
            if v not in adj[u]:
                s1_bad.append((cell.id, (u, v)))
        if cell.comp > 1:
            s3_bad.append(cell.id)
        real = [c for c in cell.corners if c >= 0]
        if len(real) != len(set(real)):
            s4_bad.append(cell.id)
    s2_bad = []
    for e, u, v in d.edges:
        if d.is_crossed(e) or u == v:
            continue
        l0, l1 = _side_cells(d, e)
        z0s = [z for z in d.cells[l0].vertices if z not in (u, v)]
        z1s = [z for z in d.cells[l1].vertices if z not in (u, v)]
        for z0 in z0s:
            for z1 in z1s:
                if z0 != z1 and z1 not in adj[z0]:
                    s2_bad.append((e, (min(z0, z1), max(z0, z1))))
    s2_bad = sorted(set(s2_bad))
    simple = validate(d).simple
    proper, proper_sat = check_proper_cell(d)
    return SaturationReport(
        s1=not s1_bad,
        s2=not s2_bad,
        s3=not s3_bad,
        s4=not s4_bad,
        s1_violations=tuple(s1_bad),
        s2_violations=tuple(s2_bad),
        s3_cells=tuple(s3_bad),
        s4_cells=tuple(s4_bad),
        simple=simple,
        simple_saturated=simple and not s1_bad and not s2_bad,
        proper_cell=proper,
        proper_cell_saturated=proper_sat,
        insertable=tuple(_insertions(d, proper=False)),
    )


def is_simple_saturated(d: Drawing) -> bool:
    return check_saturation(d).simple_saturated


@dataclass(frozen=True)
class TriangulationResult:
    drawing: Drawing
    added: tuple[int, ...]
    n3: bool


def _pick_chord(emb: Embedding, walk: tuple[int, ...]) -> tuple[int, int] | None:
    """Lexicographically smallest non-consecutive vertex pair on ``walk``."""
    k = len(walk)
    best = None
    for i in range(k):
        u = emb.node_of(walk[i])
        if u < 0:
            continue
        for j in range(i + 2, k):
            if k - (j - i) < 2:
                continue
            v = emb.node_of(walk[j])
            if v < 0 or v == u:
                continue
            key = (min(u, v), max(u, v), i, j)
            if best is None or key < best[0]:
                best = (key, (walk[i], walk[j]))
    return None if best is None else best[1]


def triangulate_with_log(d: Drawing) -> TriangulationResult:
    """Add uncrossed parallel copies until every cell is a triangle."""
    diag = validate(d)
    if not diag.n1:
        raise SaturationError("triangulation needs a loop-free drawing")
    if d.n < 3:
        raise SaturationError("triangulation needs at least 3 vertices")
    emb = Embedding.from_drawing(d)
    present = {frozenset(p) for p in emb.edges.values()}
    added = []
    limit = 4 * d.n
    while True:
        big = [w for w in emb.faces() if len(w) >= 4]
        if not big:
            break
        walk = big[0]
        pick = _pick_chord(emb, walk)
        if pick is None:
            raise SaturationError(f"cell of degree {len(walk)} has no non-consecutive vertex pair")
        da, db = pick
        u, v = emb.node_of(da), emb.node_of(db)
        if frozenset((u, v)) not in present:
            raise SaturationError(
                f"cell of degree {len(walk)} has non-adjacent vertices {min(u, v)}, {max(u, v)}; "
                "the input is not saturated"
            )
        added.append(emb.add_chord(da, db))
        if len(added) > limit:
            raise SaturationError("triangulation did not terminate")
    out = emb.freeze()
    return TriangulationResult(out, tuple(added), validate(out).n3)


def triangulate(d: Drawing) -> Drawing:
    return triangulate_with_log(d).drawing


__all__ = [
    "DrawingError",
    "Insertion",
    "SaturationError",
    "SaturationReport",
    "TriangulationResult",
    "check_proper_cell",
    "check_saturation",
    "enumerate_insertions",
    "is_simple_saturated",
    "triangulate",
    "triangulate_with_log",
]
