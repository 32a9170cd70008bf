"""Canonical drawings of the extremal families, with their expected invariants.

Vertex numbering is deterministic: base vertices ``u_i = i`` for
``i < s-2``, apex ``c = s-2``, apex ``c' = s-1``; inserted vertices follow in
construction order.  Base edge ``(u_i, u_{i+1})`` has id ``i``, apex edge
``(u_i, c)`` has id ``m+i`` and ``(u_i, c')`` has id ``2m+i`` with ``m = s-2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .drawing import Drawing, DrawingError, Embedding


class GeneratorError(ValueError):
    """Raised for invalid family parameters or insertion targets."""


@dataclass(frozen=True)
class ApexPairing:
    """Bijection from bipyramid faces ``(apex, u_i, u_{i+1})`` to apex-edge ids."""

    pairs: dict[tuple[int, int, int], int]

    def is_bijective(self) -> bool:
        return len(set(self.pairs.values())) == len(self.pairs)


@dataclass(frozen=True)
class GeneratedInstance:
    drawing: Drawing
    family: str
    s: int
    expected_n: int
    expected_mu: int
    witness: tuple[int, ...]
    expected_deficiency: int
    meta: dict = field(default_factory=dict, compare=False)

    def metadata(self) -> dict:
        return {
            "family": self.family,
            "s": self.s,
            "expected_n": self.expected_n,
            "expected_mu": self.expected_mu,
            "expected_deficiency": self.expected_deficiency,
            "witness": list(self.witness),
        }


# -- internal builders on Embedding ---------------------------------------------


def _in_walk_order(emb: Embedding, walk: Sequence[int], nodes: Sequence[int]) -> list[int]:
    want = set(nodes)
    darts = [d for d in walk if emb.node_of(d) in want]
    if len(darts) != len(want):
        raise GeneratorError("cell does not contain each requested node exactly once")
    return darts


def _edge_between(emb: Embedding, u: int, v: int) -> int:
    hits = [e for e, (a, b) in emb.edges.items() if {a, b} == {u, v}]
    if len(hits) != 1:
        raise GeneratorError(f"expected a unique edge between {u} and {v}, found {len(hits)}")
    return hits[0]


def _star(emb: Embedding, vertices: Sequence[int], within: Sequence[int] | None = None) -> int:
    """Add a vertex inside the unique cell whose real corners are ``vertices``."""
    walk = emb.find_face(vertices) if within is None else emb.find_face(within)
    return emb.add_star(_in_walk_order(emb, walk, vertices))


def _triangle_walk(emb: Embedding, walk: Sequence[int]) -> list[int]:
    if len(walk) != 3 or any(emb.node_of(d) < 0 for d in walk):
        raise GeneratorError("target cell is not an uncrossed triangle")
    verts = [emb.node_of(d) for d in walk]
    if len(set(verts)) != 3:
        raise GeneratorError("target cell does not have three distinct vertices")
    return verts


def _k4(emb: Embedding, walk: Sequence[int]) -> int:
    _triangle_walk(emb, walk)
    return emb.add_star(list(walk))


def _k6(emb: Embedding, walk: Sequence[int]) -> tuple[int, int, int]:
    a, b, c = _triangle_walk(emb, walk)
    r = emb.add_star([walk[0], walk[1]])
    p = _star(emb, [r, b, c], within=[a, r, b, c])
    q = _star(emb, [c, a, r, p], within=[c, a, r, p])
    emb.cross_through(a, p, _edge_between(emb, b, r))
    emb.cross_through(b, q, _edge_between(emb, c, p))
    emb.cross_through(c, r, _edge_between(emb, a, q))
    return r, p, q


def _attach(emb: Embedding, walk: Sequence[int], u: int, v: int) -> int:
    return emb.add_star(_in_walk_order(emb, walk, [u, v]))


def _reroute(emb: Embedding, e: int, z: int) -> None:
    """Re-draw edge ``e`` so it crosses the edge from ``z`` to the third corner."""
    if e in emb.cross_of:
        raise GeneratorError(f"edge {e} is already crossed")
    a, b = emb.edges[e]
    thirds = [
        w
        for w in range(emb.n)
        if w not in (a, b, z)
        and any({x, y} == {z, w} for x, y in emb.edges.values())
        and any({x, y} == {a, w} for x, y in emb.edges.values())
        and any({x, y} == {b, w} for x, y in emb.edges.values())
    ]
    for w in thirds:
        f = _edge_between(emb, z, w)
        if f in emb.cross_of:
            continue
        try:
            snapshot = emb.copy()
            emb.remove_edge(e)
            emb.cross_through(a, b, f, eid=e)
            return
        except DrawingError:
            emb.__dict__.update(snapshot.__dict__)
    raise GeneratorError(f"cannot reroute edge {e} around vertex {z}")


class _Bipyramid:
    """Bookkeeping for a bipyramid under construction."""

    def __init__(self, s: int) -> None:
        if s < 5:
            raise GeneratorError("bipyramid needs s >= 5")
        self.s = s
        self.m = m = s - 2
        self.c, self.c2 = m, m + 1
        emb = Embedding(m)
        for i in range(m):
            emb.add_edge(i, (i + 1) % m)
        up = emb.face_containing(0)
        down = emb.face_containing(1)
        emb.add_star(up)
        emb.add_star(down, eids=[2 * m + emb.node_of(d) for d in down])
        self.emb = emb
        self._check_ids()

    def _check_ids(self) -> None:
        m = self.m
        for i in range(m):
            assert self.emb.edges[i] == (i, (i + 1) % m)
            assert self.emb.edges[m + i] == (i, self.c)
            assert self.emb.edges[2 * m + i] == (i, self.c2)

    def faces(self) -> list[tuple[int, int, int]]:
        """Faces ``(apex, u_i, u_{i+1})``; index ``i`` for ``c``, ``m+i`` for ``c'``."""
        m = self.m
        return [(self.c, i, (i + 1) % m) for i in range(m)] + [
            (self.c2, i, (i + 1) % m) for i in range(m)
        ]

    def black(self, face_index: int) -> bool:
        i = face_index % self.m
        return i % 2 == 0 if face_index < self.m else i % 2 == 1

    def paired_edge(self, face_index: int) -> int:
        return self.m + face_index

    def base_edges(self) -> list[int]:
        return list(range(self.m))

    def apex_edges(self) -> list[int]:
        return list(range(self.m, 3 * self.m))

    def face_walks(self) -> list[tuple[int, ...]]:
        return [self.emb.find_face(f) for f in self.faces()]


def _gamma3(s: int) -> tuple[_Bipyramid, dict[int, int]]:
    bp = _Bipyramid(s)
    emb = bp.emb
    zs = {k: _k4(emb, walk) for k, walk in enumerate(bp.face_walks())}
    for k in range(len(zs)):
        _reroute(emb, bp.paired_edge(k), zs[k])
    return bp, zs


def _double_apex_edges(bp: _Bipyramid) -> None:
    """Parallel uncrossed copy of each rerouted apex edge, inside its degree-4 cell."""
    emb = bp.emb
    for e in bp.apex_edges():
        a, b = emb.edges[e]
        walk = _cell_with_pair(emb, a, b, degree=4)
        emb.add_chord(*_in_walk_order(emb, walk, [a, b]))


def _cell_with_pair(emb: Embedding, a: int, b: int, degree: int) -> tuple[int, ...]:
    for walk in emb.faces():
        nodes = [emb.node_of(d) for d in walk]
        if len(walk) == degree and a in nodes and b in nodes and (a, b) not in _consecutive(nodes):
            return walk
    raise GeneratorError(f"no degree-{degree} cell with non-consecutive {a}, {b}")


def _consecutive(nodes: Sequence[int]) -> set[tuple[int, int]]:
    k = len(nodes)
    out = set()
    for i in range(k):
        x, y = nodes[i], nodes[(i + 1) % k]
        out.add((x, y))
        out.add((y, x))
    return out


def _crossed_cell_on_edge(emb: Embedding, e: int, prefer_apex: int | None = None) -> tuple[int, ...]:
    """A crossed triangle cell bounded by uncrossed edge ``e``."""
    u, v = emb.edges[e]
    options = []
    for d in (4 * e, 4 * e + 1):
        walk = emb.face_containing(d)
        nodes = [emb.node_of(x) for x in walk]
        if len(walk) == 3 and any(n < 0 for n in nodes):
            options.append(walk)
    if not options:
        raise GeneratorError(f"edge {e} has no crossed triangle beside it")
    return options[0]


def _attach_base_triangles(bp: _Bipyramid) -> list[int]:
    """Attach ``z_e`` on each base edge inside the crossed cell on the ``c`` side."""
    emb = bp.emb
    out = []
    for i in bp.base_edges():
        u, v = emb.edges[i]
        target = None
        for d in (4 * i, 4 * i + 1):
            walk = emb.face_containing(d)
            nodes = {emb.node_of(x) for x in walk}
            if len(walk) == 3 and any(n < 0 for n in nodes):
                # the c side is the one whose crossing involves an edge at c
                xs = [n for n in nodes if n < 0]
                crossing = emb.crossings[-1 - xs[0]]
                if any(bp.c in emb.edges[g] for g in crossing):
                    target = walk
        if target is None:
            raise GeneratorError(f"base edge {i} has no crossed cell on the apex side")
        out.append(_attach(emb, target, u, v))
    return out


def _double_base_edges(bp: _Bipyramid) -> None:
    emb = bp.emb
    for e in bp.base_edges():
        a, b = emb.edges[e]
        walk = _cell_with_pair(emb, a, b, degree=4)
        emb.add_chord(*_in_walk_order(emb, walk, [a, b]))


# -- public operations ------------------------------------------------------------


def bipyramid(s: int) -> GeneratedInstance:
    bp = _Bipyramid(s)
    meta = {"faces": bp.faces()}
    if s % 2 == 0:
        meta["black"] = [f for k, f in enumerate(bp.faces()) if bp.black(k)]
        meta["white"] = [f for k, f in enumerate(bp.faces()) if not bp.black(k)]
    return GeneratedInstance(
        drawing=bp.emb.freeze(),
        family="B_s",
        s=s,
        expected_n=s,
        expected_mu=s // 2,
        witness=(),
        expected_deficiency=s % 2,
        meta=meta,
    )


def face_coloring(s: int) -> dict[tuple[int, int, int], str]:
    """Proper black/white colouring of the bipyramid faces (``s`` even)."""
    if s % 2:
        raise GeneratorError("face 2-colouring needs even s")
    bp = _Bipyramid(s)
    return {f: "black" if bp.black(k) else "white" for k, f in enumerate(bp.faces())}


def apex_pairing(b: GeneratedInstance | int) -> ApexPairing:
    s = b if isinstance(b, int) else b.s
    bp = _Bipyramid(s)
    pairs = {f: bp.paired_edge(k) for k, f in enumerate(bp.faces())}
    out = ApexPairing(pairs)
    if not out.is_bijective() or set(pairs.values()) != set(bp.apex_edges()):
        raise GeneratorError("apex pairing is not a bijection")
    return out


def attach_triangle(d: Drawing, e: int, side: int) -> Drawing:
    """Add a degree-2 vertex adjacent to both ends of uncrossed edge ``e`` inside cell ``side``."""
    if e not in d.endpoints:
        raise GeneratorError(f"unknown edge {e}")
    if d.is_crossed(e):
        raise GeneratorError(f"edge {e} is crossed")
    if side < 0 or side >= len(d.cells):
        raise GeneratorError(f"unknown cell {side}")
    for dart in (4 * e, 4 * e + 1):
        if d.face_of_dart[dart] == side:
            emb = Embedding.from_drawing(d)
            nxt = emb.next_dart(dart)
            emb.add_star([dart, nxt])
            return emb.freeze()
    raise GeneratorError(f"cell {side} is not incident to edge {e}")


def _face_walk(d: Drawing, emb: Embedding, face: int) -> tuple[int, ...]:
    if face < 0 or face >= len(d.cells):
        raise GeneratorError(f"unknown cell {face}")
    return emb.face_containing(d.cells[face].boundary[0][0])


def insert_k4(d: Drawing, face: int) -> Drawing:
    emb = Embedding.from_drawing(d)
    _k4(emb, _face_walk(d, emb, face))
    return emb.freeze()


def insert_k6(d: Drawing, face: int) -> Drawing:
    emb = Embedding.from_drawing(d)
    _k6(emb, _face_walk(d, emb, face))
    return emb.freeze()


def insert_k4x(d: Drawing, face: int, e: int) -> Drawing:
    emb = Embedding.from_drawing(d)
    walk = _face_walk(d, emb, face)
    verts = _triangle_walk(emb, walk)
    if e not in emb.edges:
        raise GeneratorError(f"unknown edge {e}")
    if e in emb.cross_of:
        raise GeneratorError(f"edge {e} is already crossed")
    if not set(emb.edges[e]) <= set(verts) or e not in {x >> 2 for x in walk}:
        raise GeneratorError(f"edge {e} is not on the target cell")
    z = _k4(emb, walk)
    _reroute(emb, e, z)
    return emb.freeze()


FAMILY_ALIASES = {
    "b_s": "B_s",
    "bipyramid": "B_s",
    "b_s^t": "B_s^T",
    "bst": "B_s^T",
    "g1": "G1",
    "g2": "G2",
    "gamma3": "Gamma3",
    "gamma4": "Gamma4",
    "g5": "G5",
    "g6": "G6",
    "loop_star": "loop_star",
    "double_k6_a": "double_K6_a",
    "double_k6_b": "double_K6_b",
}

FAMILIES = tuple(dict.fromkeys(FAMILY_ALIASES.values()))


def canonical_family(tag: str) -> str:
    key = tag.strip().lower().replace("-", "_")
    if key not in FAMILY_ALIASES:
        raise GeneratorError(f"unknown family {tag!r}; choose from {', '.join(FAMILIES)}")
    return FAMILY_ALIASES[key]


def _instance(bp: _Bipyramid, family: str, mu: int, meta: dict | None = None) -> GeneratedInstance:
    d = bp.emb.freeze()
    return GeneratedInstance(
        drawing=d,
        family=family,
        s=bp.s,
        expected_n=d.n,
        expected_mu=mu,
        witness=tuple(range(bp.s)),
        expected_deficiency=d.n - 2 * mu,
        meta=meta or {},
    )


def build_g1(s: int) -> GeneratedInstance:
    bp = _Bipyramid(s)
    for k, walk in enumerate(bp.face_walks()):
        (_k6 if bp.black(k) else _k4)(bp.emb, walk)
    n = 5 * s - 8
    return _check_n(_instance(bp, "G1", (2 * n + 6) // 5), n)


def build_g2(s: int) -> GeneratedInstance:
    bp = _Bipyramid(s)
    for walk in bp.face_walks():
        _k6(bp.emb, walk)
    for e in range(3 * bp.m):
        u, v = bp.emb.edges[e]
        _attach(bp.emb, _crossed_cell_on_edge(bp.emb, e), u, v)
    n = 10 * s - 18
    return _check_n(_instance(bp, "G2", (3 * n + 14) // 10), n)


def build_gamma3(s: int) -> GeneratedInstance:
    bp, zs = _gamma3(s)
    n = 3 * s - 4
    return _check_n(_instance(bp, "Gamma3", (n + 4) // 3, {"inserted": zs}), n)


def build_gamma4(s: int) -> GeneratedInstance:
    bp, _ = _gamma3(s)
    _attach_base_triangles(bp)
    n = 4 * s - 6
    return _check_n(_instance(bp, "Gamma4", (n + 6) // 4), n)


def build_g5(s: int) -> GeneratedInstance:
    bp, _ = _gamma3(s)
    _double_apex_edges(bp)
    n = 3 * s - 4
    return _check_n(_instance(bp, "G5", (n + 4) // 3), n)


def build_g6(s: int) -> GeneratedInstance:
    bp, _ = _gamma3(s)
    _double_apex_edges(bp)
    _attach_base_triangles(bp)
    _double_base_edges(bp)
    n = 4 * s - 6
    return _check_n(_instance(bp, "G6", (n + 6) // 4), n)


def build_bst(s: int) -> GeneratedInstance:
    bp = _Bipyramid(s)
    for i in bp.base_edges():
        u, v = bp.emb.edges[i]
        _attach(bp.emb, bp.emb.face_containing(4 * i), u, v)
    d = bp.emb.freeze()
    return GeneratedInstance(d, "B_s^T", s, 2 * s - 2, s - 1, (), 0)


def loop_star(k: int) -> GeneratedInstance:
    """Star with ``k`` leaves plus ``2k-3`` loops at the centre, every cell a triangle."""
    if k < 3:
        raise GeneratorError("loop_star needs k >= 3")
    emb = Embedding(k + 1)
    for i in range(1, k + 1):
        emb.add_edge(0, i)
    for i in range(1, k + 1):
        out = 4 * (i - 1)
        emb.add_chord(out, emb.next_dart(out + 1))
    while True:
        big = [
            w
            for w in emb.faces()
            if len(w) > 3 and all(emb.node_of(x) == 0 for x in w)
        ]
        if not big:
            break
        w = big[0]
        emb.add_chord(w[0], w[2])
    d = emb.freeze()
    return GeneratedInstance(d, "loop_star", k, k + 1, 1, (0,), k - 1)


def _double_k6(drawn_inside: bool) -> GeneratedInstance:
    emb = Embedding(3)
    for i in range(3):
        emb.add_edge(i, (i + 1) % 3)
    a, b = 0, 1
    inner, outer = emb.faces()
    _k6(emb, inner)
    if drawn_inside:
        walk = next(
            w
            for w in emb.faces()
            if len(w) == 3
            and {emb.node_of(x) for x in w if emb.node_of(x) >= 0} == {a, b}
            and any(x >> 2 == _edge_between(emb, a, b) for x in w)
        )
    else:
        walk = emb.find_face([0, 1, 2])
    g = _attach(emb, walk, a, b)
    tri = next(
        w
        for w in emb.faces()
        if len(w) == 3 and {emb.node_of(x) for x in w} == {a, b, g}
    )
    _k6(emb, tri)
    d = emb.freeze()
    family = "double_K6_a" if drawn_inside else "double_K6_b"
    return GeneratedInstance(d, family, 0, 10, 5, (), 0, {"a": a, "b": b, "c": 2, "g": g})


def double_k6_a() -> GeneratedInstance:
    """Two K6 sharing edge ab; the second sits in a crossed cell of the first."""
    return _double_k6(True)


def double_k6_b() -> GeneratedInstance:
    """Same graph redrawn side by side; the outer cell admits a new edge."""
    return _double_k6(False)


def _check_n(inst: GeneratedInstance, n: int) -> GeneratedInstance:
    if inst.drawing.n != n:
        raise AssertionError(f"{inst.family}: built {inst.drawing.n} vertices, expected {n}")
    return inst


_BUILDERS = {
    "G1": build_g1,
    "G2": build_g2,
    "Gamma3": build_gamma3,
    "Gamma4": build_gamma4,
    "G5": build_g5,
    "G6": build_g6,
}


def family(tag: str, s: int) -> GeneratedInstance:
    """Canonical instance of a family; ``s`` is the bipyramid size or the loop count."""
    name = canonical_family(tag)
    if name in _BUILDERS:
        if s % 2 or s < 8:
            raise GeneratorError(f"{name} requires even s >= 8, got {s}")
        return _BUILDERS[name](s)
    if name == "B_s":
        return bipyramid(s)
    if name == "B_s^T":
        return build_bst(s)
    if name == "loop_star":
        return loop_star(s)
    if name == "double_K6_a":
        return double_k6_a()
    return double_k6_b()
