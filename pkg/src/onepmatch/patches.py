"""The subdrawing Γ_S, its patch decomposition, and the weights w_0 / w_α.

Regions of a subdrawing are never computed by embedding the subdrawing on
its own.  Instead host cells are merged with a union-find across every edge
segment that the subdrawing does not keep, so each region inherits its
position from the connected host.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .drawing import (
    Drawing,
    components_minus,
    crossing_node,
    kite_edge_status,
    validate,
)


class PatchError(ValueError):
    """Raised when a precondition of the decomposition or the bounds fails."""


# -- region structure ------------------------------------------------------------


class UnionFind:
    def __init__(self, items: Iterable[int]) -> None:
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller id wins so roots are deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class Region:
    """A face of a subdrawing, described through the host.

    Attributes:
        id: Index of the region.
        cells: Host cell ids merged into this region.
        circuits: Boundary walks of kept darts (host dart ids).
        singletons: Kept vertices with no kept edge inside the region.
        m_f: Edge-incidences; a kept edge passing through a crossing whose
            partner was not kept counts once.
        comp: Number of circuits plus singletons.
        degree: ``m_f + 2*comp - 2``.
    """

    id: int
    cells: tuple[int, ...]
    circuits: tuple[tuple[int, ...], ...]
    singletons: tuple[int, ...]
    m_f: int
    comp: int
    degree: int


@dataclass(frozen=True)
class RegionStructure:
    host: Drawing
    vertices: frozenset[int]
    edges: frozenset[int]
    regions: tuple[Region, ...]
    region_of_cell: dict[int, int]
    kept_crossings: tuple[int, ...]

    def side_region(self, dart: int) -> int:
        """Region on the traversal side of a host dart."""
        return self.region_of_cell[self.host.face_of_dart[dart]]

    def degree_sum_identity(self) -> tuple[int, int]:
        """``(sum of (deg-2), 2(V+X)-4)`` for the kept vertices and fully kept crossings."""
        lhs = sum(r.degree - 2 for r in self.regions)
        rhs = 2 * (len(self.vertices) + len(self.kept_crossings)) - 4
        return lhs, rhs


def region_structure(host: Drawing, vertices: Iterable[int], edges: Iterable[int]) -> RegionStructure:
    """Faces of the subdrawing with the given vertices and edges, by region inheritance."""
    keep_v = frozenset(vertices)
    keep_e = frozenset(edges)
    for e in keep_e:
        u, v = host.endpoints[e]
        if u not in keep_v or v not in keep_v:
            raise PatchError(f"kept edge {e} has an endpoint that is not kept")
    cells = host.cells
    uf = UnionFind(range(len(cells)))
    for dart in host.darts:
        if dart >> 2 not in keep_e:
            uf.union(host.face_of_dart[dart], host.face_of_dart[host.twin(dart)])

    kept_darts = [d for d in host.darts if d >> 2 in keep_e]
    kept_set = set(kept_darts)
    sub_rot: dict[int, list[int]] = {}
    for node, darts in host.rotation.items():
        sub = [d for d in darts if d in kept_set]
        if sub:
            sub_rot[node] = sub
    sub_succ: dict[int, int] = {}
    for darts in sub_rot.values():
        for i, d in enumerate(darts):
            sub_succ[d] = darts[(i + 1) % len(darts)]
    pure = tuple(
        c for c, e1, e2 in host.crossings if e1 in keep_e and e2 in keep_e
    )
    pass_nodes = {
        crossing_node(c)
        for c, e1, e2 in host.crossings
        if (e1 in keep_e) != (e2 in keep_e)
    }

    circuits_by_root: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    seen: set[int] = set()
    for start in kept_darts:
        if start in seen:
            continue
        walk = []
        d = start
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = sub_succ[host.twin(d)]
        roots = {uf.find(host.face_of_dart[x]) for x in walk}
        if len(roots) != 1:
            raise AssertionError("a boundary walk touches two regions")
        circuits_by_root[roots.pop()].append(tuple(walk))

    singles_by_root: dict[int, list[int]] = defaultdict(list)
    for v in sorted(keep_v):
        if v in sub_rot:
            continue
        darts = host.rotation.get(v, ())
        cell = host.face_of_dart[darts[0]] if darts else 0
        singles_by_root[uf.find(cell)].append(v)

    members: dict[int, list[int]] = defaultdict(list)
    for cid in range(len(cells)):
        members[uf.find(cid)].append(cid)
    regions = []
    region_of_cell = {}
    for rid, root in enumerate(sorted(members, key=lambda r: min(members[r]))):
        circuits = tuple(circuits_by_root.get(root, ()))
        singles = tuple(singles_by_root.get(root, ()))
        m_f = sum(
            1 for walk in circuits for d in walk if host.dart_node(d) not in pass_nodes
        )
        comp = len(circuits) + len(singles)
        regions.append(
            Region(
                id=rid,
                cells=tuple(sorted(members[root])),
                circuits=circuits,
                singletons=singles,
                m_f=m_f,
                comp=comp,
                degree=m_f + 2 * comp - 2,
            )
        )
        for cid in members[root]:
            region_of_cell[cid] = rid
    return RegionStructure(host, keep_v, keep_e, tuple(regions), region_of_cell, pure)


# -- Γ_S --------------------------------------------------------------------


@dataclass(frozen=True)
class GammaS:
    """The subdrawing kept for vertex set ``S``.

    ``deletions`` maps every edge of the induced subdrawing that was dropped
    to the step that dropped it: 2 for a crossing with an outside edge, 3 for
    an uncrossed edge with the same region on both sides.
    """

    host: Drawing
    S: frozenset[int]
    retained: tuple[int, ...]
    pure_crossings: tuple[int, ...]
    deletions: dict[int, int]
    structure: RegionStructure
    step3_rounds: int


def build_gamma_s(d: Drawing, S: Iterable[int]) -> GammaS:
    S = frozenset(S)
    if any(v < 0 or v >= d.n for v in S):
        raise PatchError("S contains an unknown vertex")
    diag = validate(d)
    if not diag.triangulated:
        raise PatchError("Γ_S needs a triangulated drawing")
    if not diag.n1:
        raise PatchError("Γ_S needs a loop-free drawing")
    induced = {e for e, u, v in d.edges if u in S and v in S}
    deletions: dict[int, int] = {}
    kept = set(induced)
    for e in sorted(induced):
        if d.is_crossed(e):
            u, v = d.endpoints[d.partner[e]]
            if u not in S or v not in S:
                kept.discard(e)
                deletions[e] = 2
    rounds = 0
    while True:
        rs = region_structure(d, S, kept)
        doomed = [
            e
            for e in sorted(kept)
            if not d.is_crossed(e) and rs.side_region(4 * e) == rs.side_region(4 * e + 1)
        ]
        if not doomed:
            break
        rounds += 1
        for e in doomed:
            kept.discard(e)
            deletions[e] = 3
    return GammaS(d, S, tuple(sorted(kept)), rs.kept_crossings, deletions, rs, rounds)


# -- patches ----------------------------------------------------------------------

CROSS = "cross"
ODOT = "odot"
NABLA = "nabla"
PLAIN = "plain"


@dataclass(frozen=True)
class Patch:
    """A crossing-patch or a face-patch.

    ``cls`` is ``"cross"`` for a crossing-patch, ``"odot"`` for a face-patch
    covering a vertex outside ``S``, ``"nabla"`` for a degree-3 face-patch
    covering none, and ``"plain"`` for any other face-patch.
    """

    id: int
    kind: str
    cls: str
    cells: tuple[int, ...]
    degree: int
    m_f: int
    comp: int
    circuits: tuple[tuple[int, ...], ...] = ()
    circuit_vertices: tuple[tuple[int, ...], ...] = ()
    singletons: tuple[int, ...] = ()
    edges: tuple[int, ...] = ()
    Z: tuple[int, ...] = ()
    components: tuple[int, ...] = ()
    crossing: int | None = None
    kite_edges: tuple[int | None, ...] = ()

    @property
    def is_face(self) -> bool:
        return self.kind == "face"


@dataclass(frozen=True)
class PatchDecomposition:
    gamma: GammaS
    patches: tuple[Patch, ...]
    patch_of_cell: dict[int, int]
    components: tuple[tuple[int, ...], ...]
    comp: int
    odd: int

    @property
    def host(self) -> Drawing:
        return self.gamma.host

    def census(self) -> dict[str, int]:
        """Counts keyed ``cross``, ``nabla``, ``odot_<d>``, ``plain_<d>``."""
        out: dict[str, int] = defaultdict(int)
        for p in self.patches:
            key = p.cls if p.cls in (CROSS, NABLA) else f"{p.cls}_{p.degree}"
            out[key] += 1
        return dict(sorted(out.items()))

    def of_class(self, cls: str, degree: int | None = None) -> list[Patch]:
        return [p for p in self.patches if p.cls == cls and (degree is None or p.degree == degree)]


def decompose_patches(g: GammaS) -> PatchDecomposition:
    d = g.host
    rs = g.structure
    comp_count, odd, comps = components_minus(d, g.S)
    comp_of_vertex = {v: i for i, c in enumerate(comps) for v in c}
    patches: list[Patch] = []
    patch_of_cell: dict[int, int] = {}
    claimed_regions: set[int] = set()

    for x in g.pure_crossings:
        darts = d.rotation[crossing_node(x)]
        cells = sorted({d.cell_at_angle(t) for t in darts})
        regions = {rs.region_of_cell[c] for c in cells}
        if len(cells) != 4 or any(len(rs.regions[r].cells) != 1 for r in regions):
            raise AssertionError(f"crossing {x} does not bound four separate kite cells")
        claimed_regions |= regions
        kites = tuple(q.edge for q in kite_edge_status(d, x))
        pid = len(patches)
        patches.append(
            Patch(
                id=pid,
                kind="crossing",
                cls=CROSS,
                cells=tuple(cells),
                degree=4,
                m_f=4,
                comp=1,
                crossing=x,
                kite_edges=kites,
                edges=tuple(sorted(e for e in kites if e is not None)),
            )
        )
        for c in cells:
            patch_of_cell[c] = pid

    for region in rs.regions:
        if region.id in claimed_regions:
            continue
        corners = {
            node
            for cid in region.cells
            for node in d.cells[cid].corners
            if node >= 0
        }
        Z = tuple(sorted(v for v in corners if v not in g.S))
        covered = tuple(sorted({comp_of_vertex[v] for v in Z}))
        if Z:
            cls = ODOT
        elif region.degree == 3:
            cls = NABLA
        else:
            cls = PLAIN
        pid = len(patches)
        patches.append(
            Patch(
                id=pid,
                kind="face",
                cls=cls,
                cells=region.cells,
                degree=region.degree,
                m_f=region.m_f,
                comp=region.comp,
                circuits=region.circuits,
                circuit_vertices=tuple(
                    tuple(d.dart_node(x) for x in walk) for walk in region.circuits
                ),
                singletons=region.singletons,
                edges=tuple(sorted({x >> 2 for walk in region.circuits for x in walk})),
                Z=Z,
                components=covered,
            )
        )
        for c in region.cells:
            patch_of_cell[c] = pid
    return PatchDecomposition(
        g,
        tuple(patches),
        patch_of_cell,
        tuple(tuple(c) for c in comps),
        comp_count,
        odd,
    )


def decompose(d: Drawing, S: Iterable[int]) -> PatchDecomposition:
    return decompose_patches(build_gamma_s(d, S))


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    violations: tuple[str, ...]


def covering_checks(p: PatchDecomposition) -> CoverReport:
    d = p.host
    problems = []
    counts: dict[int, int] = defaultdict(int)
    for patch in p.patches:
        for c in patch.cells:
            counts[c] += 1
    for cid in range(len(d.cells)):
        if counts[cid] != 1:
            problems.append(f"cell {cid} covered {counts[cid]} times")
    for patch in p.patches:
        if patch.kind == "crossing":
            if len(patch.cells) != 4 or not all(d.cells[c].crossed for c in patch.cells):
                problems.append(f"crossing-patch {patch.id} does not cover four crossed cells")
        elif len(patch.components) > 1:
            problems.append(f"face-patch {patch.id} covers {len(patch.components)} components")
    for i, comp in enumerate(p.components):
        covering = {pt.id for pt in p.patches for v in comp if v in pt.Z}
        if len(covering) != 1:
            problems.append(f"component {i} covered by {len(covering)} face-patches")
        else:
            owner = p.patches[covering.pop()]
            if not set(comp) <= set(owner.Z):
                problems.append(f"component {i} is only partly covered by patch {owner.id}")
    return CoverReport(not problems, tuple(problems))


SHAPES = ("bigon", "triangle", "simple-4-cycle", "4-circuit-3-vertices", "2+singleton", "other")


def small_patch_shape(P: Patch, decomposition: PatchDecomposition | None = None) -> str:
    """Shape of a face-patch of degree at most 4; ``"other"`` otherwise."""
    if P.kind != "face":
        raise PatchError("shape is defined for face-patches only")
    if decomposition is not None:
        if decomposition.comp < 2:
            raise PatchError("precondition: comp(G - S) >= 2")
        if not validate(decomposition.host).n1:
            raise PatchError("precondition: no loops")
    circuits = P.circuit_vertices
    edges = [x >> 2 for walk in P.circuits for x in walk]
    if P.degree == 2 and len(circuits) == 1 and not P.singletons:
        if len(circuits[0]) == 2 and len(set(circuits[0])) == 2:
            return "bigon"
    if P.degree == 3 and len(circuits) == 1 and not P.singletons:
        if len(circuits[0]) == 3 and len(set(circuits[0])) == 3:
            return "triangle"
    if P.degree == 4:
        if len(circuits) == 1 and not P.singletons and len(circuits[0]) == 4:
            distinct = len(set(circuits[0]))
            if distinct == 4:
                return "simple-4-cycle"
            if distinct == 3 and len(set(edges)) == 4:
                return "4-circuit-3-vertices"
        if len(circuits) == 1 and len(P.singletons) == 1 and len(circuits[0]) == 2:
            if len(set(circuits[0])) == 2:
                return "2+singleton"
    return "other"


# -- weights ------------------------------------------------------------------


def parse_alpha(alpha: Fraction | int | str) -> Fraction:
    try:
        value = Fraction(alpha)
    except (ValueError, ZeroDivisionError) as exc:
        raise PatchError(f"alpha must be a rational p/q, got {alpha!r}") from exc
    if not 0 <= value <= 3:
        raise PatchError(f"alpha must lie in [0, 3], got {value}")
    return value


def w0(d: Drawing) -> dict[int, int]:
    return {c.id: 1 if c.crossed else 2 * (c.degree - 2) for c in d.cells}


@dataclass(frozen=True)
class WeightAssignment:
    decomposition: PatchDecomposition
    alpha: Fraction
    chi_n3: bool
    w0: dict[int, int]
    transfer_edges: tuple[int, ...]
    t_cross: tuple[int, ...]
    t_nabla: tuple[int, ...]
    t_circ: tuple[int, ...]
    w_alpha: dict[int, Fraction]
    patch_w0: dict[int, int]
    patch_w_alpha: dict[int, Fraction]
    total_w0: int
    total_w_alpha: Fraction


def compute_weights(p: PatchDecomposition, alpha: Fraction | int | str, chi_n3: bool | str = "auto") -> WeightAssignment:
    a = parse_alpha(alpha)
    d = p.host
    chi = validate(d).n3 if chi_n3 == "auto" else bool(chi_n3)
    base = w0(d)
    transfer = sorted(
        {
            e
            for patch in p.patches
            if patch.kind == "face"
            and (patch.degree == 2 or (patch.degree == 3 and patch.cls == ODOT))
            for e in patch.edges
        }
    )
    tcells = sorted({d.face_of_dart[x] for e in transfer for x in (4 * e, 4 * e + 1)})
    t_cross, t_nabla, t_circ = [], [], []
    for cid in tcells:
        cell = d.cells[cid]
        if cell.crossed:
            t_cross.append(cid)
        elif all(v in p.gamma.S for v in cell.vertices):
            t_nabla.append(cid)
        else:
            t_circ.append(cid)
    shift: dict[int, Fraction] = defaultdict(Fraction)
    for cid in t_cross:
        shift[cid] = -a
    for cid in t_nabla:
        shift[cid] = -2 * a
    for cid in t_circ:
        shift[cid] = a
    wa = {cid: Fraction(base[cid]) + shift[cid] for cid in base}
    pw0 = {pt.id: sum(base[c] for c in pt.cells) for pt in p.patches}
    pwa = {pt.id: sum((wa[c] for c in pt.cells), Fraction(0)) for pt in p.patches}
    return WeightAssignment(
        decomposition=p,
        alpha=a,
        chi_n3=chi,
        w0=base,
        transfer_edges=tuple(transfer),
        t_cross=tuple(t_cross),
        t_nabla=tuple(t_nabla),
        t_circ=tuple(t_circ),
        w_alpha=wa,
        patch_w0=pw0,
        patch_w_alpha=pwa,
        total_w0=sum(base.values()),
        total_w_alpha=sum(wa.values(), Fraction(0)),
    )


@dataclass(frozen=True)
class BoundViolation:
    patch: int
    row: str
    value: Fraction
    bound: Fraction


def patch_lower_bounds(patch: Patch, alpha: Fraction, chi: bool, n2: bool) -> list[tuple[str, Fraction]]:
    """Applicable lower-bound rows for one patch as ``(row, bound)`` pairs."""
    a = alpha
    x = 1 if chi else 0
    if patch.cls == CROSS:
        return [("cross", 4 - 4 * a)]
    if patch.cls == NABLA:
        return [("nabla", 2 - 2 * a)]
    dd = patch.degree
    rows = [("P_d", min(Fraction(0), (2 - a) * dd))]
    if dd == 2 and (n2 or len(patch.Z) % 2 == 1):
        rows.append(("P_2", min(4 + 2 * a, 12 + 4 * x - 2 * a)))
    if dd == 3 and patch.cls == ODOT:
        rows.append(("P_3_odot", min(6 + 3 * a, 6 + 6 * x - a, 10 + 4 * x - 3 * a)))
    if dd == 4 and (n2 or a <= 2):
        rows.append(("P_4", Fraction(0)))
    return rows


def check_weight_lower_bounds(w: WeightAssignment) -> list[BoundViolation]:
    p = w.decomposition
    if p.comp < 2:
        raise PatchError("precondition: comp(G - S) >= 2")
    diag = validate(p.host)
    if not diag.n1:
        raise PatchError("precondition: no loops")
    out = []
    for patch in p.patches:
        value = w.patch_w_alpha[patch.id]
        for row, bound in patch_lower_bounds(patch, w.alpha, w.chi_n3, diag.n2):
            if value < bound:
                out.append(BoundViolation(patch.id, row, value, bound))
    return out


@dataclass(frozen=True)
class DeficiencyBound:
    towards: Fraction
    corollary: Fraction
    corollary_3conn: Fraction
    comp_minus_s: int
    counts: dict[str, int] = field(default_factory=dict)


def deficiency_bound(p: PatchDecomposition) -> DeficiencyBound:
    if p.comp < 2:
        raise PatchError("precondition: comp(G - S) >= 2")
    odot = p.of_class(ODOT)
    n_cross = len(p.of_class(CROSS))
    n_nabla = len(p.of_class(NABLA))
    n_p2 = sum(1 for pt in p.patches if pt.kind == "face" and pt.degree == 2)
    n_p3o = sum(1 for pt in odot if pt.degree == 3)
    towards = Fraction(sum(4 - pt.degree for pt in odot) - 2 * n_cross - n_nabla, 2) - 2
    cor3 = Fraction(n_p3o, 2) - Fraction(n_cross, 2) - Fraction(n_nabla, 4) - 2
    return DeficiencyBound(
        towards=towards,
        corollary=n_p2 + cor3,
        corollary_3conn=cor3,
        comp_minus_s=p.comp - len(p.gamma.S),
        counts={"P2": n_p2, "P3_odot": n_p3o, "cross": n_cross, "nabla": n_nabla},
    )
