"""Acceptance suite: fixtures, random instance builders and the eight criteria."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .drawing import (
    Drawing,
    Embedding,
    components_minus,
    has_all_kite_edges,
    is_three_connected,
    validate,
)
from .generators import (
    GeneratedInstance,
    bipyramid,
    build_g5,
    build_gamma3,
    double_k6_a,
    double_k6_b,
    family,
    insert_k6,
)
from .matching import Graph, brute_force_deficiency, matching_number, verify_witness
from .patches import (
    PLAIN,
    compute_weights,
    covering_checks,
    decompose_patches,
    build_gamma_s,
    check_weight_lower_bounds,
    deficiency_bound,
    region_structure,
)
from .saturation import (
    SaturationError,
    check_saturation,
    enumerate_insertions,
    triangulate,
    triangulate_with_log,
)

ALPHAS = (Fraction(0), Fraction(4, 3), Fraction(2), Fraction(3))
FAMILY_TAGS = ("G1", "G2", "Gamma3", "Gamma4", "G5", "G6")
FAMILY_SIZES = (8, 10, 12, 14, 16)


# -- random instances ------------------------------------------------------------


def random_planar_triangulation(n: int, rng: random.Random, flips: int | None = None) -> Drawing:
    """Stacked triangulation on ``n`` vertices scrambled by random edge flips.

    For ``n <= 2`` the result is a single vertex, an edge, or the empty drawing.
    """
    if n <= 2:
        emb = Embedding(n)
        if n == 2:
            emb.add_edge(0, 1)
        return emb.freeze()
    emb = Embedding.from_drawing(_triangle())
    for _ in range(n - 3):
        walk = rng.choice(emb.faces())
        emb.add_star(list(walk))
    for _ in range(2 * n if flips is None else flips):
        e = rng.choice(sorted(emb.edges))
        left = emb.face_containing(4 * e)
        right = emb.face_containing(4 * e + 1)
        a, b = left[2], right[2]
        va, vb = emb.node_of(a), emb.node_of(b)
        if va == vb or any({va, vb} == set(p) for p in emb.edges.values()):
            continue
        if len(emb.rot[emb.edges[e][0]]) <= 3 or len(emb.rot[emb.edges[e][1]]) <= 3:
            continue
        emb.remove_edge(e)
        emb.add_chord(a, b, e)
    return emb.freeze()


def saturate(d: Drawing, rng: random.Random, mode: str = "simple", cap: int = 400) -> Drawing:
    """Apply random legal insertions until none is left (or ``cap`` is reached)."""
    for _ in range(cap):
        options = enumerate_insertions(d, mode)
        if not options:
            return d
        d = rng.choice(options).apply(d)
    return d


def random_saturated(n: int, rng: random.Random, mode: str = "simple") -> Drawing:
    return saturate(random_planar_triangulation(n, rng), rng, mode)


@dataclass(frozen=True)
class PlanarSample:
    host: Drawing
    vertices: frozenset[int]
    edges: frozenset[int]


def random_planar_sample(rng: random.Random, n_max: int = 10) -> PlanarSample:
    """A random planar triangulation with random vertex and edge deletions."""
    n = rng.randint(1, n_max)
    host = random_planar_triangulation(n, rng)
    keep_v = {v for v in range(n) if rng.random() > 0.25}
    if rng.random() < 0.15:
        keep_v = set(rng.sample(range(n), min(n, rng.randint(0, 2))))
    p_edge = rng.choice((0.2, 0.5, 0.8))
    keep_e = {
        e for e, u, v in host.edges if u in keep_v and v in keep_v and rng.random() > p_edge
    }
    return PlanarSample(host, frozenset(keep_v), frozenset(keep_e))


def random_graph(rng: random.Random, n_max: int = 12) -> Graph:
    n = rng.randint(0, n_max)
    p = rng.random()
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


# -- fixtures ---------------------------------------------------------------------


def _triangle() -> Drawing:
    emb = Embedding(3)
    emb.add_edge(0, 1)
    emb.add_edge(1, 2)
    emb.add_chord(4 * 1 + 1, 4 * 0)
    return emb.freeze()


def k4_crossed() -> Drawing:
    """K4 drawn with its two diagonals crossing inside the 4-cycle."""
    emb = Embedding(4)
    for i in range(4):
        emb.add_edge(i, (i + 1) % 4)
    inner = emb.faces()[0]
    diag = emb.add_chord(emb.corner(inner, 0), emb.corner(inner, 2))
    emb.cross_through(1, 3, diag)
    return emb.freeze()


def k6_drawing() -> Drawing:
    return insert_k6(_triangle(), 0)


def fixtures(seed: int = 0) -> list[tuple[str, Drawing]]:
    """Triangulated loop-free drawings with at most 12 vertices."""
    rng = random.Random(seed)
    out = [
        ("triangle", _triangle()),
        ("K4", random_planar_triangulation(4, random.Random(1))),
        ("K4-crossed-triangulated", triangulate(k4_crossed())),
        ("K6", k6_drawing()),
        ("gamma3-5-triangulated", triangulate(build_gamma3(5).drawing)),
        ("G5-5", build_g5(5).drawing),
        ("double-K6-a-triangulated", triangulate(double_k6_a().drawing)),
    ]
    for s in (5, 6, 7, 8):
        out.append((f"bipyramid-{s}", bipyramid(s).drawing))
    for i, n in enumerate((6, 7, 8, 9, 10)):
        out.append((f"random-simple-saturated-{n}", triangulate(random_saturated(n, rng))))
    proper = 0
    attempt = 0
    while proper < 3 and attempt < 60:
        attempt += 1
        n = rng.randint(5, 8)
        d = random_saturated(n, rng, mode="proper")
        try:
            t = triangulate(d)
        except SaturationError:
            continue
        if validate(t).n1:
            out.append((f"random-proper-{n}-{attempt}", t))
            proper += 1
    return out


def n2_failing_fixtures(seed: int = 0, want: int = 2) -> list[tuple[str, Drawing]]:
    rng = random.Random(seed + 1000)
    out = []
    for attempt in range(400):
        n = rng.randint(5, 8)
        d = saturate(random_planar_triangulation(n, rng), rng, mode="proper")
        try:
            t = triangulate(d)
        except SaturationError:
            continue
        diag = validate(t)
        if diag.n1 and not diag.n2:
            out.append((f"n2-failing-{n}-{attempt}", t))
            if len(out) >= want:
                break
    return out


def all_fixtures(seed: int = 0) -> list[tuple[str, Drawing]]:
    return fixtures(seed) + n2_failing_fixtures(seed)


def sweep_sets(d: Drawing) -> Iterator[tuple[tuple[int, ...], int]]:
    """Every vertex set ``S`` with ``comp(G - S) >= 2`` and its component count."""
    for r in range(d.n + 1):
        for S in combinations(range(d.n), r):
            comp, _, _ = components_minus(d, S)
            if comp >= 2:
                yield S, comp


# -- criteria ---------------------------------------------------------------------


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} [{verdict}] {self.title} ({self.checked} checks, {self.seconds:.2f}s)"


def _result(number: int, title: str, checked: int, failures: list[str], t0: float) -> CriterionResult:
    return CriterionResult(number, title, not failures, checked, failures[:20], time.perf_counter() - t0)


def _family_instances() -> Iterator[GeneratedInstance]:
    for tag in FAMILY_TAGS:
        for s in FAMILY_SIZES:
            yield family(tag, s)


_CLOSED_FORMS = {
    "G1": (lambda s: 5 * s - 8, lambda n: Fraction(2 * n + 6, 5), lambda s: s - 4),
    "G2": (lambda s: 10 * s - 18, lambda n: Fraction(3 * n + 14, 10), lambda s: 4 * s - 10),
    "Gamma3": (lambda s: 3 * s - 4, lambda n: Fraction(n + 4, 3), lambda s: s - 4),
    "Gamma4": (lambda s: 4 * s - 6, lambda n: Fraction(n + 6, 4), lambda s: 2 * s - 6),
    "G5": (lambda s: 3 * s - 4, lambda n: Fraction(n + 4, 3), lambda s: s - 4),
    "G6": (lambda s: 4 * s - 6, lambda n: Fraction(n + 6, 4), lambda s: 2 * s - 6),
}


def criterion_1(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    checked = 0
    for inst in ctx.instances:
        n_of, mu_of, _ = _CLOSED_FORMS[inst.family]
        n = n_of(inst.s)
        mu = matching_number(inst.drawing)
        checked += 1
        if inst.drawing.n != n or mu != mu_of(n):
            failures.append(f"{inst.family}({inst.s}): n={inst.drawing.n} mu={mu}, expected n={n} mu={mu_of(n)}")
    return _result(1, "family exactness", checked, failures, t0)


def criterion_2(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    for inst in ctx.instances:
        _, _, deficiency = _CLOSED_FORMS[inst.family]
        chk = verify_witness(inst.drawing, range(inst.s))
        if not chk.tight or chk.value != deficiency(inst.s):
            failures.append(
                f"{inst.family}({inst.s}): value {chk.value}, deficiency {chk.deficiency}, "
                f"expected {deficiency(inst.s)}"
            )
    return _result(2, "witness tightness", len(ctx.instances), failures, t0)


def criterion_3(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(ctx.seed + 3)
    graphs = [(f"random-{i}", random_graph(rng)) for i in range(ctx.random_graphs)]
    graphs += [(name, Graph.from_drawing(d)) for name, d in ctx.fixtures if d.n <= 12]
    failures = []
    for name, g in graphs:
        lhs = g.n - 2 * matching_number(g)
        rhs = brute_force_deficiency(g).value
        if lhs != rhs:
            failures.append(f"{name}: n-2mu={lhs}, brute force={rhs}")
    return _result(3, "blossom vs brute-force deficiency", len(graphs), failures, t0)


def criterion_4(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(ctx.seed + 4)
    failures = []
    kinds = {"multi-circuit": 0, "singleton": 0, "small": 0}
    for i in range(ctx.planar_samples):
        sample = random_planar_sample(rng)
        rs = region_structure(sample.host, sample.vertices, sample.edges)
        lhs, rhs = rs.degree_sum_identity()
        if lhs != rhs:
            failures.append(f"sample {i}: sum={lhs}, 2n-4={rhs}")
        kinds["multi-circuit"] += any(len(r.circuits) > 1 for r in rs.regions)
        kinds["singleton"] += any(r.singletons for r in rs.regions)
        kinds["small"] += len(sample.vertices) <= 2
    for kind, count in kinds.items():
        if count == 0:
            failures.append(f"no sample exercised the {kind} case")
    return _result(4, "face-degree identity", ctx.planar_samples, failures, t0)


@dataclass
class SweepStats:
    cases: int = 0
    w0_failures: list[str] = field(default_factory=list)
    total_failures: list[str] = field(default_factory=list)
    bound_failures: list[str] = field(default_factory=list)
    towards_failures: list[str] = field(default_factory=list)
    cover_failures: list[str] = field(default_factory=list)
    skipped_rows: int = 0
    w0_checked: int = 0
    weight_cases: int = 0
    no_s2: list[str] = field(default_factory=list)


def run_sweep(ctx: "SuiteContext") -> SweepStats:
    """Exhaustive ``(fixture, S, alpha)`` sweep shared by criteria 5 to 7."""
    if ctx.sweep is not None:
        return ctx.sweep
    st = SweepStats()
    for name, d in ctx.fixtures:
        diag = validate(d)
        kites = has_all_kite_edges(d)
        if diag.triangulated and kites:
            st.w0_checked += 1
            total = sum(1 if c.crossed else 2 * (c.degree - 2) for c in d.cells)
            if total != 4 * d.n - 8:
                st.w0_failures.append(f"{name}: sum w0 = {total}, 4n-8 = {4 * d.n - 8}")
        three = d.n >= 4 and is_three_connected(d)
        # the transfer-cell claims behind w_alpha need S2
        weighted = check_saturation(d).s2
        if not weighted:
            st.no_s2.append(name)
        for S, comp in sweep_sets(d):
            st.cases += 1
            p = decompose_patches(build_gamma_s(d, S))
            cover = covering_checks(p)
            if not cover.ok:
                st.cover_failures.append(f"{name} S={S}: {cover.violations[0]}")
            if any(pt.cls == PLAIN and pt.degree != 3 for pt in p.patches):
                st.cover_failures.append(f"{name} S={S}: face-patch of degree != 3 covers nothing")
            target = comp - len(S)
            b = deficiency_bound(p)
            if b.towards < target or b.corollary < target or (three and b.corollary_3conn < target):
                st.towards_failures.append(f"{name} S={S}: bounds {b.towards}/{b.corollary}, comp-|S| = {target}")
            if not weighted:
                continue
            st.weight_cases += 1
            for a in ALPHAS:
                w = compute_weights(p, a, "auto")
                if w.total_w_alpha > 4 * d.n - 8:
                    st.total_failures.append(f"{name} S={S} alpha={a}: total {w.total_w_alpha}")
                for v in check_weight_lower_bounds(w):
                    st.bound_failures.append(
                        f"{name} S={S} alpha={a}: patch {v.patch} row {v.row} has {v.value} < {v.bound}"
                    )
                if not diag.n2:
                    st.skipped_rows += sum(
                        1
                        for pt in p.patches
                        if pt.is_face
                        and pt.cls != "nabla"
                        and ((pt.degree == 2 and len(pt.Z) % 2 == 0) or (pt.degree == 4 and a > 2))
                    )
    ctx.sweep = st
    return st


def criterion_5(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    st = run_sweep(ctx)
    failures = st.w0_failures + st.total_failures
    if st.w0_checked == 0:
        failures.append("no fixture with all kite-edges")
    return _result(5, "weight totals", st.w0_checked + st.weight_cases * len(ALPHAS), failures, t0)


def criterion_6(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    st = run_sweep(ctx)
    failures = st.bound_failures + st.cover_failures
    if not any(not validate(d).n2 for _, d in ctx.fixtures):
        failures.append("no N2-failing fixture in the sweep")
    if not any(validate(d).n2 is False and name not in st.no_s2 for name, d in ctx.fixtures):
        failures.append("no N2-failing fixture satisfies S2")
    return _result(6, "per-patch weight lower bounds", st.weight_cases * len(ALPHAS), failures, t0)


def criterion_7(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    st = run_sweep(ctx)
    failures = list(st.towards_failures)
    g3 = triangulate(family("Gamma3", 8).drawing)
    p = decompose_patches(build_gamma_s(g3, range(8)))
    b = deficiency_bound(p)
    if b.towards != p.comp - 8:
        failures.append(f"Gamma3(8): towards {b.towards} != comp-|S| {p.comp - 8}")
    return _result(7, "deficiency bound soundness", st.cases + 1, failures, t0)


def criterion_8(ctx: "SuiteContext") -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    checked = 0
    for tag in ("Gamma3", "Gamma4"):
        for s in FAMILY_SIZES:
            checked += 1
            if not check_saturation(family(tag, s).drawing).simple_saturated:
                failures.append(f"{tag}({s}) is not simple-saturated")
    for tag in ("G5", "G6"):
        for s in FAMILY_SIZES:
            checked += 1
            rep = check_saturation(family(tag, s).drawing)
            if not (rep.proper_cell and rep.proper_cell_saturated):
                failures.append(f"{tag}({s}) is not proper-cell-saturated")
    checked += 2
    if not check_saturation(double_k6_a().drawing).simple_saturated:
        failures.append("double K6 (a) is not saturated")
    if check_saturation(double_k6_b().drawing).simple_saturated:
        failures.append("double K6 (b) is saturated")
    inputs = [(f"{tag}({s})", family(tag, s).drawing) for tag in FAMILY_TAGS for s in (8, 10)]
    inputs += [("double K6 (a)", double_k6_a().drawing), ("K4 crossed", k4_crossed())]
    rng = random.Random(ctx.seed + 8)
    inputs += [(f"random saturated {n}", random_saturated(n, rng)) for n in (6, 7, 8, 9, 10, 11, 12)]
    for name, d in inputs:
        checked += 1
        res = triangulate_with_log(d)
        t = res.drawing
        diag = validate(t)
        rep = check_saturation(t)
        if not (diag.triangulated and diag.n1 and diag.n2 and rep.s2):
            failures.append(f"triangulate({name}) fails triangulated/N1/N2/S2")
        if len(t.cells) > 4 * t.n - 8:
            failures.append(f"triangulate({name}) has {len(t.cells)} cells > 4n-8")
        if triangulate(t) != t:
            failures.append(f"triangulate({name}) is not idempotent")
    return _result(8, "saturation and triangulation", checked, failures, t0)


CRITERIA: tuple[Callable[["SuiteContext"], CriterionResult], ...] = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
)


@dataclass
class SuiteContext:
    seed: int = 0
    random_graphs: int = 500
    planar_samples: int = 200
    fixtures: list[tuple[str, Drawing]] = field(default_factory=list)
    instances: list[GeneratedInstance] = field(default_factory=list)
    sweep: SweepStats | None = None

    @classmethod
    def build(cls, seed: int = 0, **kw) -> "SuiteContext":
        ctx = cls(seed=seed, **kw)
        ctx.fixtures = all_fixtures(seed)
        ctx.instances = list(_family_instances())
        return ctx


def run_suite(seed: int = 0, only: Iterable[int] | None = None) -> list[CriterionResult]:
    ctx = SuiteContext.build(seed)
    wanted = set(only) if only is not None else set(range(1, 9))
    return [crit(ctx) for i, crit in enumerate(CRITERIA, start=1) if i in wanted]
