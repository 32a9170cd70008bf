from __future__ import annotations

import functools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from onepmatch.acceptance import random_saturated, sweep_sets
from onepmatch.patches import (
    CROSS,
    NABLA,
    ODOT,
    Patch,
    PatchError,
    build_gamma_s,
    check_weight_lower_bounds,
    compute_weights,
    covering_checks,
    decompose,
    decompose_patches,
    deficiency_bound,
    parse_alpha,
    patch_lower_bounds,
    region_structure,
    small_patch_shape,
)
from onepmatch.generators import insert_k4
from onepmatch.saturation import check_saturation, triangulate

from conftest import fam, fixture_list


@functools.lru_cache(maxsize=None)
def gamma3_tri():
    return triangulate(fam("Gamma3").drawing)


@functools.lru_cache(maxsize=None)
def sweep():
    """``(name, drawing, S, decomposition)`` for every fixture and every S with comp >= 2."""
    out = []
    for name, d in fixture_list():
        for S, _ in sweep_sets(d):
            out.append((name, d, S, decompose(d, S)))
    return out


def flank(d, e):
    return d.face_of_dart[4 * e], d.face_of_dart[4 * e + 1]


# -- Γ_S ------------------------------------------------------------------------------


def test_gamma_s_needs_triangulated():
    with pytest.raises(PatchError, match="triangulated"):
        build_gamma_s(fam("Gamma3").drawing, range(8))


def test_gamma_s_on_gamma3():
    d = gamma3_tri()
    g = build_gamma_s(d, range(8))
    assert g.pure_crossings == ()
    assert all(set(d.endpoints[e]) <= set(range(8)) for e in g.retained)
    assert all(not d.is_crossed(e) for e in g.retained)
    crossed_apex = [e for e, u, v in d.edges if u < 8 and v < 8 and d.is_crossed(e)]
    assert sorted(e for e, step in g.deletions.items() if step == 2) == sorted(crossed_apex)
    assert len(crossed_apex) == 12 and len(g.retained) == 3 * 8 - 6


def test_step2_deletes_edge_crossed_from_outside(k4x_tri):
    d = k4x_tri
    g = build_gamma_s(d, [0, 1, 2])
    diag = next(e for e, u, v in d.edges if {u, v} == {0, 2} and d.is_crossed(e))
    assert g.deletions[diag] == 2


def test_step3_deletes_doubly_incident_copy(k4x_tri):
    d = k4x_tri
    g = build_gamma_s(d, [0, 2])
    copy = next(e for e, u, v in d.edges if {u, v} == {0, 2} and not d.is_crossed(e))
    assert g.deletions[copy] == 3 and g.retained == ()


def test_full_set():
    d = gamma3_tri()
    g = build_gamma_s(d, range(d.n))
    assert g.deletions == {} and len(g.pure_crossings) == len(d.crossings)
    p = decompose_patches(g)
    assert set(p.census()) == {CROSS, NABLA}
    assert p.census()[CROSS] == len(d.crossings)
    cover = covering_checks(p)
    assert cover.ok and p.comp == 0


def test_retained_invariants():
    for name, d, S, p in sweep()[::7]:
        g = p.gamma
        rs = g.structure
        for e in g.retained:
            assert set(d.endpoints[e]) <= g.S
            if d.is_crossed(e):
                assert d.partner[e] in g.retained
            else:
                assert rs.side_region(4 * e) != rs.side_region(4 * e + 1)


# -- decomposition -------------------------------------------------------------------


def test_gamma3_patches():
    p = decompose(gamma3_tri(), range(8))
    assert p.census() == {"odot_3": 12}
    for pt in p.patches:
        assert small_patch_shape(pt, p) == "triangle" and len(pt.Z) == 1 and len(pt.cells) == 5


def test_g1_patches():
    p = decompose(fam("G1").drawing, range(8))
    face = [pt for pt in p.patches if pt.is_face]
    assert len(face) == 12 and all(len(pt.components) == 1 for pt in face)
    assert covering_checks(p).ok


def test_g2_components_covered_once():
    p = decompose(triangulate(fam("G2").drawing), range(8))
    assert p.comp == 30 and covering_checks(p).ok


def test_gamma4_bigons():
    p = decompose(triangulate(fam("Gamma4").drawing), range(8))
    shapes = sorted(small_patch_shape(pt, p) for pt in p.patches)
    assert shapes == ["bigon"] * 6 + ["triangle"] * 12


def test_two_plus_singleton():
    d = dict(fixture_list())["double-K6-a-triangulated"]
    p = decompose(d, (0, 1, 3))
    hits = [pt for pt in p.patches if pt.is_face and pt.degree == 4]
    assert hits and small_patch_shape(hits[0], p) == "2+singleton"
    assert hits[0].singletons == (3,)


def test_shape_preconditions():
    d = gamma3_tri()
    p = decompose(d, range(d.n))
    cross = next(pt for pt in p.patches if pt.kind == "crossing")
    with pytest.raises(PatchError):
        small_patch_shape(cross)
    nabla = next(pt for pt in p.patches if pt.is_face)
    with pytest.raises(PatchError, match="comp"):
        small_patch_shape(nabla, p)


def test_shape_of_synthetic_patches():
    four = Patch(0, "face", ODOT, (0,), 4, 4, 1, circuits=((0, 4, 8, 12),), circuit_vertices=((0, 1, 2, 3),))
    assert small_patch_shape(four) == "simple-4-cycle"
    pinched = Patch(0, "face", ODOT, (0,), 4, 4, 1, circuits=((0, 4, 8, 12),), circuit_vertices=((0, 1, 0, 2),))
    assert small_patch_shape(pinched) == "4-circuit-3-vertices"
    big = Patch(0, "face", ODOT, (0,), 5, 5, 1, circuit_vertices=((0, 1, 2, 3, 4),))
    assert small_patch_shape(big) == "other"


def test_sweep_covering_and_shapes():
    for name, d, S, p in sweep():
        assert covering_checks(p).ok, (name, S)
        for pt in p.patches:
            if pt.is_face:
                assert pt.cls != "plain", (name, S)
                if pt.degree <= 4:
                    assert small_patch_shape(pt, p) != "other", (name, S)
        assert sum(len(pt.cells) for pt in p.patches) == len(d.cells)


# -- region structure ------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.integers(0, 10**6), st.floats(0, 1), st.floats(0, 1))
def test_region_degree_identity(n, seed, pv, pe):
    rng = random.Random(seed)
    d = random_saturated(n, rng)
    keep_v = {v for v in range(d.n) if rng.random() < pv}
    keep_e = {e for e, u, v in d.edges if u in keep_v and v in keep_v and rng.random() < pe}
    rs = region_structure(d, keep_v, keep_e)
    lhs, rhs = rs.degree_sum_identity()
    assert lhs == rhs
    assert sum(len(r.cells) for r in rs.regions) == len(d.cells)


def test_region_rejects_dangling_edge():
    with pytest.raises(PatchError):
        region_structure(gamma3_tri(), [0], [0])


# -- weights ---------------------------------------------------------------------------


def test_alpha_parsing():
    assert parse_alpha("4/3") == Fraction(4, 3)
    for bad in ("7/2", "-1", "x", "1/0"):
        with pytest.raises(PatchError):
            parse_alpha(bad)


def test_alpha_zero_is_w0():
    d = gamma3_tri()
    w = compute_weights(decompose(d, range(8)), 0)
    assert all(w.w_alpha[c] == w.w0[c] for c in w.w0)
    assert w.total_w0 == w.total_w_alpha == 4 * d.n - 8


def test_gamma3_weights_at_two():
    d = gamma3_tri()
    p = decompose(d, range(8))
    w = compute_weights(p, 2)
    assert len(w.transfer_edges) == 18
    for pt in p.patches:
        own = [e for e in w.transfer_edges if set(flank(d, e)) & set(pt.cells)]
        assert len(own) == 3
        assert w.patch_w_alpha[pt.id] == 4
    assert set(w.t_cross) and not w.t_nabla
    assert all(w.w_alpha[c] == -1 for c in w.t_cross)
    assert check_weight_lower_bounds(w) == []


def test_table_rows():
    a = Fraction(4, 3)
    p3 = Patch(0, "face", ODOT, (), 3, 3, 1, Z=(9,))
    assert dict(patch_lower_bounds(p3, a, True, True))["P_3_odot"] == 10
    cross = Patch(0, "crossing", CROSS, (), 4, 4, 1)
    assert patch_lower_bounds(cross, Fraction(2), True, True) == [("cross", -4)]
    nabla = Patch(0, "face", NABLA, (), 3, 3, 1)
    assert patch_lower_bounds(nabla, Fraction(3), False, True) == [("nabla", -4)]
    p2_even = Patch(0, "face", ODOT, (), 2, 2, 1, Z=(1, 2))
    assert [r for r, _ in patch_lower_bounds(p2_even, a, False, False)] == ["P_d"]
    assert [r for r, _ in patch_lower_bounds(p2_even, a, False, True)] == ["P_d", "P_2"]
    p2_odd = Patch(0, "face", ODOT, (), 2, 2, 1, Z=(1,))
    assert [r for r, _ in patch_lower_bounds(p2_odd, a, False, False)] == ["P_d", "P_2"]
    p4 = Patch(0, "face", ODOT, (), 4, 4, 1, Z=(1,))
    assert [r for r, _ in patch_lower_bounds(p4, Fraction(3), False, False)] == ["P_d"]
    assert [r for r, _ in patch_lower_bounds(p4, Fraction(2), False, False)] == ["P_d", "P_4"]
    assert [r for r, _ in patch_lower_bounds(p4, Fraction(3), False, True)] == ["P_d", "P_4"]


def test_crossing_patch_attains_minus_four(k4x_tri):
    # a stacked vertex in each outer triangle makes all four kite-edges transfer edges
    d = insert_k4(k4x_tri, next(c.id for c in k4x_tri.cells if not c.crossed))
    d = insert_k4(d, next(c.id for c in d.cells if c.vertices == (0, 2, 3)))
    p = decompose(d, range(4))
    w = compute_weights(p, 2)
    (cross,) = p.of_class(CROSS)
    assert set(cross.cells) <= set(w.t_cross)
    assert w.patch_w_alpha[cross.id] == -4
    assert check_weight_lower_bounds(w) == []
    for name, d, S, p in sweep():
        w = compute_weights(p, 2)
        for pt in p.of_class(CROSS):
            assert w.patch_w_alpha[pt.id] >= -4


def test_w0_of_small_odot_patches():
    for name, d, S, p in sweep():
        w = compute_weights(p, 0)
        for pt in p.of_class(ODOT):
            if pt.degree in (2, 3, 4):
                assert w.patch_w0[pt.id] == 4 * len(pt.Z) + 2 * (pt.degree - 2), (name, S)


def test_transfer_claims():
    for name, d, S, p in sweep():
        if not check_saturation(d).s2:
            continue
        w = compute_weights(p, 2)
        heavy = set(w.t_cross) | set(w.t_nabla)
        circ = set(w.t_circ)
        load = {c: 0 for c in heavy}
        for e in w.transfer_edges:
            a, b = flank(d, e)
            assert {a, b} & heavy, (name, S, e)
            for c, other in ((a, b), (b, a)):
                if c in heavy and other in circ:
                    load[c] += 1
        for c in w.t_cross:
            assert load[c] <= 1
        for c in w.t_nabla:
            assert load[c] <= 2
        nabla_cells = {
            c for pt in p.of_class(NABLA) if set(pt.edges) & set(w.transfer_edges) for c in pt.cells
        }
        assert nabla_cells == set(w.t_nabla)


@pytest.mark.parametrize("alpha", ["0", "4/3", "2", "3"])
def test_sweep_weight_bounds(alpha):
    for name, d, S, p in sweep():
        if not check_saturation(d).s2:
            continue
        w = compute_weights(p, alpha)
        assert w.total_w_alpha <= 4 * d.n - 8
        assert check_weight_lower_bounds(w) == [], (name, S)


def test_chi_override():
    p = decompose(gamma3_tri(), range(8))
    assert compute_weights(p, 2, "auto").chi_n3 is False
    assert compute_weights(p, 2, True).chi_n3 is True


# -- deficiency bound ----------------------------------------------------------------


def test_gamma3_bound_tight():
    p = decompose(gamma3_tri(), range(8))
    b = deficiency_bound(p)
    assert b.towards == 4 == b.comp_minus_s
    assert b.corollary == 4


def test_g1_comp_minus_s():
    p = decompose(fam("G1").drawing, range(8))
    assert p.comp - 8 == 4 == (32 - 12) // 5


def test_bound_precondition():
    d = gamma3_tri()
    with pytest.raises(PatchError, match="comp"):
        deficiency_bound(decompose(d, range(d.n)))
    with pytest.raises(PatchError):
        check_weight_lower_bounds(compute_weights(decompose(d, range(d.n)), 1))


def test_sweep_towards():
    for name, d, S, p in sweep():
        b = deficiency_bound(p)
        target = p.comp - len(S)
        assert b.towards >= target and b.corollary >= target, (name, S)
