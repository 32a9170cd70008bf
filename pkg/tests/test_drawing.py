from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from onepmatch.acceptance import k4_crossed, random_planar_triangulation, random_saturated
from onepmatch.drawing import (
    Drawing,
    DrawingError,
    Embedding,
    components_minus,
    has_all_kite_edges,
    is_three_connected,
    kite_edge_status,
    parse_drawing,
    serialize,
    validate,
)
from onepmatch.generators import bipyramid, loop_star

from conftest import fam, planar


def triangle() -> Drawing:
    return Drawing(3, [(0, 0, 1), (1, 1, 2), (2, 2, 0)], [], {0: (0, 9), 1: (1, 4), 2: (5, 8)})


def degree_sum(d: Drawing) -> int:
    return sum(c.degree - 2 for c in d.cells)


# -- parsing and serialization ----------------------------------------------------


def test_triangle_has_two_triangular_cells():
    d = triangle()
    assert [c.degree for c in d.cells] == [3, 3]
    assert degree_sum(d) == 2 * 3 - 4


def test_bipyramid6_file_round_trip():
    text = serialize(bipyramid(6).drawing)
    d = parse_drawing(text)
    assert (d.n, len(d.edges), len(d.crossings)) == (6, 12, 0)
    assert serialize(d) == text


def test_serialization_is_canonical_json():
    data = json.loads(serialize(k4_crossed()))
    assert set(data) == {"n", "edges", "crossings", "rotation"}
    assert [e[0] for e in data["edges"]] == sorted(e[0] for e in data["edges"])
    assert "x0" in data["rotation"]
    for darts in data["rotation"].values():
        assert darts[0] == min(darts)


def _text(**over) -> str:
    data = json.loads(serialize(k4_crossed()))
    data.update(over)
    return json.dumps(data)


def test_edge_in_two_crossings_rejected():
    d = k4_crossed()
    c, e1, e2 = d.crossings[0]
    data = json.loads(serialize(d))
    data["crossings"].append([1, e1, 0])
    with pytest.raises(DrawingError, match="edge crossed twice"):
        parse_drawing(json.dumps(data))


def test_dangling_dart_rejected():
    data = json.loads(serialize(triangle()))
    data["rotation"]["v0"].append(99)
    with pytest.raises(DrawingError, match="dangling dart"):
        parse_drawing(json.dumps(data))


def test_non_alternating_crossing_rejected():
    data = json.loads(serialize(k4_crossed()))
    a, b, c, d = data["rotation"]["x0"]
    data["rotation"]["x0"] = [a, c, b, d]
    with pytest.raises(DrawingError, match="non-alternating"):
        parse_drawing(json.dumps(data))


def test_loop_in_crossing_rejected():
    with pytest.raises(DrawingError, match="loop participating"):
        Drawing(
            2,
            [(0, 0, 0), (1, 0, 1)],
            [(0, 0, 1)],
            {0: (0, 1, 4), 1: (5,), -1: (2, 6, 3, 7)},
        )


def test_adjacent_edges_may_not_cross():
    with pytest.raises(DrawingError, match="sharing an endpoint"):
        Drawing(
            3,
            [(0, 0, 1), (1, 0, 2)],
            [(0, 0, 1)],
            {0: (0, 4), 1: (1,), 2: (5,), -1: (2, 6, 3, 7)},
        )


@pytest.mark.parametrize("bad", ["not json", "[]", '{"n": 3}', '{"n": 3, "edges": [[0, 1]], "crossings": [], "rotation": {}}'])
def test_malformed_syntax(bad):
    with pytest.raises(DrawingError, match="malformed"):
        parse_drawing(bad)


def test_bad_rotation_key():
    with pytest.raises(DrawingError, match="malformed"):
        parse_drawing(_text(rotation={"q0": [0]}))


def test_disconnected_rejected():
    with pytest.raises(DrawingError, match="not connected"):
        Drawing(4, [(0, 0, 1), (1, 2, 3)], [], {0: (0,), 1: (1,), 2: (4,), 3: (5,)})


def test_non_planar_rotation_rejected():
    # K4 with the rotation at vertex 0 reversed relative to a planar embedding
    d = planar(4, 1)
    rot = dict(d.rotation)
    rot[0] = tuple(reversed(rot[0]))
    rot[1] = tuple(reversed(rot[1]))
    with pytest.raises(DrawingError, match="Euler"):
        Drawing(d.n, d.edges, d.crossings, rot)


# -- cells ---------------------------------------------------------------------------


def test_k4_with_crossing_cells():
    # hand planarization: four crossed triangles around the crossing plus the outer 4-cycle
    d = k4_crossed()
    degrees = sorted((c.degree, c.crossed) for c in d.cells)
    assert degrees == [(3, True)] * 4 + [(4, False)]
    assert degree_sum(d) == 6 == 2 * (4 + 1) - 4


def test_bipyramid6_cells():
    d = bipyramid(6).drawing
    assert len(d.cells) == 8
    assert all(c.degree == 3 and not c.crossed for c in d.cells)


def test_single_vertex_and_single_edge():
    d = Drawing(1, [], [], {0: ()})
    assert [(c.comp, c.degree) for c in d.cells] == [(1, 0)]
    e = Drawing(2, [(0, 0, 1)], [], {0: (0,), 1: (1,)})
    assert [(c.m_f, c.degree) for c in e.cells] == [(2, 2)]


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 14), st.integers(0, 10**6))
def test_dart_conservation_and_degree_identity(n, seed):
    d = random_saturated(min(n, 9), random.Random(seed)) if seed % 2 else random_planar_triangulation(n, random.Random(seed))
    walked = [x for c in d.cells for circuit in c.boundary for x in circuit]
    assert sorted(walked) == sorted(d.darts)
    assert degree_sum(d) == 2 * (d.n + len(d.crossings)) - 4


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_round_trip(n, seed):
    rng = random.Random(seed)
    d = random_saturated(n, rng) if n >= 4 and seed % 3 == 0 else random_planar_triangulation(n, rng)
    assert parse_drawing(serialize(d)) == d


# -- kite edges, diagnostics ----------------------------------------------------


def test_kite_edges_gamma3():
    from onepmatch.saturation import triangulate

    d = fam("Gamma3").drawing
    # each crossing keeps one degree-4 crossed quadrant, so one kite-edge is absent
    missing = [sum(q.edge is None for q in kite_edge_status(d, c)) for c, _, _ in d.crossings]
    assert missing == [1] * 12
    assert has_all_kite_edges(triangulate(d))


def test_kite_edges_k4_and_deletion():
    d = k4_crossed()
    status = kite_edge_status(d, 0)
    assert sorted(q.edge for q in status) == [0, 1, 2, 3]
    emb = Embedding.from_drawing(d)
    emb.remove_edge(0)
    cut = emb.freeze()
    present = [q.edge for q in kite_edge_status(cut, 0)]
    assert sum(e is not None for e in present) == 3


def test_kite_unknown_crossing():
    with pytest.raises(DrawingError):
        kite_edge_status(k4_crossed(), 5)


def test_validate_families():
    g3 = validate(fam("Gamma3").drawing)
    assert g3.simple and g3.n1 and g3.n2 and g3.n3
    g5 = validate(fam("G5").drawing)
    assert not g5.simple and g5.n1 and g5.n2
    # the crossed apex-edge has an uncrossed parallel copy
    assert not g5.n3
    assert not validate(loop_star(4).drawing).n1


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 9), st.integers(0, 10**6))
def test_diagnostic_implications(n, seed):
    from onepmatch.acceptance import saturate

    d = saturate(random_planar_triangulation(n, random.Random(seed)), random.Random(seed), "proper", cap=30)
    diag = validate(d)
    assert not diag.n3 or diag.n2
    assert not diag.simple or diag.n1


def test_components_minus():
    d = fam("G1").drawing
    comp, odd, comps = components_minus(d, range(8))
    assert comp == odd == 12
    assert components_minus(d, [])[0] == 1
    path = Drawing(5, [(i, i, i + 1) for i in range(4)], [], {0: (0,), 1: (1, 4), 2: (5, 8), 3: (9, 12), 4: (13,)})
    assert components_minus(path, [2])[:2] == (2, 0)


def test_three_connectivity():
    assert is_three_connected(fam("G1").drawing)
    assert not is_three_connected(fam("Gamma4").drawing)
    assert is_three_connected(planar(4, 1))
    with pytest.raises(DrawingError):
        is_three_connected(triangle())


# -- embedding primitives --------------------------------------------------------


def test_cross_through_and_remove_restore():
    d = k4_crossed()
    emb = Embedding.from_drawing(d)
    c, e1, e2 = d.crossings[0]
    u, v = d.endpoints[e2]
    emb.remove_edge(e2)
    emb.cross_through(u, v, e1, e2)
    assert emb.freeze() == d


def test_crossing_a_crossed_edge_fails():
    d = k4_crossed()
    emb = Embedding.from_drawing(d)
    with pytest.raises(DrawingError, match="crossed twice"):
        emb.add_crossing_edge(0, 4, 4 * d.crossings[0][1])
