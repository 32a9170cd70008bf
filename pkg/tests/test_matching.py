from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from onepmatch.generators import loop_star
from onepmatch.matching import (
    THEOREM_CLASSES,
    Graph,
    MatchingError,
    brute_force_deficiency,
    check_theorem_bound,
    is_matching,
    matching_number,
    max_matching,
    verify_witness,
)
from onepmatch.saturation import triangulate

from conftest import fam

K4 = Graph.from_edges(4, combinations(range(4), 2))
P5 = Graph.from_edges(5, [(i, i + 1) for i in range(4)])
STAR = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def test_small_examples():
    assert matching_number(K4) == 2
    assert matching_number(P5) == 2
    w = brute_force_deficiency(STAR)
    assert (w.value, w.S) == (2, (0,))
    w = brute_force_deficiency(K4)
    assert (w.value, w.S) == (0, ())


def test_certificate_shape():
    cert = max_matching(P5)
    assert is_matching(P5, cert.matching)
    assert len(cert.matched) == 2 * cert.mu
    assert sorted(cert.matched + cert.unmatched) == list(range(5))


def test_loops_and_parallels_collapse():
    g = Graph.from_edges(3, [(0, 0), (0, 1), (1, 0), (1, 2)])
    assert g.edges() == [(0, 1), (1, 2)]


def test_brute_force_limit(monkeypatch):
    big = Graph.from_edges(15, [])
    with pytest.raises(MatchingError, match="n <= 14"):
        brute_force_deficiency(big)
    monkeypatch.setenv("ONEPMATCH_BRUTE_LIMIT", "4")
    with pytest.raises(MatchingError):
        brute_force_deficiency(P5)
    assert brute_force_deficiency(P5, limit=5).value == 1


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_blossom_equals_brute_force(g):
    cert = max_matching(g)
    assert is_matching(g, cert.matching)
    w = brute_force_deficiency(g)
    assert g.n - 2 * cert.mu == w.value
    assert verify_witness(g, w.S).tight


@settings(max_examples=100, deadline=None)
@given(graphs(), st.integers(0, 10**6))
def test_adding_an_edge_never_hurts(g, seed):
    rng = random.Random(seed)
    missing = [(u, v) for u, v in combinations(range(g.n), 2) if v not in g.adj[u]]
    if not missing:
        return
    extra = rng.choice(missing)
    bigger = Graph.from_edges(g.n, g.edges() + [extra])
    assert matching_number(bigger) >= matching_number(g)


@settings(max_examples=100, deadline=None)
@given(graphs(), st.sets(st.integers(0, 11)))
def test_witness_soundness(g, S):
    S = {v for v in S if v < g.n}
    chk = verify_witness(g, S)
    assert chk.value <= chk.deficiency


def test_networkx_cross_check():
    nx = pytest.importorskip("networkx")
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(0, 20)
        p = rng.random()
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(edges)
        assert matching_number(Graph.from_edges(n, edges)) == len(nx.max_weight_matching(h, maxcardinality=True))


def test_family_matchings():
    assert matching_number(fam("G1").drawing) == 14
    chk = verify_witness(fam("G2").drawing, range(8))
    assert (chk.value, chk.tight, matching_number(fam("G2").drawing)) == (22, True, 20)
    chk = verify_witness(fam("Gamma4").drawing, range(8))
    assert (chk.value, chk.tight, matching_number(fam("Gamma4").drawing)) == (10, True, 8)
    assert verify_witness(P5, []).value == 1


CLASS_OF = {
    "3conn-drawing": "Gamma3",
    "drawing": "Gamma4",
    "3conn-graph": "G1",
    "graph": "G2",
    "proper-cell": "G6",
    "proper-cell-3conn": "G5",
}


@pytest.mark.parametrize("cls", sorted(THEOREM_CLASSES))
def test_theorem_bounds_tight(cls):
    rep = check_theorem_bound(fam(CLASS_OF[cls]).drawing, cls)
    assert rep.passed and rep.tight


def test_theorem_bound_preconditions():
    with pytest.raises(MatchingError, match="N1"):
        check_theorem_bound(loop_star(5).drawing, "proper-cell")
    with pytest.raises(MatchingError, match="3-connected"):
        check_theorem_bound(fam("Gamma4").drawing, "3conn-drawing")
    with pytest.raises(MatchingError, match="saturated"):
        check_theorem_bound(fam("Gamma4").drawing, "proper-cell")
    with pytest.raises(MatchingError, match="unknown class"):
        check_theorem_bound(fam("G1").drawing, "planar")
    with pytest.raises(MatchingError, match="threshold"):
        check_theorem_bound(fam("G5").drawing, "proper-cell-3conn", min_n=40)
    with pytest.raises(MatchingError):
        check_theorem_bound(fam("G1").drawing, "graph", min_n=4)


def test_triangulated_family_keeps_matching():
    d = fam("Gamma4").drawing
    assert matching_number(triangulate(d)) == matching_number(d)
