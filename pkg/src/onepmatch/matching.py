"""Maximum matchings, Tutte–Berge deficiency witnesses and matching bounds."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .drawing import Drawing, components_minus, is_three_connected, validate

DEFAULT_BRUTE_LIMIT = 14


class MatchingError(ValueError):
    """Raised for unmet preconditions (size limits, class requirements)."""


@dataclass(frozen=True)
class Graph:
    """Loop-free simple graph on ``0..n-1``; parallel edges and loops are dropped."""

    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = e[-2], e[-1]
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @classmethod
    def from_drawing(cls, d: Drawing) -> "Graph":
        return cls.from_edges(d.n, [(u, v) for _, u, v in d.edges])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]


GraphLike = Union[Graph, Drawing]


def as_graph(g: GraphLike) -> Graph:
    return Graph.from_drawing(g) if isinstance(g, Drawing) else g


@dataclass(frozen=True)
class MatchingCertificate:
    matching: tuple[tuple[int, int], ...]
    mu: int
    matched: tuple[int, ...]
    unmatched: tuple[int, ...]


@dataclass(frozen=True)
class DeficiencyWitness:
    S: tuple[int, ...]
    value: int
    method: str


def _blossom(n: int, adj: Sequence[Iterable[int]]) -> list[int]:
    """Edmonds' blossom algorithm, ``O(n^3)``; returns the mate array (-1 = free)."""
    nbrs = [sorted(a) for a in adj]
    mate = [-1] * n

    # greedy start
    for v in range(n):
        if mate[v] == -1:
            for w in nbrs[v]:
                if mate[w] == -1:
                    mate[v], mate[w] = w, v
                    break

    def augment_from(root: int) -> bool:
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
            while base[v] != b:
                in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, in_blossom)
                    mark_path(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        # augment along the alternating path ending at ``to``
                        while to != -1:
                            pv = parent[to]
                            nxt = mate[pv]
                            mate[to], mate[pv] = pv, to
                            to = nxt
                        return True
                    used[mate[to]] = True
                    queue.append(mate[to])
        return False

    for v in range(n):
        if mate[v] == -1:
            augment_from(v)
    return mate


def max_matching(g: GraphLike) -> MatchingCertificate:
    """Maximum matching of the underlying simple graph."""
    graph = as_graph(g)
    mate = _blossom(graph.n, graph.adj)
    pairs = tuple((v, mate[v]) for v in range(graph.n) if mate[v] > v)
    matched = tuple(v for v in range(graph.n) if mate[v] != -1)
    unmatched = tuple(v for v in range(graph.n) if mate[v] == -1)
    return MatchingCertificate(pairs, len(pairs), matched, unmatched)


def matching_number(g: GraphLike) -> int:
    return max_matching(g).mu


def is_matching(g: GraphLike, pairs: Iterable[tuple[int, int]]) -> bool:
    graph = as_graph(g)
    seen: set[int] = set()
    for u, v in pairs:
        if v not in graph.adj[u] or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def _odd_minus(graph: Graph, S: Iterable[int]) -> tuple[int, int]:
    removed = set(S)
    seen = set(removed)
    comps = odd = 0
    for start in range(graph.n):
        if start in seen:
            continue
        seen.add(start)
        size = 0
        stack = [start]
        while stack:
            x = stack.pop()
            size += 1
            for y in graph.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps += 1
        odd += size & 1
    return comps, odd


def brute_limit() -> int:
    raw = os.environ.get("ONEPMATCH_BRUTE_LIMIT")
    return int(raw) if raw else DEFAULT_BRUTE_LIMIT


def brute_force_deficiency(g: GraphLike, limit: int | None = None) -> DeficiencyWitness:
    """Maximum of ``odd(G-S) - |S|`` over all vertex subsets, by bitmask enumeration."""
    graph = as_graph(g)
    limit = brute_limit() if limit is None else limit
    n = graph.n
    if n > limit:
        raise MatchingError(f"brute force limited to n <= {limit}, got n = {n}")
    masks = [sum(1 << w for w in graph.adj[v]) for v in range(n)]
    full = (1 << n) - 1
    best_val, best_S = None, 0
    for S in range(1 << n):
        rest = full & ~S
        odd = 0
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                grow = masks[b.bit_length() - 1] & rest & ~comp
                comp |= grow
                frontier |= grow
            rest &= ~comp
            odd += bin(comp).count("1") & 1
        val = odd - bin(S).count("1")
        if best_val is None or val > best_val:
            best_val, best_S = val, S
    S_set = tuple(v for v in range(n) if best_S >> v & 1)
    return DeficiencyWitness(S_set, best_val if best_val is not None else 0, "brute-force")


@dataclass(frozen=True)
class WitnessCheck:
    value: int
    deficiency: int
    tight: bool


def verify_witness(g: GraphLike, S: Iterable[int]) -> WitnessCheck:
    graph = as_graph(g)
    S = sorted(set(S))
    _, odd = _odd_minus(graph, S)
    value = odd - len(S)
    deficiency = graph.n - 2 * max_matching(graph).mu
    return WitnessCheck(value, deficiency, value == deficiency)


@dataclass(frozen=True)
class ClassSpec:
    needs_3conn: bool
    proper: bool
    bound: Fraction
    offset: Fraction
    threshold: str


# bound = bound * n + offset
THEOREM_CLASSES: dict[str, ClassSpec] = {
    "3conn-drawing": ClassSpec(True, False, Fraction(1, 3), Fraction(4, 3), "n = 8 or n >= 10"),
    "drawing": ClassSpec(False, False, Fraction(1, 4), Fraction(6, 4), "n = 6 or n >= 8"),
    "3conn-graph": ClassSpec(True, False, Fraction(2, 5), Fraction(6, 5), "n >= 16 or n in {12, 14}"),
    "graph": ClassSpec(False, False, Fraction(3, 10), Fraction(14, 10), "n >= 10 or n = 8"),
    "proper-cell": ClassSpec(False, True, Fraction(1, 4), Fraction(6, 4), "n = 6 or n >= 8"),
    "proper-cell-3conn": ClassSpec(True, True, Fraction(1, 3), Fraction(4, 3), "n = 8 or n >= 10"),
}


def _threshold_ok(cls: str, n: int) -> bool:
    if cls in ("3conn-drawing", "proper-cell-3conn"):
        return n == 8 or n >= 10
    if cls in ("drawing", "proper-cell"):
        return n == 6 or n >= 8
    if cls == "3conn-graph":
        return n >= 16 or n in (12, 14)
    return n >= 10 or n == 8


@dataclass(frozen=True)
class BoundReport:
    cls: str
    n: int
    mu: int
    bound: Fraction
    passed: bool
    tight: bool


def check_theorem_bound(d: Drawing, cls: str, min_n: int | None = None) -> BoundReport:
    """Compare ``mu`` with the lower bound of a theorem class.

    ``min_n`` replaces the size threshold; it applies only to the proper-cell
    classes, whose threshold is an assumption (default: the simple-class one).
    """
    # deferred: saturation depends on drawing only, avoid import cycle at module load
    from .saturation import check_saturation

    if cls not in THEOREM_CLASSES:
        raise MatchingError(f"unknown class {cls!r}; choose from {', '.join(THEOREM_CLASSES)}")
    spec = THEOREM_CLASSES[cls]
    diag = validate(d)
    if not diag.n1:
        raise MatchingError("precondition: the drawing has loops (N1 fails)")
    if spec.proper:
        if min_n is not None:
            if d.n < min_n:
                raise MatchingError(f"precondition: n = {d.n} below configured threshold {min_n}")
        elif not _threshold_ok(cls, d.n):
            raise MatchingError(f"precondition: n = {d.n} violates {spec.threshold}")
        if not check_saturation(d).proper_cell_saturated:
            raise MatchingError("precondition: drawing is not proper-cell-saturated")
    else:
        if min_n is not None:
            raise MatchingError("size threshold is fixed for simple classes")
        if not _threshold_ok(cls, d.n):
            raise MatchingError(f"precondition: n = {d.n} violates {spec.threshold}")
        if not check_saturation(d).simple_saturated:
            raise MatchingError("precondition: drawing is not simple-saturated")
    if spec.needs_3conn and not is_three_connected(d):
        raise MatchingError("precondition: graph is not 3-connected")
    mu = max_matching(d).mu
    bound = spec.bound * d.n + spec.offset
    return BoundReport(cls, d.n, mu, bound, mu >= bound, mu == bound)


def deficiency_from_drawing(d: Drawing, S: Iterable[int]) -> int:
    _, odd, _ = components_minus(d, S)
    return odd - len(set(S))
