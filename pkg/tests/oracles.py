"""Independent brute-force oracles used to cross-check the package.

These deliberately avoid the library's canonicalization and enumeration code
paths: isomorphism is decided by raw permutation search, automorphisms are
counted by literal half-edge bijections, and strata are regenerated through
one-edge degeneration moves.
"""

from __future__ import annotations

import itertools
from collections import Counter

from stratacalc.graphs import DecoratedGraph, canonicalize, single_vertex


def _vertex_data(g: DecoratedGraph, v: int):
    legs = tuple(sorted((m, p) for lv, m, p in g.legs if lv == v))
    return (g.genera[v], g.kappa[v], legs)


def _descriptor(v1, p1, v2, p2):
    a, b = (v1, p1), (v2, p2)
    return (a, b) if a <= b else (b, a)


def iso_bruteforce(a: DecoratedGraph, b: DecoratedGraph) -> bool:
    """Decide isomorphism by trying every vertex bijection."""
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return False
    if sorted(a.genera) != sorted(b.genera):
        return False
    V = a.n_vertices
    b_edges = Counter(_descriptor(*e) for e in b.edges)
    for perm in itertools.permutations(range(V)):
        if any(_vertex_data(a, v) != _vertex_data(b, perm[v]) for v in range(V)):
            continue
        mapped = Counter(_descriptor(perm[v1], p1, perm[v2], p2)
                         for v1, p1, v2, p2 in a.edges)
        if mapped == b_edges:
            return True
    return False


def automorphisms_bruteforce(g: DecoratedGraph) -> int:
    """Count automorphisms by enumerating half-edge bijections edge by edge."""
    V = g.n_vertices
    edges = [((v1, p1), (v2, p2)) for v1, p1, v2, p2 in g.edges]
    total = 0
    for perm in itertools.permutations(range(V)):
        if any(_vertex_data(g, v) != _vertex_data(g, perm[v]) for v in range(V)):
            continue

        def count(i, used):
            if i == len(edges):
                return 1
            (a1, a2) = edges[i]
            want = ((perm[a1[0]], a1[1]), (perm[a2[0]], a2[1]))
            ways = 0
            for j, (b1, b2) in enumerate(edges):
                if used[j]:
                    continue
                used[j] = True
                if want == (b1, b2):
                    ways += count(i + 1, used)
                if want == (b2, b1):
                    ways += count(i + 1, used)
                used[j] = False
            return ways

        total += count(0, [False] * len(edges))
    return total


# ----------------------------------------------------------- strata by moves

def _degeneration_moves(g: DecoratedGraph):
    """One-edge degenerations: loop a vertex down a genus, or split it along a
    new connecting edge."""
    for v in range(g.n_vertices):
        if g.genera[v] >= 1:
            genera = g.genera[:v] + (g.genera[v] - 1,) + g.genera[v + 1:]
            yield DecoratedGraph(genera, g.legs, g.edges + ((v, 0, v, 0),), g.kappa)
    new_v = g.n_vertices
    for v in range(g.n_vertices):
        h = g.genera[v]
        leg_slots = [i for i, (lv, _, _) in enumerate(g.legs) if lv == v]
        end_slots = [(i, side) for i, (e1, _, e2, _) in enumerate(g.edges)
                     for side, vv in ((0, e1), (1, e2)) if vv == v]
        items = len(leg_slots) + len(end_slots)
        for g1 in range(h + 1):
            genera = g.genera[:v] + (g1,) + g.genera[v + 1:] + (h - g1,)
            for mask in range(1 << items):
                legs = [list(t) for t in g.legs]
                edges = [list(t) for t in g.edges]
                for bit, idx in enumerate(leg_slots):
                    if mask >> bit & 1:
                        legs[idx][0] = new_v
                for bit, (idx, side) in enumerate(end_slots):
                    if mask >> (len(leg_slots) + bit) & 1:
                        edges[idx][0 if side == 0 else 2] = new_v
                edges.append([v, 0, new_v, 0])
                yield DecoratedGraph(genera,
                                     tuple(tuple(t) for t in legs),
                                     tuple(tuple(t) for t in edges),
                                     g.kappa + ((),))


def degeneration_strata(g: int, n: int, max_edges: int):
    """Canonical forms of all stable graphs reachable by repeated one-edge
    moves from the smooth graph, grouped by edge count."""
    smooth = single_vertex(g, [(m, 0) for m in range(1, n + 1)])
    if smooth.validate():
        return {}
    levels = {0: {canonicalize(smooth)[0]: smooth}}
    for e in range(1, max_edges + 1):
        frontier = {}
        for graph in levels[e - 1].values():
            for cand in _degeneration_moves(graph):
                if cand.validate():
                    continue
                form, canon = canonicalize(cand)
                frontier.setdefault(form, canon)
        levels[e] = frontier
    return levels


# ------------------------------------------------------------- random graphs

def random_decorated_graph(rng, max_vertices=4, max_extra_edges=2, max_marks=3,
                           genus_range=(1, 6), decorated=True,
                           connected=True) -> DecoratedGraph:
    """A random valid decorated graph with arithmetic genus in ``genus_range``.

    Rejection sampling; graphs are connected by construction (random spanning
    tree plus extra edges) unless ``connected`` is False, in which case the
    tree edges are dropped at random.
    """
    lo, hi = genus_range
    while True:
        V = rng.randint(1, max_vertices)
        edges = []
        for v in range(1, V):
            if connected or rng.random() < 0.7:
                edges.append((rng.randrange(v), v))
        for _ in range(rng.randint(0, max_extra_edges)):
            u, v = rng.randrange(V), rng.randrange(V)
            edges.append((min(u, v), max(u, v)))
        n = rng.randint(0, max_marks)
        legs = tuple((rng.randrange(V), m,
                      rng.choice((0, 0, 0, 1, 2)) if decorated else 0)
                     for m in range(1, n + 1))
        edge_tuples = tuple(
            (u, rng.choice((0, 0, 1)) if decorated else 0,
             v, rng.choice((0, 0, 1)) if decorated else 0)
            for u, v in edges)
        genera = tuple(rng.randint(0, 3) for _ in range(V))
        kappa = tuple(
            tuple(sorted(rng.choice(((), (1,), (2,), (1, 1))))) if decorated else ()
            for _ in range(V))
        graph = DecoratedGraph(genera, legs, edge_tuples, kappa)
        if graph.validate():
            continue
        from stratacalc.graphs import arithmetic_genus, component_count
        if not lo <= arithmetic_genus(graph) <= hi:
            continue
        if connected and component_count(graph) != 1:
            continue
        return graph


def double_factorial_recursive(n: int) -> int:
    if n <= 0:
        return 1
    return n * double_factorial_recursive(n - 2)
