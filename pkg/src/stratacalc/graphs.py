"""Stable dual graphs with kappa/psi decorations.

A dual graph records the combinatorial type of a nodal curve: vertices are
irreducible components labelled by geometric genus, edges are nodes, legs are
marked points.  A decorated graph carries in addition a kappa-class monomial
on every vertex and a psi exponent on every half-edge (legs and edge ends).

Conventions:

* vertices are indexed ``0..V-1``;
* legs are ``(vertex, marking, psi)`` triples; markings are pairwise-distinct
  positive integers;
* edges are ``(v1, psi1, v2, psi2)`` quadruples whose two ends are unordered;
  self-loops (``v1 == v2``) are allowed and count twice toward valence;
* kappa decorations are per-vertex multisets of integers >= 1 (an index-0
  kappa never appears as a stored decoration; it only arises as a pushforward
  scalar).

All values are immutable and hashable and every function is pure, so the
module is safe to use from concurrent contexts.  Canonical forms are computed
by invariant-based partition refinement followed by exhaustive search over the
residual vertex orderings; graphs here are tiny, so correctness beats
sophistication.
"""

from __future__ import annotations

import itertools
import json
import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .errors import InvalidGraphError, SizeGuardError

#: Hard cap on vertex orderings explored during canonicalization.
_ORDERING_GUARD = 1_000_000

#: automorphism_count is brute force; keep it honest.
_AUT_MAX_VERTICES = 8

_DEFAULT_MAX_GRAPHS = 100_000


def compositions(total: int, parts: int):
    """Yield every tuple of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Total-order-comparable byte encoding of a decorated graph up to isomorphism.

    Two decorated graphs have equal encodings exactly when some relabelling of
    vertices, edges and half-edge slots identifies them, preserving genus,
    markings, kappa multisets, psi exponents and incidence.
    """

    encoding: bytes

    def hex(self) -> str:
        return self.encoding.hex()

    def __repr__(self):
        return f"CanonicalForm({self.encoding.hex()[:20]})"


@dataclass(frozen=True)
class DualGraph:
    """Undecorated dual graph of a (possibly disconnected) nodal curve."""

    genera: tuple[int, ...]
    legs: tuple[tuple[int, int], ...] = ()   # (vertex, marking)
    edges: tuple[tuple[int, int], ...] = ()  # (v1, v2) with v1 <= v2

    def __post_init__(self):
        genera = tuple(int(x) for x in self.genera)
        legs = tuple(sorted(((int(v), int(m)) for v, m in self.legs),
                            key=lambda t: (t[1], t[0])))
        edges = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.edges))
        object.__setattr__(self, "genera", genera)
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "edges", edges)

    def decorate(self) -> "DecoratedGraph":
        """The trivially decorated graph (empty kappa, psi = 0 everywhere)."""
        return DecoratedGraph(
            genera=self.genera,
            legs=tuple((v, m, 0) for v, m in self.legs),
            edges=tuple((a, 0, b, 0) for a, b in self.edges),
            kappa=((),) * len(self.genera),
        )


@dataclass(frozen=True)
class DecoratedGraph:
    """Dual graph with a kappa monomial per vertex and a psi power per half-edge."""

    genera: tuple[int, ...]
    legs: tuple[tuple[int, int, int], ...] = ()        # (vertex, marking, psi)
    edges: tuple[tuple[int, int, int, int], ...] = ()  # (v1, psi1, v2, psi2)
    kappa: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        genera = tuple(int(x) for x in self.genera)
        legs = tuple(sorted(((int(v), int(m), int(p)) for v, m, p in self.legs),
                            key=lambda t: (t[1], t[0], t[2])))
        edges = []
        for v1, p1, v2, p2 in self.edges:
            a, b = (int(v1), int(p1)), (int(v2), int(p2))
            if b < a:
                a, b = b, a
            edges.append((a[0], a[1], b[0], b[1]))
        kappa = self.kappa
        if not kappa and genera:
            kappa = ((),) * len(genera)
        kappa = tuple(tuple(sorted(int(k) for k in ks)) for ks in kappa)
        object.__setattr__(self, "genera", genera)
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        object.__setattr__(self, "kappa", kappa)

    # ------------------------------------------------------------------ shape

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def valence(self, v: int) -> int:
        """Legs plus edge ends at ``v``; a self-loop counts twice."""
        val = sum(1 for lv, _, _ in self.legs if lv == v)
        for v1, _, v2, _ in self.edges:
            val += (v1 == v) + (v2 == v)
        return val

    def markings(self) -> tuple[int, ...]:
        return tuple(sorted(m for _, m, _ in self.legs))

    def psi_of_marking(self, marking: int) -> int:
        for _, m, p in self.legs:
            if m == marking:
                return p
        raise KeyError(f"no leg with marking {marking}")

    def degree(self) -> int:
        """Total degree: #edges + sum of psi exponents + sum of kappa indices."""
        return (self.n_edges
                + sum(p for _, _, p in self.legs)
                + sum(p1 + p2 for _, p1, _, p2 in self.edges)
                + sum(sum(ks) for ks in self.kappa))

    def underlying(self) -> DualGraph:
        return DualGraph(self.genera,
                         tuple((v, m) for v, m, _ in self.legs),
                         tuple((v1, v2) for v1, _, v2, _ in self.edges))

    def components(self) -> list[frozenset[int]]:
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v1, _, v2, _ in self.edges:
            a, b = find(v1), find(v2)
            if a != b:
                parent[a] = b
        groups = defaultdict(set)
        for v in range(self.n_vertices):
            groups[find(v)].add(v)
        return [frozenset(vs) for vs in groups.values()]

    def relabeled(self, new_index) -> "DecoratedGraph":
        """Apply the vertex relabelling ``old -> new_index[old]``."""
        order = sorted(range(self.n_vertices), key=lambda old: new_index[old])
        return DecoratedGraph(
            tuple(self.genera[old] for old in order),
            tuple((new_index[v], m, p) for v, m, p in self.legs),
            tuple((new_index[v1], p1, new_index[v2], p2)
                  for v1, p1, v2, p2 in self.edges),
            tuple(self.kappa[old] for old in order),
        )

    # ------------------------------------------------------------- validation

    def validate(self) -> list[str]:
        """Return the list of violated invariants (empty means valid)."""
        diags = []
        V = self.n_vertices
        if V == 0:
            return ["empty graph: no vertices"]
        if len(self.kappa) != V:
            return [f"decoration arity mismatch: {len(self.kappa)} kappa entries "
                    f"for {V} vertices"]
        for v, g in enumerate(self.genera):
            if g < 0:
                diags.append(f"negative genus at vertex {v}")
        dangling = False
        for idx, (v, m, p) in enumerate(self.legs):
            if not 0 <= v < V:
                diags.append(f"dangling half-edge: leg {idx} references vertex {v}")
                dangling = True
            if m < 1:
                diags.append(f"invalid marking label {m} on leg {idx}")
            if p < 0:
                diags.append(f"negative psi exponent on leg {idx}")
        for m, count in sorted(Counter(m for _, m, _ in self.legs).items()):
            if count > 1:
                diags.append(f"duplicate marking: {m}")
        for idx, (v1, p1, v2, p2) in enumerate(self.edges):
            for v in (v1, v2):
                if not 0 <= v < V:
                    diags.append(f"dangling half-edge: edge {idx} references vertex {v}")
                    dangling = True
            if p1 < 0 or p2 < 0:
                diags.append(f"negative psi exponent on edge {idx}")
        for v, ks in enumerate(self.kappa):
            if any(k < 1 for k in ks):
                diags.append(f"invalid kappa index at vertex {v} (indices must be >= 1)")
        if dangling:
            return diags
        for v in range(V):
            if 2 * self.genera[v] - 2 + self.valence(v) <= 0:
                diags.append(f"unstable vertex: {v} (genus {self.genera[v]}, "
                             f"valence {self.valence(v)})")
        if not diags:
            pa = arithmetic_genus(self)
            if pa < 0:
                diags.append(f"negative arithmetic genus: {pa}")
        return diags

    def require_valid(self) -> None:
        diags = self.validate()
        if diags:
            raise InvalidGraphError(diags)


def _as_decorated(g) -> DecoratedGraph:
    return g.decorate() if isinstance(g, DualGraph) else g


def validate(g) -> list[str]:
    """List of violated invariants of ``g`` (a DualGraph or DecoratedGraph)."""
    return _as_decorated(g).validate()


def arithmetic_genus(g) -> int:
    """sum of vertex genera + #edges - #vertices + 1 (any number of components)."""
    g = _as_decorated(g)
    return sum(g.genera) + g.n_edges - g.n_vertices + 1


def component_count(g) -> int:
    return len(_as_decorated(g).components())


def single_vertex(genus: int, legs=(), kappa=()) -> DecoratedGraph:
    """One-vertex decorated graph.

    ``legs`` is an iterable of markings or of ``(marking, psi)`` pairs.
    """
    norm = []
    for item in legs:
        if isinstance(item, tuple):
            m, p = item
        else:
            m, p = item, 0
        norm.append((0, m, p))
    return DecoratedGraph((genus,), tuple(norm), (), (tuple(kappa),))


def disjoint_union(a: DecoratedGraph, b: DecoratedGraph) -> DecoratedGraph:
    off = a.n_vertices
    return DecoratedGraph(
        a.genera + b.genera,
        a.legs + tuple((v + off, m, p) for v, m, p in b.legs),
        a.edges + tuple((v1 + off, p1, v2 + off, p2) for v1, p1, v2, p2 in b.edges),
        a.kappa + b.kappa,
    )


# --------------------------------------------------------------- canonical form

def _dense_ranks(keys):
    ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ranks[k] for k in keys]


def _refinement_colors(g: DecoratedGraph) -> list[int]:
    """Isomorphism-invariant vertex colors: static data refined along incidence."""
    legs_at = defaultdict(list)
    for v, m, p in g.legs:
        legs_at[v].append((m, p))
    base = [(g.genera[v], g.kappa[v], tuple(sorted(legs_at[v])), g.valence(v))
            for v in range(g.n_vertices)]
    colors = _dense_ranks(base)
    incident = defaultdict(list)   # v -> [(own psi, other vertex, other psi)]
    for v1, p1, v2, p2 in g.edges:
        incident[v1].append((p1, v2, p2))
        incident[v2].append((p2, v1, p1))
    while True:
        keys = [(colors[v], tuple(sorted((p, colors[u], q) for p, u, q in incident[v])))
                for v in range(g.n_vertices)]
        new = _dense_ranks(keys)
        if new == colors:
            return colors
        colors = new


def _candidate_orders(g: DecoratedGraph):
    colors = _refinement_colors(g)
    groups = defaultdict(list)
    for v, c in enumerate(colors):
        groups[c].append(v)
    cells = [groups[c] for c in sorted(groups)]
    if prod(factorial(len(cell)) for cell in cells) > _ORDERING_GUARD:
        raise SizeGuardError(
            f"canonicalization search space too large for {g.n_vertices} vertices")
    for combo in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        yield tuple(itertools.chain.from_iterable(combo))


def _encode_under(g: DecoratedGraph, order):
    pos = {old: new for new, old in enumerate(order)}
    verts = tuple((g.genera[o], g.kappa[o]) for o in order)
    legs = tuple(sorted((m, pos[v], p) for v, m, p in g.legs))
    edges = []
    for v1, p1, v2, p2 in g.edges:
        a, b = (pos[v1], p1), (pos[v2], p2)
        if b < a:
            a, b = b, a
        edges.append((a[0], a[1], b[0], b[1]))
    return (verts, legs, tuple(sorted(edges)))


@lru_cache(maxsize=1 << 18)
def _canonicalize_cached(g: DecoratedGraph):
    g.require_valid()
    best_key = None
    best_order = None
    for order in _candidate_orders(g):
        key = _encode_under(g, order)
        if best_key is None or key < best_key:
            best_key, best_order = key, order
    new_index = [0] * g.n_vertices
    for new, old in enumerate(best_order):
        new_index[old] = new
    canon = g.relabeled(new_index)
    encoding = json.dumps(best_key, separators=(",", ":")).encode("ascii")
    return CanonicalForm(encoding), canon


def canonicalize(g) -> tuple[CanonicalForm, DecoratedGraph]:
    """Canonical form and canonical representative of ``g`` up to isomorphism.

    Deterministic across runs: the representative is the relabelling with the
    lexicographically least encoding among all orderings compatible with the
    refinement classes.
    """
    return _canonicalize_cached(_as_decorated(g))


def canonical_form(g) -> CanonicalForm:
    return canonicalize(g)[0]


# --------------------------------------------------------------- automorphisms

def _edge_descriptor(v1, p1, v2, p2):
    a, b = (v1, p1), (v2, p2)
    return (a, b) if a <= b else (b, a)


def automorphism_count(g) -> int:
    """Order of the decoration- and marking-preserving automorphism group.

    Brute force over vertex permutations; for each one the compatible
    half-edge matchings are counted exactly (parallel edges permute freely,
    a self-loop with equal psi on both ends may flip).
    """
    g = _as_decorated(g)
    g.require_valid()
    V = g.n_vertices
    if V > _AUT_MAX_VERTICES:
        raise SizeGuardError(f"automorphism_count limited to {_AUT_MAX_VERTICES} vertices")

    legs_at = defaultdict(list)
    for v, m, p in g.legs:
        legs_at[v].append((m, p))
    pin = [(g.genera[v], g.kappa[v], tuple(sorted(legs_at[v]))) for v in range(V)]
    cells = defaultdict(list)
    for v in range(V):
        cells[pin[v]].append(v)

    target = Counter(_edge_descriptor(*e) for e in g.edges)
    sym = sum(mult for desc, mult in target.items() if desc[0] == desc[1])
    matchings = prod(factorial(mult) for mult in target.values()) * 2 ** sym

    count = 0
    cell_list = [cells[k] for k in sorted(cells)]
    for combo in itertools.product(*(itertools.permutations(c) for c in cell_list)):
        perm = [0] * V
        for cell, image in zip(cell_list, combo):
            for src, dst in zip(cell, image):
                perm[src] = dst
        mapped = Counter(_edge_descriptor(perm[v1], p1, perm[v2], p2)
                         for v1, p1, v2, p2 in g.edges)
        if mapped == target:
            count += 1
    return count * matchings


# ----------------------------------------------------------------- enumeration

def _graph_cap() -> int:
    raw = os.environ.get("STRATA_MAX_GRAPHS", "")
    try:
        return int(raw) if raw else _DEFAULT_MAX_GRAPHS
    except ValueError:
        return _DEFAULT_MAX_GRAPHS


def enumerate_stable_graphs(g: int, n: int, max_edges: int,
                            min_edges: int | None = None) -> list[DualGraph]:
    """All connected stable dual graphs of arithmetic genus ``g`` with markings
    ``1..n``, one canonical representative per isomorphism class, sorted by
    encoding.

    By default the edge count ranges over ``1..max_edges`` (the proper
    degenerations); ``max_edges == 0`` yields the smooth graph alone.  Pass
    ``min_edges=0`` explicitly to include the smooth graph alongside the
    degenerate ones.
    """
    if g < 0 or n < 0 or max_edges < 0:
        raise ValueError("g, n and max_edges must be non-negative")
    if min_edges is None:
        min_edges = min(1, max_edges)
    if not 0 <= min_edges <= max_edges:
        raise ValueError("need 0 <= min_edges <= max_edges")
    cap = _graph_cap()

    found: dict[CanonicalForm, DualGraph] = {}
    vertex_budget = 2 * g - 2 + n   # every stable vertex contributes >= 1
    for e in range(min_edges, max_edges + 1):
        for V in range(1, min(vertex_budget, e + 1) + 1):
            total_genus = g - e + V - 1
            if total_genus < 0:
                continue
            pairs = [(u, v) for u in range(V) for v in range(u, V)]
            for genera in compositions(total_genus, V):
                for leg_to in itertools.product(range(V), repeat=n):
                    legs = tuple((leg_to[m - 1], m) for m in range(1, n + 1))
                    for chosen in itertools.combinations_with_replacement(pairs, e):
                        val = [0] * V
                        for v, _ in legs:
                            val[v] += 1
                        for u, v in chosen:
                            val[u] += 1
                            val[v] += 1
                        if any(2 * genera[v] - 2 + val[v] <= 0 for v in range(V)):
                            continue
                        dual = DualGraph(genera, legs, chosen)
                        if component_count(dual) != 1:
                            continue
                        form, canon = canonicalize(dual.decorate())
                        if form not in found:
                            found[form] = canon.underlying()
                            if len(found) > cap:
                                raise SizeGuardError(
                                    f"enumeration exceeded STRATA_MAX_GRAPHS={cap}")
    return [found[f] for f in sorted(found)]
