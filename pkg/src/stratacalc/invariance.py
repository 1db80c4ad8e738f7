"""Genus-lowering graph operators and their linear extension to classes.

Three elementary operations send a decorated graph on a genus-g ambient to an
exact rational class on the possibly disconnected genus-(g-1) ambient carrying
two extra legs labelled i and j:

* ``cut_edges`` - cut one edge into two new legs, label them i/j both ways,
  and decorate an extra psi^level onto the i leg (coefficient 1/2) or onto the
  j leg (coefficient (-1)^level / 2);
* ``reduce_genus`` - drop the genus of one vertex by one and attach legs i, j
  to it with psi^(level-1-m) and psi^m, coefficient (1/2)(-1)^(m+1);
* ``split_vertices`` - split one vertex into two, distributing genus, legs,
  edge ends and kappa factors in all possible ways, leg i (psi^(level-1-m)) on
  the first part and leg j (psi^m) on the second, coefficient (1/2)(-1)^(m+1).

Unstable outputs are discarded; isomorphic outputs accumulate coefficients.
The new labels are the two integers following the largest input marking, so a
class on markings 1..n acquires legs n+1 (= i) and n+2 (= j).

Everything is pure and deterministic: the result is independent of the
evaluation order because terms merge by canonical form.
"""

from __future__ import annotations

from fractions import Fraction

from .classes import AmbientSignature, TautClass, zero_class
from .errors import SignatureError
from .graphs import DecoratedGraph, DualGraph, arithmetic_genus

__all__ = [
    "cut_edges",
    "reduce_genus",
    "split_vertices",
    "invariance_operator",
    "invariance_parts",
]


def _as_input(graph) -> DecoratedGraph:
    if isinstance(graph, DualGraph):
        graph = graph.decorate()
    graph.require_valid()
    return graph


def _fresh_labels(markings) -> tuple[int, int]:
    base = max(markings, default=0)
    return base + 1, base + 2


def _output_ambient(graph: DecoratedGraph, labels) -> AmbientSignature:
    i_lab, j_lab = labels
    if i_lab == j_lab or i_lab < 1 or j_lab < 1:
        raise SignatureError(f"new leg labels must be distinct positive markings, "
                             f"got {labels}")
    if {i_lab, j_lab} & set(graph.markings()):
        raise SignatureError(f"new leg labels {labels} collide with existing markings")
    # genus-0 inputs land on a genus -1 ambient, which can only hold the
    # zero class (every candidate output fails the p_a >= 0 invariant)
    pa = arithmetic_genus(graph)
    return AmbientSignature(pa - 1, frozenset(graph.markings()) | set(labels), 2)


def cut_edges(graph, level: int = 1, labels=None) -> TautClass:
    """Cut every edge in turn, in both i/j labellings, with an extra psi power.

    Each edge contributes four raw terms: psi^level multiplied onto the i leg
    with coefficient 1/2 and onto the j leg with coefficient (-1)^level / 2,
    under both label assignments.  The extra power multiplies any psi
    decoration already sitting on the cut half-edge.
    """
    graph = _as_input(graph)
    if level < 1:
        raise ValueError("level must be >= 1")
    labels = labels or _fresh_labels(set(graph.markings()))
    i_lab, j_lab = labels
    ambient = _output_ambient(graph, labels)
    on_j = Fraction((-1) ** level, 2)
    terms = []
    for idx, (v1, p1, v2, p2) in enumerate(graph.edges):
        rest = graph.edges[:idx] + graph.edges[idx + 1:]
        for (iv, ip), (jv, jp) in (((v1, p1), (v2, p2)), ((v2, p2), (v1, p1))):
            for di, dj, coeff in ((level, 0, Fraction(1, 2)), (0, level, on_j)):
                legs = graph.legs + ((iv, i_lab, ip + di), (jv, j_lab, jp + dj))
                cand = DecoratedGraph(graph.genera, legs, rest, graph.kappa)
                if not cand.validate():
                    terms.append((cand, coeff))
    return TautClass(ambient, terms)


def reduce_genus(graph, level: int = 1, labels=None) -> TautClass:
    """Lower the genus of each vertex by one, attaching decorated legs i and j.

    For every vertex of genus >= 1 and every m in 0..level-1 the new legs
    carry psi^(level-1-m) on i and psi^m on j, coefficient (1/2)(-1)^(m+1).
    """
    graph = _as_input(graph)
    if level < 1:
        raise ValueError("level must be >= 1")
    labels = labels or _fresh_labels(set(graph.markings()))
    i_lab, j_lab = labels
    ambient = _output_ambient(graph, labels)
    terms = []
    for v in range(graph.n_vertices):
        if graph.genera[v] < 1:
            continue
        genera = graph.genera[:v] + (graph.genera[v] - 1,) + graph.genera[v + 1:]
        for m in range(level):
            legs = graph.legs + ((v, i_lab, level - 1 - m), (v, j_lab, m))
            cand = DecoratedGraph(genera, legs, graph.edges, graph.kappa)
            if not cand.validate():
                terms.append((cand, Fraction((-1) ** (m + 1), 2)))
    return TautClass(ambient, terms)


def split_vertices(graph, level: int = 1, labels=None) -> TautClass:
    """Split each vertex into an ordered pair of vertices, leg i on the first.

    All ordered genus splits (g1, g2) are enumerated, every leg and edge end
    of the split vertex goes independently to either part, and the kappa
    factors are distributed as if they were extra half-edges (equal indices
    count as distinguishable, so repeated factors create multiplicity before
    canonical merging).  Coefficient (1/2)(-1)^(m+1) with psi^(level-1-m) on
    leg i and psi^m on leg j, m in 0..level-1.
    """
    graph = _as_input(graph)
    if level < 1:
        raise ValueError("level must be >= 1")
    labels = labels or _fresh_labels(set(graph.markings()))
    i_lab, j_lab = labels
    ambient = _output_ambient(graph, labels)
    terms = []
    new_v = graph.n_vertices   # index of the second part
    for v in range(graph.n_vertices):
        h = graph.genera[v]
        leg_slots = [idx for idx, (lv, _, _) in enumerate(graph.legs) if lv == v]
        end_slots = [(idx, side)
                     for idx, (e1, _, e2, _) in enumerate(graph.edges)
                     for side, vv in ((0, e1), (1, e2)) if vv == v]
        kappas = graph.kappa[v]
        n_items = len(leg_slots) + len(end_slots) + len(kappas)
        for m in range(level):
            coeff = Fraction((-1) ** (m + 1), 2)
            for g1 in range(h + 1):
                genera = (graph.genera[:v] + (g1,) + graph.genera[v + 1:]
                          + (h - g1,))
                for mask in range(1 << n_items):
                    legs = [list(t) for t in graph.legs]
                    edges = [list(t) for t in graph.edges]
                    for bit, idx in enumerate(leg_slots):
                        if mask >> bit & 1:
                            legs[idx][0] = new_v
                    off = len(leg_slots)
                    for bit, (idx, side) in enumerate(end_slots):
                        if mask >> (off + bit) & 1:
                            edges[idx][0 if side == 0 else 2] = new_v
                    off += len(end_slots)
                    keep, move = [], []
                    for bit, k in enumerate(kappas):
                        (move if mask >> (off + bit) & 1 else keep).append(k)
                    kappa = (graph.kappa[:v] + (tuple(keep),) + graph.kappa[v + 1:]
                             + (tuple(move),))
                    legs.append([v, i_lab, level - 1 - m])
                    legs.append([new_v, j_lab, m])
                    cand = DecoratedGraph(genera,
                                          tuple(tuple(t) for t in legs),
                                          tuple(tuple(t) for t in edges),
                                          kappa)
                    if not cand.validate():
                        terms.append((cand, coeff))
    return TautClass(ambient, terms)


def _check_domain(x: TautClass) -> None:
    if x.ambient.max_components != 1:
        raise SignatureError("the genus-lowering operator expects a connected ambient")


def invariance_parts(x: TautClass, level: int = 1) -> dict[str, TautClass]:
    """Per-operation provenance of the operator output (diagnostic mode).

    Returns ``{"cut": ..., "reduce": ..., "split": ...}`` on the common output
    ambient; their sum is ``invariance_operator(x, level)``.
    """
    _check_domain(x)
    labels = _fresh_labels(x.ambient.markings)
    out = AmbientSignature(x.ambient.genus - 1,
                           x.ambient.markings | set(labels), 2)
    parts = {"cut": zero_class(out), "reduce": zero_class(out), "split": zero_class(out)}
    for _, graph, coeff in x.items():
        parts["cut"] += coeff * cut_edges(graph, level, labels)
        parts["reduce"] += coeff * reduce_genus(graph, level, labels)
        parts["split"] += coeff * split_vertices(graph, level, labels)
    return parts


def invariance_operator(x: TautClass, level: int = 1,
                        experimental: bool = False) -> TautClass:
    """The genus-lowering linear operator: cut + reduce + split, extended linearly.

    Maps a class on a connected (g, n) ambient to a class on the at most
    2-component (g-1, n+2) ambient.  Only level 1 preserves the grading;
    higher levels are implemented as written but gated behind
    ``experimental=True``.
    """
    if level != 1 and not experimental:
        raise ValueError("level >= 2 is experimental; pass experimental=True")
    parts = invariance_parts(x, level)
    return parts["cut"] + parts["reduce"] + parts["split"]
