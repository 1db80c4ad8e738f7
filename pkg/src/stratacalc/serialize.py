"""JSON interchange for graphs, classes and interior classes.

Graph schema::

    {"vertices": [{"genus": INT, "kappa": [INT, ...]}],
     "legs":     [{"vertex": INT, "marking": INT or "i" or "j", "psi": INT}],
     "edges":    [{"ends": [[V, SLOT], [V, SLOT]], "psi": [INT, INT]}]}

Class schema::

    {"ambient": {"genus": INT, "markings": [...], "max_components": INT},
     "terms":   [{"coeff": "P/Q", "graph": {...}}]}

Interior class schema::

    {"g": INT, "n": INT,
     "terms": [{"coeff": "P/Q", "kappa": [INT, ...], "psi": {"MARK": INT}}]}

Coefficients are reduced fraction strings.  The special marking tokens "i" and
"j" are accepted on input and resolved to the two integers following the
largest integer marking present; output always uses integers.  Half-edge slots
number the half-edges of a vertex, legs first.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .classes import AmbientSignature, TautClass
from .errors import InvalidGraphError
from .graphs import DecoratedGraph, DualGraph
from .pushforward import InteriorClass, InteriorMonomial


def coeff_str(c: Fraction) -> str:
    return str(Fraction(c))


def parse_coeff(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidGraphError(f"bad coefficient {s!r}: {exc}") from None


def _resolve_markings(raw_markings):
    """Map 'i'/'j' tokens to the two labels after the largest integer marking."""
    ints = [int(m) for m in raw_markings if not isinstance(m, str)]
    base = max(ints, default=0)
    table = {"i": base + 1, "j": base + 2}
    out = []
    for m in raw_markings:
        if isinstance(m, str):
            if m not in table:
                raise InvalidGraphError(f"unknown marking token {m!r}")
            out.append(table[m])
        else:
            out.append(int(m))
    return out


# -------------------------------------------------------------------- graphs

def graph_to_obj(g) -> dict:
    if isinstance(g, DualGraph):
        g = g.decorate()
    slot = [0] * g.n_vertices
    for v, _, _ in g.legs:
        slot[v] += 1     # legs occupy the leading slots of each vertex
    obj = {
        "vertices": [{"genus": g.genera[v], "kappa": list(g.kappa[v])}
                     for v in range(g.n_vertices)],
        "legs": [{"vertex": v, "marking": m, "psi": p} for v, m, p in g.legs],
        "edges": [],
    }
    for v1, p1, v2, p2 in g.edges:
        s1 = slot[v1]
        slot[v1] += 1
        s2 = slot[v2]
        slot[v2] += 1
        obj["edges"].append({"ends": [[v1, s1], [v2, s2]], "psi": [p1, p2]})
    return obj


def graph_from_obj(obj) -> DecoratedGraph:
    try:
        vertices = obj["vertices"]
        genera = tuple(int(v["genus"]) for v in vertices)
        kappa = tuple(tuple(int(k) for k in v.get("kappa", ())) for v in vertices)
        raw_legs = obj.get("legs", ())
        markings = _resolve_markings([leg["marking"] for leg in raw_legs])
        legs = tuple((int(leg["vertex"]), m, int(leg.get("psi", 0)))
                     for leg, m in zip(raw_legs, markings))
        edges = []
        used_slots = set()
        for e in obj.get("edges", ()):
            (v1, s1), (v2, s2) = e["ends"]
            for v, s in ((v1, s1), (v2, s2)):
                if (int(v), int(s)) in used_slots:
                    raise InvalidGraphError(
                        f"dangling half-edge: slot {s} at vertex {v} used twice")
                used_slots.add((int(v), int(s)))
            p1, p2 = e.get("psi", (0, 0))
            edges.append((int(v1), int(p1), int(v2), int(p2)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"malformed graph object: {exc}") from None
    graph = DecoratedGraph(genera, legs, tuple(edges), kappa)
    graph.require_valid()
    return graph


# ------------------------------------------------------------------- classes

def class_to_obj(x: TautClass) -> dict:
    return {
        "ambient": {
            "genus": x.ambient.genus,
            "markings": list(x.ambient.marking_tuple()),
            "max_components": x.ambient.max_components,
        },
        "terms": [{"coeff": coeff_str(c), "graph": graph_to_obj(g)}
                  for _, g, c in x.items()],
    }


def class_from_obj(obj) -> TautClass:
    try:
        amb = obj["ambient"]
        markings = _resolve_markings(amb.get("markings", ()))
        ambient = AmbientSignature(int(amb["genus"]), frozenset(markings),
                                   int(amb.get("max_components", 1)))
        terms = [(graph_from_obj(t["graph"]), parse_coeff(t["coeff"]))
                 for t in obj.get("terms", ())]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"malformed class object: {exc}") from None
    return TautClass(ambient, terms)


# ----------------------------------------------------------- interior classes

def interior_to_obj(x: InteriorClass) -> dict:
    return {
        "g": x.g,
        "n": x.n,
        "terms": [{"coeff": coeff_str(c), "kappa": list(m.kappa),
                   "psi": {str(mark): e for mark, e in m.psi}}
                  for m, c in x.items()],
    }


def interior_from_obj(obj) -> InteriorClass:
    try:
        terms = []
        for t in obj.get("terms", ()):
            mono = InteriorMonomial(
                tuple(int(k) for k in t.get("kappa", ())),
                {int(m): int(e) for m, e in t.get("psi", {}).items()})
            terms.append((mono, parse_coeff(t["coeff"])))
        return InteriorClass(int(obj["g"]), int(obj["n"]), terms)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"malformed interior class object: {exc}") from None


# ----------------------------------------------------------------- file layer

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def dump_file(obj, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(obj))


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
