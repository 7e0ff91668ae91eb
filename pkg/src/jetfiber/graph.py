"""Pairwise intersections of the components, their inclusion poset, and the
dual graph with the D4 star test."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .components import Component, Jet, LABELS, jet_member, witness_jet, symmetry_map
from .ideal import DEFAULT_BUDGET, Ideal, radical_member
from .jets import Surface
from .poly import Polynomial, Var, x, y, z

Pair = tuple[str, str]


def _pair(a: str, b: str) -> Pair:
    return tuple(sorted((a, b)))


@dataclass
class IntersectionRecord:
    pair: Pair
    ideal: Ideal
    maximal: bool = False
    strict_subset_of: list[Pair] = field(default_factory=list)
    contained_in: dict = field(default_factory=dict)  # component label -> evidence dict

    def to_dict(self) -> dict:
        return {"pair": list(self.pair), "maximal": self.maximal,
                "strict_subset_of": [list(p) for p in self.strict_subset_of],
                "contained_in": self.contained_in}


def _witness_jets(surface: Surface, m: int) -> list[tuple[str, Jet]]:
    """Fixed jets and their images under the symmetry group, used to refute inclusions."""
    out, seen = [], set()
    for name in ("(0,0,t)", "(0,t,0)", "(0,0,t^2)", "(0,t^2,t^2)"):
        base = witness_jet(m, name)
        frontier = [(name, base)]
        while frontier:
            label, jet = frontier.pop()
            key = (jet.x, jet.y, jet.z)
            if key in seen:
                continue
            seen.add(key)
            out.append((label if label == name else f"{label} = {jet}", jet))
            for which in ("PSI1", "PSI2"):
                frontier.append((f"{which}{label}", jet.substitute(symmetry_map(surface, which, m))))
    return out


def variety_contained(A: Ideal, comp: Component, witnesses, budget: int | None = DEFAULT_BUDGET) -> dict:
    """Decide V(A) subset of comp; evidence records how."""
    for name, jet in witnesses:
        if jet.annihilates(A.gb or A.gens) and not jet_member(jet, comp):
            return {"result": False, "tier": "witness", "jet": name}
    members = []
    for h in comp.generators():
        if not A.normal_form(h, budget):
            continue
        if not radical_member(h, A, budget):
            return {"result": False, "tier": "symbolic", "not_in_radical": str(h)}
        members.append(str(h))
    return {"result": True, "tier": "symbolic", "radical_members": members}


def pairwise_intersections(comps: Sequence[Component], budget: int | None = DEFAULT_BUDGET,
                           witnesses=None) -> list[IntersectionRecord]:
    """All six records with inclusions among them decided on the level of varieties."""
    comps = list(comps)
    if len(comps) != 4:
        raise ValueError("expected the four components")
    by_label = {c.label: c for c in comps}
    surface, m = comps[0].surface, comps[0].m
    if witnesses is None:
        witnesses = _witness_jets(surface, m)
    records = []
    for a, b in combinations(sorted(by_label), 2):
        ideal = by_label[a].sat_ideal + by_label[b].sat_ideal
        ideal.groebner(budget)
        rec = IntersectionRecord((a, b), ideal)
        for label, c in by_label.items():
            if label in (a, b):
                rec.contained_in[label] = {"result": True, "tier": "trivial"}
            else:
                rec.contained_in[label] = variety_contained(ideal, c, witnesses, budget)
        records.append(rec)

    def subset(r: IntersectionRecord, s: IntersectionRecord) -> bool:
        return all(r.contained_in[k]["result"] for k in s.pair)

    for r in records:
        r.strict_subset_of = [s.pair for s in records
                              if s is not r and subset(r, s) and not subset(s, r)]
        r.maximal = not r.strict_subset_of
    return records


def maximal_elements(records: Sequence[IntersectionRecord]) -> list[IntersectionRecord]:
    return [r for r in records if not r.strict_subset_of]


def pairwise_distinct(records: Sequence[IntersectionRecord]) -> bool:
    def subset(r, s):
        return all(r.contained_in[k]["result"] for k in s.pair)

    return all(not (subset(r, s) and subset(s, r)) for r, s in combinations(records, 2))


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Pair, ...]

    def degrees(self) -> dict[str, int]:
        deg = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def to_dot(self) -> str:
        body = "".join(f" {a} -- {b};" for a, b in self.edges)
        return f"graph Gamma {{{body} }}"

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def build_graph(comps, maximals: Sequence[IntersectionRecord]) -> Graph:
    labels = [c.label if isinstance(c, Component) else str(c) for c in comps]
    edges = sorted({_pair(*r.pair) for r in maximals})
    return Graph(tuple(labels), tuple(edges))


def dynkin_d4_check(g: Graph) -> bool:
    """True iff g is the star K_{1,3}: four vertices, three edges, degrees 3, 1, 1, 1."""
    if len(g.vertices) != 4 or len(set(g.vertices)) != 4:
        return False
    edges = {_pair(*e) for e in g.edges}
    if len(edges) != len(g.edges) or any(a == b for a, b in edges):
        return False
    return sorted(g.degrees().values()) == [1, 1, 1, 3]


# --- key radical memberships ----------------------------------------------

def key_certificates(comps: Sequence[Component], budget: int | None = DEFAULT_BUDGET) -> list[dict]:
    """The radical memberships that carry the inclusion and separation arguments."""
    by_label = {c.label: c for c in comps}
    surface = comps[0].surface
    wanted: list[tuple[Var, str, str]] = [(x(2), "Z1", "Z2")]
    if surface is Surface.D40:
        wanted.append((z(2), "Z0", "Z2"))
    else:
        wanted.append((y(2), "Z0", "Z1"))
    out = []
    for v, a, b in wanted:
        ideal = by_label[a].sat_ideal + by_label[b].sat_ideal
        ok = radical_member(Polynomial.var(v), ideal, budget)
        out.append({"element": str(v), "ideal": f"I({a}) + I({b})", "member": ok, "tier": "symbolic"})
    return out


def symmetry_coherent(records: Sequence[IntersectionRecord], perms: dict[str, dict[str, str]]) -> bool:
    """Every symmetry maps the edge set (and the strict-inclusion relation) onto itself."""
    edges = {r.pair for r in records if r.maximal}
    below = {(r.pair, s) for r in records for s in r.strict_subset_of}
    for perm in perms.values():
        def img(p):
            return _pair(perm[p[0]], perm[p[1]])

        if {img(e) for e in edges} != edges:
            return False
        if {(img(a), img(b)) for a, b in below} != below:
            return False
    return True


@dataclass
class PosetReport:
    surface: Surface
    m: int
    records: list[IntersectionRecord]
    graph: Graph
    certificates: list[dict]

    @property
    def ok(self) -> bool:
        maxi = {r.pair for r in maximal_elements(self.records)}
        expected = {("Z0", "Z1"), ("Z0", "Z2"), ("Z0", "Z3")}
        outer_in_center = all(r.contained_in["Z0"]["result"] for r in self.records)
        return (maxi == expected and pairwise_distinct(maximal_elements(self.records))
                and outer_in_center and dynkin_d4_check(self.graph)
                and all(c["member"] for c in self.certificates))

    def to_dict(self) -> dict:
        return {"surface": self.surface.value, "m": self.m, "ok": self.ok,
                "records": [r.to_dict() for r in self.records],
                "maximal": [list(r.pair) for r in maximal_elements(self.records)],
                "graph": self.graph.to_dict(), "dot": self.graph.to_dot(),
                "dynkin_d4": dynkin_d4_check(self.graph),
                "certificates": self.certificates}


def intersection_poset(comps: Sequence[Component], budget: int | None = DEFAULT_BUDGET) -> PosetReport:
    records = pairwise_intersections(comps, budget)
    graph = build_graph(comps, maximal_elements(records))
    return PosetReport(comps[0].surface, comps[0].m, records, graph, key_certificates(comps, budget))


__all__ = ["Graph", "IntersectionRecord", "LABELS", "PosetReport", "build_graph", "dynkin_d4_check",
           "intersection_poset", "key_certificates", "maximal_elements", "pairwise_distinct",
           "pairwise_intersections", "symmetry_coherent", "variety_contained"]
