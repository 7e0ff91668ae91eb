import itertools

import pytest

from jetfiber.components import decompose, symmetry_permutation, witness_jet, jet_member
from jetfiber.graph import (Graph, build_graph, dynkin_d4_check, intersection_poset, key_certificates,
                            maximal_elements, pairwise_intersections, symmetry_coherent)
from jetfiber.jets import Surface

STAR = "graph Gamma { Z0 -- Z1; Z0 -- Z2; Z0 -- Z3; }"


@pytest.fixture(scope="module")
def posets():
    out = {}
    for s in Surface:
        for m in (5, 6):
            dec = decompose(s, m)
            out[(s, m)] = (dec, intersection_poset(dec.components))
    return out


def _records(report):
    return {r.pair: r for r in report.records}


@pytest.mark.parametrize("surface", list(Surface))
@pytest.mark.parametrize("m", [5, 6])
def test_maximal_elements(surface, m, posets):
    _, report = posets[(surface, m)]
    assert sorted(r.pair for r in maximal_elements(report.records)) == [("Z0", "Z1"), ("Z0", "Z2"), ("Z0", "Z3")]
    assert report.ok
    assert report.graph.to_dot() == STAR


def test_outer_pair_record(posets):
    rec = _records(posets[(Surface.D40, 5)][1])
    z12 = rec[("Z1", "Z2")]
    assert not z12.maximal
    assert ("Z0", "Z1") in z12.strict_subset_of and ("Z0", "Z2") in z12.strict_subset_of
    assert rec[("Z0", "Z1")].maximal


def test_center_pairs_incomparable_by_witness(posets):
    dec, report = posets[(Surface.D40, 5)]
    rec = _records(report)
    gamma = witness_jet(5, "(0,0,t^2)")
    assert jet_member(gamma, dec["Z0"]) and jet_member(gamma, dec["Z1"])
    assert not jet_member(gamma, dec["Z2"])
    assert ("Z0", "Z2") not in rec[("Z0", "Z1")].strict_subset_of


def test_inclusion_transitive(posets):
    for _, report in posets.values():
        rec = report.records

        def sub(a, b):
            return all(a.contained_in[k]["result"] for k in b.pair)

        for a, b, c in itertools.permutations(rec, 3):
            if sub(a, b) and sub(b, c):
                assert sub(a, c)


@pytest.mark.parametrize("surface", list(Surface))
@pytest.mark.parametrize("m", [5, 6])
def test_key_certificates(surface, m, posets):
    dec, _ = posets[(surface, m)]
    certs = key_certificates(dec.components)
    assert [c["element"] for c in certs] == ["x2", "z2" if surface is Surface.D40 else "y2"]
    assert all(c["member"] and c["tier"] == "symbolic" for c in certs)


def test_symmetry_coherence(posets):
    for dec, report in posets.values():
        perms = {w: symmetry_permutation(dec.components, w) for w in ("PSI1", "PSI2")}
        assert symmetry_coherent(report.records, perms)


def test_pairwise_intersections_needs_four():
    dec = decompose("d40", 5)
    with pytest.raises(ValueError):
        pairwise_intersections(dec.components[:3])


def test_maximal_elements_empty():
    assert maximal_elements([]) == []


def test_build_graph_examples():
    labels = ["Z0", "Z1", "Z2", "Z3"]
    g = build_graph(labels, [])
    assert g.edges == () and len(g.vertices) == 4
    assert g.to_dot() == "graph Gamma { }"


def test_dynkin_check():
    v = ("Z0", "Z1", "Z2", "Z3")
    assert dynkin_d4_check(Graph(v, (("Z0", "Z1"), ("Z0", "Z2"), ("Z0", "Z3"))))
    assert not dynkin_d4_check(Graph(v, (("Z0", "Z1"), ("Z1", "Z2"), ("Z2", "Z3"))))
    assert not dynkin_d4_check(Graph(v, (("Z0", "Z1"), ("Z1", "Z2"), ("Z2", "Z3"), ("Z0", "Z3"))))
    assert not dynkin_d4_check(Graph(v[:3], (("Z0", "Z1"), ("Z0", "Z2"))))
    # star centred elsewhere is still D4
    assert dynkin_d4_check(Graph(v, (("Z1", "Z0"), ("Z1", "Z2"), ("Z1", "Z3"))))


@pytest.mark.parametrize("surface", list(Surface))
def test_graph_order_seven(surface):
    dec = decompose(surface, 7)
    report = intersection_poset(dec.components)
    assert dynkin_d4_check(report.graph) and report.graph.to_dot() == STAR
