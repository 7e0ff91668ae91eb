import pytest

from jetfiber.components import (Jet, VerificationError, apply_symmetry, component_ideal, decompose,
                                 family_witness, jet_member, limit, stable_iso_check, symmetry_permutation,
                                 witness_jet)
from jetfiber.ideal import build_J, build_L, dimension, ideal_contains
from jetfiber.jets import Surface
from jetfiber.poly import parse, y, z

SURFACES = list(Surface)


@pytest.fixture(scope="module")
def decomps():
    return {(s, m): decompose(s, m) for s in SURFACES for m in (5, 6)}


def test_d40_Z1_at_order_five():
    c = component_ideal("d40", 5, "Z1")
    assert c.dim == 11 and c.localizer == z(1)
    assert parse("y1") in c.sat_ideal
    assert parse("y2*z1^2 + x2^2") in c.sat_ideal


def test_d40_Z0_is_shifted_surface():
    c = component_ideal("d40", 6, "Z0")
    assert c.localizer is None and c.dim == 13
    assert parse("x3^2 + y2^2*z2 + y2*z2^2") in c.sat_ideal
    assert c.evidence["stable_factor"]


def test_d41_Z0_at_order_five_is_coordinate_space():
    c = component_ideal("d41", 5, "Z0")
    assert c.sat_ideal.same_as(build_L((3, 2, 2), 5))
    assert c.evidence["equals_L322"]


def test_d41_Z0_charts_agree():
    for m in (6, 7, 8):
        c = component_ideal("d41", m, "Z0")
        assert c.evidence["charts_agree"] and c.dim == 2 * m + 1


def test_component_rejects_small_order():
    with pytest.raises(ValueError):
        component_ideal("d40", 4, "Z1")
    with pytest.raises(ValueError):
        decompose("d41", 3)
    with pytest.raises(ValueError):
        component_ideal("d40", 5, "Z7")


@pytest.mark.parametrize("surface", SURFACES)
def test_sat_contains_closed(surface, decomps):
    for c in decomps[(surface, 5)].components:
        assert ideal_contains(c.sat_ideal, c.closed_ideal)


@pytest.mark.parametrize("surface", SURFACES)
@pytest.mark.parametrize("m", [5, 6])
def test_decompose_dimensions_and_distinctness(surface, m, decomps):
    dec = decomps[(surface, m)]
    assert [c.label for c in dec.components] == ["Z0", "Z1", "Z2", "Z3"]
    assert all(c.dim == 2 * m + 1 for c in dec.components)
    for a in dec.components:
        for b in dec.components:
            if a is not b:
                assert not ideal_contains(a.sat_ideal, b.sat_ideal)


def test_decompose_order_seven():
    dec = decompose("d40", 7)
    assert [c.dim for c in dec.components] == [15] * 4


def test_decompose_witnesses(decomps):
    assert decomps[(Surface.D40, 5)].witnesses["Z1"] == "(0,0,t)"
    # for the second surface (0,t,0) lies on Z2 alone (Z1 contains y1), so it separates Z2
    d41 = decomps[(Surface.D41, 5)].witnesses
    assert d41["Z1"] == "(0,0,t)" and d41["Z2"].endswith("(0, t, 0)")


@pytest.mark.parametrize("surface", SURFACES)
@pytest.mark.parametrize("m", [5, 6])
def test_symmetry_permutations(surface, m, decomps):
    comps = decomps[(surface, m)].components
    assert symmetry_permutation(comps, "PSI1") == {"Z0": "Z0", "Z1": "Z2", "Z2": "Z1", "Z3": "Z3"}
    assert symmetry_permutation(comps, "PSI2") == {"Z0": "Z0", "Z1": "Z1", "Z2": "Z3", "Z3": "Z2"}


def test_apply_symmetry_examples(decomps):
    d40 = decomps[(Surface.D40, 5)]
    assert apply_symmetry("d40", "PSI1", d40["Z1"], d40.components).label == "Z2"
    assert apply_symmetry("d40", "PSI1", d40["Z3"], d40.components).label == "Z3"
    d41 = decomps[(Surface.D41, 6)]
    assert apply_symmetry("d41", "PSI2", d41["Z0"], d41.components).label == "Z0"
    with pytest.raises(ValueError):
        apply_symmetry("d41", "PSI1", d40["Z1"], d40.components)


def test_stable_iso():
    assert all(stable_iso_check(m) for m in range(6, 13))
    with pytest.raises(ValueError):
        stable_iso_check(5)


def test_jet_member_examples(decomps):
    d40 = decomps[(Surface.D40, 5)]
    gamma = witness_jet(5, "(0,0,t^2)")
    assert jet_member(gamma, d40["Z0"])
    assert not jet_member(gamma, d40["Z2"])
    d41 = decomps[(Surface.D41, 5)]
    P = witness_jet(5, "(0,t^2,t^2)")
    assert jet_member(P, d41["Z0"]) and jet_member(P, d41["Z3"])
    with pytest.raises(ValueError):
        jet_member(witness_jet(5, "(0,0,st+t^2)"), d40["Z1"])
    with pytest.raises(ValueError):
        jet_member(witness_jet(6, "(0,0,t)"), d40["Z1"])


def test_family_witness_examples():
    assert family_witness(witness_jet(5, "(0,0,st+t^2)"), build_J("d40", 1, 5), z(1))
    assert family_witness(witness_jet(5, "(0,st+t^2,st+t^2)"), build_J("d41", 3, 5), y(1))
    assert family_witness(witness_jet(5, "(0,st,0)"), build_J("d40", 2, 5), y(1))
    # the chart coordinate must not vanish identically along the family
    assert not family_witness(witness_jet(5, "(0,0,st+t^2)"), build_J("d40", 1, 5), y(2))


def test_limit_drops_parameter():
    fam = witness_jet(5, "(0,st+t^2,st+t^2)")
    assert str(limit(fam)) == str(witness_jet(5, "(0,t^2,t^2)"))


def test_jet_parse_and_truncation():
    j = Jet.parse(2, "t^3", "1 + t", "t^2")
    assert j.x == (0, 0, 0) and j.y == (1, 1, 0) and j.z == (0, 0, 1)
    assert Jet.parse(2, "s*t").param
    with pytest.raises(ValueError):
        witness_jet(5, "(1,1,1)")


def test_dimension_of_components_matches_certificate(decomps):
    for (surface, m), dec in decomps.items():
        for c in dec.components:
            if c.certificate is not None:
                assert 3 * (m + 1) - c.certificate.height == c.dim == dimension(c.sat_ideal)


def test_verification_error_is_assertion():
    assert issubclass(VerificationError, AssertionError)
