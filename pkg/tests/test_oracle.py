import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jetfiber.field import GF2k
from jetfiber.ideal import Ideal, build_J, build_L, dimension, radical_member
from jetfiber.jets import Surface, TruncationSpec, jet_coeffs
from jetfiber.oracle import (EnumerationTooLarge, cover_check, dimension_probe, has_nontrivial_factor,
                             irreducible_check_d40_form, point_count, point_masks, verify_center_cases)
from jetfiber.poly import Polynomial, Var, jet_variables, parse


def _fiber(surface, m):
    return Ideal(tuple(Polynomial.var(v) for v in TruncationSpec(1, 1, 1).killed())
                 + tuple(jet_coeffs(surface, m).coeffs), m)


def _naive_points(I: Ideal, k: int) -> set:
    """Plain enumeration of V(I) over GF(2^k) with one evaluation per point."""
    field = GF2k(k)
    vars_ = jet_variables(I.m)
    out = set()
    for vals in itertools.product(range(field.order), repeat=len(vars_)):
        pt = {v: field(a) for v, a in zip(vars_, vals)}
        if all(not g.evaluate(pt) for g in I.gens):
            out.add(vals)
    return out


def test_point_count_examples():
    assert point_count(build_L((1, 1, 1), 1), 1, 1).count == 8
    assert point_count(Ideal((parse("1"),), 1), 1, 1).count == 0
    with pytest.raises(EnumerationTooLarge):
        point_count(build_L((1, 1, 1), 4), 4, 2)


@pytest.mark.parametrize("surface", list(Surface))
def test_bit_sliced_count_matches_naive(surface):
    I = _fiber(surface, 2)
    assert point_count(I, 2, 1).count == len(_naive_points(I, 1))
    J = Ideal(tuple(jet_coeffs(surface, 1).coeffs), 1)
    assert point_count(J, 1, 2).count == len(_naive_points(J, 2))


def test_cover_m3_over_gf2_against_naive():
    for surface in Surface:
        fiber = _naive_points(_fiber(surface, 3), 1)
        union = set()
        for i in (1, 2, 3):
            union |= _naive_points(build_J(surface, i, 3), 1)
        assert fiber == union
        rep = cover_check(surface, 3, 1)
        assert rep["equal"] and rep["fiber_points"] == len(fiber)


@pytest.mark.parametrize("surface", list(Surface))
@pytest.mark.parametrize("m,k", [(3, 1), (3, 2), (4, 1), (4, 2)])
def test_cover(surface, m, k):
    assert cover_check(surface, m, k)["equal"]


def test_point_count_samples_lie_on_variety():
    I = build_J("d40", 1, 3)
    rep = point_count(I, 3, 2, samples=5)
    field = GF2k(2)
    for sample in rep.samples:
        pt = {v: field(sample.get(str(v), 0)) for v in jet_variables(3)}
        assert all(not g.evaluate(pt) for g in I.gens)


def test_enumeration_is_deterministic():
    I = _fiber("d41", 3)
    a = point_count(I, 3, 2, samples=3)
    b = point_count(I, 3, 2, samples=3)
    assert a == b


def test_dimension_probe_examples():
    assert dimension_probe(build_L((2, 1, 1), 3), 3) == 12 - 4
    J = build_J("d40", 1, 3)
    assert dimension_probe(J, 3) == dimension(J)
    two_lines = Ideal(tuple(Polynomial.var(v) for v in TruncationSpec(1, 1, 1).killed()) + (parse("x1*y1"),), 1)
    assert dimension_probe(two_lines, 1) == 2


def test_irreducibility_check():
    assert irreducible_check_d40_form()
    assert has_nontrivial_factor(parse("x0^2 + y0^2"), 1)
    assert has_nontrivial_factor(parse("x0*y0 + x0*z0"), 1)
    # x^2 + y*z is irreducible; x^2 + x*y + y^2 splits only once GF(4) is available
    assert not has_nontrivial_factor(parse("x0^2 + y0*z0"), 2)
    assert not has_nontrivial_factor(parse("x0^2 + x0*y0 + y0^2"), 1)
    assert has_nontrivial_factor(parse("x0^2 + x0*y0 + y0^2"), 2)


@pytest.mark.parametrize("m", range(6, 12))
def test_center_cases(m):
    rep = verify_center_cases(1, m)
    assert rep.ok, [c.to_dict() for c in rep.failed]
    codims = {c.check_id: c.detail.get("codim") for c in rep.checks}
    assert codims["center.codim"] == m + 2
    if m == 7:
        assert codims["center.case_ii"] == 10
    if m == 9:
        assert rep.checks[[c.check_id for c in rep.checks].index("center.case_iv")].detail["codims"] == [12] * 3


def test_center_case_range():
    with pytest.raises(ValueError):
        verify_center_cases(1, 5)
    with pytest.raises(ValueError):
        verify_center_cases(1, 12)


GF2_VARS = [Var(f, 1) for f in "xyz"]
lin_polys = st.lists(st.dictionaries(st.sampled_from(GF2_VARS), st.integers(1, 2), max_size=2),
                     min_size=1, max_size=3).map(lambda ms: sum((Polynomial.monomial(m) for m in ms),
                                                                Polynomial.zero()))


@settings(max_examples=200)
@given(st.lists(lin_polys, min_size=1, max_size=2), lin_polys)
def test_oracle_agrees_with_radical_membership(gens, h):
    # containment V(I) in V(h) on GF(2) and GF(4) points is implied by h in sqrt(I)
    base = tuple(Polynomial.var(v) for v in TruncationSpec(1, 1, 1).killed())
    I = Ideal(base + tuple(gens), 1)
    if radical_member(h, I):
        for k in (1, 2):
            _, (mI, mIh) = point_masks([I, I.with_gens(h)], k)
            assert np.array_equal(mI, mIh)
