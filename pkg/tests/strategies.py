"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from jetfiber.field import GF2k
from jetfiber.poly import Polynomial, Var

SMALL_VARS = [Var(f, i) for f in "xyz" for i in range(3)]

variables = st.sampled_from(SMALL_VARS)
monomials = st.dictionaries(variables, st.integers(1, 3), max_size=3)
polynomials = st.lists(monomials, max_size=6).map(
    lambda ms: sum((Polynomial.monomial(m) for m in ms), Polynomial.zero()))


def field_elements(k: int):
    field = GF2k(k)
    return st.integers(0, field.order - 1).map(field)


def points(k: int):
    return st.fixed_dictionaries({v: field_elements(k) for v in SMALL_VARS})


renamings = st.permutations(SMALL_VARS).map(lambda perm: dict(zip(SMALL_VARS, perm)))
