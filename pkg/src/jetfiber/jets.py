"""Jet equations of the D4 surfaces in characteristic 2.

Substituting ``x = sum x_i t^i`` (and likewise for y, z) into a trivariate base
equation and expanding modulo ``t^(m+1)`` gives the jet coefficients
``f^(0), ..., f^(m)``; the order-m jet scheme is cut out by them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .poly import Polynomial, Var, parse, x, y, z


class Surface(enum.Enum):
    D40 = "d40"
    D41 = "d41"

    @classmethod
    def parse(cls, value) -> Surface:
        if isinstance(value, Surface):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown surface {value!r}; expected d40 or d41") from None

    @property
    def base_equation(self) -> Polynomial:
        if self is Surface.D40:
            return parse("x0^2 + y0^2*z0 + y0*z0^2")
        return parse("x0^2 + y0^2*z0 + y0*z0^2 + x0*y0*z0")

    def phi1(self, m: int) -> dict[Var, Polynomial]:
        """Swap y and z coefficientwise."""
        out = {}
        for i in range(m + 1):
            out[y(i)] = Polynomial.var(z(i))
            out[z(i)] = Polynomial.var(y(i))
        return out

    def phi2(self, m: int) -> dict[Var, Polynomial]:
        """``z_i -> y_i + z_i`` for D40, ``z_i -> x_i + y_i + z_i`` for D41."""
        out = {}
        for i in range(m + 1):
            img = Polynomial.var(y(i)) + Polynomial.var(z(i))
            if self is Surface.D41:
                img = img + Polynomial.var(x(i))
            out[z(i)] = img
        return out


class TruncationSpec(NamedTuple):
    """Kill the first p x-, q y- and r z-coefficients of a jet."""

    p: int
    q: int
    r: int

    @classmethod
    def parse(cls, text: str) -> TruncationSpec:
        parts = [int(s) for s in str(text).replace(" ", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected p,q,r; got {text!r}")
        return cls(*parts)

    def killed(self) -> list[Var]:
        return ([x(i) for i in range(self.p)] + [y(i) for i in range(self.q)]
                + [z(i) for i in range(self.r)])

    def __str__(self):
        return f"{self.p},{self.q},{self.r}"


def _series_mul(a: list[Polynomial], b: list[Polynomial], m: int) -> list[Polynomial]:
    out = [Polynomial.zero() for _ in range(m + 1)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(0, m + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def expand(base: Polynomial, m: int) -> list[Polynomial]:
    """Jet coefficients of a polynomial in x0, y0, z0 (read as x, y, z)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    series = {
        fam: [Polynomial.var(Var(fam, i)) for i in range(m + 1)] for fam in "xyz"
    }
    one = [Polynomial.one()] + [Polynomial.zero()] * m
    powers: dict = {}

    def power(fam: str, e: int) -> list[Polynomial]:
        if (fam, e) not in powers:
            powers[(fam, e)] = one if e == 0 else _series_mul(power(fam, e - 1), series[fam], m)
        return powers[(fam, e)]

    total = [Polynomial.zero()] * (m + 1)
    for term in base.terms:
        prod = one
        for v, e in term:
            if v.index != 0 or v.family not in series:
                raise ValueError(f"base equation must be in x0, y0, z0; found {v}")
            prod = _series_mul(prod, power(v.family, e), m)
        total = [s + t for s, t in zip(total, prod)]
    return total


@dataclass(frozen=True)
class JetSystem:
    surface: Surface
    order_m: int
    coeffs: tuple[Polynomial, ...] = field(repr=False)

    def __getitem__(self, l: int) -> Polynomial:
        return self.coeffs[l]

    def __len__(self):
        return len(self.coeffs)


@lru_cache(maxsize=64)
def jet_coeffs(surface, m: int) -> JetSystem:
    surface = Surface.parse(surface)
    return JetSystem(surface, m, tuple(expand(surface.base_equation, m)))


def reduce_mod_L(p: Polynomial, spec: TruncationSpec) -> Polynomial:
    """Image of p after setting the coordinates of L_pqr to zero."""
    killed = set(spec.killed())
    return Polynomial._from_set(t for t in p.terms if not any(v in killed for v, _ in t))


def closed_form_G(spec: TruncationSpec, l: int, with_xyz: bool = True) -> Polynomial:
    """Coefficient of t^l in g(x_p t^p + ..., y_q t^q + ..., z_r t^r + ...).

    With ``with_xyz=False`` the triple-product sum is dropped, which gives the
    same reduction for the D40 equation.
    """
    p, q, r = spec
    if l < 0:
        raise ValueError("l must be nonnegative")
    terms = []
    if l % 2 == 0 and l // 2 >= p:
        terms.append(((x(l // 2), 2),))
    for v in range(q, l + 1):
        w = l - 2 * v
        if w < r:
            break
        terms.append(((y(v), 2), (z(w), 1)))
    for w in range(r, l + 1):
        v = l - 2 * w
        if v < q:
            break
        terms.append(((y(v), 1), (z(w), 2)))
    if with_xyz:
        for u in range(p, l + 1):
            for v in range(q, l - u + 1):
                w = l - u - v
                if w < r:
                    break
                terms.append(((x(u), 1), (y(v), 1), (z(w), 1)))
    return Polynomial(terms)


def top_term(p: Polynomial, family: str) -> Polynomial:
    """Sum of the terms containing the ``family`` variable of largest index."""
    family = family.lower()
    idx = max((v.index for v in p.variables() if v.family == family), default=None)
    if idx is None:
        return Polynomial.zero()
    target = Var(family, idx)
    return Polynomial._from_set(t for t in p.terms if any(v == target for v, _ in t))


def remainder_after_top(p: Polynomial, family: str) -> Polynomial:
    """``p`` minus its top term in ``family`` (the h/F polynomials of the triangular systems)."""
    return p + top_term(p, family)


@dataclass(frozen=True)
class CaseCheck:
    case: int
    quantity: str  # "G", "T_y" or "T_z"
    predicted: Polynomial
    actual: Polynomial

    @property
    def match(self) -> bool:
        return self.predicted == self.actual

    def to_dict(self) -> dict:
        return {"case": self.case, "quantity": self.quantity, "predicted": str(self.predicted),
                "actual": str(self.actual), "match": self.match}


@dataclass(frozen=True)
class CaseReport:
    spec: TruncationSpec
    l: int
    G: Polynomial
    top_y: Polynomial
    top_z: Polynomial
    checks: tuple[CaseCheck, ...]

    @property
    def cases(self) -> list[int]:
        return [c.case for c in self.checks]

    @property
    def ok(self) -> bool:
        return all(c.match for c in self.checks)

    def to_dict(self) -> dict:
        p, q, r = self.spec
        return {"p": p, "q": q, "r": r, "l": self.l, "G": str(self.G),
                "T_y": str(self.top_y), "T_z": str(self.top_z),
                "checks": [c.to_dict() for c in self.checks], "ok": self.ok}


def _mono(*factors) -> Polynomial:
    return Polynomial.monomial(dict(factors))


def applicable_cases(spec: TruncationSpec, l: int) -> list[int]:
    p, q, r = spec
    cases = []
    if l < 2 * p and l < 2 * q + r and l < q + 2 * r:
        cases.append(1)
    if l == 2 * p and l < 2 * q + r and l < q + 2 * r:
        cases.append(2)
    if p > q == r and l == 2 * p == 3 * q:
        cases.append(3)
    if p >= q > r and l >= 2 * p == q + 2 * r:
        cases.append(4)
    if p >= r > q and l >= 2 * p == 2 * q + r:
        cases.append(5)
    if p > q == r and l > 3 * q:
        cases.extend([6, 7])
    return cases


def verify_G_lemma(spec: TruncationSpec, l: int) -> CaseReport:
    """Check every case of the reduction lemma whose hypothesis (p, q, r, l) satisfies."""
    spec = TruncationSpec(*spec)
    p, q, r = spec
    G = closed_form_G(spec, l)
    ty, tz = top_term(G, "y"), top_term(G, "z")
    checks = []
    for case in applicable_cases(spec, l):
        if case == 1:
            checks.append(CaseCheck(1, "G", Polynomial.zero(), G))
        elif case == 2:
            checks.append(CaseCheck(2, "G", _mono((x(p), 2)), G))
        elif case == 3:
            pred = _mono((x(p), 2)) + _mono((y(q), 2), (z(q), 1)) + _mono((y(q), 1), (z(q), 2))
            checks.append(CaseCheck(3, "G", pred, G))
        elif case == 4:
            checks.append(CaseCheck(4, "T_y", _mono((y(l - 2 * r), 1), (z(r), 2)), ty))
        elif case == 5:
            checks.append(CaseCheck(5, "T_z", _mono((y(q), 2), (z(l - 2 * q), 1)), tz))
        elif case == 6:
            checks.append(CaseCheck(6, "T_y", _mono((y(l - 2 * q), 1), (z(q), 2)), ty))
        elif case == 7:
            checks.append(CaseCheck(7, "T_z", _mono((y(q), 2), (z(l - 2 * q), 1)), tz))
    return CaseReport(spec, l, G, ty, tz, tuple(checks))


def lemma_grid(pmax: int = 5, lmax: int = 12, surface=Surface.D41) -> list[dict]:
    """Reduction identity plus case checks over 1 <= p,q,r <= pmax, 0 <= l <= lmax."""
    surface = Surface.parse(surface)
    jets = jet_coeffs(surface, lmax)
    rows = []
    for p in range(1, pmax + 1):
        for q in range(1, pmax + 1):
            for r in range(1, pmax + 1):
                spec = TruncationSpec(p, q, r)
                for l in range(lmax + 1):
                    rep = verify_G_lemma(spec, l)
                    reduced = reduce_mod_L(jets[l], spec)
                    expected = closed_form_G(spec, l, with_xyz=surface is Surface.D41)
                    row = rep.to_dict()
                    row["reduction_matches"] = reduced == expected
                    row["ok"] = row["ok"] and row["reduction_matches"]
                    rows.append(row)
    return rows
