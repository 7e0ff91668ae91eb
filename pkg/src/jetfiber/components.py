"""The four irreducible components of the singular fiber, their certification,
symmetries, and membership of explicit jets."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .field import _clmul
from .ideal import (DEFAULT_BUDGET, Ideal, TriangularCertificate, build_J, build_L, dimension,
                    saturate, triangular_certify)
from .jets import Surface, TruncationSpec, jet_coeffs, reduce_mod_L
from .poly import Polynomial, Var, x, y, z

LABELS = ("Z0", "Z1", "Z2", "Z3")
CENTER_SPEC = TruncationSpec(3, 2, 2)

# (J index, variable inverted on the open chart) for the three outer components
_CHARTS = {"Z1": (1, z(1)), "Z2": (2, y(1)), "Z3": (3, y(1))}


class VerificationError(AssertionError):
    """A computed object contradicts the structure it was expected to have."""


# --- jets ----------------------------------------------------------------

class SPoly(int):
    """Polynomial in one parameter s over GF(2), bit i = coefficient of s^i."""

    def __add__(self, other):
        return SPoly(int(self) ^ int(other))

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        return SPoly(_clmul(int(self), int(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = SPoly(1)
        for _ in range(e):
            out = out * self
        return out

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for i in range(int(self).bit_length() - 1, -1, -1):
            if int(self) >> i & 1:
                parts.append("1" if i == 0 else ("s" if i == 1 else f"s^{i}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"SPoly({str(self)!r})"


_SERIES_TERM = re.compile(r"^(?:(?P<s>s)\s*\*?\s*)?(?:t(?:\^(?P<e>\d+))?)?$")


def _parse_series(text: str, m: int, param: bool) -> list:
    coeffs = [SPoly(0) if param else 0 for _ in range(m + 1)]
    text = text.replace(" ", "")
    if text in ("", "0"):
        return coeffs
    for term in text.split("+"):
        if term == "1":
            power, with_s = 0, False
        elif term == "s":
            power, with_s = 0, True
        else:
            mt = _SERIES_TERM.match(term)
            if not mt or "t" not in term:
                raise ValueError(f"cannot read series term {term!r}")
            power = int(mt.group("e") or 1)
            with_s = mt.group("s") is not None
        if with_s and not param:
            raise ValueError("parameter s used in a jet without parameter")
        if power > m:
            continue  # truncated away
        unit = SPoly(0b10) if with_s else (SPoly(1) if param else 1)
        coeffs[power] = coeffs[power] + unit if param else coeffs[power] ^ unit
    return coeffs


@dataclass(frozen=True)
class Jet:
    """An order-m jet ``(sum x_i t^i, sum y_i t^i, sum z_i t^i)``.

    Coefficients are GF(2^k) elements (ints 0/1 mean GF(2)); when ``param`` is
    set they are polynomials in a parameter s over GF(2) (``SPoly``).
    """

    x: tuple
    y: tuple
    z: tuple
    param: bool = False

    def __post_init__(self):
        if not len(self.x) == len(self.y) == len(self.z):
            raise ValueError("coefficient vectors must have equal length")

    @property
    def m(self) -> int:
        return len(self.x) - 1

    @classmethod
    def parse(cls, m: int, xs: str = "0", ys: str = "0", zs: str = "0") -> Jet:
        """``Jet.parse(5, "0", "0", "s*t + t^2")``; the parameter is detected from the text."""
        param = any("s" in part for part in (xs, ys, zs))
        return cls(tuple(_parse_series(xs, m, param)), tuple(_parse_series(ys, m, param)),
                   tuple(_parse_series(zs, m, param)), param)

    def point(self) -> dict:
        out = {}
        for fam, vec in (("x", self.x), ("y", self.y), ("z", self.z)):
            for i, a in enumerate(vec):
                out[Var(fam, i)] = a
        return out

    def evaluate(self, p: Polynomial):
        """Value of p at the jet: a field element, or an ``SPoly`` for parametrised jets."""
        if not self.param:
            return p.evaluate(self.point())
        pt = self.point()
        total = SPoly(0)
        for t in p.terms:
            val = SPoly(1)
            for v, e in t:
                if v not in pt:
                    raise KeyError(str(v))
                val = val * pt[v] ** e
                if not val:
                    break
            total = total + val
        return total

    def annihilates(self, gens) -> bool:
        return all(not self.evaluate(g) for g in gens)

    def substitute(self, images: dict) -> Jet:
        """Image of the jet under a linear coordinate change given on x_i, y_i, z_i."""
        vecs = {"x": list(self.x), "y": list(self.y), "z": list(self.z)}
        for v, img in images.items():
            vecs[v.family][v.index] = self.evaluate(img)
        return Jet(tuple(vecs["x"]), tuple(vecs["y"]), tuple(vecs["z"]), self.param)

    def __str__(self):
        def series(vec):
            parts = []
            for i, a in enumerate(vec):
                if not a:
                    continue
                coeff = str(a) if self.param else (a if isinstance(a, int) else a)
                mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if coeff in (1, "1"):
                    parts.append(mono)
                else:
                    parts.append(f"({coeff})*{mono}" if mono != "1" else f"({coeff})")
            return " + ".join(parts) or "0"

        return f"({series(self.x)}, {series(self.y)}, {series(self.z)})"


def witness_jet(m: int, name: str) -> Jet:
    """The four fixed witness jets and their one-parameter families."""
    table = {
        "(0,0,t)": ("0", "0", "t"),
        "(0,t,0)": ("0", "t", "0"),
        "(0,0,t^2)": ("0", "0", "t^2"),
        "(0,t^2,t^2)": ("0", "t^2", "t^2"),
        "(0,0,st+t^2)": ("0", "0", "s*t + t^2"),
        "(0,st+t^2,st+t^2)": ("0", "s*t + t^2", "s*t + t^2"),
        "(0,st,0)": ("0", "s*t", "0"),
    }
    try:
        return Jet.parse(m, *table[name])
    except KeyError:
        raise ValueError(f"unknown witness jet {name!r}") from None


# --- components ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Component:
    label: str
    surface: Surface
    m: int
    closed_ideal: Ideal
    localizer: Var | None
    sat_ideal: Ideal
    dim: int
    certificate: TriangularCertificate | None = None
    evidence: dict = field(default_factory=dict)

    @property
    def codim(self) -> int:
        return 3 * (self.m + 1) - self.dim

    def generators(self) -> list[Polynomial]:
        return self.sat_ideal.gb or list(self.sat_ideal.gens)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "surface": self.surface.value,
            "m": self.m,
            "localizer": None if self.localizer is None else str(self.localizer),
            "generators": [str(g) for g in self.generators()],
            "dimension": self.dim,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "evidence": self.evidence,
        }


def center_ideal(surface, m: int) -> Ideal:
    """``L_322`` plus the jet equations (the closed ideal of Z0)."""
    surface = Surface.parse(surface)
    jets = [reduce_mod_L(g, CENTER_SPEC) for g in jet_coeffs(surface, m).coeffs]
    return Ideal(tuple(Polynomial.var(v) for v in CENTER_SPEC.killed()) + tuple(g for g in jets if g), m)


def component_ideal(surface, m: int, label: str, budget: int | None = DEFAULT_BUDGET) -> Component:
    surface = Surface.parse(surface)
    if m < 5:
        raise ValueError("the four-component decomposition needs m >= 5")
    if label not in LABELS:
        raise ValueError(f"unknown component {label!r}")
    ambient = 3 * (m + 1)
    evidence: dict = {}
    if label == "Z0":
        closed = center_ideal(surface, m)
        if surface is Surface.D40:
            closed.groebner(budget)
            dim = dimension(closed, budget)
            evidence["stable_factor"] = stable_iso_check(m) if m >= 6 else True
            return Component(label, surface, m, closed, None, closed, dim, None, evidence)
        localizer = y(2)
        sat = saturate(closed, localizer, budget)
        cert = triangular_certify(closed, localizer)
        if m == 5:
            evidence["equals_L322"] = sat.same_as(build_L(CENTER_SPEC, m), budget)
            if not evidence["equals_L322"]:
                raise VerificationError("Z0 at m = 5 should be the coordinate subspace V(L_322)")
        else:
            other = saturate(closed, z(2), budget)
            evidence["charts_agree"] = sat.same_as(other, budget)
            if not evidence["charts_agree"]:
                raise VerificationError("saturations of the Z0 ideal at y2 and z2 differ")
    else:
        i, localizer = _CHARTS[label]
        closed = build_J(surface, i, m)
        sat = saturate(closed, localizer, budget)
        cert = triangular_certify(closed, localizer)
    dim = dimension(sat, budget)
    if not cert.success:
        raise VerificationError(f"no triangular presentation for {label} localized at {localizer}: "
                                f"{[str(p) for p in cert.leftover]}")
    if ambient - cert.height != dim:
        raise VerificationError(f"{label}: certificate height {cert.height} disagrees with dimension {dim}")
    evidence["certified_height"] = cert.height
    return Component(label, surface, m, closed, localizer, sat, dim, cert, evidence)


# --- membership ----------------------------------------------------------

def jet_member(jet: Jet, c: Component) -> bool:
    if jet.param:
        raise ValueError("jet_member needs a jet without parameter")
    if jet.m != c.m:
        raise ValueError(f"jet has order {jet.m}, component lives at order {c.m}")
    return jet.annihilates(c.generators())


def family_witness(jet: Jet, J: Ideal, chart: Var) -> bool:
    """The family lies on V(J) and generically off V(chart), so its s -> 0 limit is in the chart closure."""
    if not jet.param:
        raise ValueError("family_witness needs a parametrised jet")
    gens = J.gb or J.gens
    return jet.annihilates(gens) and bool(jet.evaluate(Polynomial.var(chart)))


def limit(jet: Jet) -> Jet:
    """Set s = 0 in a parametrised jet."""
    def at0(vec):
        return tuple(int(a) & 1 for a in vec)

    return Jet(at0(jet.x), at0(jet.y), at0(jet.z))


# --- symmetries ----------------------------------------------------------

def symmetry_map(surface, which: str, m: int) -> dict:
    surface = Surface.parse(surface)
    which = which.upper()
    if which == "PSI1":
        return surface.phi1(m)
    if which == "PSI2":
        return surface.phi2(m)
    raise ValueError(f"unknown symmetry {which!r}; expected PSI1 or PSI2")


def apply_symmetry(surface, which: str, c: Component, comps: Sequence[Component],
                   budget: int | None = DEFAULT_BUDGET) -> Component:
    """The component whose ideal is the image of ``c``'s ideal under the symmetry."""
    surface = Surface.parse(surface)
    if c.surface is not surface:
        raise ValueError("component belongs to the other surface")
    phi = symmetry_map(surface, which, c.m)
    image = Ideal(tuple(g.substitute(phi) for g in c.generators()), c.m)
    for other in comps:
        if image.same_as(other.sat_ideal, budget):
            return other
    raise VerificationError(f"{which} image of {c.label} matches no component")


def symmetry_permutation(comps: Sequence[Component], which: str,
                         budget: int | None = DEFAULT_BUDGET) -> dict[str, str]:
    return {c.label: apply_symmetry(c.surface, which, c, comps, budget).label for c in comps}


# --- stable factor -------------------------------------------------------

def stable_iso_check(m: int) -> bool:
    """``f^(l) mod L_322`` equals ``f^(l-6)`` with indices shifted by (3, 2, 2), for 6 <= l <= m."""
    if m < 6:
        raise ValueError("the stable factor appears from m = 6 on")
    jets = jet_coeffs(Surface.D40, m)
    shift = {}
    for i in range(m + 1):
        if i + 3 <= m:
            shift[x(i)] = Polynomial.var(x(i + 3))
        if i + 2 <= m:
            shift[y(i)] = Polynomial.var(y(i + 2))
            shift[z(i)] = Polynomial.var(z(i + 2))
    for l in range(6, m + 1):
        if reduce_mod_L(jets[l], CENTER_SPEC) != jets[l - 6].substitute(shift):
            return False
    return True


# --- decomposition -------------------------------------------------------

# jets lying on exactly one outer component (computed membership; see distinctness)
_OUTER_WITNESSES = ("(0,0,t)", "(0,t,0)")


@dataclass(frozen=True)
class Decomposition:
    surface: Surface
    m: int
    components: tuple[Component, ...]
    witnesses: dict  # outer label -> jet lying on that component only

    def __getitem__(self, label: str) -> Component:
        return next(c for c in self.components if c.label == label)

    def to_dict(self) -> dict:
        return {"surface": self.surface.value, "m": self.m,
                "components": [dict(c.to_dict(), witness=self.witnesses.get(c.label))
                               for c in self.components]}


def _witness_pool(surface: Surface, m: int) -> list[tuple[str, Jet]]:
    pool = []
    seen = set()
    for name in _OUTER_WITNESSES:
        base = witness_jet(m, name)
        for which in ("", "PSI1", "PSI2", "PSI1,PSI2", "PSI2,PSI1"):
            jet, label = base, name
            for w in filter(None, which.split(",")):
                jet = jet.substitute(symmetry_map(surface, w, m))
                label = f"{w}{label}"
            key = (jet.x, jet.y, jet.z)
            if key not in seen:
                seen.add(key)
                pool.append((f"{label} = {jet}" if which else name, jet))
    return pool


def decompose(surface, m: int, budget: int | None = DEFAULT_BUDGET) -> Decomposition:
    """Build and certify Z0..Z3 and show they are pairwise distinct."""
    surface = Surface.parse(surface)
    comps = tuple(component_ideal(surface, m, label, budget) for label in LABELS)
    for c in comps:
        if c.dim != 2 * m + 1:
            raise VerificationError(f"{c.label} has dimension {c.dim}, expected {2 * m + 1}")
    witnesses = {}
    pool = _witness_pool(surface, m)
    for c in comps[1:]:
        for name, jet in pool:
            inside = [jet_member(jet, d) for d in comps]
            if inside[LABELS.index(c.label)] and sum(inside) == 1:
                witnesses[c.label] = name
                break
        else:
            raise VerificationError(f"no witness jet separates {c.label} from the other components")
    # every outer witness lies off Z0; components of equal dimension that are
    # irreducible and not contained in one another are distinct
    witnesses["Z0"] = None
    return Decomposition(surface, m, comps, witnesses)
