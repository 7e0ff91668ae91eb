"""Ideals of the jet ring over GF(2): construction, Groebner bases, saturation,
radical membership, dimension and triangular primality certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import (BudgetExceeded, MonomialOrder, Ring, buchberger, normal_form)
from .jets import TruncationSpec, jet_coeffs
from .poly import Polynomial, Var, aux, x, y, z

DEFAULT_BUDGET = 10**6

__all__ = [
    "BudgetExceeded", "Ideal", "MonomialOrder", "TriangularCertificate", "build_J", "build_L",
    "default_order", "dimension", "groebner", "ideal_contains", "radical_member", "saturate",
    "triangular_certify",
]


def default_order(m: int) -> MonomialOrder:
    """Degrevlex with high-index y's on top, then z's, then x's, then indices 1 and 0.

    The triangular systems of the jet ideals solve for the top y (or z)
    coefficients, so this precedence makes those terms leading.
    """
    high = ([y(i) for i in range(m, 1, -1)] + [z(i) for i in range(m, 1, -1)]
            + [x(i) for i in range(m, 1, -1)])
    low = [v for i in (1, 0) for v in (y(i), z(i), x(i)) if i <= m]
    return MonomialOrder("grevlex", tuple(high + low))


@dataclass(frozen=True, eq=False)
class Ideal:
    """A finitely generated ideal of ``GF(2)[x_0..x_m, y_0..y_m, z_0..z_m]``."""

    gens: tuple[Polynomial, ...]
    m: int
    order: MonomialOrder = None
    _gb: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(Polynomial._coerce(g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        if self.order is None:
            object.__setattr__(self, "order", default_order(self.m))
        allowed = set(self.order.precedence)
        for g in gens:
            extra = g.variables() - allowed
            if extra:
                raise ValueError(f"generator {g} uses variables outside the ring: {sorted(map(str, extra))}")

    @property
    def ring(self) -> Ring:
        return Ring(self.order)

    @property
    def variables(self) -> list[Var]:
        return [v for v in self.order.precedence if not v.is_aux]

    @property
    def gb(self) -> list[Polynomial] | None:
        if self._gb is None:
            return None
        return [self.ring.to_poly(t) for t in self._gb]

    def groebner(self, budget: int | None = DEFAULT_BUDGET) -> Ideal:
        if self._gb is None:
            object.__setattr__(self, "_gb", _compute_gb([self.ring.to_packed(g) for g in self.gens],
                                                        self.ring, budget))
        return self

    def packed_gb(self, budget: int | None = DEFAULT_BUDGET) -> list[frozenset]:
        return self.groebner(budget)._gb

    def is_unit(self, budget: int | None = DEFAULT_BUDGET) -> bool:
        return self.ring.is_one(self.packed_gb(budget)[0]) if self.packed_gb(budget) else False

    def normal_form(self, p: Polynomial, budget: int | None = DEFAULT_BUDGET) -> Polynomial:
        ring = self.ring
        return ring.to_poly(normal_form(ring.to_packed(p), self.packed_gb(budget), ring))

    def __contains__(self, p) -> bool:
        return not self.normal_form(Polynomial._coerce(p))

    def __add__(self, other: Ideal) -> Ideal:
        if self.m != other.m:
            raise ValueError("ideals live in different jet rings")
        gens = list(self.gb if self._gb is not None else self.gens)
        gens += other.gb if other._gb is not None else other.gens
        return Ideal(tuple(gens), self.m, self.order)

    def with_gens(self, *extra: Polynomial) -> Ideal:
        return Ideal(self.gens + tuple(extra), self.m, self.order)

    def substitute(self, bindings) -> Ideal:
        return Ideal(tuple(g.substitute(bindings) for g in self.gens), self.m, self.order)

    def same_as(self, other: Ideal, budget: int | None = DEFAULT_BUDGET) -> bool:
        """Equality of ideals (reduced Groebner bases coincide in the same order)."""
        if other.order != self.order:
            other = Ideal(other.gens, other.m, self.order)
        return self.packed_gb(budget) == other.packed_gb(budget)

    def __str__(self):
        return "<" + ", ".join(map(str, self.gens)) + ">"


def _eliminate_coordinates(gens: list[frozenset], ring: Ring):
    """Split off generators that are single variables; returns (coords, rest) or None for <1>."""
    VM = ring.VM
    coords: list[int] = []
    kill_mask = 0
    rest = [g for g in gens if g]
    changed = True
    while changed:
        changed = False
        nxt = []
        for g in rest:
            if kill_mask:
                g = frozenset(t for t in g if not (t & kill_mask))
            if not g:
                continue
            if len(g) == 1:
                (t,) = g
                if t == 0:
                    return None
                vp = t & VM
                if _is_single_var(vp) and _field_value(vp) == 1:
                    coords.append(t)
                    kill_mask |= _field_mask(vp)
                    changed = True
                    continue
            nxt.append(g)
        rest = nxt
    return coords, rest


def _lowest_field_shift(vp: int) -> int:
    return ((vp & -vp).bit_length() - 1) // 8 * 8


def _is_single_var(vp: int) -> bool:
    s = _lowest_field_shift(vp)
    return vp >> s <= 0xFF


def _field_value(vp: int) -> int:
    return vp >> _lowest_field_shift(vp)


def _field_mask(vp: int) -> int:
    return 0xFF << _lowest_field_shift(vp)


def _compute_gb(gens: list[frozenset], ring: Ring, budget, stop_on_unit: bool = False) -> list[frozenset]:
    split = _eliminate_coordinates(gens, ring)
    if split is None:
        return [frozenset({0})]
    coords, rest = split
    gb = buchberger(rest, ring, budget=budget, stop_on_unit=stop_on_unit) if rest else []
    if gb and ring.is_one(gb[0]):
        return [frozenset({0})]
    out = [frozenset({c}) for c in coords] + gb
    out.sort(key=lambda t: ring.key(ring.leading(t)), reverse=True)
    return out


# --- constructors --------------------------------------------------------

def build_L(spec: TruncationSpec | Sequence[int], m: int) -> Ideal:
    spec = TruncationSpec(*spec)
    if min(spec) < 0 or max(spec) > m + 1:
        raise ValueError(f"L_{spec.p}{spec.q}{spec.r} needs p, q, r <= m + 1 = {m + 1}")
    ideal = Ideal(tuple(Polynomial.var(v) for v in spec.killed()), m)
    return ideal.groebner()


def jet_ideal(surface, m: int) -> list[Polynomial]:
    return list(jet_coeffs(surface, m).coeffs)


def build_J(surface, i: int, m: int) -> Ideal:
    """J^1 = L_221 + jets, J^2 = L_212 + jets, J^3 = L_211 + <y1 + z1> + jets."""
    if m < 3:
        raise ValueError("J_m^i is defined for m >= 3")
    jets = jet_ideal(surface, m)
    if i == 1:
        head = TruncationSpec(2, 2, 1).killed()
        extra = []
    elif i == 2:
        head = TruncationSpec(2, 1, 2).killed()
        extra = []
    elif i == 3:
        head = TruncationSpec(2, 1, 1).killed()
        extra = [Polynomial.var(y(1)) + Polynomial.var(z(1))]
    else:
        raise ValueError("i must be 1, 2 or 3")
    return Ideal(tuple(Polynomial.var(v) for v in head) + tuple(extra) + tuple(jets), m)


# --- operations ----------------------------------------------------------

def groebner(I: Ideal, budget: int | None = DEFAULT_BUDGET) -> Ideal:
    return I.groebner(budget)


def dimension(I: Ideal, budget: int | None = DEFAULT_BUDGET) -> int:
    """Krull dimension of V(I) in the ambient jet space; -1 for the empty variety.

    Largest set of variables containing the support of no leading monomial,
    found as the complement of a minimum hitting set of the supports.
    """
    gb = I.packed_gb(budget)
    ring = I.ring
    if gb and ring.is_one(gb[0]):
        return -1
    ambient = I.variables
    index = {v: k for k, v in enumerate(ambient)}
    supports = set()
    for g in gb:
        mono = ring.unpack(ring.leading(g))
        mask = 0
        for v, _ in mono:
            mask |= 1 << index[v]
        supports.add(mask)
    return len(ambient) - _min_hitting_set(supports)


def _min_hitting_set(supports: set[int]) -> int:
    # drop supersets: hitting a subset hits the superset
    sets = sorted(supports, key=lambda s: bin(s).count("1"))
    minimal = []
    for s in sets:
        if not any(t & s == t for t in minimal):
            minimal.append(s)
    best = [len(minimal)]

    def search(remaining: list[int], chosen: int):
        if chosen >= best[0]:
            return
        if not remaining:
            best[0] = chosen
            return
        # lower bound: disjoint sets each need their own element
        bound, used = 0, 0
        for s in remaining:
            if not s & used:
                bound += 1
                used |= s
        if chosen + bound >= best[0]:
            return
        pivot = min(remaining, key=lambda s: bin(s).count("1"))
        bits = pivot
        while bits:
            b = bits & -bits
            bits ^= b
            search([s for s in remaining if not s & b], chosen + 1)

    search(minimal, 0)
    return best[0]


def _fresh_aux(I: Ideal) -> Var:
    used = {v.index for v in I.order.precedence if v.is_aux}
    k = 0
    while k in used:
        k += 1
    return aux(k)


def saturate(I: Ideal, v: Var, budget: int | None = DEFAULT_BUDGET) -> Ideal:
    """(I : v^inf) via an auxiliary w with w*v + 1 and a block order eliminating w."""
    if v.is_aux:
        raise ValueError("cannot saturate at an auxiliary variable")
    if v not in I.order.precedence:
        raise ValueError(f"{v} is not a ring variable")
    w = _fresh_aux(I)
    order = MonomialOrder("block", (w,) + I.order.precedence, frozenset({w}))
    ring = Ring(order)
    base = I.gb if I._gb is not None else I.gens
    gens = [ring.to_packed(g) for g in base]
    gens.append(ring.to_packed(Polynomial.var(w) * Polynomial.var(v) + 1))
    gb = _compute_gb(gens, ring, budget)
    wmask = ring.variable_mask(w)
    kept = [g for g in gb if not any(t & wmask for t in g)]
    polys = [ring.to_poly(g) for g in kept]
    target = Ring(I.order)
    result = Ideal(tuple(polys), I.m, I.order)
    packed = [target.to_packed(p) for p in polys]
    packed.sort(key=lambda t: target.key(target.leading(t)), reverse=True)
    object.__setattr__(result, "_gb", packed)
    return result


def radical_member(h: Polynomial, I: Ideal, budget: int | None = DEFAULT_BUDGET) -> bool:
    """Whether h vanishes on V(I): 1 in I + <w*h + 1> (Rabinowitsch)."""
    h = Polynomial._coerce(h)
    if not h:
        return True
    if I._gb is not None:
        power = h
        for _ in range(3):
            if not I.normal_form(power, budget):
                return True
            power = power.square()
    w = _fresh_aux(I)
    order = I.order.with_variables(extra_low=(w,))
    ring = Ring(order)
    base = I.gb if I._gb is not None else I.gens
    gens = [ring.to_packed(g) for g in base]
    gens.append(ring.to_packed(Polynomial.var(w) * h + 1))
    gb = _compute_gb(gens, ring, budget, stop_on_unit=True)
    return bool(gb) and ring.is_one(gb[0])


def ideal_contains(I: Ideal, J: Ideal, budget: int | None = DEFAULT_BUDGET) -> bool:
    """J subset of I as ideals (every generator of J reduces to 0 modulo I)."""
    return all(not I.normal_form(g, budget) for g in J.gens)


# --- triangular certificates ---------------------------------------------

D40_FORM = "x^2 + y^2 z + y z^2"


@dataclass(frozen=True)
class TriangularCertificate:
    """Proof that ``I * GF(2)[vars]_unit`` is prime, with its height.

    After the coordinate generators ``remainder_gens`` are set to zero, every
    remaining generator has the shape ``unit^e * v + h`` where ``v`` is a
    fresh variable not occurring in any earlier generator in ``solved_vars``
    order; optionally one generator is left over that is, up to renaming of
    three variables, ``a^2 + b^2 c + b c^2`` (an irreducible quadric cone).
    """

    unit: Var
    remainder_gens: tuple[Var, ...]
    solved_vars: tuple[Var, ...]
    exponents: tuple[int, ...]
    base_relation: Polynomial | None = None
    success: bool = True
    leftover: tuple[Polynomial, ...] = ()
    # (v, expression, e): v = expression / unit^e, listed in evaluation order
    solutions: tuple = ()

    @property
    def height(self) -> int:
        return len(self.remainder_gens) + len(self.solved_vars) + (1 if self.base_relation is not None else 0)

    def complete_point(self, values: dict, variables=()) -> dict:
        """Extend values of the free variables to a point of V(I) off V(unit).

        ``values`` must assign every variable that is neither a coordinate nor
        solved (missing ones, and any of ``variables`` left over, are taken as 0)
        and make the base relation vanish; the unit must take a nonzero value.
        """
        if not self.success:
            raise ValueError("no point construction for a failed certificate")
        point = dict(values)
        for v in self.remainder_gens:
            point[v] = 0
        for v, expr, e in self.solutions:
            for u in expr.variables():
                point.setdefault(u, 0)
            value = expr.evaluate(point)
            if e:
                unit = point.get(self.unit, 0)
                if not unit:
                    raise ValueError("the inverted variable must be nonzero")
                value = value / (unit ** e) if not isinstance(unit, int) else value
            point[v] = value
        for u in variables:
            point.setdefault(u, 0)
        return point

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "unit": str(self.unit),
            "coordinates": [str(v) for v in self.remainder_gens],
            "solved": [str(v) for v in self.solved_vars],
            "exponents": list(self.exponents),
            "base_relation": None if self.base_relation is None else str(self.base_relation),
            "height": self.height if self.success else None,
            "leftover": [str(p) for p in self.leftover],
        }


def _kill(p: Polynomial, killed: set) -> Polynomial:
    return Polynomial._from_set(t for t in p.terms if not any(v in killed for v, _ in t))


def _linear_pivot(g: Polynomial, unit: Var, killed: set):
    """A variable v with g = v + h, v absent from h."""
    counts: dict = {}
    for t in g.terms:
        for v, _ in t:
            counts[v] = counts.get(v, 0) + 1
    for t in g.sorted_terms():
        if len(t) == 1 and t[0][1] == 1:
            v = t[0][0]
            if v != unit and counts[v] == 1 and v not in killed:
                return v
    return None


def _solvable(g: Polynomial, v: Var, unit: Var):
    """Exponent e when g = unit^e * v + h with v absent from h, else None."""
    with_v = [t for t in g.terms if any(u == v for u, _ in t)]
    if len(with_v) != 1:
        return None
    (t,) = with_v
    e = 0
    for u, k in t:
        if u == v:
            if k != 1:
                return None
        elif u == unit:
            e = k
        else:
            return None
    return e


def _matches_d40_form(g: Polynomial, forbidden: set):
    """Variables (a, b, c) with g = a^2 + b^2 c + b c^2, or None."""
    if len(g) != 3:
        return None
    squares = [t for t in g.terms if len(t) == 1 and t[0][1] == 2]
    cubics = [t for t in g.terms if len(t) == 2]
    if len(squares) != 1 or len(cubics) != 2:
        return None
    a = squares[0][0][0]
    vs = {u for t in cubics for u, _ in t}
    if len(vs) != 2 or a in vs:
        return None
    b, c = sorted(vs)
    expected = Polynomial.monomial({a: 2}) + Polynomial.monomial({b: 2, c: 1}) + Polynomial.monomial({b: 1, c: 2})
    if expected != g or ({a, b, c} & forbidden):
        return None
    return a, b, c


def triangular_certify(I: Ideal, inverted: Var) -> TriangularCertificate:
    """Certify primality of the localization of I at ``inverted`` by a triangular presentation."""
    killed: set = set()
    coords: list[Var] = []
    solved_linear: list[Var] = []
    linear_images: list[tuple[Var, Polynomial]] = []
    gens = [g for g in I.gens if g]
    while True:
        gens = [_kill(g, killed) for g in gens]
        gens = [g for g in gens if g]
        bare = next((g for g in gens if g.is_variable()), None)
        if bare is not None:
            (v,) = bare.variables()
            if v == inverted:
                return TriangularCertificate(inverted, tuple(coords), (), (), success=False,
                                             leftover=(bare,))
            killed.add(v)
            coords.append(v)
            continue
        lin = None
        for g in gens:
            v = _linear_pivot(g, inverted, killed)
            if v is not None:
                lin = (g, v)
                break
        if lin is None:
            break
        g, v = lin
        image = g + Polynomial.var(v)
        gens.remove(g)
        gens = [p.substitute({v: image}) for p in gens]
        solved_linear.append(v)
        linear_images.append((v, image))
    if any(g == 1 for g in gens):
        return TriangularCertificate(inverted, tuple(coords), tuple(solved_linear), (0,) * len(solved_linear),
                                     success=False, leftover=tuple(gens))
    # peel generators whose solved variable occurs nowhere else, last equation first
    peeled: list[tuple[Var, int, Polynomial]] = []
    remaining = list(gens)
    progress = True
    while remaining and progress:
        progress = False
        occurrences: dict = {}
        for k, g in enumerate(remaining):
            for v in g.variables():
                occurrences.setdefault(v, set()).add(k)
        candidates = sorted((v for v, ks in occurrences.items() if len(ks) == 1 and v != inverted),
                            key=lambda v: v.precedence, reverse=True)
        for v in candidates:
            (k,) = occurrences[v]
            e = _solvable(remaining[k], v, inverted)
            if e is not None:
                g = remaining.pop(k)
                peeled.append((v, e, g + Polynomial.monomial({v: 1, inverted: e})))
                progress = True
                break
    solved = tuple(solved_linear) + tuple(v for v, _, _ in reversed(peeled))
    exps = (0,) * len(solved_linear) + tuple(e for _, e, _ in reversed(peeled))
    solutions = tuple((v, h, e) for v, e, h in reversed(peeled)) + tuple(
        (v, image, 0) for v, image in reversed(linear_images))
    base = None
    if len(remaining) == 1 and _matches_d40_form(remaining[0], set(solved)) is not None:
        base = remaining[0]
        remaining = []
    if remaining:
        return TriangularCertificate(inverted, tuple(coords), solved, exps, success=False,
                                     leftover=tuple(remaining))
    return TriangularCertificate(inverted, tuple(coords), solved, exps, base_relation=base,
                                 solutions=solutions)
