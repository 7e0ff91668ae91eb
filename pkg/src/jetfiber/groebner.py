"""Buchberger's algorithm over GF(2) on bit-packed monomials.

Each monomial is one Python int: an 8-bit exponent field per variable, a
16-bit total-degree field above them and, for block orders, a 16-bit
elimination-degree field on top. Multiplication is integer addition and the
order comparison is a single integer key, so reduction loops stay in C.

Exponents are capped at ``MAX_EXPONENT``; bit 7 of every field stays clear,
which makes the borrow trick ``((b | G) - a) & G == G`` a divisibility test.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .poly import MAX_EXPONENT, DegreeOverflowError, Polynomial, Var

FIELD_BITS = 8
DEG_BITS = 16


class BudgetExceeded(RuntimeError):
    """The reduction-step budget ran out before the computation finished."""


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on a fixed, ordered list of variables (highest first).

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``. A block order compares
    the total degree in ``elim`` first, then breaks ties by grevlex on all
    variables; it eliminates exactly the ``elim`` variables.
    """

    kind: str
    precedence: tuple[Var, ...]
    elim: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if len(set(self.precedence)) != len(self.precedence):
            raise ValueError("duplicate variables in precedence")
        if self.kind == "block" and not self.elim:
            raise ValueError("block order needs elimination variables")
        if not set(self.elim) <= set(self.precedence):
            raise ValueError("elimination variables must be ordered variables")

    def restrict(self, keep) -> MonomialOrder:
        """The same order on a subset of variables (a block order drops its block)."""
        keep = set(keep)
        prec = tuple(v for v in self.precedence if v in keep)
        elim = frozenset(self.elim & keep)
        kind = self.kind if (self.kind != "block" or elim) else "grevlex"
        return MonomialOrder(kind, prec, elim)

    def with_variables(self, extra_high=(), extra_low=()) -> MonomialOrder:
        prec = tuple(extra_high) + tuple(v for v in self.precedence
                                         if v not in extra_high and v not in extra_low) + tuple(extra_low)
        return MonomialOrder(self.kind, prec, self.elim)


class Ring:
    """Packing of monomials for one monomial order."""

    _cache: dict = {}

    def __new__(cls, order: MonomialOrder):
        ring = cls._cache.get(order)
        if ring is None:
            ring = super().__new__(cls)
            ring._setup(order)
            cls._cache[order] = ring
        return ring

    def _setup(self, order: MonomialOrder):
        self.order = order
        n = len(order.precedence)
        self.n = n
        self.nbytes = max(n, 1)
        if order.kind == "lex":
            self.shift = {v: FIELD_BITS * (n - 1 - i) for i, v in enumerate(order.precedence)}
        else:
            self.shift = {v: FIELD_BITS * i for i, v in enumerate(order.precedence)}
        self.var_at = {s: v for v, s in self.shift.items()}
        self.VM = (1 << (FIELD_BITS * n)) - 1
        self.DS = FIELD_BITS * n
        self.ES = self.DS + DEG_BITS
        per_field = lambda c: sum(c << (FIELD_BITS * i) for i in range(n))  # noqa: E731
        self.G = per_field(0x80)
        self.C63 = per_field(0x80 - MAX_EXPONENT - 1)  # field > MAX_EXPONENT sets bit 7
        self.C127 = per_field(0x7F)
        self.EM = sum(0xFF << self.shift[v] for v in order.elim)
        self.kind = order.kind

    # --- monomials -------------------------------------------------------
    def _bytesum(self, v: int) -> int:
        return sum(v.to_bytes(self.nbytes, "little"))

    def from_varpart(self, vp: int) -> int:
        m = vp | (self._bytesum(vp) << self.DS)
        if self.EM:
            m |= self._bytesum(vp & self.EM) << self.ES
        return m

    def pack(self, mono) -> int:
        vp = 0
        for v, e in mono:
            if e > MAX_EXPONENT:
                raise DegreeOverflowError(f"exponent of {v} exceeds {MAX_EXPONENT}")
            try:
                vp |= e << self.shift[v]
            except KeyError:
                raise ValueError(f"variable {v} is not in the ring") from None
        return self.from_varpart(vp)

    def unpack(self, m: int):
        vp = m & self.VM
        out = []
        for s, v in self.var_at.items():
            e = (vp >> s) & 0xFF
            if e:
                out.append((v, e))
        out.sort(key=lambda ve: (-ve[0].precedence[0], -ve[0].precedence[1]))
        return tuple(out)

    def key(self, m: int) -> int:
        if self.kind == "lex":
            return m & self.VM
        return m - 2 * (m & self.VM)

    def divides(self, a: int, b: int) -> bool:
        G = self.G
        return ((b | G) - a) & G == G

    def lcm(self, a: int, b: int) -> int:
        VM, G = self.VM, self.G
        av, bv = a & VM, b & VM
        ge = (((bv | G) - av) & G) >> 7
        mask = ge * 0xFF
        return self.from_varpart((bv & mask) | (av & ~mask & VM))

    def support(self, m: int) -> int:
        return ((m & self.VM) + self.C127) & self.G

    def coprime(self, a: int, b: int) -> bool:
        return self.support(a) & self.support(b) == 0

    def overflows(self, m: int) -> bool:
        return ((m & self.VM) + self.C63) & self.G != 0

    def field_max(self, terms) -> int:
        vp = 0
        for s in self.var_at:
            mx = max(((t >> s) & 0xFF) for t in terms)
            vp |= mx << s
        return vp

    def variable_mask(self, v: Var) -> int:
        return 0xFF << self.shift[v]

    # --- polynomials -----------------------------------------------------
    def to_packed(self, p: Polynomial) -> frozenset:
        return frozenset(self.pack(t) for t in p.terms)

    def to_poly(self, terms) -> Polynomial:
        return Polynomial._from_set(self.unpack(t) for t in terms)

    def leading(self, terms) -> int:
        return max(terms, key=self.key)

    def is_one(self, terms) -> bool:
        return len(terms) == 1 and next(iter(terms)) == 0


class Counter:
    def __init__(self, budget: int | None):
        self.budget = budget
        self.steps = 0

    def tick(self, n: int = 1):
        self.steps += n
        if self.budget is not None and self.steps > self.budget:
            raise BudgetExceeded(f"reduction budget of {self.budget} steps exhausted")


class _Basis:
    """Basis elements with cached leading data, used during reduction."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.terms: list[frozenset] = []
        self.lm: list[int] = []
        self.fmax: list[int] = []
        self.active: list[int] = []

    def add(self, terms: frozenset) -> int:
        r = self.ring
        self.terms.append(terms)
        self.lm.append(r.leading(terms))
        self.fmax.append(r.field_max(terms))
        self.active.append(len(self.terms) - 1)
        return len(self.terms) - 1

    def find_divisor(self, t: int, among=None):
        G = self.ring.G
        tg = t | G
        lms = self.lm
        for i in (self.active if among is None else among):
            if (tg - lms[i]) & G == G:
                return i
        return None


def reduce_terms(terms, basis: _Basis, counter: Counter, among=None, full: bool = True) -> frozenset:
    """Normal form of ``terms`` modulo the basis elements listed in ``among``."""
    ring = basis.ring
    key = ring.key
    VM, C63, G = ring.VM, ring.C63, ring.G
    p = set(terms)
    heap = [(-key(t), t) for t in p]
    heapq.heapify(heap)
    rem = set()
    while heap:
        _, t = heapq.heappop(heap)
        if t not in p:
            continue
        i = basis.find_divisor(t, among)
        if i is None:
            p.discard(t)
            if not full:
                rem.add(t)
                rem |= p
                return frozenset(rem)
            rem.add(t)
            continue
        q = t - basis.lm[i]
        if ((q & VM) + basis.fmax[i] + C63) & G:
            for s in basis.terms[i]:
                if ring.overflows(q + s):
                    raise DegreeOverflowError(f"exponent exceeds {MAX_EXPONENT} during reduction")
        counter.tick()
        new = {q + s for s in basis.terms[i]}
        added = new - p
        p ^= new
        for s in added:
            heapq.heappush(heap, (-key(s), s))
    return frozenset(rem)


def _spoly(basis: _Basis, i: int, j: int, lcm: int) -> frozenset:
    ring = basis.ring
    qi = lcm - basis.lm[i]
    qj = lcm - basis.lm[j]
    for q, k in ((qi, i), (qj, j)):
        if ring.overflows((q & ring.VM) + basis.fmax[k]):
            raise DegreeOverflowError(f"exponent exceeds {MAX_EXPONENT} in an S-polynomial")
    a = {qi + s for s in basis.terms[i]}
    b = {qj + s for s in basis.terms[j]}
    return frozenset(a ^ b)


def buchberger(gens, ring: Ring, budget: int | None = 10**6, stop_on_unit: bool = False) -> list[frozenset]:
    """Reduced Groebner basis of the ideal generated by ``gens`` (packed term sets)."""
    counter = Counter(budget)
    basis = _Basis(ring)
    key = ring.key
    pairs: list = []  # heap of (sugar, lcm key, lcm, i, j)
    sugar: list[int] = []
    unit = False

    def deg(t: int) -> int:
        return (t >> ring.DS) & 0xFFFF

    def pair_sugar(l: int, i: int, j: int) -> int:
        return max(sugar[i] + deg(l) - deg(basis.lm[i]), sugar[j] + deg(l) - deg(basis.lm[j]))

    def update(h: int):
        lm_h = basis.lm[h]
        cand = [(ring.lcm(lm_h, basis.lm[g]), g) for g in basis.active]
        kept = []
        while cand:
            l1, g1 = cand.pop(0)
            if ring.coprime(lm_h, basis.lm[g1]) or not any(
                    ring.divides(l2, l1) for l2, _ in cand) and not any(
                    ring.divides(l2, l1) for l2, _ in kept):
                kept.append((l1, g1))
        # Gebauer-Moeller: drop old pairs whose lcm is strictly divisible by lm(h)
        if pairs:
            survivors = []
            for item in pairs:
                _, _, l, i, j = item
                if (ring.divides(lm_h, l) and ring.lcm(basis.lm[i], lm_h) != l
                        and ring.lcm(basis.lm[j], lm_h) != l):
                    continue
                survivors.append(item)
            if len(survivors) != len(pairs):
                pairs[:] = survivors
                heapq.heapify(pairs)
        for l, g in kept:
            if not ring.coprime(lm_h, basis.lm[g]):
                heapq.heappush(pairs, (pair_sugar(l, g, h), key(l), l, g, h))
        basis.active = [g for g in basis.active if not ring.divides(lm_h, basis.lm[g])]
        basis.active.append(h)

    # seed: reduce generators one at a time against the growing basis
    seeds = sorted((frozenset(g) for g in gens if g), key=lambda t: key(ring.leading(t)))
    for g in seeds:
        r = reduce_terms(g, basis, counter)
        if not r:
            continue
        if ring.is_one(r):
            return [frozenset({0})]
        h = basis.add(r)
        sugar.append(max(deg(t) for t in g))
        basis.active.pop()
        update(h)

    while pairs:
        sg, _, l, i, j = heapq.heappop(pairs)
        s = _spoly(basis, i, j, l)
        r = reduce_terms(s, basis, counter)
        if not r:
            continue
        if ring.is_one(r):
            unit = True
            break
        h = basis.add(r)
        sugar.append(max(sg, max(deg(t) for t in r)))
        basis.active.pop()
        update(h)
    if unit:
        return [frozenset({0})]
    return interreduce([basis.terms[i] for i in basis.active], ring, counter)


def interreduce(polys, ring: Ring, counter: Counter | None = None) -> list[frozenset]:
    """Turn a Groebner basis into the reduced one (sorted by descending leading term)."""
    counter = counter or Counter(None)
    polys = [p for p in polys if p]
    lms = [ring.leading(p) for p in polys]
    keep = []
    for i, lm in enumerate(lms):
        if any(j != i and ring.divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(polys))):
            continue
        keep.append(i)
    polys = [polys[i] for i in keep]
    out = []
    for i, p in enumerate(polys):
        basis = _Basis(ring)
        for j, other in enumerate(polys):
            if j != i:
                basis.add(other)
        lm = ring.leading(p)
        tail = frozenset(p - {lm})
        out.append(frozenset({lm}) | reduce_terms(tail, basis, counter))
    out.sort(key=lambda t: ring.key(ring.leading(t)), reverse=True)
    return out


def normal_form(terms, gb, ring: Ring, budget: int | None = None) -> frozenset:
    basis = _Basis(ring)
    for g in gb:
        basis.add(g)
    return reduce_terms(terms, basis, Counter(budget))
