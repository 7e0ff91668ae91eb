"""Sparse polynomials over GF(2) in jet variables.

A polynomial is a set of monomials (every coefficient is 1), so addition is
symmetric difference and ``p + p == 0``. Monomials are tuples of
``(Var, exponent)`` pairs sorted from the highest-precedence variable down.

Canonical precedence, used for printing:
``x_m > ... > x_0 > y_m > ... > y_0 > z_m > ... > z_0 > w_*`` with terms listed
in descending degree-reverse-lexicographic order.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, NamedTuple

from .field import FieldElem

MAX_EXPONENT = 64

FAMILIES = ("x", "y", "z", "w")
_FAMILY_RANK = {"x": 3, "y": 2, "z": 1, "w": 0}


class Var(NamedTuple):
    """A jet coordinate ``x_i``/``y_i``/``z_i`` or an auxiliary slot ``w_i``."""

    family: str
    index: int

    def __str__(self):
        return f"{self.family}{self.index}"

    @property
    def is_aux(self) -> bool:
        return self.family == "w"

    @property
    def precedence(self) -> tuple[int, int]:
        return (_FAMILY_RANK[self.family], self.index)


def x(i: int) -> Var:
    return Var("x", i)


def y(i: int) -> Var:
    return Var("y", i)


def z(i: int) -> Var:
    return Var("z", i)


def aux(i: int = 0) -> Var:
    return Var("w", i)


def var_from_name(name: str) -> Var:
    m = re.fullmatch(r"([xyzw])(\d+)", name.strip())
    if not m:
        raise ValueError(f"not a variable name: {name!r}")
    return Var(m.group(1), int(m.group(2)))


def jet_variables(m: int) -> list[Var]:
    """All 3(m+1) coordinates of the order-m jet space, in canonical precedence."""
    return [Var(f, i) for f in "xyz" for i in range(m, -1, -1)]


class DegreeOverflowError(ArithmeticError):
    pass


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class MissingBindingError(KeyError):
    pass


Monomial = tuple  # tuple[tuple[Var, int], ...]

ONE_MONOMIAL: Monomial = ()


def _var_sort_key(v: Var):
    return (-_FAMILY_RANK[v.family], -v.index)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        ne = exps.get(v, 0) + e
        if ne > MAX_EXPONENT:
            raise DegreeOverflowError(f"exponent of {v} exceeds {MAX_EXPONENT}")
        exps[v] = ne
    return tuple(sorted(exps.items(), key=lambda ve: _var_sort_key(ve[0])))


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def grevlex_key(a: Monomial):
    """Sort key realising the canonical degrevlex order (larger key = larger monomial)."""
    return (mono_degree(a), tuple((v.precedence, -e) for v, e in reversed(a)))


def _mono_str(a: Monomial) -> str:
    if not a:
        return "1"
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in a)


class Polynomial:
    """An immutable polynomial over GF(2)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Monomial] = ()):
        acc: set = set()
        for t in terms:
            acc ^= {t}
        self._terms = frozenset(acc)
        self._hash = None

    @classmethod
    def _from_set(cls, terms) -> Polynomial:
        p = cls.__new__(cls)
        p._terms = frozenset(terms)
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> Polynomial:
        return cls._from_set(())

    @classmethod
    def one(cls) -> Polynomial:
        return cls._from_set((ONE_MONOMIAL,))

    @classmethod
    def var(cls, v: Var, exponent: int = 1) -> Polynomial:
        if exponent == 0:
            return cls.one()
        if not 0 < exponent <= MAX_EXPONENT:
            raise DegreeOverflowError(f"exponent {exponent} out of range")
        return cls._from_set((((v, exponent),),))

    @classmethod
    def monomial(cls, exps: Mapping[Var, int]) -> Polynomial:
        mono: Monomial = ONE_MONOMIAL
        for v, e in exps.items():
            if e:
                mono = mono_mul(mono, ((v, e),))
        return cls._from_set((mono,))

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.one() if other & 1 else Polynomial.zero()
        if isinstance(other, Var):
            return Polynomial.var(other)
        return NotImplemented

    @property
    def terms(self) -> frozenset:
        return self._terms

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self._terms, key=grevlex_key, reverse=True)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._from_set(self._terms ^ other._terms)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: set = set()
        for a in self._terms:
            for b in other._terms:
                acc ^= {mono_mul(a, b)}
        return Polynomial._from_set(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Polynomial.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    def square(self) -> Polynomial:
        """Frobenius: squaring is additive in characteristic 2."""
        return Polynomial._from_set(mono_mul(t, t) for t in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_degree(t) for t in self._terms), default=-1)

    def variables(self) -> set[Var]:
        return {v for t in self._terms for v, _ in t}

    def max_index(self) -> int:
        return max((v.index for v in self.variables()), default=-1)

    def leading_term(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=grevlex_key)

    def is_variable(self) -> bool:
        if len(self._terms) != 1:
            return False
        (t,) = self._terms
        return len(t) == 1 and t[0][1] == 1

    def substitute(self, bindings: Mapping[Var, Polynomial | Var | int]) -> Polynomial:
        """Ring homomorphism image; variables without a binding map to themselves."""
        images = {v: Polynomial._coerce(p) for v, p in bindings.items()}
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] ** e
            return powers[key]

        acc: set = set()
        for t in self._terms:
            kept: Monomial = ONE_MONOMIAL
            factors = []
            for v, e in t:
                if v in images:
                    factors.append(power(v, e))
                else:
                    kept = mono_mul(kept, ((v, e),))
            term = Polynomial._from_set((kept,))
            for f in factors:
                term = term * f
                if not term:
                    break
            acc ^= term._terms
        return Polynomial._from_set(acc)

    def evaluate(self, point: Mapping[Var, FieldElem | int]):
        """Evaluate at a point over GF(2^k) (or GF(2) when all values are ints)."""
        field = next((a.field for a in point.values() if isinstance(a, FieldElem)), None)
        total = field.zero() if field is not None else 0
        for t in self._terms:
            val = field.one() if field is not None else 1
            for v, e in t:
                try:
                    a = point[v]
                except KeyError:
                    raise MissingBindingError(str(v)) from None
                if isinstance(a, int):
                    a = field(a & 1) if field is not None else a & 1
                val = val * (a ** e)
            total = total + val
        if field is None:
            return total & 1
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(_mono_str(t) for t in self.sorted_terms())

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


_TOKEN = re.compile(r"\s*(?:(?P<var>[xyzw]\d+)|(?P<int>\d+)|(?P<op>[-+*^]))")


def parse(text: str, max_index: int | None = None) -> Polynomial:
    """Parse ``x0^2 + y0^2*z0 + ...``; ``-`` is read as ``+`` (characteristic 2)."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError("unexpected character", text, start)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))

    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def factor() -> Polynomial:
        kind, val, start = take()
        if kind == "var":
            v = var_from_name(val)
            if max_index is not None and not v.is_aux and v.index > max_index:
                raise PolynomialSyntaxError(f"index of {val} exceeds order bound {max_index}", text, start)
            base = Polynomial.var(v)
        elif kind == "int":
            base = Polynomial.one() if int(val) & 1 else Polynomial.zero()
        else:
            raise PolynomialSyntaxError("expected a variable or constant", text, start)
        if peek()[1] == "^":
            take()
            kind, val, start = take()
            if kind != "int":
                raise PolynomialSyntaxError("expected an exponent", text, start)
            e = int(val)
            if e > MAX_EXPONENT:
                raise PolynomialSyntaxError(f"exponent exceeds {MAX_EXPONENT}", text, start)
            base = base ** e
        return base

    def product() -> Polynomial:
        p = factor()
        while peek()[1] == "*":
            take()
            p = p * factor()
        return p

    if peek()[1] in ("+", "-"):
        take()
    result = product()
    while peek()[1] in ("+", "-"):
        take()
        result = result + product()
    kind, val, start = peek()
    if kind != "end":
        raise PolynomialSyntaxError(f"unexpected token {val!r}", text, start)
    return result


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def substitute(p: Polynomial, bindings: Mapping[Var, Polynomial | Var | int]) -> Polynomial:
    return p.substitute(bindings)


def evaluate(p: Polynomial, point: Mapping[Var, FieldElem | int]):
    return p.evaluate(point)


def V(name: str) -> Polynomial:
    """Shorthand: ``V("y2")`` is the polynomial ``y2``."""
    return Polynomial.var(var_from_name(name))
