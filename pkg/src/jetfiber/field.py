"""Finite fields GF(2^k) in a fixed polynomial basis.

Elements are stored as integers whose bits are the coefficients of the
polynomial basis ``1, a, a^2, ...`` where ``a`` is a root of the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_DEGREE = 16


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a: int, mod: int) -> int:
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


def _is_irreducible(poly: int) -> bool:
    deg = poly.bit_length() - 1
    for d in range(1, deg // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _polymod(poly, cand) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(k: int) -> int:
    """Smallest irreducible polynomial of degree ``k`` over GF(2), as a bit mask."""
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {k}")
    for poly in range((1 << k) | 1, 1 << (k + 1), 2):
        if _is_irreducible(poly):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class GF2k:
    """The field GF(2^k)."""

    k: int

    def __post_init__(self):
        default_modulus(self.k)

    @property
    def modulus(self) -> int:
        return default_modulus(self.k)

    @property
    def order(self) -> int:
        return 1 << self.k

    def __call__(self, value: int) -> FieldElem:
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an element of GF(2^{self.k})")
        return FieldElem(self, value)

    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def generator(self) -> FieldElem:
        """The class of ``a`` (a primitive element when the modulus is primitive)."""
        return FieldElem(self, _polymod(2, self.modulus))

    def elements(self):
        return [FieldElem(self, v) for v in range(self.order)]

    def mul(self, a: int, b: int) -> int:
        return _polymod(_clmul(a, b), self.modulus)

    def __repr__(self):
        return f"GF2k({self.k})"


@dataclass(frozen=True)
class FieldElem:
    field: GF2k
    value: int

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("mixing elements of different fields")
            return other
        if isinstance(other, int):
            return FieldElem(self.field, other & 1)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.value ^ other.value)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = 1, self.value
        while e:
            if e & 1:
                result = self.field.mul(result, base)
            base = self.field.mul(base, base)
            e >>= 1
        return FieldElem(self.field, result)

    def inverse(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def frobenius(self) -> FieldElem:
        return self * self

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other and other in (0, 1)
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF(2^{self.field.k})<{self.value:#x}>"
