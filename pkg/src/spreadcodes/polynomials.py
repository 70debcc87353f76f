"""Univariate polynomials over a finite field: Euclidean gcd, ``x^(q^k) mod m``
by repeated squaring, and root finding in the field."""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from . import kernels
from .errors import InvalidParams, SearchSpaceTooLarge
from .fields import FieldElement, FiniteField
from .fields import raw_value as _raw

__all__ = [
    "UniPoly",
    "poly_gcd",
    "powmod",
    "frobenius_power_mod",
    "roots_in_field",
    "DEFAULT_SCAN_BOUND",
]

DEFAULT_SCAN_BOUND = 1 << 20


class UniPoly:
    """Polynomial with coefficients in ``field``, constant term first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable = ()):
        c = [_raw(field, v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def _wrap(cls, field, coeffs) -> "UniPoly":
        p = object.__new__(cls)
        p.field = field
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def x(cls, field) -> "UniPoly":
        return cls._wrap(field, (0, 1))

    @classmethod
    def constant(cls, field, c) -> "UniPoly":
        return cls(field, [c])

    @classmethod
    def monomial(cls, field, degree: int, c=1) -> "UniPoly":
        return cls(field, [0] * degree + [c])

    @classmethod
    def from_roots(cls, field, roots: Iterable) -> "UniPoly":
        out = cls._wrap(field, (1,))
        for r in roots:
            out = out * cls._wrap(field, (field.neg(_raw(field, r)), 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lead(self) -> FieldElement:
        return FieldElement(self.field, self.coeffs[-1] if self.coeffs else 0)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        s = self.field.inv(self.coeffs[-1])
        mul = self.field.mul
        return UniPoly._wrap(self.field, [mul(s, c) for c in self.coeffs])

    def _other(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise TypeError("polynomials over different fields")
            return other
        return UniPoly(self.field, [other])

    def __add__(self, other):
        o = self._other(other)
        return UniPoly._wrap(self.field, kernels.poly_add(list(self.coeffs), list(o.coeffs), self.field))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return UniPoly._wrap(self.field, kernels.poly_sub(list(self.coeffs), list(o.coeffs), self.field))

    def __neg__(self):
        neg = self.field.neg
        return UniPoly._wrap(self.field, [neg(c) for c in self.coeffs])

    def __mul__(self, other):
        o = self._other(other)
        return UniPoly._wrap(self.field, kernels.poly_mul(list(self.coeffs), list(o.coeffs), self.field))

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._other(other)
        quo, rem = kernels.poly_divmod(list(self.coeffs), list(o.coeffs), self.field)
        return UniPoly._wrap(self.field, quo), UniPoly._wrap(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x) -> FieldElement:
        v = kernels.poly_eval(list(self.coeffs), _raw(self.field, x), self.field)
        return FieldElement(self.field, v)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                e = FieldElement(self.field, c)
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"({e})*{mono}" if mono and c != 1 else (mono or f"({e})"))
        return "UniPoly(" + " + ".join(reversed(terms)) + ")"

    def to_json(self) -> list:
        f = self.field
        if f.k == 1:
            return list(self.coeffs)
        return [list(f.coeffs(c)) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: FiniteField, data: Sequence) -> "UniPoly":
        if field.k == 1:
            return cls(field, [int(c) for c in data])
        return cls(field, [field.from_coeffs(c) for c in data])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    if a.field != b.field:
        raise TypeError("polynomials over different fields")
    if not a and not b:
        raise InvalidParams("gcd(0, 0) is undefined")
    return UniPoly._wrap(a.field, kernels.poly_gcd(list(a.coeffs), list(b.coeffs), a.field))


def powmod(base: UniPoly, e: int, m: UniPoly) -> UniPoly:
    """``base^e mod m`` by square-and-multiply."""
    field = m.field
    mc = list(m.coeffs)
    result = kernels.poly_divmod([1], mc, field)[1]
    b = kernels.poly_divmod(list(base.coeffs), mc, field)[1]
    while e:
        if e & 1:
            result = kernels.poly_mulmod(result, b, mc, field)
        e >>= 1
        if e:
            b = kernels.poly_mulmod(b, b, mc, field)
    return UniPoly._wrap(field, result)


def frobenius_power_mod(m: UniPoly) -> UniPoly:
    """``x^(q^k) mod m`` for ``m`` over F_(q^k), never forming the huge power."""
    if m.degree < 1:
        raise InvalidParams("modulus must have degree >= 1")
    return powmod(UniPoly.x(m.field), m.field.order, m)


def _split_roots(h: UniPoly, rng: random.Random, budget: list[int]) -> list[int]:
    # h is monic, squarefree and splits into distinct linear factors over the field
    field = h.field
    if h.degree == 0:
        return []
    if h.degree == 1:
        return [field.neg(h.coeffs[0])]
    q, k, order = field.q, field.k, field.order
    while True:
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchSpaceTooLarge("root splitting exceeded its iteration budget")
        delta = rng.randrange(order)
        if q == 2:
            # absolute trace of delta*x: sum of (delta x)^(2^i), i < k
            t = UniPoly(field, [0, delta]) if delta else UniPoly(field, [0, 1])
            t = t % h
            acc = t
            cur = t
            for _ in range(k - 1):
                cur = powmod(cur, 2, h)
                acc = acc + cur
            w = acc
        else:
            w = powmod(UniPoly(field, [delta, 1]), (order - 1) // 2, h) - UniPoly.constant(field, 1)
        if not w:
            continue
        d = poly_gcd(h, w)
        if 0 < d.degree < h.degree:
            return _split_roots(d, rng, budget) + _split_roots((h // d).monic(), rng, budget)


def roots_in_field(
    g: UniPoly,
    *,
    scan_bound: int = DEFAULT_SCAN_BOUND,
    seed: int = 0,
    split_budget: int = 10_000,
) -> list[FieldElement]:
    """Distinct roots of ``g`` in its coefficient field, in ascending packed order.

    ``g`` is first replaced by ``gcd(g, x^(q^k) - x)``.  Fields of order up to
    ``scan_bound`` are then scanned exhaustively; larger ones use randomized
    gcd splitting seeded by ``seed``.
    """
    if not g:
        raise InvalidParams("roots of the zero polynomial are undefined")
    field = g.field
    if g.degree == 0:
        return []
    h = poly_gcd(frobenius_power_mod(g) - UniPoly.x(field), g)
    if h.degree == 0:
        return []
    if h.degree == 1:
        roots = [field.neg(h.coeffs[0])]
    elif field.order <= scan_bound:
        roots = kernels.scan_roots(list(h.coeffs), field)
    else:
        roots = _split_roots(h, random.Random(seed), [split_budget])
    return [FieldElement(field, r) for r in sorted(set(roots))]
