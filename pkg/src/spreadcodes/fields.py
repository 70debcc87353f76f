"""Arithmetic in prime fields F_q and extension fields F_q[x]/(p).

Elements are stored as packed integers: the element with coefficient vector
``(c_0, ..., c_{k-1})`` in the basis ``1, lam, ..., lam^(k-1)`` is the integer
``c_0 + c_1*q + ... + c_{k-1}*q^(k-1)``.  Integer order on packed values is the
lexicographic order used everywhere in the package (highest coefficient most
significant), and constants of F_q keep their own value when embedded.

Polynomials over F_q are plain coefficient lists, constant term first.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FieldTooLarge, InvalidParams, NotMonic, NotPrime, Reducible

__all__ = [
    "FieldElement",
    "FieldTables",
    "PrimeField",
    "ExtField",
    "is_prime",
    "make_extension_field",
    "find_irreducible",
    "irreducible_check",
    "frobenius",
    "TABLE_LIMIT",
]

# Fields up to this order get exp/log/Zech tables; matrix and polynomial
# kernels require them.
TABLE_LIMIT = 1 << 20
_EAGER_TABLES = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_q as lists ------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], q: int) -> list[int]:
    a = [c % q for c in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], q - 2, q)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % q
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % q
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % q for c in out])


def _pgcd(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    a, b = _trim([c % q for c in a]), _trim([c % q for c in b])
    while b:
        a, b = b, _pmod(a, b, q)
    if a:
        inv = pow(a[-1], q - 2, q)
        a = [c * inv % q for c in a]
    return a


def _ppow_mod(base: Sequence[int], e: int, m: Sequence[int], q: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, q)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, q), m, q)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, q), m, q)
    return result


def _check_poly(p_coeffs: Sequence[int], q: int) -> list[int]:
    p = [int(c) for c in p_coeffs]
    if any(c < 0 or c >= q for c in p):
        raise InvalidParams(f"coefficients of {p} must lie in [0, {q})")
    _trim(p)
    if len(p) < 2:
        raise InvalidParams(f"polynomial {list(p_coeffs)} must have degree >= 1")
    if p[-1] != 1:
        raise NotMonic(f"polynomial {list(p_coeffs)} is not monic")
    return p


def _smallest_factor_degree(p: list[int], q: int) -> int | None:
    """Distinct-degree search: smallest d with gcd(x^(q^d) - x, p) != 1, else None."""
    k = len(p) - 1
    h = [0, 1]
    for d in range(1, k // 2 + 1):
        h = _ppow_mod(h, q, p, q)  # h = x^(q^d) mod p
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % q
        if len(_pgcd(p, _trim(diff), q)) > 1:
            return d
    return None


def irreducible_check(p_coeffs: Sequence[int], q: int) -> bool:
    """True iff the monic polynomial ``p_coeffs`` is irreducible over F_q."""
    if not is_prime(q):
        raise NotPrime(q)
    p = _check_poly(p_coeffs, q)
    return _smallest_factor_degree(p, q) is None


@functools.lru_cache(maxsize=None)
def _find_irreducible(q: int, k: int) -> tuple[int, ...]:
    for idx in range(q**k):
        p = [(idx // q**i) % q for i in range(k)] + [1]
        if _smallest_factor_degree(p, q) is None:
            return tuple(p)
    raise AssertionError("unreachable: irreducibles exist for every degree")


def find_irreducible(q: int, k: int) -> list[int]:
    """Lexicographically smallest monic irreducible polynomial of degree ``k`` over F_q."""
    if not is_prime(q):
        raise NotPrime(q)
    if k < 1:
        raise InvalidParams("degree must be >= 1")
    return list(_find_irreducible(q, k))


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldTables:
    """Log tables w.r.t. a primitive element.

    ``exp`` has length ``2*(order-1)`` so that ``exp[log[a] + log[b]]`` needs no
    reduction.  ``zech[n] = log(1 + g^n)``, or -1 when that sum is zero.
    """

    q: int
    k: int
    order: int
    exp: list[int]
    log: list[int]
    zech: list[int]


class FiniteField:
    q: int
    k: int
    order: int

    zero = 0
    one = 1

    def __init__(self):
        self._tables: FieldTables | None = None
        self._kernel_tables: dict = {}

    # subclasses provide add, neg, mul and may override inv
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def frobenius(self, a: int, i: int) -> int:
        """``a^(q^i)`` by square-and-multiply."""
        return self.pow(a, self.q**i)

    def coeffs(self, a: int) -> tuple[int, ...]:
        q = self.q
        out = []
        for _ in range(self.k):
            a, c = divmod(a, q)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise InvalidParams(f"coefficient vector longer than {self.k}")
        value = 0
        for c in reversed(coeffs):
            value = value * self.q + int(c) % self.q
        return value

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise TypeError("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.q)
        return FieldElement(self, self.from_coeffs(value))

    def element(self, index: int) -> "FieldElement":
        """Element with the given packed index in ``[0, order)``."""
        if not 0 <= index < self.order:
            raise InvalidParams(f"index {index} outside [0, {self.order})")
        return FieldElement(self, index)

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.order):
            yield FieldElement(self, i)

    @property
    def tables(self) -> FieldTables:
        if self._tables is None:
            if self.order > TABLE_LIMIT:
                raise FieldTooLarge(
                    f"field of order {self.order} exceeds table limit {TABLE_LIMIT}"
                )
            self._tables = self._build_tables()
        return self._tables

    def _slow_mul(self, a: int, b: int) -> int:
        return self.mul(a, b)

    def _primitive_element(self) -> int:
        n = self.order - 1
        factors = _prime_factors(n)
        candidates = ([self.q] if self.k > 1 else []) + list(range(1, self.order))
        for g in candidates:
            if g == 0 or (n > 1 and g == 1):
                continue
            if all(self._slow_pow(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element found")

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def _build_tables(self) -> FieldTables:
        order, q = self.order, self.q
        n = order - 1
        g = self._primitive_element()
        exp = [0] * (2 * n) if n else [1, 1]
        log = [-1] * order
        cur = 1
        for i in range(n):
            exp[i] = cur
            log[cur] = i
            cur = self._slow_mul(cur, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        zech = [-1] * max(n, 1)
        for e in range(n):
            a = exp[e]
            c0 = a % q
            plus_one = a - c0 + (c0 + 1) % q
            zech[e] = log[plus_one] if plus_one else -1
        return FieldTables(q=q, k=self.k, order=order, exp=exp, log=log, zech=zech)


class PrimeField(FiniteField):
    """The prime field F_q with elements ``0..q-1``."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise NotPrime(q)
        super().__init__()
        self.q = q
        self.k = 1
        self.order = q

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return -a % self.q

    def mul(self, a, b):
        return a * b % self.q

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.q - 2, self.q)

    def frobenius(self, a, i):
        return a

    def __eq__(self, other):
        return type(other) is PrimeField and other.q == self.q

    def __hash__(self):
        return hash(("F", self.q))

    def __repr__(self):
        return f"PrimeField({self.q})"


class ExtField(FiniteField):
    """F_q[x]/(p) for a monic irreducible ``p`` of degree k; ``gen`` is the class of x."""

    def __init__(self, base: PrimeField, p_coeffs: Sequence[int], *, check: bool = True):
        super().__init__()
        q = base.q
        p = _check_poly(p_coeffs, q)
        if check:
            d = _smallest_factor_degree(p, q)
            if d is not None:
                raise Reducible(p, d)
        self.base = base
        self.q = q
        self.k = len(p) - 1
        self.order = q**self.k
        self.p_coeffs = tuple(p)
        # x^k = -(p_0 + ... + p_{k-1} x^{k-1})
        self._reduce = tuple(-c % q for c in p[:-1])
        if self.order <= _EAGER_TABLES:
            self._tables = self._build_tables()

    @property
    def gen(self) -> "FieldElement":
        if self.k == 1:
            return FieldElement(self, self._reduce[0])
        return FieldElement(self, self.q)

    def add(self, a, b):
        q = self.q
        if q == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % q
        out, place = 0, 1
        while a or b:
            a, ca = divmod(a, q)
            b, cb = divmod(b, q)
            out += ((ca + cb) % q) * place
            place *= q
        return out

    def neg(self, a):
        q = self.q
        if q == 2:
            return a
        out, place = 0, 1
        while a:
            a, c = divmod(a, q)
            out += (-c % q) * place
            place *= q
        return out

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        t = self._tables
        if t is not None:
            return t.exp[t.log[a] + t.log[b]]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        t = self._tables
        if t is not None:
            n = self.order - 1
            return t.exp[(n - t.log[a]) % n] if n else 1
        return super().inv(a)

    def _slow_mul(self, a: int, b: int) -> int:
        q, k = self.q, self.k
        da, db = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        red = self._reduce
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top] % q
            if c:
                base = top - k
                for j, r in enumerate(red):
                    prod[base + j] += c * r
        value = 0
        for c in reversed(prod[:k]):
            value = value * q + c % q
        return value

    def __eq__(self, other):
        return type(other) is ExtField and other.p_coeffs == self.p_coeffs and other.q == self.q

    def __hash__(self):
        return hash(("E", self.q, self.p_coeffs))

    def __repr__(self):
        return f"ExtField(q={self.q}, p={list(self.p_coeffs)})"


class FieldElement:
    """An immutable element of a finite field, wrapping its packed index."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, i))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __lt__(self, other: "FieldElement"):
        return self.value < other.value

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.value}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("lam" if i == 1 else f"lam^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) if terms else "0"


def raw_value(field: "FiniteField", v) -> int:
    """Packed index of ``v``: a FieldElement, a packed int, or a coefficient sequence."""
    if isinstance(v, FieldElement):
        if v.field != field:
            raise TypeError("entry belongs to another field")
        return v.value
    if isinstance(v, int):
        if field.k == 1:
            return v % field.q
        if not 0 <= v < field.order:
            raise InvalidParams(f"packed entry {v} outside [0, {field.order})")
        return v
    return field.from_coeffs(v)


def make_extension_field(q: int, p_coeffs: Sequence[int]) -> ExtField:
    """Build F_q[x]/(p); raises NotPrime, NotMonic or Reducible."""
    return ExtField(PrimeField(q), p_coeffs)


def frobenius(a: FieldElement, i: int) -> FieldElement:
    """``a^(q^i)`` for an element of F_(q^k)."""
    return a.frobenius(i)
