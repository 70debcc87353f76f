"""Spread codes: construction, encoding, enumeration, the subspace distance,
codeword membership and the embedding of Grassmannians over F_(q^k).

A code of parameters (q, k, r) lives in the Grassmannian of k-dimensional
subspaces of F_q^n, n = r*k.  Its codewords are the row spaces of
``[0 ... 0 I_k A_{i+1} ... A_r]`` with every ``A_j`` in the algebra F_q[P]
generated by the companion matrix P of an irreducible p of degree k.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    EnumerationTooLarge,
    InvalidParams,
    NotPrime,
    VerificationFailed,
)
from .fields import ExtField, FieldElement, FiniteField, PrimeField, find_irreducible, is_prime
from .fields import raw_value
from .matrices import Diagonalizer, Matrix, companion, diagonalizer

__all__ = [
    "Subspace",
    "Message",
    "SpreadCode",
    "build_code",
    "encode",
    "enumerate_codewords",
    "enumerate_grassmannian",
    "subspace_distance",
    "intersection_dim",
    "is_codeword",
    "codeword_criteria",
    "embed",
    "verify_spread",
    "DEFAULT_ENUMERATION_BOUND",
]

DEFAULT_ENUMERATION_BOUND = 10**6


class Subspace:
    """Row space of a matrix, stored as its RREF basis without zero rows.

    Two subspaces are equal iff their canonical bases are identical.
    """

    __slots__ = ("basis",)

    def __init__(self, basis: Matrix):
        self.basis = basis

    @classmethod
    def from_matrix(cls, M: Matrix) -> "Subspace":
        red, rank, _ = M.rref()
        return cls(Matrix._wrap(M.field, red.rows[:rank], M.ncols))

    @classmethod
    def from_rows(cls, field: FiniteField, rows, ambient_dim: int | None = None) -> "Subspace":
        return cls.from_matrix(Matrix(field, rows, ncols=ambient_dim))

    @property
    def field(self) -> FiniteField:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def ambient_dim(self) -> int:
        return self.basis.ncols

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.ambient_dim}, basis={[list(r) for r in self.basis.rows]})"

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """Every nonzero vector of the subspace (packed entries)."""
        f = self.field
        rows = self.basis.rows
        n = self.ambient_dim
        for combo in itertools.product(range(f.order), repeat=self.dim):
            if not any(combo):
                continue
            v = [0] * n
            for c, row in zip(combo, rows):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            v[j] = f.add(v[j], f.mul(c, x))
            yield tuple(v)

    def contains(self, vector: Sequence) -> bool:
        v = Matrix(self.field, [vector], ncols=self.ambient_dim)
        return self.basis.vstack(v).rank() == self.dim

    def to_json(self) -> dict:
        return self.basis.to_json()

    @classmethod
    def from_json(cls, data: dict, field: FiniteField | None = None) -> "Subspace":
        return cls.from_matrix(Matrix.from_json(data, field))


def intersection_dim(A: Subspace, B: Subspace) -> int:
    if A.ambient_dim != B.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {A.ambient_dim} and {B.ambient_dim} differ")
    return A.dim + B.dim - A.basis.vstack(B.basis).rank()


def subspace_distance(A: Subspace, B: Subspace) -> int:
    """``dim(A+B) - dim(A & B)``, computed as ``2 dim(A+B) - dim A - dim B``."""
    if A.ambient_dim != B.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {A.ambient_dim} and {B.ambient_dim} differ")
    return 2 * A.basis.vstack(B.basis).rank() - A.dim - B.dim


@dataclass(frozen=True)
class Message:
    """Codeword label: the identity block sits in block ``block_index`` (1-based)
    and ``tail`` holds the r - block_index field elements mapped to the later blocks."""

    block_index: int
    tail: tuple[FieldElement, ...] = ()

    def to_json(self) -> dict:
        return {"block_index": self.block_index, "tail": [list(t.coeffs) for t in self.tail]}


class SpreadCode:
    """Immutable handle for a spread code with parameters (q, k, r)."""

    def __init__(self, q: int, k: int, r: int, p: Sequence[int], *,
                 enumeration_bound: int = DEFAULT_ENUMERATION_BOUND):
        self.q, self.k, self.r = q, k, r
        self.n = r * k
        self.base = PrimeField(q)
        self.ext = ExtField(self.base, p)
        self.p = self.ext.p_coeffs
        self.P = companion(self.p, self.base)
        self.order = q**k
        self.cardinality = (q**self.n - 1) // (q**k - 1)
        self.enumeration_bound = enumeration_bound
        # phi(f) = sum f_i P^i
        self._powers = [Matrix.identity(self.base, k)]
        for _ in range(1, k):
            self._powers.append(self._powers[-1] @ self.P)
        self.diag: Diagonalizer | None = None
        if r == 2 and k % 2 == 1:
            self.diag = diagonalizer(self.ext, self.P)

    def __repr__(self):
        return f"SpreadCode(q={self.q}, k={self.k}, r={self.r}, p={list(self.p)})"

    @property
    def type_parameters(self) -> tuple[int, int, float, int]:
        """``[n, k, log_q |S|, 2k]``."""
        return self.n, self.k, math.log(self.cardinality, self.q), 2 * self.k

    # -- the isomorphism F_(q^k) -> F_q[P] --------------------------------

    def phi(self, a) -> Matrix:
        """Matrix ``f(P)`` for the element ``a = f(lam)`` of F_(q^k)."""
        coeffs = self.ext.coeffs(raw_value(self.ext, a))
        k, q = self.k, self.q
        rows = [[0] * k for _ in range(k)]
        for c, Pi in zip(coeffs, self._powers):
            if c:
                for i in range(k):
                    ri, pi = rows[i], Pi.rows[i]
                    for j in range(k):
                        if pi[j]:
                            ri[j] = (ri[j] + c * pi[j]) % q
        return Matrix._wrap(self.base, rows, k)

    def phi_inverse(self, A: Matrix) -> FieldElement | None:
        """Element ``a`` with ``phi(a) == A``, or None if A is not in F_q[P]."""
        # row 0 of P^i is e_i, so row 0 of f(P) lists the coefficients of f
        a = self.ext.from_coeffs(A.rows[0])
        return FieldElement(self.ext, a) if self.phi(a) == A else None

    def in_algebra(self, A: Matrix) -> bool:
        return self.phi_inverse(A) is not None

    # -- messages ---------------------------------------------------------

    def message_from_int(self, m: int) -> Message:
        if not 0 <= m < self.cardinality:
            raise InvalidParams(f"message index {m} outside [0, {self.cardinality})")
        Q = self.order
        for i in range(1, self.r + 1):
            size = Q ** (self.r - i)
            if m < size:
                tail = []
                for _ in range(self.r - i):
                    m, d = divmod(m, Q)
                    tail.append(FieldElement(self.ext, d))
                return Message(i, tuple(reversed(tail)))
            m -= size
        raise AssertionError("unreachable")

    def message_to_int(self, msg: Message) -> int:
        self._check_message(msg)
        Q = self.order
        offset = sum(Q ** (self.r - j) for j in range(1, msg.block_index))
        value = 0
        for t in msg.tail:
            value = value * Q + t.value
        return offset + value

    def _check_message(self, msg: Message):
        if not 1 <= msg.block_index <= self.r:
            raise InvalidParams(f"block index {msg.block_index} outside 1..{self.r}")
        if len(msg.tail) != self.r - msg.block_index:
            raise InvalidParams(
                f"tail length {len(msg.tail)} != r - i = {self.r - msg.block_index}"
            )

    def message_of(self, C: Subspace) -> Message:
        """Message of a codeword (raises InvalidParams if C is not a codeword)."""
        k = self.k
        if C.dim != k or C.ambient_dim != self.n:
            raise InvalidParams("not a codeword shape")
        rows = C.basis.rows
        lead = next(j for j, v in enumerate(rows[0]) if v) // k
        eye = Matrix.identity(self.base, k)
        if C.basis.columns(lead * k, lead * k + k) != eye or any(
            any(r[: lead * k]) for r in rows
        ):
            raise InvalidParams("subspace is not a codeword")
        tail = []
        for b in range(lead + 1, self.r):
            a = self.phi_inverse(C.basis.columns(b * k, b * k + k))
            if a is None:
                raise InvalidParams("subspace is not a codeword")
            tail.append(a)
        return Message(lead + 1, tuple(tail))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"q": self.q, "k": self.k, "r": self.r, "p": list(self.p)}

    @classmethod
    def from_json(cls, data: dict, **kw) -> "SpreadCode":
        return build_code(int(data["q"]), int(data["k"]), int(data["r"]), data.get("p"), **kw)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @cached_property
    def _codeword_set(self) -> frozenset:
        return frozenset(enumerate_codewords(self))


def build_code(q: int, k: int, r: int, p: Sequence[int] | None = None, **kw) -> SpreadCode:
    """Spread code of F_q^(rk); ``p`` defaults to the smallest irreducible of degree k."""
    if not is_prime(q):
        raise NotPrime(q)
    if k < 1 or r < 2:
        raise InvalidParams(f"need k >= 1 and r >= 2, got k={k}, r={r}")
    if p is None:
        p = find_irreducible(q, k)
    elif len(p) - 1 != k:
        raise InvalidParams(f"polynomial {list(p)} does not have degree {k}")
    return SpreadCode(q, k, r, p, **kw)


def encode(code: SpreadCode, msg: Message | int) -> Subspace:
    """Codeword ``rowsp[0_k .. 0_k I_k phi(a_{i+1}) .. phi(a_r)]`` (already canonical)."""
    if isinstance(msg, int):
        msg = code.message_from_int(msg)
    code._check_message(msg)
    k = code.k
    blocks = [Matrix.zeros(code.base, k, k)] * (msg.block_index - 1)
    blocks.append(Matrix.identity(code.base, k))
    blocks.extend(code.phi(a) for a in msg.tail)
    rows = [sum((b.rows[i] for b in blocks), ()) for i in range(k)]
    return Subspace(Matrix._wrap(code.base, rows, code.n))


def enumerate_codewords(code: SpreadCode, bound: int | None = None) -> Iterator[Subspace]:
    """Every codeword once: block index ascending, tails in lexicographic order."""
    bound = code.enumeration_bound if bound is None else bound
    if code.cardinality > bound:
        raise EnumerationTooLarge(f"{code.cardinality} codewords exceed bound {bound}")
    for m in range(code.cardinality):
        yield encode(code, code.message_from_int(m))


def enumerate_grassmannian(field: FiniteField, k: int, n: int,
                           bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[Subspace]:
    """All k-dimensional subspaces of field^n, via their RREF bases."""
    total = 0
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pset]
        total += field.order ** len(free)
    if total > bound:
        raise EnumerationTooLarge(f"{total} subspaces exceed bound {bound}")
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pset]
        for values in itertools.product(range(field.order), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(Matrix._wrap(field, rows, n))


def _check_shape(code: SpreadCode, U: Subspace):
    if U.ambient_dim != code.n:
        raise AmbientMismatch(f"ambient dimension {U.ambient_dim} != n = {code.n}")
    if U.dim != code.k:
        raise DimensionMismatch(f"subspace has dimension {U.dim}, expected k = {code.k}")


def codeword_criteria(code: SpreadCode, U: Subspace) -> dict[str, bool]:
    """Evaluate the two-block membership criteria separately.

    Writing the basis as ``[C1 C2]``: if C1 is singular every criterion is
    ``C1 == 0``.  Otherwise, with ``A = C1^-1 C2``, ``algebra`` tests A in
    F_q[P] directly, ``commutes`` tests ``AP == PA`` and ``diagonal`` tests
    that ``S A S^-1`` is diagonal.
    """
    if code.r != 2:
        raise InvalidParams("criteria are stated for two-block codes (r = 2)")
    _check_shape(code, U)
    k = code.k
    C1 = U.basis.columns(0, k)
    C2 = U.basis.columns(k, 2 * k)
    if C1.rank() < k:
        z = C1.is_zero()
        return {"algebra": z, "commutes": z, "diagonal": z}
    A = C1.inverse() @ C2
    out = {"algebra": code.in_algebra(A), "commutes": A @ code.P == code.P @ A}
    if code.diag is not None:
        d = code.diag
        out["diagonal"] = (d.S @ A.lift(code.ext) @ d.S_inv).is_diagonal()
    return out


def is_codeword(code: SpreadCode, U: Subspace) -> bool:
    """Membership test; for r = 2 the algebraic criteria are cross-checked."""
    _check_shape(code, U)
    if code.r != 2:
        return U in code._codeword_set
    verdicts = codeword_criteria(code, U)
    values = set(verdicts.values())
    if len(values) != 1:
        raise VerificationFailed(f"membership criteria disagree: {verdicts}")
    return values.pop()


def embed(M: Matrix, P: Matrix | None = None) -> Matrix:
    """Replace each entry f(lam) of an l x m matrix over F_(q^k) by the block f(P)."""
    ext = M.field
    if not isinstance(ext, ExtField):
        raise InvalidParams("embedding needs a matrix over an extension field")
    base = ext.base
    if P is None:
        P = companion(ext.p_coeffs, base)
    k = ext.k
    powers = [Matrix.identity(base, k)]
    for _ in range(1, k):
        powers.append(powers[-1] @ P)
    q = ext.q
    out = [[0] * (M.ncols * k) for _ in range(M.nrows * k)]
    for bi, row in enumerate(M.rows):
        for bj, v in enumerate(row):
            for c, Pi in zip(ext.coeffs(v), powers):
                if c:
                    for i in range(k):
                        orow = out[bi * k + i]
                        for j, x in enumerate(Pi.rows[i]):
                            if x:
                                orow[bj * k + j] = (orow[bj * k + j] + c * x) % q
    return Matrix._wrap(base, out, M.ncols * k)


def verify_spread(code: SpreadCode) -> dict:
    """Exhaustive spread checks: count, vector partition, pairwise distances."""
    words = list(enumerate_codewords(code))
    q, n = code.q, code.n
    cover = [0] * q**n
    for w in words:
        for v in w.vectors():
            idx = 0
            for x in reversed(v):
                idx = idx * q + x
            cover[idx] += 1
    uncovered = sum(1 for c in cover[1:] if c == 0)
    multiply = sum(1 for c in cover[1:] if c > 1)
    distances = set()
    for a, b in itertools.combinations(words, 2):
        distances.add(subspace_distance(a, b))
    return {
        "q": code.q, "k": code.k, "r": code.r, "n": n,
        "codewords": len(words),
        "expected_codewords": code.cardinality,
        "uncovered_vectors": uncovered,
        "multiply_covered_vectors": multiply,
        "pairwise_distances": sorted(distances),
        "ok": len(words) == code.cardinality and uncovered == 0 and multiply == 0
        and distances <= {2 * code.k},
    }
