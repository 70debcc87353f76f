"""Unique decoding of spread codes in Gr(k, 2k) for odd k.

Pipeline for a received space ``R = rowsp[R1 R2]``:

* rank(R1) <= (k-1)/2: the only codeword in range is ``rowsp[0 I]``.
* (k+1)/2 <= rank(R1) < k: complete R1 to an invertible matrix by unit rows
  and decode that.  The completed space can drift out of range of the true
  codeword, so the answer is rechecked against R; on a miss, R is sheared by
  ``[[I, 0], [B, I]]`` with B in F_q[P] (an automorphism of the spread) until
  its left block is invertible, decoded, and sheared back.
* R1 invertible: ``Y = S (R1^-1 R2) S^-1``.  If Y is diagonal, R is a
  codeword.  Otherwise find ``x0 = f(lam)`` such that
  ``Y - diag(x0, x0^q, ..., x0^(q^(k-1)))`` has rank <= (k-1)/2, either from
  a single linear equation (fast path) or from roots of
  ``gcd(x^(q^k) - x, m)`` where m is a minor of the substituted matrix.
  The codeword is ``rowsp[I f(P)]``.

Every candidate is validated against the rank bound before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from . import kernels
from .errors import (
    AmbientMismatch,
    DecodeFailure,
    DimensionMismatch,
    InvalidParams,
    UnsupportedParams,
    VerificationFailed,
)
from .fields import ExtField, FieldElement
from .matrices import Matrix
from .polynomials import UniPoly, frobenius_power_mod, poly_gcd, roots_in_field
from .spreadcode import Message, SpreadCode, Subspace, intersection_dim, subspace_distance

__all__ = [
    "ALREADY_CODEWORD",
    "LOW_RANK_R1",
    "COMPLETED_R1",
    "FAST_PATH",
    "GCD_PATH",
    "DecodeOutcome",
    "SubstitutedMatrix",
    "Classification",
    "classify_and_complete",
    "fast_path",
    "recover_f_lambda",
    "decode",
]

ALREADY_CODEWORD = "AlreadyCodeword"
LOW_RANK_R1 = "LowRankR1"
COMPLETED_R1 = "CompletedR1"
FAST_PATH = "FastPath"
GCD_PATH = "GcdPath"

MODES = ("auto", "gcd", "both")

# gcd chains stop once the common factor is at most this degree
SMALL_GCD_DEGREE = 8


@dataclass
class DecodeOutcome:
    codeword: Subspace
    message: Message
    case_tag: str
    error_rank: int
    diagnostics: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "codeword": self.codeword.to_json(),
            "message": self.message.to_json(),
            "case_tag": self.case_tag,
            "error_rank": self.error_rank,
            "diagnostics": self.diagnostics,
        }


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class SubstitutedMatrix:
    """``X = Y - diag(x, x^q, ..., x^(q^(k-1)))`` with x a formal unknown."""

    Y: Matrix

    @property
    def field(self) -> ExtField:
        return self.Y.field

    @property
    def k(self) -> int:
        return self.Y.nrows

    def evaluate(self, x0) -> Matrix:
        f = self.field
        x = x0.value if isinstance(x0, FieldElement) else int(x0)
        rows = [list(r) for r in self.Y.rows]
        for j in range(self.k):
            rows[j][j] = f.sub(rows[j][j], f.frobenius(x, j))
        return Matrix._wrap(f, rows, self.k)

    def rank_at(self, x0) -> int:
        return self.evaluate(x0).rank()

    def det_poly(self, row_set: Sequence[int], col_set: Sequence[int]) -> UniPoly:
        """Determinant of ``X[row_set, col_set]`` as a polynomial in x.

        With J the shared indices, the determinant is multilinear in the
        unknown diagonal entries: it expands as the sum over subsets T of J
        of ``(-1)^|T| * prod_{j in T} x^(q^j)`` times the minor with T removed.
        """
        f = self.field
        rows_sorted, cols_sorted = sorted(row_set), sorted(col_set)
        if len(rows_sorted) != len(cols_sorted):
            raise InvalidParams("minor needs equally many rows and columns")
        shared = sorted(set(rows_sorted) & set(cols_sorted))
        rows0 = [i for i in rows_sorted if i not in shared]
        cols0 = [j for j in cols_sorted if j not in shared]
        order_r, order_c = rows0 + shared, cols0 + shared
        sign = _perm_sign([rows_sorted.index(i) for i in order_r]) * _perm_sign(
            [cols_sorted.index(j) for j in order_c]
        )
        Y = self.Y.rows
        q = f.q
        terms: dict[int, int] = {}
        for size in range(len(shared) + 1):
            for T in itertools.combinations(shared, size):
                keep = [j for j in shared if j not in T]
                rr, cc = rows0 + keep, cols0 + keep
                d = kernels.det([[Y[i][j] for j in cc] for i in rr], f) if rr else 1
                if not d:
                    continue
                if (size + (sign < 0)) % 2:
                    d = f.neg(d)
                e = sum(q**j for j in T)
                terms[e] = f.add(terms.get(e, 0), d)
        if not terms:
            return UniPoly._wrap(f, ())
        coeffs = [0] * (max(terms) + 1)
        for e, c in terms.items():
            coeffs[e] = c
        return UniPoly(f, coeffs)


@dataclass(frozen=True)
class Classification:
    """``kind`` is "LowRank", "Completed" or "Invertible"; for the last two
    ``R1``/``R2`` hold the (possibly completed) halves with R1 invertible."""

    kind: str
    rank_r1: int
    R1: Matrix | None = None
    R2: Matrix | None = None


def classify_and_complete(R1: Matrix, R2: Matrix) -> Classification:
    k = R1.nrows
    if R1.shape != (k, k) or R2.shape != (k, k):
        raise InvalidParams("R1 and R2 must both be k x k")
    full = R1.hstack(R2)
    red, rank, pivots = full.rref()
    if rank != k:
        raise DimensionMismatch(f"[R1 R2] has rank {rank}, expected {k}")
    t = sum(1 for p in pivots if p < k)
    if t <= (k - 1) // 2:
        return Classification("LowRank", t)
    if t == k:
        return Classification("Invertible", t, R1, R2)
    # rows with a pivot inside R1 come first in RREF; drop the [0 E] part
    top = red.rows[:t]
    missing = [j for j in range(k) if j not in pivots[:t]]
    r1 = [row[:k] for row in top] + [tuple(1 if c == j else 0 for c in range(k)) for j in missing]
    r2 = [row[k:] for row in top] + [(0,) * k for _ in missing]
    field = R1.field
    return Classification("Completed", t, Matrix._wrap(field, r1, k), Matrix._wrap(field, r2, k))


def _validates(X: SubstitutedMatrix, x0: int) -> bool:
    return X.rank_at(x0) <= (X.k - 1) // 2


def fast_path(X: SubstitutedMatrix, t_minor: tuple[Sequence[int], Sequence[int]]) -> FieldElement | None:
    """Solve the one-unknown equation from extending a nonzero off-diagonal minor.

    Extending by an index j in neither set gives ``c0 + c1 x^(q^j) = 0``; the
    candidate ``x = (-c0/c1)^(q^(k-j))`` is returned only if it satisfies the
    rank bound, otherwise None (the caller falls back to the gcd path).
    """
    rows, cols = list(t_minor[0]), list(t_minor[1])
    f, k = X.field, X.k
    used = set(rows) | set(cols)
    free = [j for j in range(k) if j not in used]
    if not free:
        return None
    j = free[0]
    m = X.det_poly(rows + [j], cols + [j])
    e = f.q**j
    c1 = m.coeffs[e] if len(m.coeffs) > e else 0
    if not c1:
        return None
    c0 = m.coeffs[0] if m.coeffs else 0
    alpha = f.neg(f.div(c0, c1))
    x0 = f.frobenius(alpha, (k - j) % k)
    return FieldElement(f, x0) if _validates(X, x0) else None


@dataclass
class _Recovery:
    value: FieldElement | None = None
    path: str | None = None
    minor_size: int = 0
    minor: tuple = ((), ())
    minors_tried: int = 0
    fast_candidate: FieldElement | None = None
    fast_status: str = "skipped"
    gcd_candidate: FieldElement | None = None
    gcd_iterations: int = 0
    gcd_degree: int | None = None
    roots_tested: int = 0

    def diagnostics(self) -> dict:
        out = {
            "max_offdiag_minor": self.minor_size,
            "minor_rows": list(self.minor[0]),
            "minor_cols": list(self.minor[1]),
            "minors_tried": self.minors_tried,
            "fast_path": self.fast_status,
            "gcd_iterations": self.gcd_iterations,
            "gcd_degree": self.gcd_degree,
            "roots_tested": self.roots_tested,
        }
        if self.fast_candidate is not None and self.gcd_candidate is not None:
            out["paths_agree"] = self.fast_candidate == self.gcd_candidate
        return out


def _gcd_minors(X: SubstitutedMatrix, t: int, first: tuple) -> Iterator[tuple[list[int], list[int]]]:
    """Row/column sets of size (k+1)/2: nonzero size-t off-diagonal minors
    extended by shared indices, the found minor first, then lexicographic."""
    k = X.k
    need = (k + 1) // 2 - t
    Y = X.Y.rows
    f = X.field

    def extensions(rs, cs):
        used = set(rs) | set(cs)
        avail = [j for j in range(k) if j not in used]
        for J in itertools.combinations(avail, need):
            yield list(rs) + list(J), list(cs) + list(J)

    yield from extensions(*first)
    for rs in itertools.combinations(range(k), t):
        rest = [j for j in range(k) if j not in rs]
        for cs in itertools.combinations(rest, t):
            if (rs, cs) == tuple(map(tuple, first)):
                continue
            if kernels.det([[Y[i][j] for j in cs] for i in rs], f):
                yield from extensions(rs, cs)


def _gcd_path(X: SubstitutedMatrix, info: _Recovery, small_degree: int) -> FieldElement:
    f = X.field
    xpoly = UniPoly.x(f)
    g = None
    for rows, cols in _gcd_minors(X, info.minor_size, info.minor):
        m = X.det_poly(rows, cols)
        info.gcd_iterations += 1
        if not m:
            continue
        if g is None:
            g = poly_gcd(frobenius_power_mod(m) - xpoly, m)
        else:
            g = poly_gcd(g, m)
        if g.degree <= small_degree:
            break
    if g is None or g.degree == 0:
        info.gcd_degree = None if g is None else g.degree
        raise DecodeFailure("minor polynomials share no root in the field")
    info.gcd_degree = g.degree
    roots = roots_in_field(g)
    info.roots_tested = len(roots)
    good = [r for r in roots if _validates(X, r.value)]
    if not good:
        raise DecodeFailure("no root of the gcd satisfies the rank bound")
    if len(good) > 1:
        raise VerificationFailed(f"{len(good)} roots satisfy the rank bound; expected one")
    return good[0]


def _recover(Y: Matrix, mode: str = "auto", small_degree: int = SMALL_GCD_DEGREE) -> _Recovery:
    if mode not in MODES:
        raise InvalidParams(f"mode must be one of {MODES}")
    k = Y.nrows
    X = SubstitutedMatrix(Y)
    info = _Recovery()
    size, rs, cs, tried = kernels.offdiag_minor_search(Y.rows, (k - 1) // 2, Y.field)
    info.minor_size, info.minor, info.minors_tried = size, (tuple(rs), tuple(cs)), tried
    if size == 0:
        raise InvalidParams("Y has no nonzero off-diagonal minor (diagonal input)")
    if mode in ("auto", "both"):
        info.fast_candidate = fast_path(X, info.minor)
        info.fast_status = "hit" if info.fast_candidate is not None else "miss"
        if info.fast_candidate is not None and mode == "auto":
            info.value, info.path = info.fast_candidate, FAST_PATH
            return info
    info.gcd_candidate = _gcd_path(X, info, small_degree)
    info.value = info.gcd_candidate
    info.path = FAST_PATH if info.fast_candidate is not None else GCD_PATH
    return info


def recover_f_lambda(Y: Matrix, *, mode: str = "auto") -> FieldElement:
    """The unique x0 with ``rank(Y - diag(x0^(q^j))) <= (k-1)/2``; raises DecodeFailure."""
    if Y.is_diagonal():
        raise InvalidParams("Y is diagonal; nothing to recover")
    return _recover(Y, mode).value


def _check_code(code: SpreadCode):
    if code.r != 2 or code.k % 2 == 0:
        raise UnsupportedParams(
            f"decoding needs n = 2k with k odd; got k={code.k}, r={code.r}"
        )


def _decode_invertible(code: SpreadCode, R1: Matrix, R2: Matrix, mode: str) -> tuple[Matrix, str, int, dict]:
    k = code.k
    B = R1.inverse() @ R2
    d = code.diag
    Y = d.S @ B.lift(code.ext) @ d.S_inv
    if Y.is_diagonal():
        return B, ALREADY_CODEWORD, 0, {}
    info = _recover(Y, mode)
    A = code.phi(info.value)
    err = (B - A).rank()
    if err > (k - 1) // 2:
        raise VerificationFailed(f"validated root gives an error of rank {err}")
    diag = info.diagnostics()
    diag["f_lambda"] = list(info.value.coeffs)
    diag["conjecture_holds"] = info.minor_size == err
    return A, info.path, err, diag


def decode(code: SpreadCode, received, *, mode: str = "auto") -> DecodeOutcome:
    """Nearest codeword within the unique-decoding radius, or DecodeFailure.

    ``received`` is a Subspace or a basis matrix over F_q.  ``mode="gcd"``
    skips the fast path, ``mode="both"`` runs both and records whether they
    agree in ``diagnostics["paths_agree"]``.
    """
    _check_code(code)
    if mode not in MODES:
        raise InvalidParams(f"mode must be one of {MODES}")
    R = received if isinstance(received, Subspace) else Subspace.from_matrix(received)
    k = code.k
    if R.ambient_dim != code.n:
        raise AmbientMismatch(f"received space lives in F_q^{R.ambient_dim}, expected {code.n}")
    if R.dim != k:
        raise DimensionMismatch(f"received space has dimension {R.dim}, expected {k}")
    R1, R2 = R.basis.columns(0, k), R.basis.columns(k, 2 * k)
    cls = classify_and_complete(R1, R2)
    diagnostics: dict = {"rank_r1": cls.rank_r1}
    radius = (k + 1) // 2
    if cls.kind == "LowRank":
        C = Subspace(Matrix.zeros(code.base, k, k).hstack(Matrix.identity(code.base, k)))
        msg = Message(2, ())
        diagnostics["distance"] = subspace_distance(C, R)
        return DecodeOutcome(C, msg, LOW_RANK_R1, cls.rank_r1, diagnostics)
    if cls.kind == "Invertible":
        try:
            A, tag, err, extra = _decode_invertible(code, cls.R1, cls.R2, mode)
        except DecodeFailure as exc:
            exc.diagnostics.update(diagnostics)
            raise
        diagnostics.update(extra)
        C = Subspace(Matrix.identity(code.base, k).hstack(A))
        msg = Message(1, (code.phi_inverse(A),))
    else:
        # the completed space need not stay within range of C, so its answer
        # is checked against R and a shear of R is decoded when it misses
        tag = COMPLETED_R1
        C = None
        try:
            A, inner, err, extra = _decode_invertible(code, cls.R1, cls.R2, mode)
            cand = Subspace(Matrix.identity(code.base, k).hstack(A))
            if intersection_dim(cand, R) >= radius:
                C = cand
                diagnostics.update(extra)
                diagnostics.update(inner_case=inner, inner_error_rank=err, completion="lemma")
        except DecodeFailure:
            pass
        if C is None:
            try:
                C, inner, err, extra = _decode_sheared(code, R1, R2, mode)
            except DecodeFailure as exc:
                exc.diagnostics.update(diagnostics)
                raise
            diagnostics.update(extra)
            diagnostics.update(inner_case=inner, inner_error_rank=err, completion="shear")
        msg = code.message_of(C)
    meet = intersection_dim(C, R)
    diagnostics["distance"] = subspace_distance(C, R)
    if meet < radius:
        raise DecodeFailure(
            f"nearest candidate meets the received space in dimension {meet} < {radius}",
            diagnostics,
        )
    # equals rank(N) when R1 is invertible
    return DecodeOutcome(C, msg, tag, k - meet, diagnostics)


def _shear_matrix(code: SpreadCode, B: Matrix) -> Matrix:
    k, F = code.k, code.base
    top = Matrix.identity(F, k).hstack(Matrix.zeros(F, k, k))
    return top.vstack(B.hstack(Matrix.identity(F, k)))


def _decode_sheared(code: SpreadCode, R1: Matrix, R2: Matrix, mode: str):
    """Decode ``R [[I, 0], [B, I]]`` for the first b in F_(q^k)* with
    ``R1 + R2 phi(b)`` invertible, then map the codeword back.

    The shear sends rowsp[I A] to rowsp[I + AB, A] and rowsp[0 I] to
    rowsp[B, I], so it permutes the spread and preserves distances.
    """
    k = code.k
    for b in range(1, code.order):
        B = code.phi(b)
        S1 = R1 + R2 @ B
        if S1.rank() == k:
            break
    else:
        raise DecodeFailure("no shear makes the left block invertible")
    A, inner, err, extra = _decode_invertible(code, S1, R2, mode)
    Cs = Matrix.identity(code.base, k).hstack(A)
    C = Subspace.from_matrix(Cs @ _shear_matrix(code, B.scale(-1)))
    extra["shear"] = list(code.ext.coeffs(b))
    return C, inner, err, extra
