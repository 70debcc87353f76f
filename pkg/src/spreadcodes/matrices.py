"""Dense matrices over a finite field.

Entries are stored as packed field integers (see :mod:`spreadcodes.fields`);
indexing returns :class:`FieldElement` values.  Matrices are immutable and
every operation returns a new one.  Heavy lifting goes through
:mod:`spreadcodes.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .errors import InvalidParams, Singular, VerificationFailed
from .fields import ExtField, FieldElement, FiniteField, PrimeField, make_extension_field
from .fields import raw_value as _raw

__all__ = [
    "Matrix",
    "Diagonalizer",
    "rref",
    "invert",
    "companion",
    "eval_poly_at_matrix",
    "diagonalizer",
    "minor_det",
]


class Matrix:
    """An immutable ``nrows x ncols`` matrix over ``field``.

    Integer entries are packed field indices (plain residues for prime
    fields); coefficient sequences and FieldElements are also accepted.
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: FiniteField, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(_raw(field, v) for v in row) for row in rows)
        if ncols is None:
            if not data:
                raise InvalidParams("ncols required for a matrix with no rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise InvalidParams("ragged matrix rows")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self.rows = data
        self._hash = None

    @classmethod
    def _wrap(cls, field, rows, ncols) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        return cls._wrap(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls._wrap(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field, values: Sequence) -> "Matrix":
        vals = [_raw(field, v) for v in values]
        n = len(vals)
        return cls._wrap(field, [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, key) -> FieldElement:
        i, j = key
        return FieldElement(self.field, self.rows[i][j])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(FieldElement(self.field, v)) for v in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r}: [{body}])"

    # -- arithmetic -------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if self.field != other.field:
            raise TypeError("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise InvalidParams("shape mismatch")
        add = self.field.add
        return Matrix._wrap(
            self.field,
            [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._wrap(self.field, [[neg(a) for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise InvalidParams(f"cannot multiply {self.shape} by {other.shape}")
        if self.nrows == 0 or other.ncols == 0:
            return Matrix.zeros(self.field, self.nrows, other.ncols)
        return Matrix._wrap(
            self.field, kernels.matmul(self.rows, other.rows, self.field), other.ncols
        )

    def scale(self, c) -> "Matrix":
        c = _raw(self.field, c)
        mul = self.field.mul
        return Matrix._wrap(self.field, [[mul(c, a) for a in r] for r in self.rows], self.ncols)

    # -- structure --------------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.field, list(zip(*self.rows)) if self.nrows else [], self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix._wrap(
            self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx], len(col_idx)
        )

    def columns(self, start: int, stop: int) -> "Matrix":
        return Matrix._wrap(self.field, [r[start:stop] for r in self.rows], stop - start)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.nrows != other.nrows:
            raise InvalidParams("row count mismatch")
        return Matrix._wrap(
            self.field, [a + b for a, b in zip(self.rows, other.rows)], self.ncols + other.ncols
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.ncols != other.ncols:
            raise InvalidParams("column count mismatch")
        return Matrix._wrap(self.field, self.rows + other.rows, self.ncols)

    def lift(self, field: FiniteField) -> "Matrix":
        """Reinterpret entries of F_q in an extension with the same q (constants keep their value)."""
        if field == self.field:
            return self
        if self.field.k != 1 or field.q != self.field.q:
            raise InvalidParams("can only lift prime-field matrices into an extension of F_q")
        return Matrix._wrap(field, self.rows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.rows) for j, v in enumerate(r) if i != j)

    def diagonal(self) -> list[FieldElement]:
        return [FieldElement(self.field, self.rows[i][i]) for i in range(min(self.shape))]

    # -- elimination ------------------------------------------------------

    def rref(self) -> tuple["Matrix", int, list[int]]:
        if self.nrows == 0:
            return self, 0, []
        rows, pivots = kernels.rref(self.rows, self.field)
        return Matrix._wrap(self.field, rows, self.ncols), len(pivots), list(pivots)

    def rank(self) -> int:
        if self.nrows == 0:
            return 0
        return kernels.rank(self.rows, self.field)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise InvalidParams("inverse of a non-square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(self.field, n))
        red, rank, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise Singular(sum(1 for p in pivots if p < n), n)
        return red.columns(n, 2 * n)

    def det(self) -> FieldElement:
        if not self.is_square():
            raise InvalidParams("determinant of a non-square matrix")
        return FieldElement(self.field, kernels.det(self.rows, self.field))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        f = self.field
        if f.k == 1:
            entries = [list(r) for r in self.rows]
        else:
            entries = [[list(f.coeffs(v)) for v in r] for r in self.rows]
        out = {"rows": self.nrows, "cols": self.ncols, "q": f.q, "ext_degree": f.k, "entries": entries}
        if isinstance(f, ExtField):
            out["p"] = list(f.p_coeffs)
        return out

    @classmethod
    def from_json(cls, data: dict, field: FiniteField | None = None) -> "Matrix":
        q, k = int(data["q"]), int(data.get("ext_degree", 1))
        if field is None:
            if k == 1 and "p" not in data:
                field = PrimeField(q)
            else:
                if "p" not in data:
                    raise InvalidParams("extension-field matrix JSON needs 'p' or an explicit field")
                field = make_extension_field(q, data["p"])
        elif field.q != q or field.k != k:
            raise InvalidParams("matrix JSON does not match the given field")
        entries = data["entries"]
        if field.k == 1:
            rows = [[int(v) for v in r] for r in entries]
        else:
            rows = [[field.from_coeffs(v) for v in r] for r in entries]
        m = cls(field, rows, ncols=int(data["cols"]))
        if m.nrows != int(data["rows"]):
            raise InvalidParams("row count does not match entries")
        return m


def rref(M: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    return M.rref()


def invert(M: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan on ``[M | I]``; raises :class:`Singular`."""
    return M.inverse()


def companion(p_coeffs: Sequence[int], field: FiniteField) -> Matrix:
    """Companion matrix: ones on the superdiagonal, last row ``-p_0 .. -p_{k-1}``.

    Its characteristic polynomial is ``p``.
    """
    p = [_raw(field, c) for c in p_coeffs]
    while p and p[-1] == 0:
        p.pop()
    k = len(p) - 1
    if k < 1 or p[-1] != 1:
        raise InvalidParams("companion matrix needs a monic polynomial of degree >= 1")
    rows = [[1 if j == i + 1 else 0 for j in range(k)] for i in range(k - 1)]
    rows.append([field.neg(c) for c in p[:k]])
    return Matrix._wrap(field, rows, k)


def eval_poly_at_matrix(f_coeffs: Sequence, P: Matrix) -> Matrix:
    """``f(P)`` by Horner's scheme; ``f_coeffs`` constant term first."""
    if not P.is_square():
        raise InvalidParams("polynomial evaluation needs a square matrix")
    field, n = P.field, P.nrows
    acc = Matrix.zeros(field, n, n)
    eye = Matrix.identity(field, n)
    for c in reversed(list(f_coeffs)):
        acc = acc @ P + eye.scale(c)
    return acc


def minor_det(M: Matrix, row_set: Sequence[int], col_set: Sequence[int]) -> FieldElement:
    """Determinant of the submatrix on strictly increasing row and column indices."""
    if len(row_set) != len(col_set):
        raise InvalidParams("minor needs equally many rows and columns")
    for idx, bound in ((row_set, M.nrows), (col_set, M.ncols)):
        if any(b <= a for a, b in zip(idx, idx[1:])) or any(not 0 <= i < bound for i in idx):
            raise InvalidParams("minor indices must be strictly increasing and in range")
    if not row_set:
        return FieldElement(M.field, 1)
    sub = [[M.rows[i][j] for j in col_set] for i in row_set]
    return FieldElement(M.field, kernels.det(sub, M.field))


@dataclass(frozen=True)
class Diagonalizer:
    """``S @ P @ S_inv == D`` with ``D = diag(lam, lam^q, ..., lam^(q^(k-1)))`` over F_(q^k)."""

    S: Matrix
    S_inv: Matrix
    D: Matrix
    eigenvalues: tuple[FieldElement, ...]


def diagonalizer(ext: ExtField, P: Matrix) -> Diagonalizer:
    """Diagonalize the companion matrix of ``ext``'s defining polynomial.

    Column j of ``S_inv`` is the Vandermonde eigenvector ``(1, mu, ..., mu^(k-1))``
    of ``P`` for ``mu = lam^(q^j)``; the identity is verified before returning.
    """
    k = ext.k
    if P.shape != (k, k):
        raise InvalidParams("P must be k x k for the extension degree k")
    lam = ext.gen.value
    mus = [ext.frobenius(lam, j) for j in range(k)]
    vander = Matrix._wrap(ext, [[ext.pow(mu, i) for mu in mus] for i in range(k)], k)
    S = vander.inverse()
    D = Matrix.diag(ext, mus)
    if S @ P.lift(ext) @ vander != D:
        raise VerificationFailed("S P S^-1 != D; P is not the companion matrix of the field polynomial")
    return Diagonalizer(S=S, S_inv=vander, D=D, eigenvalues=tuple(FieldElement(ext, m) for m in mus))
