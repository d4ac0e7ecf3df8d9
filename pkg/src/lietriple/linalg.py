"""Dense exact linear algebra, generic over any of the scalar fields.

Matrices are plain lists of lists.  The routines only assume field elements
that support +, -, *, / and comparison with 0/1, so the same code runs over
Q(i), Q(i)(t), and anything with the same operator surface.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularMatrix
from .scalars import GaussianRational


def _inv(x):
    """Exact reciprocal; keeps integer pivots out of float land."""
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "mat_mul",
    "mat_vec",
    "identity_matrix",
    "transpose",
    "mat_inverse",
    "determinant",
    "Subspace",
]


def rref(rows):
    """Reduced row echelon form. Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for k in range(r, len(rows)):
            if rows[k][c] != 0:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        if rows[r][c] != 1:
            inv = _inv(rows[r][c])
            rows[r] = [x * inv if x else x for x in rows[r]]
        pivot_row_vals = rows[r]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b if b else a
                           for a, b in zip(rows[k], pivot_row_vals)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows) -> int:
    deduped = _dedupe_nonzero(rows)
    return len(rref(deduped)[1])


def _dedupe_nonzero(rows):
    seen = set()
    out = []
    for row in rows:
        if all(x == 0 for x in row):
            continue
        key = tuple(row)
        try:
            if key in seen:
                continue
            seen.add(key)
        except TypeError:
            pass
        out.append(row)
    return out


def nullspace(rows, ncols=None):
    """Canonical basis of the right nullspace {x : rows . x = 0}."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty system")
        ncols = len(rows[0])
    reduced, pivots = rref(_dedupe_nonzero(rows))
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    basis, _ = rref(basis)
    return [row for row in basis if any(x != 0 for x in row)]


def mat_mul(A, B):
    n, m = len(A), len(B[0])
    inner = len(B)
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), start=A[i][0] * 0) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum((A[i][k] * v[k] for k in range(len(v))), start=A[i][0] * 0) for i in range(len(A))]


def identity_matrix(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_inverse(A):
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in reduced]


def determinant(A):
    n = len(A)
    rows = [list(r) for r in A]
    det = 1
    sign = 1
    for c in range(n):
        pivot_row = None
        for k in range(c, n):
            if rows[k][c] != 0:
                pivot_row = k
                break
        if pivot_row is None:
            return A[0][0] * 0
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        p = rows[c][c]
        det = det * p
        inv = _inv(p)
        for k in range(c + 1, n):
            if rows[k][c] != 0:
                f = rows[k][c] * inv
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[c])]
    return det * sign


class Subspace:
    """Subspace of F^n held as canonical reduced-echelon basis rows."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, vectors=()):
        self.ambient = ambient
        reduced, _ = rref([list(v) for v in vectors])
        self.basis = [row for row in reduced if any(x != 0 for x in row)]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector) -> bool:
        if all(x == 0 for x in vector):
            return True
        stacked, _ = rref(self.basis + [list(vector)])
        nonzero = [row for row in stacked if any(x != 0 for x in row)]
        return len(nonzero) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient != other.ambient or self.dim != other.dim:
            return False
        return all(
            a == b for ra, rb in zip(self.basis, other.basis) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(r) for r in self.basis)))

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus-free intersection: solve a.A = b.B across the two spans."""
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient)
        rows = []
        for c in range(self.ambient):
            rows.append([self.basis[k][c] for k in range(self.dim)]
                        + [-other.basis[k][c] for k in range(other.dim)])
        sols = nullspace(rows, self.dim + other.dim)
        vectors = []
        for s in sols:
            vec = [0] * self.ambient
            for k in range(self.dim):
                if s[k] != 0:
                    vec = [x + s[k] * y for x, y in zip(vec, self.basis[k])]
            vectors.append(vec)
        return Subspace(self.ambient, vectors)

    def normalized_entries(self):
        return [[GaussianRational.of(x) if isinstance(x, int) else x for x in row] for row in self.basis]

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient})"
