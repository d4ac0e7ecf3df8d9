"""Lie triple systems as dense structure-constant tensors.

A system of dimension n is stored as c[i][j][k][p] (0-based internally) with
[e_i, e_j, e_k] = sum_p c[i][j][k][p] e_p.  Public indices, table keys and
JSON documents are 1-based.  The defining identities:

    (A1)  [x,y,z] + [y,x,z] = 0
    (A2)  [x,y,z] + [y,z,x] + [z,x,y] = 0
    (A3)  [u,v,[x,y,z]] = [[u,v,x],y,z] + [x,[u,v,y],z] + [x,y,[u,v,z]]

Partial multiplication tables list only generating products; completion closes
them under (A1) and the two-known-one-forced case of (A2), zero-fills the rest
and then checks all three identities exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    AxiomViolation,
    DimensionMismatch,
    InconsistentTable,
    MalformedInput,
    NotALieAlgebra,
    SingularMatrix,
)
from .linalg import Subspace, mat_inverse, nullspace
from .scalars import GaussianRational, QI_ZERO, parse_scalar, scalar_str

__all__ = [
    "Lts",
    "AxiomReport",
    "NilpotencyReport",
    "Fingerprint",
    "complete_table",
    "direct_sum",
    "lts_from_lie",
    "change_basis_tensor",
    "lts_to_dict",
    "lts_from_dict",
]


def _normalize_scalar(x):
    if isinstance(x, (int, Fraction)):
        return GaussianRational.of(x)
    return x


def _zero_like(x):
    return x * 0


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    identity: Optional[str] = None  # "A1" | "A2" | "A3"
    indices: Optional[tuple] = None  # 1-based witness tuple
    residual: Optional[tuple] = None

    def __str__(self):
        if self.ok:
            return "(A1)(A2)(A3) pass"
        return f"{self.identity} fails at {self.indices}: residual {self.residual}"


@dataclass(frozen=True)
class NilpotencyReport:
    is_nilpotent: bool
    index: Optional[int]  # smallest m with T^(m) = 0, None if not nilpotent
    series: tuple  # the subspaces T^(0) ⊇ T^(1) ⊇ ... as computed

    @property
    def series_dims(self):
        return tuple(s.dim for s in self.series)


@dataclass(frozen=True, order=True)
class Fingerprint:
    """Isomorphism-invariant signature; equality is necessary for isomorphism."""

    dim: int
    dim_ann: int
    dim_derived: int
    dim_der: int
    nilpotency_index: Optional[int]
    dim_z3: int
    dim_h3: int
    family_xi: Optional[GaussianRational] = None

    def matches(self, other: "Fingerprint") -> bool:
        return (self.dim, self.dim_ann, self.dim_derived, self.dim_der,
                self.nilpotency_index, self.dim_z3, self.dim_h3) == (
                other.dim, other.dim_ann, other.dim_derived, other.dim_der,
                other.nilpotency_index, other.dim_z3, other.dim_h3)


class Lts:
    """Immutable Lie triple system over an exact scalar field."""

    def __init__(self, constants, verified=False):
        n = len(constants)
        c = [[[[_normalize_scalar(constants[i][j][k][p]) for p in range(n)]
               for k in range(n)] for j in range(n)] for i in range(n)]
        self._c = c
        self.dim = n
        self.verified = verified
        self._cache = {}

    # -- raw access ---------------------------------------------------------

    def constant(self, i, j, k, p):
        """1-based structure constant c_{ijk}^p."""
        return self._c[i - 1][j - 1][k - 1][p - 1]

    def product(self, i, j, k):
        """1-based basis product [e_i, e_j, e_k] as a coordinate vector."""
        return list(self._c[i - 1][j - 1][k - 1])

    def nonzero_entries(self):
        """Iterate (i, j, k, p, value) over nonzero constants, 0-based."""
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    row = self._c[i][j][k]
                    for p in range(self.dim):
                        if row[p] != 0:
                            yield i, j, k, p, row[p]

    def tensor_key(self):
        return tuple(
            tuple(tuple(tuple(row) for row in plane) for plane in block)
            for block in self._c
        )

    def __eq__(self, other):
        if not isinstance(other, Lts):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(
            a == b
            for i in range(self.dim)
            for j in range(self.dim)
            for k in range(self.dim)
            for a, b in zip(self._c[i][j][k], other._c[i][j][k])
        )

    def __hash__(self):
        return hash(self.tensor_key())

    def __repr__(self):
        nz = sum(1 for _ in self.nonzero_entries())
        return f"Lts(dim={self.dim}, nonzero={nz})"

    # -- evaluation ----------------------------------------------------------

    def eval(self, x, y, z):
        """Trilinear extension of the structure constants to coordinate vectors."""
        n = self.dim
        if len(x) != n or len(y) != n or len(z) != n:
            raise DimensionMismatch(f"expected vectors of length {n}")
        if n == 0:
            return []
        zero = _zero_like(self._c[0][0][0][0])
        out = [zero] * n
        for i in range(n):
            xi = x[i]
            if xi == 0:
                continue
            ci = self._c[i]
            for j in range(n):
                yj = y[j]
                if yj == 0:
                    continue
                cij = ci[j]
                f = xi * yj
                for k in range(n):
                    zk = z[k]
                    if zk == 0:
                        continue
                    row = cij[k]
                    g = f * zk
                    for p in range(n):
                        if row[p] != 0:
                            out[p] = out[p] + g * row[p]
        return out

    # -- axioms ---------------------------------------------------------------

    def check_axioms(self) -> AxiomReport:
        n = self.dim
        c = self._c
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    res = [a + b for a, b in zip(c[i][j][k], c[j][i][k])]
                    if any(x != 0 for x in res):
                        return AxiomReport(False, "A1", (i + 1, j + 1, k + 1), tuple(res))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    res = [a + b + d for a, b, d in zip(c[i][j][k], c[j][k][i], c[k][i][j])]
                    if any(x != 0 for x in res):
                        return AxiomReport(False, "A2", (i + 1, j + 1, k + 1), tuple(res))
        for u in range(n):
            for v in range(u + 1, n):  # A3 is antisymmetric in (u, v); u = v is trivial
                for x in range(n):
                    for y in range(n):
                        for z in range(n):
                            res = self._a3_residual(u, v, x, y, z)
                            if any(w != 0 for w in res):
                                return AxiomReport(
                                    False, "A3", (u + 1, v + 1, x + 1, y + 1, z + 1), tuple(res)
                                )
        self.verified = True
        return AxiomReport(True)

    def _a3_residual(self, u, v, x, y, z):
        c = self._c
        n = self.dim
        inner = c[x][y][z]
        lhs = [sum((inner[p] * c[u][v][p][q] for p in range(n) if inner[p] != 0), start=inner[0] * 0)
               for q in range(n)]
        t1 = c[u][v][x]
        r1 = [sum((t1[p] * c[p][y][z][q] for p in range(n) if t1[p] != 0), start=t1[0] * 0)
              for q in range(n)]
        t2 = c[u][v][y]
        r2 = [sum((t2[p] * c[x][p][z][q] for p in range(n) if t2[p] != 0), start=t2[0] * 0)
              for q in range(n)]
        t3 = c[u][v][z]
        r3 = [sum((t3[p] * c[x][y][p][q] for p in range(n) if t3[p] != 0), start=t3[0] * 0)
              for q in range(n)]
        return [a - b - d - e for a, b, d, e in zip(lhs, r1, r2, r3)]

    # -- structural invariants -------------------------------------------------

    def annihilator(self) -> Subspace:
        """Ann(T) = {x : [x, T, T] = 0}, as a canonical subspace."""
        if "ann" in self._cache:
            return self._cache["ann"]
        n = self.dim
        rows = []
        for j in range(n):
            for k in range(n):
                for p in range(n):
                    row = [self._c[i][j][k][p] for i in range(n)]
                    if any(x != 0 for x in row):
                        rows.append(row)
        space = Subspace(n, nullspace(rows, n))
        self._cache["ann"] = space
        return space

    def derived(self) -> Subspace:
        """T^(1) = [T, T, T], the span of all basis products."""
        if "derived" in self._cache:
            return self._cache["derived"]
        vectors = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    row = self._c[i][j][k]
                    if any(x != 0 for x in row):
                        vectors.append(list(row))
        space = Subspace(n, vectors)
        self._cache["derived"] = space
        return space

    def nilpotency(self) -> NilpotencyReport:
        """Series T^(0) = T, T^(m+1) = [T^(m), T, T] until zero or stabilization."""
        if "nilpotency" in self._cache:
            return self._cache["nilpotency"]
        n = self.dim
        current = Subspace(n, [[1 if c == i else 0 for c in range(n)] for i in range(n)])
        series = [current]
        nilpotent = True
        while current.dim > 0:
            vectors = []
            for v in current.basis:
                for j in range(n):
                    for k in range(n):
                        w = self.eval(v, [1 if c == j else 0 for c in range(n)],
                                      [1 if c == k else 0 for c in range(n)])
                        if any(x != 0 for x in w):
                            vectors.append(w)
            nxt = Subspace(n, vectors)
            if nxt.dim == current.dim:
                nilpotent = False
                break
            current = nxt
            series.append(current)
        report = NilpotencyReport(nilpotent, len(series) - 1 if nilpotent else None,
                                  tuple(series))
        self._cache["nilpotency"] = report
        return report

    def derivations(self):
        """Dimension and matrix basis of the Leibniz-rule derivation algebra.

        D is a derivation when D[x,y,z] = [Dx,y,z] + [x,Dy,z] + [x,y,Dz];
        unknowns are the n^2 entries D_{ab} with D e_j = sum_a D_{ab} e_a at
        b = j, giving an n^4-row homogeneous system.
        """
        if "derivations" in self._cache:
            return self._cache["derivations"]
        n = self.dim
        c = self._c

        def unknown(a, b):
            return a * n + b

        rows = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    cijk = c[i][j][k]
                    for p in range(n):
                        row = [QI_ZERO] * (n * n)
                        for b in range(n):
                            if cijk[b] != 0:
                                row[unknown(p, b)] = row[unknown(p, b)] + cijk[b]
                        for a in range(n):
                            if c[a][j][k][p] != 0:
                                row[unknown(a, i)] = row[unknown(a, i)] - c[a][j][k][p]
                            if c[i][a][k][p] != 0:
                                row[unknown(a, j)] = row[unknown(a, j)] - c[i][a][k][p]
                            if c[i][j][a][p] != 0:
                                row[unknown(a, k)] = row[unknown(a, k)] - c[i][j][a][p]
                        if any(x != 0 for x in row):
                            rows.append(row)
        basis_vectors = nullspace(rows, n * n)
        matrices = [[[vec[unknown(a, b)] for b in range(n)] for a in range(n)]
                    for vec in basis_vectors]
        result = (len(matrices), matrices)
        self._cache["derivations"] = result
        return result

    def orbit_dimension(self) -> int:
        """dim O(T) = n^2 - dim Der(T) for the conjugation action of GL_n."""
        return self.dim * self.dim - self.derivations()[0]

    # -- transformations --------------------------------------------------------

    def change_basis(self, g) -> "Lts":
        """Conjugated product (g*mu)(x,y,z) = g mu(g^{-1}x, g^{-1}y, g^{-1}z)."""
        try:
            new_constants = change_basis_tensor(self._c, g)
        except SingularMatrix:
            raise
        return Lts(new_constants, verified=self.verified)

    def fingerprint(self) -> Fingerprint:
        if "fingerprint" in self._cache:
            return self._cache["fingerprint"]
        from .cohomology import cocycle_space, coboundary_space  # cycle-free at runtime

        nil = self.nilpotency()
        z3 = cocycle_space(self)
        b3 = coboundary_space(self)
        fp = Fingerprint(
            dim=self.dim,
            dim_ann=self.annihilator().dim,
            dim_derived=self.derived().dim,
            dim_der=self.derivations()[0],
            nilpotency_index=nil.index,
            dim_z3=z3.dim,
            dim_h3=z3.dim - b3.dim,
        )
        self._cache["fingerprint"] = fp
        return fp


def change_basis_tensor(constants, g):
    """Structure constants of g*mu given c[i][j][k][p]; sparse in the source."""
    n = len(constants)
    if len(g) != n or any(len(row) != n for row in g):
        raise DimensionMismatch("basis-change matrix has wrong shape")
    g = [[_normalize_scalar(x) for x in row] for row in g]
    h = mat_inverse(g)
    zero = _zero_like(g[0][0])
    out = [[[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for cc in range(n):
                row = constants[a][b][cc]
                for q in range(n):
                    val = row[q]
                    if val == 0:
                        continue
                    gcol = [g[p][q] * val for p in range(n)]
                    ha, hb, hc = h[a], h[b], h[cc]
                    for i in range(n):
                        if ha[i] == 0:
                            continue
                        for j in range(n):
                            if hb[j] == 0:
                                continue
                            f = ha[i] * hb[j]
                            for k in range(n):
                                if hc[k] == 0:
                                    continue
                                fk = f * hc[k]
                                cell = out[i][j][k]
                                for p in range(n):
                                    if gcol[p] != 0:
                                        cell[p] = cell[p] + fk * gcol[p]
    return out


def _zero_tensor(n, zero=QI_ZERO):
    return [[[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)] for _ in range(n)]


def complete_table(dim, generators):
    """Close a partial multiplication table under (A1) and forced (A2) cases.

    ``generators`` maps 1-based triples (i, j, k) with i != j to coefficient
    vectors of length ``dim``.  Products still undetermined at the fixpoint are
    zero.  The completed tensor is axiom-checked before being returned.
    """
    known = {}

    def tuple_of(vec):
        return tuple(_normalize_scalar(x) for x in vec)

    def set_value(i, j, k, vec):
        if (i, j, k) in known:
            if known[(i, j, k)] != vec:
                raise InconsistentTable(
                    f"conflicting values for [e{i+1},e{j+1},e{k+1}]: "
                    f"{[scalar_str(x) if isinstance(x, GaussianRational) else str(x) for x in known[(i, j, k)]]} vs "
                    f"{[scalar_str(x) if isinstance(x, GaussianRational) else str(x) for x in vec]}"
                )
            return False
        known[(i, j, k)] = vec
        return True

    zero_vec = tuple([QI_ZERO] * dim)
    for (i, j, k), vec in generators.items():
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            raise MalformedInput("products", f"index out of range in ({i},{j},{k})")
        if i == j:
            raise InconsistentTable(f"generator ({i},{j},{k}) must have i != j")
        v = tuple_of(vec)
        if len(v) != dim:
            raise MalformedInput("products", f"value for ({i},{j},{k}) must have length {dim}")
        set_value(i - 1, j - 1, k - 1, v)
        set_value(j - 1, i - 1, k - 1, tuple(-x for x in v))
    for i in range(dim):
        for k in range(dim):
            set_value(i, i, k, zero_vec)

    changed = True
    while changed:
        changed = False
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    cyc = [(i, j, k), (j, k, i), (k, i, j)]
                    vals = [known.get(t) for t in cyc]
                    missing = [t for t, v in zip(cyc, vals) if v is None]
                    if len(missing) == 1:
                        total = [QI_ZERO] * dim
                        for v in vals:
                            if v is not None:
                                total = [a + b for a, b in zip(total, v)]
                        forced = tuple(-x for x in total)
                        mi, mj, mk = missing[0]
                        if set_value(mi, mj, mk, forced):
                            changed = True
                        if mi != mj:
                            if set_value(mj, mi, mk, tuple(-x for x in forced)):
                                changed = True
                        elif any(x != 0 for x in forced):
                            raise InconsistentTable(
                                f"(A2) forces nonzero [e{mi+1},e{mi+1},e{mk+1}]"
                            )

    tensor = _zero_tensor(dim)
    for (i, j, k), vec in known.items():
        tensor[i][j][k] = list(vec)
    system = Lts(tensor)
    report = system.check_axioms()
    if not report.ok:
        raise AxiomViolation(report.identity, report.indices, report.residual)
    return system


def direct_sum(a: Lts, b: Lts) -> Lts:
    """Block sum on dim(a) + dim(b); all mixed products vanish."""
    n, m = a.dim, b.dim
    total = n + m
    tensor = _zero_tensor(total)
    for i, j, k, p, val in a.nonzero_entries():
        tensor[i][j][k][p] = val
    for i, j, k, p, val in b.nonzero_entries():
        tensor[n + i][n + j][n + k][n + p] = val
    out = Lts(tensor, verified=a.verified and b.verified)
    return out


def lts_from_lie(bracket) -> Lts:
    """Triple system [x,y,z] = [[x,y],z] from Lie algebra structure constants.

    ``bracket[i][j]`` is the coordinate vector of [e_{i+1}, e_{j+1}].
    Antisymmetry and the Jacobi identity are checked first.
    """
    n = len(bracket)
    b = [[[_normalize_scalar(x) for x in bracket[i][j]] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if any(x + y != 0 for x, y in zip(b[i][j], b[j][i])):
                raise NotALieAlgebra(f"bracket not antisymmetric at ({i+1},{j+1})")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                res = [QI_ZERO] * n
                for p in range(n):
                    for q in range(n):
                        res[q] = (res[q]
                                  + b[i][j][p] * b[p][k][q]
                                  + b[j][k][p] * b[p][i][q]
                                  + b[k][i][p] * b[p][j][q])
                if any(x != 0 for x in res):
                    raise NotALieAlgebra(f"Jacobi identity fails at ({i+1},{j+1},{k+1})")
    tensor = _zero_tensor(n)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                vec = [QI_ZERO] * n
                for p in range(n):
                    if b[i][j][p] != 0:
                        for q in range(n):
                            vec[q] = vec[q] + b[i][j][p] * b[p][k][q]
                tensor[i][j][k] = vec
    system = Lts(tensor)
    report = system.check_axioms()
    if not report.ok:
        raise AxiomViolation(report.identity, report.indices, report.residual)
    return system


# ---------------------------------------------------------------------------
# JSON document form


def lts_to_dict(system: Lts, field=None) -> dict:
    """{"dim": n, "field": ..., "products": [...]} listing i<j nonzero generators."""
    products = []
    rational_only = True
    n = system.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                vec = system.product(i, j, k)
                value = {}
                for p, x in enumerate(vec, start=1):
                    if x != 0:
                        value[str(p)] = scalar_str(x)
                        if not GaussianRational.of(x).is_rational:
                            rational_only = False
                if value:
                    products.append({"args": [i, j, k], "value": value})
    if field is None:
        field = "Q" if rational_only else "Q(i)"
    return {"dim": n, "field": field, "products": products}


def lts_from_dict(doc: dict, require_field=None) -> Lts:
    """Parse, complete and axiom-check a JSON Lts document."""
    if not isinstance(doc, dict):
        raise MalformedInput("document", "expected a JSON object")
    try:
        dim = doc["dim"]
    except KeyError:
        raise MalformedInput("dim", "missing")
    if not isinstance(dim, int) or dim < 0:
        raise MalformedInput("dim", "must be a non-negative integer")
    field = doc.get("field", "Q(i)")
    if field not in ("Q", "Q(i)"):
        raise MalformedInput("field", f"unknown field {field!r}")
    if require_field == "Q" and field != "Q":
        raise MalformedInput("field", "document requires Q(i) but field Q was requested")
    generators = {}
    for entry in doc.get("products", []):
        try:
            i, j, k = entry["args"]
            value = entry["value"]
        except (KeyError, TypeError, ValueError):
            raise MalformedInput("products", f"bad product entry {entry!r}")
        vec = [QI_ZERO] * dim
        for key, text in value.items():
            p = int(key)
            if not 1 <= p <= dim:
                raise MalformedInput("products", f"target index {p} out of range")
            vec[p - 1] = parse_scalar(text)
        if require_field == "Q" and any(not x.is_rational for x in vec):
            raise MalformedInput("field", "input needs i but field Q was requested")
        generators[(i, j, k)] = vec
    return complete_table(dim, generators)
