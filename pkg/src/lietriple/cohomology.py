"""Scalar-valued cocycles on a Lie triple system and their cohomology.

A cochain is stored by its values a_{i,j,k} = theta(e_i, e_j, e_k) for i < j;
antisymmetry in the first two arguments is built into the storage.  The
cocycle conditions, with [.,.,.] the ambient product:

    (B1)  theta(x,y,z) + theta(y,x,z) = 0                      (storage)
    (B2)  theta(x,y,z) + theta(y,z,x) + theta(z,x,y) = 0
    (B3)  theta(u,v,[x,y,z]) + theta([v,u,x],y,z)
          + theta(x,[v,u,y],z) + theta(x,y,[v,u,z]) = 0

Coboundaries are delta f (x,y,z) = f([x,y,z]) for linear functionals f, and
H^3 = Z^3 / B^3.  Coordinates throughout are taken over the standard basis of
elementary antisymmetric forms indexed by (i, j, k), i < j, in lexicographic
order.
"""

from __future__ import annotations

from .errors import (
    DimensionMismatch,
    NotAbelianDim3,
    NotAnAutomorphism,
    RelationViolated,
)
from .core import Lts
from .linalg import Subspace, nullspace, rref
from .scalars import GaussianRational, QI_ZERO

__all__ = [
    "Cocycle",
    "CochainSpace",
    "delta_indices",
    "cocycle_space",
    "coboundary_space",
    "cohomology",
    "coboundary_of",
    "aut_action",
    "matrix_form",
    "a_theta",
    "is_automorphism",
]


def delta_indices(n):
    """Lexicographic (i, j, k) with 1 <= i < j <= n, 1 <= k <= n."""
    return [(i, j, k) for i in range(1, n + 1) for j in range(i + 1, n + 1)
            for k in range(1, n + 1)]


class Cocycle:
    """Scalar-valued trilinear cochain on an ambient system, antisymmetric in (x, y)."""

    def __init__(self, ambient: Lts, coeffs=None, closed=False):
        self.ambient = ambient
        clean = {}
        for (i, j, k), val in (coeffs or {}).items():
            if not (1 <= i < j <= ambient.dim and 1 <= k <= ambient.dim):
                raise DimensionMismatch(f"bad cochain index ({i},{j},{k}) for dim {ambient.dim}")
            v = GaussianRational.of(val) if not hasattr(val, "limit_at_zero") else val
            if v != 0:
                clean[(i, j, k)] = v
        self.coeffs = clean
        self.closed = closed

    def value(self, a, b, c):
        """theta(e_a, e_b, e_c) with 1-based indices."""
        if a == b:
            return QI_ZERO
        if a < b:
            return self.coeffs.get((a, b, c), QI_ZERO)
        return -self.coeffs.get((b, a, c), QI_ZERO)

    def eval(self, x, y, z):
        """Trilinear extension to coordinate vectors."""
        n = self.ambient.dim
        total = QI_ZERO
        for (i, j, k), val in self.coeffs.items():
            total = total + val * ((x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]) * z[k - 1])
        return total

    def coordinates(self):
        """Coefficient vector over the lexicographic elementary-form basis."""
        idx = delta_indices(self.ambient.dim)
        return [self.coeffs.get(t, QI_ZERO) for t in idx]

    @staticmethod
    def from_coordinates(ambient, vector, closed=False):
        idx = delta_indices(ambient.dim)
        return Cocycle(ambient, dict(zip(idx, vector)), closed=closed)

    def __add__(self, other):
        if self.ambient is not other.ambient and self.ambient != other.ambient:
            raise DimensionMismatch("cochains on different systems")
        keys = set(self.coeffs) | set(other.coeffs)
        return Cocycle(self.ambient,
                       {t: self.coeffs.get(t, QI_ZERO) + other.coeffs.get(t, QI_ZERO) for t in keys})

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Cocycle(self.ambient, {t: -v for t, v in self.coeffs.items()})

    def __rmul__(self, scalar):
        return Cocycle(self.ambient, {t: v * scalar for t, v in self.coeffs.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def check_closed(self):
        """Verify (B2) and (B3) exhaustively; (B1) holds by storage."""
        n = self.ambient.dim
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    if self.value(i, j, k) + self.value(j, k, i) + self.value(k, i, j) != 0:
                        return False, ("B2", (i, j, k))
        basis = [[1 if c == i else 0 for c in range(n)] for i in range(n)]
        for u in range(n):
            for v in range(u + 1, n):
                for x in range(n):
                    for y in range(n):
                        for z in range(n):
                            inner = self.ambient.product(x + 1, y + 1, z + 1)
                            px = self.ambient.product(v + 1, u + 1, x + 1)
                            py = self.ambient.product(v + 1, u + 1, y + 1)
                            pz = self.ambient.product(v + 1, u + 1, z + 1)
                            total = self.eval(basis[u], basis[v], inner)
                            total = total + self.eval(px, basis[y], basis[z])
                            total = total + self.eval(basis[x], py, basis[z])
                            total = total + self.eval(basis[x], basis[y], pz)
                            if total != 0:
                                return False, ("B3", (u + 1, v + 1, x + 1, y + 1, z + 1))
        self.closed = True
        return True, None

    def radical(self) -> Subspace:
        """Rad(theta) = {x : theta(x, T, T) = 0}."""
        n = self.ambient.dim
        rows = []
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                row = [self.value(i, j, k) for i in range(1, n + 1)]
                if any(x != 0 for x in row):
                    rows.append(row)
        return Subspace(n, nullspace(rows, n))

    def __repr__(self):
        terms = ", ".join(f"({i},{j},{k}): {v}" for (i, j, k), v in sorted(self.coeffs.items()))
        return f"Cocycle({{{terms}}})"


class CochainSpace:
    """A subspace of cochains with a canonical reduced-echelon basis."""

    def __init__(self, ambient: Lts, vectors, closed=False):
        self.ambient = ambient
        reduced, _ = rref([list(v) for v in vectors])
        rows = [row for row in reduced if any(x != 0 for x in row)]
        self.coordinates = rows
        self.basis = [Cocycle.from_coordinates(ambient, row, closed=closed) for row in rows]

    @property
    def dim(self):
        return len(self.coordinates)

    def contains(self, theta: Cocycle) -> bool:
        return Subspace(len(delta_indices(self.ambient.dim)), self.coordinates).contains(
            theta.coordinates())

    def span_equals(self, cochains) -> bool:
        """Span comparison against explicitly given cochains."""
        vectors = [c.coordinates() for c in cochains]
        other, _ = rref(vectors)
        other = [row for row in other if any(x != 0 for x in row)]
        if len(other) != self.dim:
            return False
        return all(a == b for ra, rb in zip(self.coordinates, other) for a, b in zip(ra, rb))

    def __repr__(self):
        return f"CochainSpace(dim {self.dim} on Lts dim {self.ambient.dim})"


def _b2_rows(system, idx_pos):
    n = system.dim
    rows = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                row = [QI_ZERO] * len(idx_pos)
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    if a == b:
                        continue
                    if a < b:
                        row[idx_pos[(a, b, c)]] = row[idx_pos[(a, b, c)]] + 1
                    else:
                        row[idx_pos[(b, a, c)]] = row[idx_pos[(b, a, c)]] - 1
                if any(x != 0 for x in row):
                    rows[tuple(row)] = None
    return rows


def _b3_rows(system, idx_pos):
    n = system.dim
    rows = {}

    def add_value(row, a, b, c, scale):
        # contribute scale * theta(e_a, e_b, e_c) to the row
        if a == b or scale == 0:
            return
        if a < b:
            row[idx_pos[(a, b, c)]] = row[idx_pos[(a, b, c)]] + scale
        else:
            row[idx_pos[(b, a, c)]] = row[idx_pos[(b, a, c)]] - scale

    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            for x in range(1, n + 1):
                for y in range(1, n + 1):
                    for z in range(1, n + 1):
                        row = [QI_ZERO] * len(idx_pos)
                        inner = system.product(x, y, z)
                        for p, s in enumerate(inner, start=1):
                            add_value(row, u, v, p, s)
                        px = system.product(v, u, x)
                        for p, s in enumerate(px, start=1):
                            add_value(row, p, y, z, s)
                        py = system.product(v, u, y)
                        for p, s in enumerate(py, start=1):
                            add_value(row, x, p, z, s)
                        pz = system.product(v, u, z)
                        for p, s in enumerate(pz, start=1):
                            add_value(row, x, y, p, s)
                        if any(w != 0 for w in row):
                            rows[tuple(row)] = None
    return rows


def cocycle_space(system: Lts) -> CochainSpace:
    """Solution space of (B1)-(B3) over all basis tuples."""
    idx = delta_indices(system.dim)
    idx_pos = {t: pos for pos, t in enumerate(idx)}
    rows = _b2_rows(system, idx_pos)
    rows.update(_b3_rows(system, idx_pos))
    vectors = nullspace([list(r) for r in rows], len(idx))
    return CochainSpace(system, vectors, closed=True)


def coboundary_of(system: Lts, functional) -> Cocycle:
    """delta f for a linear functional given by its coefficient row."""
    n = system.dim
    coeffs = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                prod = system.product(i, j, k)
                val = sum((functional[p] * prod[p] for p in range(n)), start=QI_ZERO * 0)
                if val != 0:
                    coeffs[(i, j, k)] = val
    return Cocycle(system, coeffs, closed=True)


def coboundary_space(system: Lts) -> CochainSpace:
    """B^3 spanned by delta of the dual basis; dim B^3 = dim [T,T,T]."""
    n = system.dim
    vectors = []
    for p in range(n):
        functional = [1 if q == p else 0 for q in range(n)]
        vectors.append(coboundary_of(system, functional).coordinates())
    return CochainSpace(system, vectors, closed=True)


def cohomology(system: Lts):
    """(dim H^3, representative cochains): an echelon complement of B^3 in Z^3.

    Representatives are the Z^3 echelon vectors whose pivots are not pivots of
    B^3, reduced modulo B^3, so the choice is canonical and reproducible.
    """
    z3 = cocycle_space(system)
    b3 = coboundary_space(system)
    if b3.dim == 0:
        return z3.dim, z3
    b_rows, b_pivots = rref([list(r) for r in b3.coordinates])
    current = [list(r) for r in b3.coordinates]
    current_rank = b3.dim
    reps = []
    for row in z3.coordinates:
        stacked, _ = rref(current + [list(row)])
        new_rank = len([r for r in stacked if any(x != 0 for x in r)])
        if new_rank == current_rank:
            continue  # class already represented (or lies in B^3)
        current.append(list(row))
        current_rank = new_rank
        reduced = list(row)
        for br, bp in zip(b_rows, b_pivots):
            f = reduced[bp]
            if f != 0:
                reduced = [a - f * b for a, b in zip(reduced, br)]
        reps.append(reduced)
    reps, _ = rref(reps)
    reps = [r for r in reps if any(x != 0 for x in r)]
    space = CochainSpace(system, reps, closed=True)
    return z3.dim - b3.dim, space


def cocycle_to_dict(theta: Cocycle, include_system=True) -> dict:
    """{"system": <Lts doc>, "coeffs": [{"ijk": [i,j,k], "value": str}, ...]}"""
    from .core import lts_to_dict
    from .scalars import scalar_str

    doc = {"coeffs": [{"ijk": [i, j, k], "value": scalar_str(v)}
                      for (i, j, k), v in sorted(theta.coeffs.items())]}
    if include_system:
        doc["system"] = lts_to_dict(theta.ambient)
    return doc


def cocycle_from_dict(doc: dict, ambient: Lts = None) -> Cocycle:
    """Parse a cocycle document; i < j is enforced on load."""
    from .core import lts_from_dict
    from .errors import MalformedInput
    from .scalars import parse_scalar

    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise MalformedInput("coeffs", "cocycle document needs a coeffs list")
    system = ambient
    if "system" in doc:
        loaded = lts_from_dict(doc["system"]) if isinstance(doc["system"], dict) else None
        if loaded is None:
            from . import catalog

            loaded = catalog.instantiate(doc["system"])
        if system is not None and loaded != system:
            raise MalformedInput("system", "cocycle system differs from the given ambient")
        system = loaded
    if system is None:
        raise MalformedInput("system", "no ambient system given")
    coeffs = {}
    for item in doc["coeffs"]:
        try:
            i, j, k = item["ijk"]
            value = parse_scalar(str(item["value"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput("coeffs", f"bad entry {item!r}: {exc}")
        if not i < j:
            raise MalformedInput("coeffs", f"indices must satisfy i < j, got {item['ijk']}")
        coeffs[(i, j, k)] = value
    return Cocycle(system, coeffs)


def is_automorphism(system: Lts, phi) -> bool:
    """phi is an automorphism iff the conjugated product equals the original."""
    try:
        return system.change_basis(phi) == system
    except Exception:
        return False


def aut_action(phi, theta: Cocycle, check=True) -> Cocycle:
    """(phi theta)(x,y,z) = theta(phi x, phi y, phi z); phi in Aut(T) by default.

    Columns of phi are the images of the basis vectors.
    """
    system = theta.ambient
    n = system.dim
    if check and not is_automorphism(system, phi):
        raise NotAnAutomorphism("matrix does not preserve the product")
    cols = [[phi[a][i] for a in range(n)] for i in range(n)]
    coeffs = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                val = theta.eval(cols[i - 1], cols[j - 1], cols[k - 1])
                if val != 0:
                    coeffs[(i, j, k)] = val
    return Cocycle(system, coeffs, closed=theta.closed)


def gl_action(psi_scalar, theta: Cocycle) -> Cocycle:
    """Value-side action of GL_1: scale a scalar-valued cocycle."""
    return psi_scalar * theta


def matrix_form(theta: Cocycle):
    """Antisymmetric blocks C_1..C_n with (C_t)_{ij} = theta(e_i, e_j, e_t)."""
    n = theta.ambient.dim
    blocks = []
    for t in range(1, n + 1):
        blocks.append([[theta.value(i, j, t) for j in range(1, n + 1)]
                       for i in range(1, n + 1)])
    return blocks


def a_theta(theta: Cocycle):
    """Trace-zero 3x3 matrix encoding of a cocycle on the abelian 3-dim system.

    Rows are (a_{2,3,1}, a_{2,3,2}, a_{2,3,3}), (-a_{1,3,1}, -a_{1,3,2},
    -a_{1,3,3}), (a_{1,2,1}, a_{1,2,2}, a_{1,2,3}); the (B2) relation
    a_{1,3,2} = a_{1,2,3} + a_{2,3,1} makes the trace vanish.
    """
    system = theta.ambient
    if system.dim != 3 or any(True for _ in system.nonzero_entries()):
        raise NotAbelianDim3("ambient must be the abelian 3-dimensional system")
    a = theta.value
    if a(1, 3, 2) != a(1, 2, 3) + a(2, 3, 1):
        raise RelationViolated("cochain violates the cyclic relation a132 = a123 + a231")
    return [
        [a(2, 3, 1), a(2, 3, 2), a(2, 3, 3)],
        [-a(1, 3, 1), -a(1, 3, 2), -a(1, 3, 3)],
        [a(1, 2, 1), a(1, 2, 2), a(1, 2, 3)],
    ]
