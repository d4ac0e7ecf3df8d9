"""Orbit degenerations: parametrized-basis verification and non-degeneration evidence.

A degeneration witness transports the source structure constants into a
t-dependent basis E_i(t) = sum_j A[i][j](t) e_j over Q(i)(t) and checks that
every transported constant has a finite limit at t = 0 equal to the target
constant.  Family witnesses first substitute a parametrized index f(t) for the
family parameter.

Non-degenerations come at three evidence levels, strongest first:
necessary-condition certificates (annihilator / derived-subspace / derivation
dimensions), separating-set membership plus Borel-stability evidence
(randomized or symbolic), and randomized no-escape searches.  The graph
assembly stitches the verified witnesses into the degeneration diagram and
reports its maximal nodes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from . import catalog
from .core import Lts, change_basis_tensor
from .errors import InconsistentGraph, MalformedInput, SingularBasis
from .linalg import determinant, mat_inverse
from .multipoly import MultiPoly
from .sampling import ExactRandom
from .scalars import (
    GaussianRational,
    QI_ZERO,
    RationalFunction,
    parse_rational_function,
    parse_scalar,
    rational_function_str,
    scalar_str,
)

__all__ = [
    "ParametrizedBasis",
    "DegenerationWitness",
    "SeparatingSet",
    "transport_constants",
    "verify_degeneration",
    "necessary_conditions",
    "NecessaryConditionReport",
    "borel_stability_evidence",
    "orbit_escape_search",
    "degeneration_graph",
    "witness_from_dict",
    "witness_to_dict",
    "separating_set_from_dict",
    "separating_set_to_dict",
    "table2_witness",
    "table4_witness",
    "dim3_witness",
    "table3_separating_set",
    "table5_separating_set",
    "TABLE2_WITNESSES",
    "TABLE3_ROWS",
    "TABLE5_ROW",
]


class ParametrizedBasis:
    """Square matrix A(t) over Q(i)(t); row i holds the coordinates of E_i(t)."""

    def __init__(self, rows):
        self.rows = [[RationalFunction.of(x) for x in row] for row in rows]
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise MalformedInput("basis", "parametrized basis must be square")
        self.det = determinant([list(r) for r in self.rows])
        if not self.det:
            raise SingularBasis("parametrized basis is singular over Q(i)(t)")

    @property
    def dim(self):
        return len(self.rows)

    @staticmethod
    def from_strings(rows):
        return ParametrizedBasis([[parse_rational_function(s) for s in row] for row in rows])

    def at(self, t0):
        """Numeric basis matrix at a sample parameter value."""
        return [[x.evaluate_at(t0) for x in row] for row in self.rows]

    def to_strings(self):
        return [[rational_function_str(x) for x in row] for row in self.rows]


@dataclass
class DegenerationWitness:
    source: str
    target: str
    basis: ParametrizedBasis
    source_lambda: Optional[GaussianRational] = None
    index_fn: Optional[RationalFunction] = None  # parametrized index for family rows
    label: str = ""
    target_lambda: Optional[GaussianRational] = None

    def source_system(self):
        """Source tensor, with the family parameter substituted when present."""
        entry = catalog.ENTRIES.get(self.source)
        if entry is None:
            raise MalformedInput("source", f"unknown system {self.source!r}")
        if entry.family:
            if self.index_fn is not None:
                from .core import complete_table

                return complete_table(entry.dim, entry.generators(self.index_fn))
            if self.source_lambda is None:
                raise MalformedInput("source", "family witness needs lambda or index_fn")
            return catalog.instantiate(self.source, self.source_lambda)
        return catalog.instantiate(self.source)

    def target_system(self):
        entry = catalog.ENTRIES.get(self.target)
        if entry is None:
            raise MalformedInput("target", f"unknown system {self.target!r}")
        if entry.family:
            if self.target_lambda is None:
                raise MalformedInput("target", "family targets must fix a member")
            return catalog.instantiate(self.target, self.target_lambda)
        return catalog.instantiate(self.target)


def transport_constants(system: Lts, basis: ParametrizedBasis):
    """Structure constants of the product in the parametrized basis.

    With A the row matrix of the new basis, the transported tensor equals the
    conjugated product under g = (A^T)^{-1}; entries live in Q(i)(t).
    """
    if basis.dim != system.dim:
        raise MalformedInput("basis", "basis dimension differs from the system")
    n = system.dim
    lifted = [[[[RationalFunction.of(system.constant(i + 1, j + 1, k + 1, p + 1))
                 for p in range(n)] for k in range(n)] for j in range(n)] for i in range(n)]
    g = mat_inverse([[basis.rows[j][i] for j in range(n)] for i in range(n)])
    return change_basis_tensor(lifted, g)


@dataclass
class DegenerationReport:
    ok: bool
    witness: DegenerationWitness
    problems: list
    elapsed: float

    def __str__(self):
        head = self.witness.label or f"{self.witness.source} -> {self.witness.target}"
        if self.ok:
            return f"{head}: verified ({self.elapsed:.3f}s)"
        lines = [f"{head}: FAILED"]
        for kind, idx, detail in self.problems:
            lines.append(f"  {kind} at {idx}: {detail}")
        return "\n".join(lines)


def verify_degeneration(witness: DegenerationWitness) -> DegenerationReport:
    """Check finite limits at t = 0 and exact match with the target constants."""
    start = time.monotonic()
    source = witness.source_system()
    target = witness.target_system()
    problems = []
    if source.dim != target.dim:
        problems.append(("dimension", (), f"{source.dim} vs {target.dim}"))
        return DegenerationReport(False, witness, problems, time.monotonic() - start)
    transported = transport_constants(source, witness.basis)
    n = source.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for p in range(n):
                    value = RationalFunction.of(transported[i][j][k][p])
                    expected = target.constant(i + 1, j + 1, k + 1, p + 1)
                    try:
                        lim = value.limit_at_zero()
                    except Exception:
                        problems.append(("pole", (i + 1, j + 1, k + 1, p + 1),
                                         rational_function_str(value)))
                        continue
                    if lim != expected:
                        problems.append(
                            ("mismatch", (i + 1, j + 1, k + 1, p + 1),
                             f"limit {scalar_str(lim)} != "
                             f"{scalar_str(GaussianRational.of(expected))}"))
    return DegenerationReport(not problems, witness, problems, time.monotonic() - start)


# ---------------------------------------------------------------------------
# necessary conditions


@dataclass
class NecessaryConditionReport:
    ann_ok: bool        # dim Ann(source) <= dim Ann(target)
    derived_ok: bool    # dim [S,S,S] >= dim [T',T',T']
    der_ok: bool        # dim Der(source) < dim Der(target)
    identical: bool
    values: dict

    @property
    def violations(self):
        out = []
        if not self.ann_ok:
            out.append("annihilator dimension decreases")
        if not self.derived_ok:
            out.append("derived subspace dimension increases")
        if not self.der_ok:
            out.append("derivation dimension does not grow")
        return out

    @property
    def certifies_non_degeneration(self):
        # the derivation-count test assumes the systems are non-isomorphic
        return (not self.identical) and bool(self.violations)

    def __str__(self):
        if self.identical:
            return "identical tensors: degeneration is trivial"
        if not self.violations:
            return "all necessary conditions hold (no obstruction found)"
        return "; ".join(self.violations)


def necessary_conditions(source: Lts, target: Lts) -> NecessaryConditionReport:
    values = {
        "ann": (source.annihilator().dim, target.annihilator().dim),
        "derived": (source.derived().dim, target.derived().dim),
        "der": (source.derivations()[0], target.derivations()[0]),
    }
    identical = source == target
    return NecessaryConditionReport(
        ann_ok=values["ann"][0] <= values["ann"][1],
        derived_ok=values["derived"][0] >= values["derived"][1],
        der_ok=values["der"][0] < values["der"][1],
        identical=identical,
        values=values,
    )


# ---------------------------------------------------------------------------
# separating sets


class SeparatingSet:
    """Borel-stable linear locus of structure tensors, given by relations.

    ``relations`` is a list of (idx_a, idx_b, factor) meaning
    c_{idx_a} = factor * c_{idx_b} with 1-based (i, j, k, p) indices; every
    constant not mentioned in any relation must vanish (the printed
    "otherwise zero" convention).
    """

    def __init__(self, dim, relations, zero_otherwise=True, label=""):
        self.dim = dim
        self.relations = [(tuple(a), tuple(b), GaussianRational.of(f))
                          for a, b, f in relations]
        self.zero_otherwise = zero_otherwise
        self.label = label
        support = []
        for a, b, _ in self.relations:
            for idx in (a, b):
                if idx not in support:
                    support.append(idx)
        self.support = support

    def _entry(self, tensor, idx):
        i, j, k, p = idx
        return tensor[i - 1][j - 1][k - 1][p - 1]

    def contains_tensor(self, tensor) -> bool:
        for a, b, factor in self.relations:
            if self._entry(tensor, a) != factor * self._entry(tensor, b):
                return False
        if self.zero_otherwise:
            n = self.dim
            support = set(self.support)
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        for p in range(n):
                            if (i + 1, j + 1, k + 1, p + 1) in support:
                                continue
                            if tensor[i][j][k][p] != 0:
                                return False
        return True

    def contains(self, system: Lts) -> bool:
        tensor = [[[[system.constant(i, j, k, p) for p in range(1, self.dim + 1)]
                    for k in range(1, self.dim + 1)] for j in range(1, self.dim + 1)]
                  for i in range(1, self.dim + 1)]
        return self.contains_tensor(tensor)

    # -- solving the relations --------------------------------------------

    def zero_forced(self):
        """Indices forced to vanish, e.g. by a self-relation c = -c."""
        out = set()
        for a, b, f in self.relations:
            if a == b and f != 1:
                out.add(a)
        return out

    def _components(self):
        """Connected components of the relation graph with path factors.

        Each component maps index -> factor relative to its root, so assigning
        the root determines the component; inconsistent cycles surface later
        through the exact containment re-check.
        """
        adjacency = {}
        for a, b, f in self.relations:
            if a == b:
                continue
            adjacency.setdefault(a, []).append((b, f, True))
            adjacency.setdefault(b, []).append((a, f, False))
        seen = set()
        components = []
        for start in self.support:
            if start in seen:
                continue
            comp = {start: GaussianRational(1)}
            queue = [start]
            seen.add(start)
            while queue:
                node = queue.pop()
                for other, f, forward in adjacency.get(node, ()):
                    if other in comp:
                        continue
                    # forward: node = f * other  =>  other = node / f
                    comp[other] = comp[node] / f if forward else comp[node] * f
                    seen.add(other)
                    queue.append(other)
            components.append(comp)
        return components

    def random_point(self, rng: ExactRandom):
        """Random tensor satisfying the linear relations (not necessarily an LTS)."""
        n = self.dim
        tensor = [[[[QI_ZERO for _ in range(n)] for _ in range(n)] for _ in range(n)]
                  for _ in range(n)]
        forced = self.zero_forced()
        for comp in self._components():
            value = rng.gaussian(height=5)
            for idx, factor in comp.items():
                if idx in forced:
                    continue
                i, j, k, p = idx
                tensor[i - 1][j - 1][k - 1][p - 1] = factor * value
        if not self.contains_tensor(tensor):  # inconsistent cycle: keep the zero point
            return [[[[QI_ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        return tensor

    def symbolic_point(self, extra_vars=()):
        """Generic point with one polynomial variable per relation component."""
        n = self.dim
        comps = self._components()
        var_names = [f"r{k}" for k in range(len(comps))] + list(extra_vars)
        zero = MultiPoly(var_names, {})
        tensor = [[[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
                  for _ in range(n)]
        forced = self.zero_forced()
        for pos, comp in enumerate(comps):
            var = MultiPoly.variable(var_names, f"r{pos}")
            for idx, factor in comp.items():
                if idx in forced:
                    continue
                i, j, k, p = idx
                tensor[i - 1][j - 1][k - 1][p - 1] = factor * var
        return var_names, tensor


def _lower_triangular_symbols(n, var_names):
    zero = MultiPoly(var_names, {})
    return [[MultiPoly.variable(var_names, f"l{i+1}{j+1}") if j <= i else zero
             for j in range(n)] for i in range(n)]


def _poly_det(matrix, zero):
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = zero
    for c in range(n):
        entry = matrix[0][c]
        if not entry:
            continue
        sub = [[matrix[r][cc] for cc in range(n) if cc != c] for r in range(1, n)]
        term = entry * _poly_det(sub, zero)
        total = total + term if c % 2 == 0 else total - term
    return total


def _adjugate(matrix, zero):
    n = len(matrix)
    adj = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            minor = _poly_det([[matrix[r][c] for c in cols] for r in rows], zero)
            adj[i][j] = minor if (i + j) % 2 == 0 else -minor
    return adj


@dataclass
class EvidenceReport:
    kind: str
    ok: bool
    detail: str
    trials: int = 0

    def __str__(self):
        status = "pass" if self.ok else "FAIL"
        suffix = f" [{self.trials} trials]" if self.trials else ""
        return f"{self.kind}{suffix}: {status} - {self.detail}"


def borel_stability_evidence(separating: SeparatingSet, mode="randomized",
                             trials=100, seed=0) -> EvidenceReport:
    """Evidence that the locus is stable under lower-triangular basis changes.

    Randomized mode transports random points of the linear locus by random
    invertible lower-triangular matrices and checks containment exactly.
    Symbolic mode conjugates a generic point by a generic lower-triangular
    matrix, with inverse denominators cleared by the adjugate (a det^3 factor
    scales every constant and cancels from the homogeneous linear relations),
    and checks the relations as polynomial identities: that one is a proof.
    """
    n = separating.dim
    if mode == "randomized":
        rng = ExactRandom(seed)
        for trial in range(trials):
            point = separating.random_point(rng)
            g = rng.lower_triangular_invertible(n, height=5)
            moved = change_basis_tensor(point, g)
            if not separating.contains_tensor(moved):
                return EvidenceReport("borel-randomized", False,
                                      f"escape at trial {trial}", trials)
        return EvidenceReport("borel-randomized", True,
                              "all transported points stayed in the locus", trials)
    if mode != "symbolic":
        raise MalformedInput("mode", f"unknown mode {mode!r}")
    lower_names = [f"l{i+1}{j+1}" for i in range(n) for j in range(i + 1)]
    var_names, tensor = separating.symbolic_point(extra_vars=lower_names)
    zero = MultiPoly(var_names, {})
    g = _lower_triangular_symbols(n, var_names)
    adj = _adjugate(g, zero)
    moved = [[[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
             for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for q in range(n):
                    val = tensor[a][b][c][q]
                    if not val:
                        continue
                    for i in range(n):
                        if not adj[a][i]:
                            continue
                        for j in range(n):
                            if not adj[b][j]:
                                continue
                            fij = adj[a][i] * adj[b][j]
                            for k in range(n):
                                if not adj[c][k]:
                                    continue
                                term = fij * adj[c][k] * val
                                for p in range(q, n):
                                    if g[p][q]:
                                        moved[i][j][k][p] = moved[i][j][k][p] + term * g[p][q]
    for a_idx, b_idx, factor in separating.relations:
        i, j, k, p = a_idx
        lhs = moved[i - 1][j - 1][k - 1][p - 1]
        i, j, k, p = b_idx
        rhs = moved[i - 1][j - 1][k - 1][p - 1]
        if not (lhs - factor * rhs).is_zero():
            return EvidenceReport("borel-symbolic", False,
                                  f"relation {a_idx} = {scalar_str(factor)}*{b_idx} breaks")
    if separating.zero_otherwise:
        support = set(separating.support)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for p in range(n):
                        if (i + 1, j + 1, k + 1, p + 1) in support:
                            continue
                        if not moved[i][j][k][p].is_zero():
                            return EvidenceReport(
                                "borel-symbolic", False,
                                f"constant ({i+1},{j+1},{k+1},{p+1}) becomes nonzero")
    return EvidenceReport("borel-symbolic", True,
                          "relations hold as polynomial identities")


def _transported_in_locus(separating: SeparatingSet, nonzeros, g):
    """Containment of the conjugated tensor, computing entries lazily.

    Random conjugates almost always violate an "otherwise zero" constraint
    within the first few entries, so checking those first with per-entry
    evaluation beats materializing the whole transported tensor.
    """
    n = separating.dim
    h = mat_inverse(g)
    cache = {}

    def moved(idx):
        if idx in cache:
            return cache[idx]
        i, j, k, p = idx
        total = QI_ZERO
        for a, b, c, q, val in nonzeros:
            f = h[a][i - 1] * h[b][j - 1]
            if f:
                f = f * h[c][k - 1]
                if f:
                    gpq = g[p - 1][q]
                    if gpq:
                        total = total + f * gpq * val
        cache[idx] = total
        return total

    if separating.zero_otherwise:
        support = set(separating.support)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    for p in range(1, n + 1):
                        idx = (i, j, k, p)
                        if idx not in support and moved(idx) != 0:
                            return False
    for a_idx, b_idx, factor in separating.relations:
        if moved(a_idx) != factor * moved(b_idx):
            return False
    return True


def orbit_escape_search(separating: SeparatingSet, target: Lts, trials=200,
                        seed=0) -> EvidenceReport:
    """Randomized falsification: look for g with g * target inside the locus.

    Finding one refutes the claimed non-degeneration; finding none in N trials
    is reported as evidence only, never proof.
    """
    n = target.dim
    if n != separating.dim:
        raise MalformedInput("target", "dimension mismatch with separating set")
    rng = ExactRandom(seed)
    base = [[[[target.constant(i, j, k, p) for p in range(1, n + 1)]
              for k in range(1, n + 1)] for j in range(1, n + 1)] for i in range(1, n + 1)]
    if separating.contains_tensor(base):
        return EvidenceReport("escape-search", False,
                              "target already satisfies the relations", 0)
    nonzeros = [(a, b, c, q, base[a][b][c][q])
                for a in range(n) for b in range(n) for c in range(n) for q in range(n)
                if base[a][b][c][q] != 0]
    for trial in range(trials):
        g = rng.invertible(n, height=5)
        if _transported_in_locus(separating, nonzeros, g):
            return EvidenceReport("escape-search", False,
                                  f"escape found at trial {trial}", trial + 1)
    return EvidenceReport("escape-search", True, "no escape found", trials)


# ---------------------------------------------------------------------------
# built-in witness and separating-set tables


def _w(source, target, rows, lam=None, index_fn=None, label="", target_lambda=None):
    return {"source": source, "target": target, "rows": rows, "lambda": lam,
            "index_fn": index_fn, "label": label, "target_lambda": target_lambda}


TABLE2_WITNESSES = [
    _w("T4,7", "T4,6", [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                        ["0", "0", "1/t", "0"], ["0", "0", "0", "-1/t"]],
       target_lambda="0", label="T4,7 -> T4,6^0"),
    _w("T4,5", "T4,6", [["1", "0", "0", "0"], ["0", "t", "0", "0"],
                        ["0", "0", "1", "0"], ["0", "0", "0", "t"]],
       target_lambda="1", label="T4,5 -> T4,6^1"),
    _w("T4,8", "T4,3", [["t", "0", "0", "0"], ["0", "1", "0", "0"],
                        ["0", "0", "t^2", "0"], ["0", "0", "0", "t"]]),
    _w("T4,8", "T4,9", [["1", "0", "0", "0"], ["0", "t", "0", "0"],
                        ["0", "0", "t", "0"], ["0", "0", "0", "t"]]),
    _w("T4,4", "T4,2", [["0", "1", "0", "0"], ["0", "0", "t", "0"],
                        ["0", "0", "0", "t"], ["t", "0", "0", "0"]]),
    _w("T4,9", "T4,2", [["1", "0", "0", "0"], ["0", "t", "0", "0"],
                        ["0", "0", "t", "0"], ["0", "0", "0", "1"]]),
    _w("T4,3", "T4,2", [["1", "0", "0", "0"], ["0", "t", "0", "0"],
                        ["0", "0", "t", "0"], ["0", "0", "0", "1"]]),
    _w("T4,2", "T4,1", [["t", "0", "0", "0"], ["0", "t", "0", "0"],
                        ["0", "0", "t", "0"], ["0", "0", "0", "t"]]),
    _w("T4,8", "T4,4", [["0", "0", "1/t", "0"], ["0", "-i", "0", "0"],
                        ["t", "0", "0", "0"], ["0", "0", "0", "t"]]),
    _w("T4,6", "T4,2", [["t", "0", "-1/(3*t)", "0"], ["0", "1", "0", "0"],
                        ["0", "0", "0", "1"], ["0", "0", "1", "0"]],
       lam="1", label="T4,6^1 -> T4,2"),
    _w("T4,7", "T4,8", [["1", "-1/(2*t^3)", "-1/(4*t^5)", "0"],
                        ["0", "1/(2*t)", "-1/(4*t^3)", "0"],
                        ["0", "0", "1/(2*t)", "0"],
                        ["0", "0", "0", "-1/(4*t^4)"]]),
    _w("T4,5", "T4,4", [["t/3", "0", "0", "0"], ["0", "1", "0", "0"],
                        ["-1/(3*t)", "1/t", "1", "0"], ["0", "0", "0", "1"]]),
    # family source with a fixed generic parameter; rows are built per lambda
    _w("T4,6", "T4,4", None, lam="2", label="T4,6^lambda -> T4,4"),
]


def _family_to_t44_rows(lam: GaussianRational):
    """Basis rows for the family -> T4,4 witness; needs lam outside {1, -2, -1/2}."""
    lam = GaussianRational.of(lam)
    for bad in (GaussianRational(1), GaussianRational(-2), GaussianRational.of(-1) / 2):
        if lam == bad:
            raise MalformedInput("lambda", f"witness undefined at lambda = {scalar_str(bad)}")
    c1 = scalar_str(1 / (lam - 1))
    c2 = scalar_str(-1 / (2 * lam + 1))
    c3 = scalar_str(-1 / (lam * lam + lam - 2))
    return [["0", "1", "0", "0"],
            ["1", f"({c1})/t", "0", "0"],
            [f"({c2})/t", f"({c3})/t^2", "1", "0"],
            ["0", "0", "0", "1/t"]]


TABLE4_WITNESS = _w("T4,6", "T4,5",
                    [["1/2", "1/(2*t)", "0", "0"],
                     ["-1/(2*t)", "1/(2*t^2)", "0", "0"],
                     ["0", "0", "1", "0"],
                     ["0", "0", "0", "1/(2*t^2)"]],
                    index_fn="(1-t)/(1+t)", label="T4,6^* -> T4,5")

DIM3_WITNESS = _w("T3,2", "T3,1", [["t", "0", "0"], ["0", "t", "0"], ["0", "0", "t"]],
                  label="T3,2 -> T3,1")


def _builtin_witness(doc, lam_override=None):
    lam = doc["lambda"] if lam_override is None else lam_override
    lam_value = None if lam is None else (
        parse_scalar(lam) if isinstance(lam, str) else GaussianRational.of(lam))
    rows = doc["rows"]
    if rows is None:  # the family -> T4,4 row depends on the parameter
        rows = _family_to_t44_rows(lam_value)
    tgt_lam = doc.get("target_lambda")
    return DegenerationWitness(
        source=doc["source"],
        target=doc["target"],
        basis=ParametrizedBasis.from_strings(rows),
        source_lambda=lam_value,
        index_fn=None if doc["index_fn"] is None else parse_rational_function(doc["index_fn"]),
        label=doc["label"] or f"{doc['source']} -> {doc['target']}",
        target_lambda=None if tgt_lam is None else parse_scalar(tgt_lam),
    )


def table2_witness(row_index: int, lam=None) -> DegenerationWitness:
    """1-based access to the rows of the main degeneration table."""
    return _builtin_witness(TABLE2_WITNESSES[row_index - 1], lam_override=lam)


def table4_witness() -> DegenerationWitness:
    return _builtin_witness(TABLE4_WITNESS)


def dim3_witness() -> DegenerationWitness:
    return _builtin_witness(DIM3_WITNESS)


def _skew(i, j, k, p):
    return ((i, j, k, p), (j, i, k, p), GaussianRational(-1))


def table3_separating_set(row: int, lam=None) -> SeparatingSet:
    """Separating sets of the printed non-degeneration rows (1, 2 and 3)."""
    if row == 1:
        relations = [
            _skew(1, 2, 1, 3), _skew(1, 2, 1, 4), _skew(1, 2, 2, 4), _skew(1, 2, 3, 4),
            _skew(1, 3, 1, 4), _skew(1, 3, 2, 4),
            ((1, 3, 2, 4), (1, 2, 3, 4), GaussianRational(1)),
        ]
        return SeparatingSet(4, relations, label="T4,7 not-> T4,5, T4,6^lam (lam != 0,-1)")
    if row == 2:
        if lam is None:
            raise MalformedInput("lambda", "row 2 separating set is per fixed lambda")
        lam = GaussianRational.of(lam)
        relations = [
            _skew(1, 2, 1, 4), _skew(1, 2, 2, 4), _skew(1, 2, 3, 4),
            ((1, 2, 3, 4), (1, 3, 2, 4), 1 + lam),
            _skew(1, 3, 1, 4), _skew(1, 3, 2, 4), _skew(2, 3, 1, 4),
            ((2, 3, 1, 4), (1, 3, 2, 4), -lam),
        ]
        return SeparatingSet(4, relations, label=f"T4,6^{scalar_str(lam)} not-> T4,6^1")
    if row == 3:
        relations = [_skew(1, 2, 1, 3), _skew(1, 2, 1, 4), _skew(1, 3, 1, 4)]
        return SeparatingSet(4, relations, label="T4,9 not-> T4,3")
    raise MalformedInput("row", f"no separating set for row {row}")


def table5_separating_set(literal=False) -> SeparatingSet:
    """Separating set for the family non-degenerations.

    The printed table contains the self-referential relation
    c_{1,3,2}^4 = -c_{1,3,2}^4, which would force that constant to vanish and
    exclude every family member from its own separating set; the operative set
    replaces it with the (3,1,2) antisymmetry partner, the evident intention.
    ``literal=True`` keeps the printed self-relation, for inspection.
    """
    relations = [
        _skew(1, 2, 1, 4), _skew(1, 2, 2, 4), _skew(1, 2, 3, 4), _skew(1, 3, 1, 4),
        ((1, 3, 2, 4), (1, 3, 2, 4), GaussianRational(-1)) if literal else _skew(1, 3, 2, 4),
        _skew(2, 3, 1, 4),
    ]
    label = "T4,6^* not-> T4,9, T4,3" + (" [literal]" if literal else "")
    return SeparatingSet(4, relations, label=label)


TABLE3_ROWS = [
    {"row": 1, "kind": "separating", "source": "T4,7", "source_lambda": None,
     "targets": ["T4,5", "T4,6"]},
    {"row": 2, "kind": "separating", "source": "T4,6", "source_lambda": "per-lambda",
     "targets": ["T4,6^1"]},
    {"row": 3, "kind": "separating", "source": "T4,9", "source_lambda": None,
     "targets": ["T4,3"]},
    {"row": 4, "kind": "necessary-conditions", "source": "T4,5", "source_lambda": None,
     "targets": ["T4,9", "T4,3"]},
    {"row": 5, "kind": "necessary-conditions", "source": "T4,6", "source_lambda": "sampled",
     "targets": ["T4,9", "T4,3"]},
]

TABLE5_ROW = {"row": 1, "kind": "separating", "source": "T4,6",
              "source_lambda": "family", "targets": ["T4,9", "T4,3"]}


# ---------------------------------------------------------------------------
# graph assembly


@dataclass
class GraphNode:
    name: str
    orbit_dim: int
    figure_stratum: Optional[int]
    kind: str = "system"  # "system" | "family"
    closure_dim: Optional[int] = None


@dataclass
class GraphEdge:
    source: str
    target: str
    kind: str  # "table2" | "table4" | "family-member" | "dim3"
    verified: bool
    label: str = ""


@dataclass
class DegenerationGraph:
    dim: int
    nodes: list
    edges: list
    maximal: list
    consistent: bool

    def node(self, name):
        for n in self.nodes:
            if n.name == name:
                return n
        raise KeyError(name)

    def edge_pairs(self):
        return sorted((e.source, e.target) for e in self.edges)


FAMILY_NODE = "T4,6*"
_GENERIC_FAMILY_SAMPLE = GaussianRational(2)
_ORBIT_OF_ONE = (GaussianRational(1), GaussianRational(-2), GaussianRational.of(-1) / 2)


def _node_name(system_name, lam=None):
    if system_name != "T4,6":
        return system_name
    if lam is None:
        return FAMILY_NODE
    return f"T4,6^{scalar_str(lam)}"


def degeneration_graph(dim=4) -> DegenerationGraph:
    """Assemble and verify the degeneration diagram for dimension 3 or 4.

    Nodes are the catalog entries (the family appears as one node plus its two
    distinguished members); edges are the verified built-in witnesses.  Every
    verified edge is cross-checked against the necessary conditions; a
    contradiction raises, since it would mean a bug on one side or the other.
    Orbit dimensions are computed from the derivation formula; the published
    column positions are carried alongside as data.
    """
    if dim == 3:
        witnesses = [dim3_witness()]
        node_specs = [("T3,1", None), ("T3,2", None)]
        family_edges = []
    elif dim == 4:
        witnesses = [_builtin_witness(doc) for doc in TABLE2_WITNESSES]
        witnesses.append(table4_witness())
        node_specs = [("T4,1", None), ("T4,2", None), ("T4,3", None), ("T4,4", None),
                      ("T4,5", None), ("T4,6", None),
                      ("T4,6", QI_ZERO), ("T4,6", GaussianRational(1)),
                      ("T4,7", None), ("T4,8", None), ("T4,9", None)]
        family_edges = [(FAMILY_NODE, _node_name("T4,6", QI_ZERO)),
                        (FAMILY_NODE, _node_name("T4,6", GaussianRational(1)))]
    else:
        raise MalformedInput("dim", "graph supports dimensions 3 and 4")

    nodes = []
    for name, lam in node_specs:
        entry = catalog.ENTRIES[name]
        if entry.family and lam is None:
            member = catalog.instantiate(name, _GENERIC_FAMILY_SAMPLE)
            orbit = member.orbit_dimension()
            nodes.append(GraphNode(FAMILY_NODE, orbit, entry.figure_stratum,
                                   kind="family", closure_dim=orbit + 1))
        else:
            system = catalog.instantiate(name, lam) if entry.family else catalog.instantiate(name)
            stratum = entry.figure_stratum
            if entry.family:
                stratum = 8 if lam == 1 else 10
            nodes.append(GraphNode(_node_name(name, lam), system.orbit_dimension(), stratum))

    edges = []
    for witness in witnesses:
        report = verify_degeneration(witness)
        if not report.ok:
            raise InconsistentGraph(f"built-in witness failed: {report}")
        family_closure_source = witness.index_fn is not None
        if witness.source == "T4,6":
            if family_closure_source:
                src_name = FAMILY_NODE
            elif witness.source_lambda in _ORBIT_OF_ONE:
                src_name = _node_name("T4,6", GaussianRational(1))
            else:
                src_name = FAMILY_NODE  # generic-parameter row, e.g. -> T4,4
        else:
            src_name = witness.source
        tgt_name = _node_name(witness.target, witness.target_lambda) \
            if witness.target == "T4,6" else witness.target
        kind = "table4" if family_closure_source else ("dim3" if dim == 3 else "table2")
        edges.append(GraphEdge(src_name, tgt_name, kind, True, witness.label))

        source = catalog.instantiate("T4,6", _GENERIC_FAMILY_SAMPLE) \
            if family_closure_source else witness.source_system()
        target = witness.target_system()
        conditions = necessary_conditions(source, target)
        der_values = conditions.values["der"]
        if src_name == FAMILY_NODE:
            # the family closure gains one dimension over any member orbit
            der_ok = der_values[0] <= der_values[1]
        else:
            der_ok = conditions.der_ok
        if not (conditions.ann_ok and conditions.derived_ok and der_ok):
            raise InconsistentGraph(
                f"verified edge {src_name} -> {tgt_name} violates a necessary condition")

    for src, tgt in family_edges:
        edges.append(GraphEdge(src, tgt, "family-member", True, "family closure"))

    incoming = {n.name: 0 for n in nodes}
    for e in edges:
        if e.source != e.target:
            incoming[e.target] += 1
    maximal = sorted(name for name, count in incoming.items() if count == 0)
    return DegenerationGraph(dim, nodes, edges, maximal, True)


# ---------------------------------------------------------------------------
# JSON forms


def witness_to_dict(witness: DegenerationWitness) -> dict:
    source = {"name": witness.source}
    if witness.source_lambda is not None:
        source["lambda"] = scalar_str(witness.source_lambda)
    if witness.index_fn is not None:
        source["index_fn"] = rational_function_str(witness.index_fn)
    target = {"name": witness.target}
    if witness.target_lambda is not None:
        target["lambda"] = scalar_str(witness.target_lambda)
    return {"source": source, "target": target, "basis": witness.basis.to_strings()}


def witness_from_dict(doc: dict) -> DegenerationWitness:
    try:
        source = doc["source"]
        target = doc["target"]
        basis = doc["basis"]
    except (KeyError, TypeError):
        raise MalformedInput("witness", "needs source, target and basis")
    if not isinstance(source, dict) or "name" not in source:
        raise MalformedInput("source", "needs a system name")
    if not isinstance(target, dict) or "name" not in target:
        raise MalformedInput("target", "needs a system name")
    lam = source.get("lambda")
    index_fn = source.get("index_fn")
    tgt_lam = target.get("lambda")
    try:
        parsed = ParametrizedBasis.from_strings([[s for s in row] for row in basis])
    except (TypeError, ValueError) as exc:
        raise MalformedInput("basis", str(exc))
    return DegenerationWitness(
        source=source["name"],
        target=target["name"],
        basis=parsed,
        source_lambda=None if lam is None else parse_scalar(str(lam)),
        index_fn=None if index_fn is None else parse_rational_function(index_fn),
        label=f"{source['name']} -> {target['name']}",
        target_lambda=None if tgt_lam is None else parse_scalar(str(tgt_lam)),
    )


def separating_set_to_dict(separating: SeparatingSet) -> dict:
    return {
        "dim": separating.dim,
        "equal": [[list(a), list(b), scalar_str(f)] for a, b, f in separating.relations],
        "zero_otherwise": separating.zero_otherwise,
    }


def separating_set_from_dict(doc: dict) -> SeparatingSet:
    try:
        dim = doc["dim"]
        rels = doc["equal"]
    except (KeyError, TypeError):
        raise MalformedInput("separating set", "needs dim and equal relations")
    if not isinstance(dim, int) or dim < 1:
        raise MalformedInput("dim", "must be a positive integer")
    relations = []
    for item in rels:
        try:
            a, b, f = item
            relations.append((tuple(int(x) for x in a), tuple(int(x) for x in b),
                              parse_scalar(str(f))))
        except (TypeError, ValueError) as exc:
            raise MalformedInput("equal", f"bad relation {item!r}: {exc}")
    return SeparatingSet(dim, relations, doc.get("zero_otherwise", True))
