"""The classification catalog for nilpotent systems of dimension <= 4.

Entries carry generating products only; instantiation closes the table and
axiom-checks it.  The one-parameter family "T4,6" is classified up to the
six-element parameter orbit by the invariant

    xi(lam) = (lam^2 + lam + 1)^3 / (lam^2 (lam + 1)^2),

and explicit basis-change witnesses (the maps sigma_1..sigma_6) realize every
orbit identification exactly.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .errors import (
    DimensionUnsupported,
    MissingParameter,
    NoMatch,
    NotNilpotent,
    SingularParameter,
    UnknownName,
)
from .core import Fingerprint, Lts, complete_table
from .linalg import determinant
from .scalars import GaussianRational, QI_ONE, QI_ZERO, parse_scalar, scalar_str

__all__ = [
    "CatalogEntry",
    "ENTRIES",
    "FAMILY_NAME",
    "instantiate",
    "xi",
    "lambda_orbit",
    "family_isomorphism",
    "classify",
    "ClassifyResult",
    "table1_report",
    "TABLE1_PUBLISHED",
    "FIGURE1_STRATA",
    "FAMILY_SPECIAL_LAMBDAS",
]

FAMILY_NAME = "T4,6"
FAMILY_SPECIAL_LAMBDAS = (GaussianRational(1), GaussianRational(-2),
                          GaussianRational(Fraction(-1, 2)))


def _unit(dim, p, coeff=1):
    vec = [QI_ZERO] * dim
    vec[p - 1] = GaussianRational.of(coeff) if not hasattr(coeff, "limit_at_zero") else coeff
    return vec


def _family_generators(lam):
    """Generating products of the family member; works over any scalar field."""
    dim = 4
    return {
        (1, 2, 3): _unit(dim, 4, -(lam + 1)),
        (2, 3, 1): _unit(dim, 4, lam),
        (3, 1, 2): _unit(dim, 4, 1 + lam * 0),
    }


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    family: bool = False
    table1_der: Optional[int] = None  # published value; family handled separately
    figure_stratum: Optional[int] = None

    def generators(self, lam=None):
        if self.family:
            if lam is None:
                raise MissingParameter(f"{self.name} needs a family parameter")
            return _family_generators(lam)
        return dict(_FIXED_GENERATORS[self.name])


_FIXED_GENERATORS = {
    "T1,1": {},
    "T2,1": {},
    "T3,1": {},
    "T3,2": {(1, 2, 1): _unit(3, 3)},
    "T4,1": {},
    "T4,2": {(1, 2, 1): _unit(4, 3)},
    "T4,3": {(1, 2, 1): _unit(4, 3), (1, 2, 2): _unit(4, 4)},
    "T4,4": {(2, 3, 2): _unit(4, 4), (3, 1, 3): _unit(4, 4)},
    "T4,5": {(2, 3, 1): _unit(4, 4), (3, 1, 2): _unit(4, 4),
             (2, 1, 3): _unit(4, 4, 2), (2, 3, 2): _unit(4, 4)},
    "T4,7": {(1, 2, 1): _unit(4, 3), (1, 2, 3): _unit(4, 4), (1, 3, 2): _unit(4, 4)},
    "T4,8": {(1, 2, 1): _unit(4, 3), (1, 3, 1): _unit(4, 4), (1, 2, 2): _unit(4, 4)},
    "T4,9": {(1, 2, 1): _unit(4, 3), (1, 3, 1): _unit(4, 4)},
}

ENTRIES = {
    "T1,1": CatalogEntry("T1,1", 1),
    "T2,1": CatalogEntry("T2,1", 2),
    "T3,1": CatalogEntry("T3,1", 3, figure_stratum=0),
    "T3,2": CatalogEntry("T3,2", 3, figure_stratum=4),
    "T4,1": CatalogEntry("T4,1", 4, table1_der=16, figure_stratum=0),
    "T4,2": CatalogEntry("T4,2", 4, table1_der=9, figure_stratum=5),
    "T4,3": CatalogEntry("T4,3", 4, table1_der=8, figure_stratum=8),
    "T4,4": CatalogEntry("T4,4", 4, table1_der=7, figure_stratum=9),
    "T4,5": CatalogEntry("T4,5", 4, table1_der=6, figure_stratum=10),
    "T4,6": CatalogEntry("T4,6", 4, family=True, figure_stratum=10),
    "T4,7": CatalogEntry("T4,7", 4, table1_der=5, figure_stratum=11),
    "T4,8": CatalogEntry("T4,8", 4, table1_der=6, figure_stratum=10),
    "T4,9": CatalogEntry("T4,9", 4, table1_der=7, figure_stratum=9),
}

TABLE1_PUBLISHED = {
    "T4,1": 16, "T4,2": 9, "T4,3": 8, "T4,4": 7, "T4,5": 6,
    "T4,7": 5, "T4,8": 6, "T4,9": 7,
}

FIGURE1_STRATA = (11, 10, 9, 8, 5, 0)

_instances: dict = {}


def family_table1_der(lam) -> int:
    lam = GaussianRational.of(lam)
    return 8 if lam in FAMILY_SPECIAL_LAMBDAS else 6


def _lam_key(lam):
    return None if lam is None else GaussianRational.of(lam)


def instantiate(name: str, lam=None) -> Lts:
    """Completed, axiom-checked catalog tensor; instances are cached."""
    if name not in ENTRIES:
        raise UnknownName(name)
    entry = ENTRIES[name]
    if entry.family:
        if lam is None:
            raise MissingParameter(f"{name} requires --lambda")
        if isinstance(lam, str):
            lam = parse_scalar(lam)
        lam = GaussianRational.of(lam)
    elif lam is not None:
        raise MissingParameter(f"{name} takes no family parameter")
    key = (name, _lam_key(lam))
    if key not in _instances:
        _instances[key] = complete_table(entry.dim, entry.generators(lam))
    return _instances[key]


def xi(lam) -> GaussianRational:
    """The family invariant; defined away from lam^2 + lam = 0."""
    lam = GaussianRational.of(lam)
    den = lam * lam * (lam + 1) * (lam + 1)
    if not den:
        raise SingularParameter(f"xi undefined at lambda = {scalar_str(lam)}")
    num = lam * lam + lam + 1
    return num * num * num / den


def lambda_orbit(lam):
    """The (up to) six parameter values giving pairwise isomorphic members."""
    lam = GaussianRational.of(lam)
    images = [lam, -(lam + 1)]
    if lam != 0:
        images += [1 / lam, -(lam + 1) / lam]
    if lam != -1:
        images += [-1 / (lam + 1), -lam / (lam + 1)]
    out = []
    for v in images:
        if v not in out:
            out.append(v)
    return out


_SIGMA_TARGETS = {
    1: lambda lam: lam,
    2: lambda lam: -(lam + 1),
    3: lambda lam: 1 / lam,
    4: lambda lam: -(lam + 1) / lam,
    5: lambda lam: -1 / (lam + 1),
    6: lambda lam: -lam / (lam + 1),
}


def family_isomorphism(k: int, lam):
    """(target lambda, basis-change matrix) for the k-th family isomorphism.

    The matrix g has the images of the basis vectors as columns, and
    change_basis(instantiate("T4,6", lam), g) equals the target member exactly.
    """
    lam = GaussianRational.of(lam)
    if k not in _SIGMA_TARGETS:
        raise UnknownName(f"sigma index {k} (expected 1..6)")
    if k in (3, 4) and lam == 0:
        raise SingularParameter("sigma_3 / sigma_4 need lambda != 0")
    if k in (5, 6) and lam == -1:
        raise SingularParameter("sigma_5 / sigma_6 need lambda != -1")
    one, zero = QI_ONE, QI_ZERO
    if k == 1:
        cols = ([one, zero, zero, zero], [zero, one, zero, zero],
                [zero, zero, one, zero], [zero, zero, zero, one])
    elif k == 2:
        cols = ([zero, zero, one, zero], [zero, one, zero, zero],
                [one, zero, zero, zero], [zero, zero, zero, -one])
    elif k == 3:
        cols = ([zero, one, zero, zero], [one, zero, zero, zero],
                [zero, zero, one, zero], [zero, zero, zero, -1 / lam])
    elif k == 4:
        cols = ([zero, one, zero, zero], [zero, zero, one, zero],
                [one, zero, zero, zero], [zero, zero, zero, 1 / lam])
    elif k == 5:
        cols = ([zero, zero, one, zero], [one, zero, zero, zero],
                [zero, one, zero, zero], [zero, zero, zero, -1 / (lam + 1)])
    else:
        cols = ([one, zero, zero, zero], [zero, zero, one, zero],
                [zero, one, zero, zero], [zero, zero, zero, 1 / (lam + 1)])
    matrix = [[cols[j][a] for j in range(4)] for a in range(4)]
    return _SIGMA_TARGETS[k](lam), matrix


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassifyResult:
    name: str
    lam: Optional[GaussianRational]
    confidence: str  # "certified" | "fingerprint-only"
    fingerprint: Fingerprint
    xi: Optional[GaussianRational] = None
    note: str = ""


def _invariant_key(system: Lts):
    nil = system.nilpotency()
    return (system.dim, system.annihilator().dim, system.derived().dim,
            nil.index, system.derivations()[0])


def _bucket_table():
    """Invariant key -> catalog names, family keyed at both derivation branches."""
    table = {}
    for name, entry in ENTRIES.items():
        if entry.family:
            for lam in (GaussianRational(1), GaussianRational(2)):
                key = _invariant_key(instantiate(name, lam))
                table.setdefault(key, [])
                if name not in table[key]:
                    table[key].append(name)
        else:
            key = _invariant_key(instantiate(name))
            table.setdefault(key, [])
            table[key].append(name)
    return table


_buckets = None


def _buckets_table():
    global _buckets
    if _buckets is None:
        _buckets = _bucket_table()
    return _buckets


def family_cocycle_matrix(system: Lts):
    """Reconstruct the 3x3 cocycle encoding from a candidate family conjugate.

    Needs a one-dimensional annihilator that equals the derived subspace and an
    abelian quotient; returns None when the shape does not match.
    """
    if system.dim != 4:
        return None
    ann = system.annihilator()
    der = system.derived()
    if ann.dim != 1 or der.dim != 1 or not ann.contains(der.basis[0]):
        return None
    w = [GaussianRational.of(x) if isinstance(x, int) else x for x in ann.basis[0]]
    pivot = next(p for p, x in enumerate(w) if x != 0)
    complement = [p for p in range(4) if p != pivot]
    basis = {c: [QI_ONE if q == c else QI_ZERO for q in range(4)] for c in complement}

    def theta(i, j, k):
        vec = system.eval(basis[complement[i - 1]], basis[complement[j - 1]],
                          basis[complement[k - 1]])
        scale = vec[pivot] / w[pivot]
        if any(a - scale * b != 0 for a, b in zip(vec, w)):
            return None
        return scale

    values = {}
    for i in range(1, 4):
        for j in range(i + 1, 4):
            for k in range(1, 4):
                val = theta(i, j, k)
                if val is None:
                    return None
                values[(i, j, k)] = val

    def a(i, j, k):
        if i < j:
            return values[(i, j, k)]
        return -values[(j, i, k)]

    return [
        [a(2, 3, 1), a(2, 3, 2), a(2, 3, 3)],
        [-a(1, 3, 1), -a(1, 3, 2), -a(1, 3, 3)],
        [a(1, 2, 1), a(1, 2, 2), a(1, 2, 3)],
    ]


def _char_poly_pq(matrix):
    """(p, q) with char(x) = x^3 + p x + q for a trace-zero 3x3 matrix."""
    m = matrix
    trace = m[0][0] + m[1][1] + m[2][2]
    if trace != 0:
        return None
    p = (m[0][0] * m[1][1] - m[0][1] * m[1][0]
         + m[0][0] * m[2][2] - m[0][2] * m[2][0]
         + m[1][1] * m[2][2] - m[1][2] * m[2][1])
    q = -determinant([list(r) for r in m])
    return p, q


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a) or 1


def _mpf_to_fraction(x) -> Fraction:
    """Exact conversion of an mpmath float to a Fraction."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    value = Fraction(-man if sign else man)
    return value * Fraction(2) ** exp


def family_lambda_candidates(xi_value):
    """Parameters lambda with xi(lambda) equal to the given value, or [].

    The degree-6 equation (x^2+x+1)^3 = xi x^2 (x+1)^2 has the six-element
    parameter orbit as its root set.  Because xi is invariant under basis
    change, its reduced form is small, so numeric root hints snap reliably to
    Gaussian rationals; every returned candidate is verified by exact
    xi-equality, never by the numerics alone.
    """
    xi_value = GaussianRational.of(xi_value)
    den = xi_value.re.denominator
    den = den * xi_value.im.denominator // _gcd(den, xi_value.im.denominator)
    s = xi_value * den
    n = GaussianRational(den)
    # N (x^2+x+1)^3 - S x^2 (x+1)^2, coefficients listed by descending degree
    coeffs = [n, 3 * n, 6 * n - s, 7 * n - 2 * s, 6 * n - s, 3 * n, n]
    bounds = sorted({den * den, 10 ** 6, 10 ** 12})
    found = []
    try:
        with mpmath.workdps(60):
            mp_coeffs = [mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                                    mpmath.mpf(c.im.numerator) / c.im.denominator)
                         for c in coeffs]
            roots = mpmath.polyroots(mp_coeffs, maxsteps=300, extraprec=120)
    except (mpmath.libmp.NoConvergence, ZeroDivisionError):
        return []
    for r in roots:
        re = _mpf_to_fraction(r.real)
        im = _mpf_to_fraction(r.imag)
        for bound in bounds:
            cand = GaussianRational(re.limit_denominator(bound), im.limit_denominator(bound))
            if cand * cand + cand == 0:
                continue
            if xi(cand) == xi_value and cand not in found:
                found.append(cand)
                break
    return found


def _scalar_sort_key(z: GaussianRational):
    return (z.re.numerator, z.re.denominator, z.im.numerator, z.im.denominator)


def _certify_family(system: Lts, candidates):
    """Exact tensor match against explicit family members, if any."""
    for lam in candidates:
        if system == instantiate(FAMILY_NAME, lam):
            return lam
    return None


def classify(system: Lts) -> ClassifyResult:
    """Match a verified nilpotent system of dimension <= 4 against the catalog.

    The family parameter is recovered up to its six-element orbit; the result
    is "certified" only when an explicit witness (the identity, here: exact
    tensor equality with a catalog representative) is at hand, otherwise
    "fingerprint-only".
    """
    if system.dim < 1 or system.dim > 4:
        raise DimensionUnsupported(f"classification covers dimensions 1..4, got {system.dim}")
    nil = system.nilpotency()
    if not nil.is_nilpotent:
        raise NotNilpotent("input is not nilpotent")
    fp = system.fingerprint()
    key = _invariant_key(system)
    names = _buckets_table().get(key)
    if not names:
        raise NoMatch(f"no catalog entry with invariants {key}")

    for name in names:
        if name == FAMILY_NAME:
            continue
        if system == instantiate(name):
            return ClassifyResult(name, None, "certified", fp)

    if FAMILY_NAME not in names:
        name = names[0]
        return ClassifyResult(name, None, "fingerprint-only", fp)

    matrix = family_cocycle_matrix(system)
    pq = _char_poly_pq(matrix) if matrix is not None else None
    if pq is None:
        non_family = [n for n in names if n != FAMILY_NAME]
        if non_family:
            return ClassifyResult(non_family[0], None, "fingerprint-only", fp)
        raise NoMatch("family-shaped invariants but no cocycle reconstruction")
    p, q = pq
    disc = -4 * p * p * p - 27 * q * q
    dim_der = system.derivations()[0]

    if disc == 0 and dim_der == 6:
        # repeated eigenvalue with too few derivations for the family branch
        confidence = "certified" if system == instantiate("T4,5") else "fingerprint-only"
        return ClassifyResult("T4,5", None, confidence, fp)

    if dim_der == 8:
        orbit = [GaussianRational(1), GaussianRational(-2), GaussianRational(-1) / 2]
        value = xi(GaussianRational(1))
        fp = dataclasses.replace(fp, family_xi=value)
        lam = _certify_family(system, orbit)
        if lam is not None:
            return ClassifyResult(FAMILY_NAME, lam, "certified", fp, xi=value)
        return ClassifyResult(FAMILY_NAME, GaussianRational(1), "fingerprint-only", fp,
                              xi=value)

    if q == 0:
        # one eigenvalue vanishes: the lambda in {0, -1} bucket, xi singular
        orbit = [QI_ZERO, GaussianRational(-1)]
        lam = _certify_family(system, orbit)
        if lam is not None:
            return ClassifyResult(FAMILY_NAME, lam, "certified", fp,
                                  note="xi singular at this parameter")
        return ClassifyResult(FAMILY_NAME, QI_ZERO, "fingerprint-only", fp,
                              note="xi singular at this parameter")

    xi_value = -(p * p * p) / (q * q)
    fp = dataclasses.replace(fp, family_xi=xi_value)
    candidates = family_lambda_candidates(xi_value)
    if not candidates:
        return ClassifyResult(FAMILY_NAME, None, "fingerprint-only", fp, xi=xi_value,
                              note="parameter not recovered over Q(i)")
    orbit = lambda_orbit(candidates[0])
    lam = _certify_family(system, orbit)
    if lam is not None:
        return ClassifyResult(FAMILY_NAME, lam, "certified", fp, xi=xi(lam))
    lam = min(orbit, key=_scalar_sort_key)
    return ClassifyResult(FAMILY_NAME, lam, "fingerprint-only", fp, xi=xi_value)


def multiplication_table_text(name, lam=None):
    """Generating products of a catalog entry in compact text."""
    entry = ENTRIES[name]
    parts = []
    for (i, j, k), vec in sorted(entry.generators(lam).items()):
        terms = []
        for p, coeff in enumerate(vec, start=1):
            if coeff == 0:
                continue
            if coeff == 1:
                terms.append(f"e{p}")
            else:
                terms.append(f"({scalar_str(coeff)})e{p}")
        parts.append(f"[e{i},e{j},e{k}]={'+'.join(terms)}")
    return "  ".join(parts) if parts else "(abelian)"


def table1_report():
    """Computed versus published derivation dimensions, family branches sampled."""
    rows = []

    def add(name, lam):
        computed = instantiate(name, lam).derivations()[0]
        published = family_table1_der(lam) if lam is not None else TABLE1_PUBLISHED[name]
        rows.append({
            "system": name,
            "lambda": None if lam is None else scalar_str(lam),
            "table": multiplication_table_text(name, lam),
            "computed": computed,
            "published": published,
            "match": computed == published,
        })

    for name in ("T4,1", "T4,2", "T4,3", "T4,4", "T4,5"):
        add(name, None)
    for lam in (GaussianRational(1), GaussianRational(-2), GaussianRational(-1) / 2,
                GaussianRational(2), GaussianRational(3)):
        add(FAMILY_NAME, lam)
    for name in ("T4,7", "T4,8", "T4,9"):
        add(name, None)
    return rows
