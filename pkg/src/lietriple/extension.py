"""Annihilator extensions T_theta and the predicates that drive classification.

Given a base system T of dimension n and closed cocycles theta_1..theta_s, the
extension lives on T + V with dim V = s and product

    [x + u, y + v, z + w] = [x, y, z]_T + sum_i theta_i(x, y, z) e_{n+i};

the new coordinates annihilate everything.  The useful predicates: the
annihilator of the extension is (intersection of radicals ∩ Ann T) + V; the
extension has an annihilator component iff the classes [theta_i] are linearly
dependent in H^3; membership in the good Grassmannian stratum needs the
radical condition plus independent classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotClosed, PreconditionViolated, ZeroVector
from .core import Lts
from .cohomology import coboundary_space
from .linalg import Subspace, rref
from .scalars import QI_ZERO

__all__ = [
    "ExtensionSpec",
    "extend",
    "extension_annihilator",
    "in_ts",
    "has_annihilator_component",
    "normalize_line_2dim",
]


@dataclass
class ExtensionSpec:
    base: Lts
    thetas: list

    def __post_init__(self):
        if not self.thetas:
            raise ValueError("extension needs at least one cocycle component")
        for theta in self.thetas:
            if theta.ambient != self.base:
                raise ValueError("cocycle ambient differs from the extension base")

    @property
    def s(self):
        return len(self.thetas)


def _ensure_closed(spec: ExtensionSpec):
    for pos, theta in enumerate(spec.thetas, start=1):
        if theta.closed:
            continue
        ok, witness = theta.check_closed()
        if not ok:
            raise NotClosed(f"component {pos} fails {witness[0]} at {witness[1]}")


def extend(spec: ExtensionSpec) -> Lts:
    """The extended system on dim(base) + s coordinates."""
    _ensure_closed(spec)
    base = spec.base
    n, s = base.dim, spec.s
    total = n + s
    tensor = [[[[QI_ZERO for _ in range(total)] for _ in range(total)]
               for _ in range(total)] for _ in range(total)]
    for i, j, k, p, val in base.nonzero_entries():
        tensor[i][j][k][p] = val
    for r, theta in enumerate(spec.thetas):
        for (i, j, k), val in theta.coeffs.items():
            tensor[i - 1][j - 1][k - 1][n + r] = val
            tensor[j - 1][i - 1][k - 1][n + r] = -val
    out = Lts(tensor)
    report = out.check_axioms()
    if not report.ok:  # unreachable for closed cocycles on a verified base
        raise NotClosed(str(report))
    return out


def extension_annihilator(spec: ExtensionSpec) -> Subspace:
    """(∩ Rad(theta_i) ∩ Ann(base)) + V inside the extended space.

    Cross-checked against the directly computed annihilator of the extension.
    """
    base = spec.base
    n, s = base.dim, spec.s
    total = n + s
    meet = base.annihilator()
    for theta in spec.thetas:
        meet = meet.intersection(theta.radical())
    vectors = []
    for row in meet.basis:
        vectors.append(list(row) + [QI_ZERO] * s)
    for r in range(s):
        vectors.append([QI_ZERO] * (n + r) + [1] + [QI_ZERO] * (s - r - 1))
    predicted = Subspace(total, vectors)
    direct = extend(spec).annihilator()
    if predicted != direct:
        raise AssertionError("annihilator formula disagrees with direct computation")
    return predicted


def _class_rank(spec: ExtensionSpec):
    """Rank of the classes [theta_1..theta_s] in H^3(base, F)."""
    b3 = coboundary_space(spec.base)
    base_rows = [list(r) for r in b3.coordinates]
    stacked = base_rows + [theta.coordinates() for theta in spec.thetas]
    reduced, _ = rref(stacked)
    total_rank = len([r for r in reduced if any(x != 0 for x in r)])
    return total_rank - b3.dim


def in_ts(spec: ExtensionSpec) -> bool:
    """Membership in the stratum: zero radical meet and independent classes."""
    _ensure_closed(spec)
    meet = spec.base.annihilator()
    for theta in spec.thetas:
        meet = meet.intersection(theta.radical())
    if meet.dim != 0:
        return False
    return _class_rank(spec) == spec.s


def has_annihilator_component(spec: ExtensionSpec) -> bool:
    """Linear dependence of the classes, under the zero-radical-meet precondition."""
    _ensure_closed(spec)
    meet = spec.base.annihilator()
    for theta in spec.thetas:
        meet = meet.intersection(theta.radical())
    if meet.dim != 0:
        raise PreconditionViolated("Rad(theta) ∩ Ann(base) must vanish")
    return _class_rank(spec) < spec.s


def normalize_line_2dim(alpha, beta):
    """Invertible A with (alpha beta) A = (1 0); the two textbook cases."""
    if alpha == 0 and beta == 0:
        raise ZeroVector("(0, 0) spans no line")
    if alpha != 0:
        inv = 1 / alpha
        return [[inv, -beta], [0 * alpha, alpha]]
    inv = 1 / beta
    return [[0 * beta, 1 + 0 * beta], [inv, 0 * beta]]
