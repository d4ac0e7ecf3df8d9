"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the library's own elimination code: rank is
computed by fraction-free cross-multiplication with a different pivoting
strategy, so dimension claims are checked through two unrelated routes.
"""

from __future__ import annotations

import pytest

from lietriple import catalog
from lietriple.scalars import GaussianRational


def oracle_rank(rows):
    """Row rank via fraction-free elimination (no division, last-row pivots)."""
    rows = [[GaussianRational.of(x) if isinstance(x, int) else x for x in row]
            for row in rows if any(x != 0 for x in row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    used = [False] * len(rows)
    for col in range(ncols):
        pivot = None
        for r in range(len(rows) - 1, -1, -1):  # opposite scan order to rref
            if not used[r] and rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        used[pivot] = True
        rank += 1
        pv = rows[pivot][col]
        for r in range(len(rows)):
            if r != pivot and not used[r] and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [pv * a - f * b for a, b in zip(rows[r], rows[pivot])]
    return rank


def oracle_annihilator_dim(system):
    """dim Ann via the rank of the full evaluation matrix, computed by the oracle."""
    n = system.dim
    rows = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            for p in range(1, n + 1):
                rows.append([system.constant(i, j, k, p) for i in range(1, n + 1)])
    return n - oracle_rank(rows)


def oracle_derived_dim(system):
    """dim [T,T,T] as the oracle rank of the stacked product vectors."""
    n = system.dim
    rows = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                rows.append(system.product(i, j, k))
    return oracle_rank(rows)


def basis_vector(n, k, scale=1):
    """1-based standard basis vector."""
    return [GaussianRational.of(scale) if q == k else GaussianRational(0)
            for q in range(1, n + 1)]


@pytest.fixture(scope="session")
def t21():
    return catalog.instantiate("T2,1")


@pytest.fixture(scope="session")
def t31():
    return catalog.instantiate("T3,1")


@pytest.fixture(scope="session")
def t32():
    return catalog.instantiate("T3,2")
