"""Sparse multivariate polynomials over Q(i), for symbolic identity checks.

Terms map exponent tuples (over a fixed variable list) to nonzero Gaussian
rational coefficients.  Only ring operations are needed: the symbolic
Borel-stability check builds adjugates and transported constants and then
asks whether differences vanish identically.
"""

from __future__ import annotations

from .scalars import GaussianRational, QI_ONE, QI_ZERO, scalar_str

__all__ = ["MultiPoly"]


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        for expo, coeff in (terms or {}).items():
            coeff = GaussianRational.of(coeff)
            if coeff:
                if len(expo) != len(self.vars):
                    raise ValueError("exponent arity mismatch")
                clean[tuple(expo)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def constant(cls, vars, value):
        vars = tuple(vars)
        return cls(vars, {tuple([0] * len(vars)): GaussianRational.of(value)})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        expo = [0] * len(vars)
        expo[vars.index(name)] = 1
        return cls(vars, {tuple(expo): QI_ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for expo, coeff in other.terms.items():
            acc = out.get(expo, QI_ZERO) + coeff
            if acc:
                out[expo] = acc
            else:
                out.pop(expo, None)
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(expo, QI_ZERO) + c1 * c2
                if acc:
                    out[expo] = acc
                else:
                    out.pop(expo, None)
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, assignment) -> GaussianRational:
        """Evaluate at a full variable assignment (name -> scalar)."""
        total = QI_ZERO
        values = [GaussianRational.of(assignment[v]) for v in self.vars]
        for expo, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, expo):
                for _ in range(e):
                    term = term * v
            total = total + term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms, reverse=True):
            coeff = self.terms[expo]
            monos = [f"{v}^{e}" if e > 1 else v
                     for v, e in zip(self.vars, expo) if e]
            body = "*".join(monos)
            cs = scalar_str(coeff)
            parts.append(f"({cs})*{body}" if body else f"({cs})")
        return " + ".join(parts)
