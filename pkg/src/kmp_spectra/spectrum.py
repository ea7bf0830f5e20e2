"""Spectra of self-adjoint operators, exact or floating point, and containment tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .base import Operator
from .exact import (
    AlgebraicReal,
    Poly,
    charpoly_blockwise,
    divides,
    exact_cmp,
    frac_str,
    poly_to_strings,
    real_roots,
)

CLUSTER_REL_TOL = 1e-8
DEFAULT_CONTAINMENT_TOL = 1e-7


@dataclass
class Spectrum:
    """Ascending eigenvalues with multiplicities.

    Exact values are ``Fraction`` or ``AlgebraicReal``; float values are
    cluster means.  ``charpoly`` is kept in exact mode.
    """

    operator: str
    mode: str
    eigenvalues: list  # [(value, multiplicity)]
    charpoly: Poly | None = None
    block: str | None = None

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.eigenvalues)

    def values(self) -> list:
        return [v for v, m in self.eigenvalues for _ in range(m)]

    def floats(self) -> list[float]:
        return [float(v) for v in self.values()]

    def min(self):
        return self.eigenvalues[0][0]

    def max(self):
        return self.eigenvalues[-1][0]

    def multiplicity(self, value, tol: float = 0.0) -> int:
        total = 0
        for v, m in self.eigenvalues:
            if self.mode == "exact" and not isinstance(value, float):
                if exact_cmp(v, Fraction(value) if not isinstance(value, AlgebraicReal) else value) == 0:
                    total += m
            elif abs(float(v) - float(value)) <= tol:
                total += m
        return total

    def distinct(self) -> list:
        return [v for v, _ in self.eigenvalues]

    def to_json(self) -> dict:
        out = {
            "operator": self.operator,
            "mode": self.mode,
            "eigenvalues": [{"value": value_to_json(v), "multiplicity": m} for v, m in self.eigenvalues],
        }
        if self.block is not None:
            out["block"] = self.block
        if self.charpoly is not None and any(isinstance(v, AlgebraicReal) for v, _ in self.eigenvalues):
            out["charpoly"] = poly_to_strings(self.charpoly)
        return out


def value_to_json(v):
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, AlgebraicReal):
        return {
            "approx": float(v),
            "minpoly": poly_to_strings(v.poly),
            "interval": [frac_str(v.lo), frac_str(v.hi)],
        }
    return float(v)


def spectrum(op: Operator, mode: str | None = None, block: str | None = None) -> Spectrum:
    """Eigenvalues of a self-adjoint operator.

    mode "exact" needs a rational operator and factors nothing: it keeps the
    characteristic polynomial and isolates its real roots.  mode "float"
    uses a dense symmetric eigensolver.
    """
    if mode is None:
        mode = "exact" if op.exact else "float"
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if not op.check_self_adjoint():
        raise ValueError(f"{op.space}: operator is not symmetric")
    if mode == "exact":
        if not op.exact:
            raise ValueError("exact spectrum requested for a floating-point operator")
        return exact_spectrum(op, block)
    return float_spectrum(op.to_float(), block)


def exact_spectrum(op: Operator, block: str | None = None) -> Spectrum:
    p = charpoly_blockwise(op.matrix.tolist())
    return Spectrum(op.space, "exact", real_roots(p), p, block)


def symmetric_form(op: Operator) -> np.ndarray:
    """A symmetric float matrix similar to ``op``."""
    a = np.asarray(op.matrix, dtype=float)
    if op.gram is not None:
        s = np.sqrt(np.asarray(op.gram, dtype=float))
        a = (s[:, None] * a) / s[None, :]
    return (a + a.T) / 2


def float_eigenvalues(op: Operator) -> np.ndarray:
    a = symmetric_form(op)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(a)


def float_spectrum(op: Operator, block: str | None = None) -> Spectrum:
    a = symmetric_form(op)
    vals = np.linalg.eigvalsh(a) if a.size else np.zeros(0)
    scale = max(1.0, float(np.linalg.norm(a, 2)) if a.size else 1.0)
    return Spectrum(op.space, "float", cluster(vals, CLUSTER_REL_TOL * scale), None, block)


def cluster(vals, tol: float) -> list[tuple[float, int]]:
    """Group sorted values whose consecutive gaps are <= tol."""
    out: list[tuple[float, int]] = []
    group: list[float] = []
    for v in sorted(float(x) for x in vals):
        if group and v - group[-1] > tol:
            out.append((sum(group) / len(group), len(group)))
            group = []
        group.append(v)
    if group:
        out.append((sum(group) / len(group), len(group)))
    return out


@dataclass
class ContainmentReport:
    contained: bool
    unmatched: list = field(default_factory=list)
    residuals: list = field(default_factory=list)  # (small value, matched big value, |difference|)

    def to_json(self) -> dict:
        return {
            "contained": self.contained,
            "unmatched": [value_to_json(v) for v in self.unmatched],
            "residuals": [[value_to_json(a), value_to_json(b), r] for a, b, r in self.residuals],
        }


def spectra_contains(small: Spectrum, big: Spectrum, tol: float = DEFAULT_CONTAINMENT_TOL) -> ContainmentReport:
    """Is ``small`` a sub-multiset of ``big``?

    Exact spectra compare by divisibility of characteristic polynomials;
    otherwise each small eigenvalue greedily consumes the nearest unused big
    one within ``tol``.
    """
    if small.mode == "exact" and big.mode == "exact" and small.charpoly is not None and big.charpoly is not None:
        ok = divides(small.charpoly, big.charpoly)
        unmatched = []
        if not ok:
            for v, m in small.eigenvalues:
                have = sum(bm for bv, bm in big.eigenvalues if exact_cmp(bv, v) == 0)
                if have < m:
                    unmatched.extend([v] * (m - have))
        return ContainmentReport(ok, unmatched, [])
    pool = sorted(big.floats())
    used = [False] * len(pool)
    unmatched = []
    residuals = []
    for v in small.floats():
        best = None
        for i, b in enumerate(pool):
            if used[i]:
                continue
            r = abs(b - v)
            if r <= tol and (best is None or r < abs(pool[best] - v)):
                best = i
        if best is None:
            unmatched.append(v)
        else:
            used[best] = True
            residuals.append((v, pool[best], abs(pool[best] - v)))
    return ContainmentReport(not unmatched, unmatched, residuals)


def spectrum_from_values(name: str, values, mode: str = "float") -> Spectrum:
    """Build a Spectrum from a plain list of eigenvalues (handy for reports and tests)."""
    if mode == "exact":
        vals = sorted(Fraction(v) for v in values)
        pairs: list = []
        for v in vals:
            if pairs and pairs[-1][0] == v:
                pairs[-1] = (v, pairs[-1][1] + 1)
            else:
                pairs.append((v, 1))
        from .exact import linear, poly_prod

        return Spectrum(name, "exact", pairs, poly_prod(linear(v) for v in vals))
    return Spectrum(name, "float", cluster(values, 0.0))
