"""The mean-field family w_B = c_|B|: closed form, the vector v_0 and Gamma_l."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import MultisetSpace
from .exact import exact_cmp
from .hypergraph import Hypergraph, gamma_ell, mean_field
from .kmp import kmp_laplacian, omegas

DEFAULT_K_MAX = 4


def mean_field_formula(n: int, c: Sequence) -> Fraction:
    """sum_l c_l (n + 1)/(l + 1) binom(n - 2, l - 2); ``c`` lists c_0..c_n."""
    if any(x < 0 for x in c):
        raise ValueError("coefficients must be non-negative")
    return sum(
        (Fraction(cl) * Fraction(n + 1, ell + 1) * math.comb(n - 2, ell - 2) for ell, cl in enumerate(c) if ell >= 2),
        Fraction(0),
    )


def gamma_ell_eigenvalue(n: int, ell: int) -> Fraction:
    if ell < 2:
        return Fraction(0)
    return Fraction(n + 1, ell + 1) * math.comb(n - 2, ell - 2)


def v0_vector(n: int) -> list[Fraction]:
    """sum_{i<j} delta_ij - ((n - 1)/2) sum_i delta_ii, over MS(n, 2)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    diag = -Fraction(n - 1, 2)
    return [diag if a == b else Fraction(1) for a, b in MultisetSpace(n, 2).states]


def apply(graph: Hypergraph, k: int, v: Sequence) -> list:
    lap = kmp_laplacian(graph, k, exact=True).matrix
    return list(lap.dot(np.array(v, dtype=object)))


def eigen_residual(graph: Hypergraph, v: Sequence, value) -> Fraction:
    """max_i |(L v)_i - value v_i| for the KMP_2 Laplacian, exactly."""
    lv = apply(graph, 2, v)
    return max((abs(a - value * b) for a, b in zip(lv, v)), default=Fraction(0))


@dataclass
class MeanFieldReport:
    n: int
    c: tuple
    formula_value: object
    measured_gap: object
    argmin: list = field(default_factory=list)
    omegas: tuple = ()
    witness_residual: object = 0

    @property
    def matches(self) -> bool:
        if isinstance(self.measured_gap, float):
            return abs(self.measured_gap - float(self.formula_value)) <= 1e-9 * max(1.0, float(self.formula_value))
        return exact_cmp(self.measured_gap, self.formula_value) == 0

    @property
    def ok(self) -> bool:
        return self.matches and 2 in self.argmin and self.witness_residual == 0

    def to_json(self) -> dict:
        from .spectrum import value_to_json

        return {
            "n": self.n,
            "c": [value_to_json(Fraction(x)) if not isinstance(x, float) else x for x in self.c],
            "formula_value": value_to_json(self.formula_value),
            "measured_gap": value_to_json(self.measured_gap),
            "omegas": [value_to_json(w) for w in self.omegas],
            "argmin": self.argmin,
            "witness_residual": value_to_json(self.witness_residual),
            "matches": self.matches,
            "ok": self.ok,
        }


def mean_field_report(n: int, c: Sequence, k_max: int = DEFAULT_K_MAX, exact: bool = True) -> MeanFieldReport:
    """omega_k for k <= k_max on mean_field(n, c) against the closed form."""
    c = tuple(Fraction(x) for x in c) if exact else tuple(float(x) for x in c)
    graph = mean_field(n, list(c))
    oms = omegas(graph, k_max, exact)
    best = oms[0]
    for w in oms[1:]:
        if (w < best) if not exact else exact_cmp(w, best) < 0:
            best = w
    if exact:
        argmin = [j + 1 for j, w in enumerate(oms) if exact_cmp(w, best) == 0]
    else:
        tol = 1e-9 * max(1.0, abs(float(best)))
        argmin = [j + 1 for j, w in enumerate(oms) if abs(float(w) - float(best)) <= tol]
    formula = mean_field_formula(n, c if exact else [Fraction(x) for x in c])
    residual = eigen_residual(graph.as_exact(), v0_vector(n), formula) if n >= 2 else Fraction(0)
    if not exact:
        residual = float(residual)
    return MeanFieldReport(n, c, formula, best, argmin, tuple(oms), residual)


def random_coefficients(rng, n: int) -> list[Fraction]:
    """c_0..c_n with each c_l = randint(0, 10)/7, and at least one c_l > 0 for l >= 2."""
    while True:
        c = [Fraction(rng.randint(0, 10), 7) for _ in range(n + 1)]
        if any(c[2:]):
            return c


__all__ = [
    "MeanFieldReport",
    "apply",
    "eigen_residual",
    "gamma_ell",
    "gamma_ell_eigenvalue",
    "mean_field_formula",
    "mean_field_report",
    "random_coefficients",
    "v0_vector",
]
