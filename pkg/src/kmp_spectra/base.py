"""Shared plumbing: errors, the dimension guard, scalars and the Operator type."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

DEFAULT_MAX_DIM = 20000
FLOAT_SYMMETRY_TOL = 1e-12


class ResourceGuardError(RuntimeError):
    """A requested object would exceed the configured size guard."""


class InvariantBreach(AssertionError):
    """An internal consistency check failed (a bug or a genuine counterexample)."""


def max_dim() -> int:
    raw = os.environ.get("KMP_SPECTRA_MAX_DIM")
    return int(raw) if raw else DEFAULT_MAX_DIM


def check_dim(dim: int, what: str) -> None:
    limit = max_dim()
    if dim > limit:
        raise ResourceGuardError(
            f"{what} has dimension {dim} > guard {limit} (set KMP_SPECTRA_MAX_DIM to override)"
        )


# --- scalars ------------------------------------------------------------------


def scalar(x: Any, exact: bool):
    """Coerce to the active scalar type: Fraction (exact) or float."""
    if exact:
        if isinstance(x, float):
            return Fraction(x)
        return Fraction(x)
    return float(x)


def zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)


def eye(n: int, exact: bool) -> np.ndarray:
    out = zeros((n, n), exact)
    one = Fraction(1) if exact else 1.0
    for i in range(n):
        out[i, i] = one
    return out


def as_exact(a) -> np.ndarray:
    arr = np.array(a, dtype=object)
    flat = arr.reshape(-1)
    for i, x in enumerate(flat):
        flat[i] = Fraction(x)
    return arr


def as_float(a) -> np.ndarray:
    return np.array(a, dtype=float)


def is_exact_array(a: np.ndarray) -> bool:
    return a.dtype == object


def nonzero_entries(a: np.ndarray):
    """(i, j, value) for every non-zero entry of a 2-d array."""
    rows, cols = np.nonzero(a != 0) if a.dtype != object else _object_nonzero(a)
    return [(int(i), int(j), a[i, j]) for i, j in zip(rows, cols)]


def _object_nonzero(a: np.ndarray):
    mask = np.vectorize(lambda x: x != 0, otypes=[bool])(a)
    return np.nonzero(mask)


# --- operators ------------------------------------------------------------------


@dataclass(frozen=True)
class Operator:
    """A square matrix on a named basis.

    ``matrix`` has dtype ``object`` holding ``Fraction`` entries in exact mode
    and ``float64`` in float mode.  ``gram`` is set for operators expressed in
    an orthogonal but not normalised basis: the matrix is then self-adjoint
    for the inner product ``diag(gram)``, i.e. ``diag(gram) @ matrix`` is
    symmetric, and its spectrum is still real.
    """

    matrix: np.ndarray
    space: str
    symmetric: bool = True
    gram: tuple | None = None

    @property
    def exact(self) -> bool:
        return is_exact_array(self.matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_float(self) -> "Operator":
        if not self.exact:
            return self
        gram = tuple(float(g) for g in self.gram) if self.gram is not None else None
        return Operator(as_float(self.matrix), self.space, self.symmetric, gram)

    def check_self_adjoint(self) -> bool:
        a = self.matrix
        if a.shape[0] != a.shape[1]:
            return False
        if self.gram is not None:
            g = np.array(self.gram, dtype=a.dtype).reshape(-1, 1)
            a = g * a
        if self.exact:
            return bool((a == a.T).all())
        scale = max(1.0, float(np.abs(a).max()) if a.size else 1.0)
        return bool(np.abs(a - a.T).max(initial=0.0) <= FLOAT_SYMMETRY_TOL * scale)

    def rows(self) -> list[list]:
        return [list(r) for r in self.matrix]

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"Operator({self.space}, dim={self.dim}, {mode})"


def exact_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool((a == b).all())


def sequence_to_fractions(values: Sequence) -> list[Fraction]:
    return [Fraction(v) for v in values]
