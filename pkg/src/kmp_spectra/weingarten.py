"""Exact Weingarten calculus and the projections P_B it produces.

Vertices are 0-based.  A subset B of vertices is passed either as a bitmask
``int`` or as an iterable of vertices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .base import Operator, ResourceGuardError, as_float, check_dim, eye, zeros
from .combinatorics import (
    CycleType,
    MultisetSpace,
    Partition,
    arrangement_count,
    arrangements,
    cycle_partition,
    partitions_of,
    sym_character,
    sym_irrep_dim,
    unitary_irrep_dim_polynomial_case,
)

MAX_WG_K = 6


def as_mask(B) -> int:
    if isinstance(B, (int, np.integer)):
        return int(B)
    mask = 0
    for x in B:
        mask |= 1 << int(x)
    return mask


def mask_members(mask: int, n: int) -> list[int]:
    return [x for x in range(n) if mask >> x & 1]


@dataclass(frozen=True)
class WeingartenTable:
    k: int
    d: int
    values: dict  # Partition -> Fraction

    def __call__(self, c) -> Fraction:
        """Value at a CycleType, a Partition or a permutation in one-line notation."""
        if isinstance(c, CycleType):
            c = c.partition
        elif not isinstance(c, Partition):
            c = cycle_partition(tuple(c))
        return self.values[c]

    def ordered_values(self) -> list[Fraction]:
        """Values in ``partitions_of(k)`` order (the kernels' class order)."""
        return [self.values[p] for p in partitions_of(self.k)]

    def permutation_sum(self, signed: bool = False) -> Fraction:
        from .combinatorics import class_size

        total = Fraction(0)
        for p, v in self.values.items():
            sgn = CycleType(p).sign if signed else 1
            total += class_size(p) * sgn * v
        return total

    def to_json(self) -> dict:
        from .exact import frac_str

        return {
            "k": self.k,
            "d": self.d,
            "values": {str(p): frac_str(v) for p, v in self.values.items()},
        }


def wg_table(k: int, d: int) -> WeingartenTable:
    if not 1 <= k <= MAX_WG_K:
        raise ResourceGuardError(f"Weingarten tables are limited to 1 <= k <= {MAX_WG_K}, got k={k}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return WeingartenTable(k, d, dict(zip(partitions_of(k), _wg_values(k, d))))


@lru_cache(maxsize=None)
def _wg_values(k: int, d: int) -> tuple[Fraction, ...]:
    """Wg_{k,d} on each class, in partitions_of(k) order; k = 0 gives (1,)."""
    if k == 0:
        return (Fraction(1),)
    classes = partitions_of(k)
    out = []
    scale = Fraction(1, math.factorial(k) ** 2)
    for mu in classes:
        total = Fraction(0)
        for nu in classes:
            if nu.length > d:
                continue
            dim_pi = sym_irrep_dim(nu)
            total += Fraction(dim_pi * dim_pi, unitary_irrep_dim_polynomial_case(nu, d)) * sym_character(nu, mu)
        out.append(scale * total)
    return tuple(out)


# --- monomial integrals -----------------------------------------------------------


@dataclass(frozen=True)
class MonomialSpec:
    """The integrand prod_t A[rows_t, cols_t] * prod_s conj(A[conj_rows_s, conj_cols_s]) over U(d).

    Indices are 0-based, in [0, d).
    """

    d: int
    rows: tuple
    cols: tuple
    conj_rows: tuple = ()
    conj_cols: tuple = ()

    def __post_init__(self) -> None:
        if len(self.rows) != len(self.cols) or len(self.conj_rows) != len(self.conj_cols):
            raise ValueError("row and column tuples must have equal length")
        for idx in (*self.rows, *self.cols, *self.conj_rows, *self.conj_cols):
            if not 0 <= idx < self.d:
                raise ValueError(f"index {idx} outside [0, {self.d})")


def monomial_integral(spec: MonomialSpec) -> Fraction:
    return _integral(spec.d, tuple(spec.rows), tuple(spec.cols), tuple(spec.conj_rows), tuple(spec.conj_cols))


def _integral(d: int, rows: tuple, cols: tuple, crows: tuple, ccols: tuple) -> Fraction:
    if len(rows) != len(crows):
        return Fraction(0)
    if sorted(rows) != sorted(crows) or sorted(cols) != sorted(ccols):
        return Fraction(0)
    if len(rows) > MAX_WG_K:
        raise ResourceGuardError(f"monomial of degree {len(rows)} exceeds the Weingarten guard")
    rows, crows = _relabel(rows, crows)
    cols, ccols = _relabel(cols, ccols)
    return _integral_canonical(d, rows, cols, crows, ccols)


def _relabel(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    names: dict = {}
    for x in a + b:
        names.setdefault(x, len(names))
    return tuple(names[x] for x in a), tuple(names[x] for x in b)


@lru_cache(maxsize=200000)
def _integral_canonical(d, rows, cols, crows, ccols) -> Fraction:
    ell = len(rows)
    counts = kernels.monomial_class_counts(rows, cols, crows, ccols)
    return sum((c * w for c, w in zip(counts, _wg_values(ell, d)) if c), Fraction(0))


# --- P_B on R_{k,m} -----------------------------------------------------------------


def rkm_basis(n: int, k: int, m: int) -> list[tuple[int, ...]]:
    """Row-major enumeration of (i_1..i_k, j_1..j_m)."""
    return list(itertools.product(range(n), repeat=k + m))


def projection_rkm(B, n: int, k: int, m: int, exact: bool = True) -> Operator:
    """Matrix of the U_B average of A^{(x)k} (x) conj(A)^{(x)m} on the standard tensor basis.

    Outside B the group acts trivially, so a factor A[x, y] with x or y
    outside B is the Kronecker delta.  Inside B the remaining factors are
    integrated over U(|B|) with the Weingarten sum.  For |B| = 1 this is the
    literal phase average, so basis pairs that are unbalanced inside B get 0.
    """
    check_dim(n ** (k + m), f"R_{{{k},{m}}} at n={n}")
    mask = as_mask(B)
    d = bin(mask).count("1")
    basis = rkm_basis(n, k, m)
    dim = len(basis)
    out = zeros((dim, dim), True)
    groups: dict[tuple, list[int]] = {}
    for idx, v in enumerate(basis):
        key = tuple(-1 if mask >> x & 1 else x for x in v)
        groups.setdefault(key, []).append(idx)
    for key, members in groups.items():
        inside = [t for t, x in enumerate(key) if x == -1]
        a_pos = [t for t in inside if t < k]
        c_pos = [t for t in inside if t >= k]
        if len(a_pos) != len(c_pos):
            continue  # unbalanced inside B: every entry of the block vanishes
        for r in members:
            rv = basis[r]
            rows = tuple(rv[t] for t in a_pos)
            crows = tuple(rv[t] for t in c_pos)
            for c in members:
                cv = basis[c]
                val = _integral(d, rows, tuple(cv[t] for t in a_pos), crows, tuple(cv[t] for t in c_pos))
                if val:
                    out[r, c] = val
    return Operator(out if exact else as_float(out), f"R_{{{k},{m}}}(n={n})")


def laplacian_rkm(graph, k: int, m: int, exact: bool = True) -> Operator:
    """sum_B w_B (I - P_B) on R_{k,m}."""
    n = graph.n
    check_dim(n ** (k + m), f"R_{{{k},{m}}} at n={n}")
    dim = n ** (k + m)
    total = zeros((dim, dim), exact)
    ident = eye(dim, exact)
    for mask, w in graph.items():
        if w == 0:
            continue
        p = projection_rkm(mask, n, k, m, exact).matrix
        total = total + (ident - p) * (Fraction(w) if exact else float(w))
    mat = total
    return Operator(mat, f"L R_{{{k},{m}}}(n={n})")


# --- torus-invariant block of S_{k,k} --------------------------------------------------


@dataclass(frozen=True)
class TorInvBasis:
    """Unit vectors u_I = (1/c_I) sum_{a, b in arr(I)} e_a (x) e^b, I a k-multiset.

    ``normalisers[i]`` is c_I, the number of distinct arrangements of I.
    """

    n: int
    k: int
    multisets: tuple
    normalisers: tuple

    def __len__(self) -> int:
        return len(self.multisets)


def torinv_basis_skk(n: int, k: int) -> TorInvBasis:
    space = MultisetSpace(n, k)
    check_dim(space.dimension, f"TorInv(S_{{{k},{k}}}) at n={n}")
    states = space.states
    return TorInvBasis(n, k, states, tuple(arrangement_count(m) for m in states))


def projection_torinv_skk(B, n: int, k: int, exact: bool = True) -> Operator:
    """<u_J, P_B u_I> from raw Weingarten sums over all arrangement pairs."""
    basis = torinv_basis_skk(n, k)
    mask = as_mask(B)
    d = bin(mask).count("1")
    in_b = [1 if mask >> x & 1 else 0 for x in range(n)]
    arrs = [arrangements(m) for m in basis.multisets]
    inside = [sum(in_b[x] for x in m) for m in basis.multisets]
    outside = [tuple(x for x in m if not in_b[x]) for m in basis.multisets]
    dim = len(basis)
    out = zeros((dim, dim), True)
    for j in range(dim):
        for i in range(dim):
            # the delta constraints force equal out-of-B content
            if outside[i] != outside[j]:
                continue
            ell = inside[j]
            counts = kernels.torinv_class_counts(arrs[j], arrs[i], in_b, ell)
            total = sum((c * w for c, w in zip(counts, _wg_values(ell, d)) if c), Fraction(0))
            if total:
                out[j, i] = total / (basis.normalisers[i] * basis.normalisers[j])
    return Operator(out if exact else as_float(out), f"TorInv S_{{{k},{k}}}(n={n})")


def wg_sum_identities(k: int, d: int) -> tuple[Fraction, Fraction]:
    """Closed forms for sum_sigma Wg(sigma) and sum_sigma sgn(sigma) Wg(sigma)."""
    rising = math.prod(d + i for i in range(k))
    falling = math.prod(d - i for i in range(k))
    return Fraction(1, rising), (Fraction(1, falling) if d >= k else Fraction(0))


def members(B: Iterable[int] | int, n: int) -> list[int]:
    return mask_members(as_mask(B), n)


def subsets(n: int) -> Sequence[int]:
    return range(1 << n)
