"""The discrete KMP process on k-multisets: N_B, Laplacians, Psi_k and the pure blocks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .base import InvariantBreach, Operator, check_dim, eye, zeros
from .combinatorics import MultisetSpace, multichoose, multiplicity
from .exact import charpoly_blockwise, gram_schmidt, min_root, nullspace, poly_divmod, linear, degree, exact_cmp
from .hypergraph import Hypergraph, popcount
from .spectrum import float_eigenvalues

FLOAT_AGREEMENT_TOL = 1e-9


def _space(n: int, k: int) -> MultisetSpace:
    check_dim(multichoose(n, k), f"MS({n},{k})")
    return _cached_space(n, k)


@lru_cache(maxsize=None)
def _cached_space(n: int, k: int) -> MultisetSpace:
    return MultisetSpace(n, k)


@lru_cache(maxsize=4096)
def nb_blocks(n: int, k: int, mask: int) -> tuple[tuple[int, ...], ...]:
    """Index blocks of N_B: states with the same particles outside B."""
    groups: dict[tuple, list[int]] = {}
    for idx, m in enumerate(_space(n, k).states):
        groups.setdefault(tuple(x for x in m if not mask >> x & 1), []).append(idx)
    return tuple(tuple(g) for g in groups.values())


def n_b_operator(n: int, k: int, B, exact: bool = True) -> Operator:
    mask = _as_mask(B)
    if not exact:
        return Operator(_nb_float(n, k, mask).copy(), f"N_B MS({n},{k})")
    dim = multichoose(n, k)
    out = zeros((dim, dim), True)
    for block in nb_blocks(n, k, mask):
        v = Fraction(1, len(block))
        for i in block:
            for j in block:
                out[i, j] = v
    return Operator(out, f"N_B MS({n},{k})")


@lru_cache(maxsize=4096)
def _nb_float(n: int, k: int, mask: int) -> np.ndarray:
    dim = multichoose(n, k)
    out = np.zeros((dim, dim))
    for block in nb_blocks(n, k, mask):
        idx = np.array(block)
        out[np.ix_(idx, idx)] = 1.0 / len(block)
    out.setflags(write=False)
    return out


def _as_mask(B) -> int:
    if isinstance(B, (int, np.integer)):
        return int(B)
    mask = 0
    for x in B:
        mask |= 1 << int(x)
    return mask


def kmp_laplacian(graph: Hypergraph, k: int, exact: bool | None = None) -> Operator:
    """sum_B w_B (I - N_B) on MS(n, k)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    exact = graph.exact if exact is None else exact
    n = graph.n
    space = _space(n, k)
    dim = space.dimension
    name = f"L KMP_{k}(n={n})"
    if not exact:
        out = np.zeros((dim, dim))
        for mask, w in graph.items():
            if w and popcount(mask) >= 2:
                out += float(w) * (np.eye(dim) - _nb_float(n, k, mask))
        return Operator(out, name)
    out = zeros((dim, dim), True)
    for mask, w in graph.items():
        if not w or popcount(mask) < 2:
            continue
        w = Fraction(w)
        for block in nb_blocks(n, k, mask):
            if len(block) == 1:
                continue
            share = w / len(block)
            for i in block:
                out[i, i] += w
                for j in block:
                    out[i, j] -= share
    return Operator(out, name)


# --- the embedding Psi_k and pure(n, k) ---------------------------------------------------


def psi(n: int, k: int) -> np.ndarray:
    """Matrix of Psi_k: MS(n, k) -> MS(n, k+1), delta_I -> sum_x (#_x(I) + 1) delta_{I + x}."""
    src = _space(n, k)
    dst = _space(n, k + 1)
    out = zeros((dst.dimension, src.dimension), True)
    for col, m in enumerate(src.states):
        for x in range(n):
            row = dst.index[tuple(sorted(m + (x,)))]
            out[row, col] += multiplicity(m, x) + 1
    return out


@dataclass(frozen=True)
class PureBasis:
    """Mutually orthogonal columns spanning pure(n, k) inside MS(n, k).

    Exact columns are not normalised; ``norms[i]`` is the squared length of
    column i.  Float columns are orthonormal (norms all 1).
    """

    n: int
    k: int
    columns: tuple
    norms: tuple

    @property
    def dim(self) -> int:
        return len(self.columns)

    def matrix(self) -> np.ndarray:
        if not self.columns:
            return np.zeros((multichoose(self.n, self.k), 0))
        return np.array(self.columns, dtype=object if isinstance(self.norms[0], Fraction) else float).T


def pure_basis(n: int, k: int, exact: bool = True) -> PureBasis:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _pure_exact(n, k) if exact else _pure_float(n, k)


@lru_cache(maxsize=None)
def _pure_exact(n: int, k: int) -> PureBasis:
    p = psi(n, k - 1)
    cols = gram_schmidt(nullspace(p.T.tolist()))
    norms = tuple(sum(x * x for x in c) for c in cols)
    return PureBasis(n, k, tuple(tuple(c) for c in cols), norms)


@lru_cache(maxsize=None)
def _pure_float(n: int, k: int) -> PureBasis:
    p = np.asarray(psi(n, k - 1), dtype=float)
    _, s, vt = np.linalg.svd(p.T, full_matrices=True)
    r = int((s > 1e-10 * max(1.0, s.max(initial=0.0))).sum())
    q = vt[r:]
    return PureBasis(n, k, tuple(tuple(row) for row in q), tuple([1.0] * len(q)))


@dataclass(frozen=True)
class GVector:
    n: int
    k: int
    x: int
    coefficients: tuple


def g_vector(n: int, k: int, x: int) -> GVector:
    """Coefficient of delta_I is (-1)^{#_x(I)} binom(n+k-2, #_x(I)); x is 0-based."""
    if not 0 <= x < n or k < 1:
        raise ValueError(f"need 0 <= x < n and k >= 1, got x={x}, n={n}, k={k}")
    coeffs = []
    for m in _space(n, k).states:
        c = multiplicity(m, x)
        coeffs.append(Fraction((-1) ** c * math.comb(n + k - 2, c)))
    return GVector(n, k, x, tuple(coeffs))


def t_k(n: int, k: int) -> Fraction:
    return Fraction((-1) ** k, math.comb(n + k - 2, k))


# --- restriction to pure(n, k) ---------------------------------------------------------


@lru_cache(maxsize=8192)
def _restricted_nb_exact(n: int, k: int, mask: int) -> tuple:
    """G_B = D^-1 B^T N_B B for the exact pure basis, as a tuple of rows."""
    basis = _pure_exact(n, k)
    blocks = nb_blocks(n, k, mask)
    averaged = []
    for col in basis.columns:
        out = list(col)
        for block in blocks:
            if len(block) == 1:
                continue
            mean = sum((col[i] for i in block), Fraction(0)) / len(block)
            for i in block:
                out[i] = mean
        averaged.append(out)
    rows = []
    for a, na in zip(basis.columns, basis.norms):
        nz = [(i, v) for i, v in enumerate(a) if v]
        rows.append(tuple(sum((v * b[i] for i, v in nz), Fraction(0)) / na for b in averaged))
    return tuple(rows)


def pure_operator(graph: Hypergraph, k: int, exact: bool | None = None) -> Operator:
    """L(graph, KMP_k) on pure(n, k), in the pure basis.

    Exact mode: D^-1 B^T L B for orthogonal columns B with Gram matrix D, a
    matrix self-adjoint for diag(D).  Float mode: Q^T L Q, Q orthonormal.
    """
    exact = graph.exact if exact is None else exact
    n = graph.n
    _space(n, k)
    name = f"L KMP_{k}|pure(n={n})"
    if not exact:
        q = np.array(_pure_float(n, k).columns, dtype=float).reshape(-1, multichoose(n, k)).T
        lap = kmp_laplacian(graph, k, exact=False).matrix
        return Operator(q.T @ lap @ q, name)
    basis = _pure_exact(n, k)
    dim = basis.dim
    out = zeros((dim, dim), True)
    for mask, w in graph.items():
        if not w or popcount(mask) < 2:
            continue
        w = Fraction(w)
        g = _restricted_nb_exact(n, k, mask)
        for i in range(dim):
            out[i, i] += w
            row = g[i]
            for j in range(dim):
                if row[j]:
                    out[i, j] -= w * row[j]
    return Operator(out, name, gram=basis.norms)


def omega_k(graph: Hypergraph, k: int, exact: bool | None = None):
    """Smallest eigenvalue of the KMP_k Laplacian on pure(n, k)."""
    op = pure_operator(graph, k, exact)
    if op.dim == 0:
        raise ValueError(f"pure({graph.n},{k}) is trivial")
    if op.exact:
        return min_root(charpoly_blockwise(op.matrix.tolist()))
    return float(float_eigenvalues(op)[0])


def omegas(graph: Hypergraph, k_max: int, exact: bool | None = None) -> list:
    return [omega_k(graph, k, exact) for k in range(1, k_max + 1)]


@dataclass(frozen=True)
class LambdaStar:
    value: object
    direct: object
    block: object
    omegas: tuple

    @property
    def argmin(self) -> list[int]:
        """Every j attaining min_j omega_j (1-based), ties included."""
        return [j + 1 for j, w in enumerate(self.omegas) if _same(w, self.block)]


def _same(a, b, tol: float = 0.0) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return abs(float(a) - float(b)) <= tol
    return exact_cmp(a, b) == 0


def _min(values):
    best = values[0]
    for v in values[1:]:
        if (float(v) < float(best)) if isinstance(v, float) else exact_cmp(v, best) < 0:
            best = v
    return best


def lambda_min_star_kmp(graph: Hypergraph, k: int, exact: bool | None = None) -> LambdaStar:
    """Smallest non-trivial eigenvalue of L(graph, KMP_k), by two routes.

    direct: full spectrum with one zero (the uniform state) removed.
    block: min over j <= k of omega_j.  A disagreement raises InvariantBreach.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if graph.n < 2:
        raise ValueError("need n >= 2 for a non-trivial spectrum")
    exact = graph.exact if exact is None else exact
    lap = kmp_laplacian(graph, k, exact)
    oms = tuple(omegas(graph, k, exact))
    block = _min(list(oms))
    if exact:
        p = charpoly_blockwise(lap.matrix.tolist())
        q, r = poly_divmod(p, linear(0))
        if r:
            raise InvariantBreach("KMP Laplacian has no zero eigenvalue")
        direct = min_root(q) if degree(q) >= 1 else None
        if direct is None or exact_cmp(direct, block) != 0:
            raise InvariantBreach(f"lambda*_min routes disagree: direct {direct}, block {block}")
    else:
        vals = np.sort(np.linalg.eigvalsh((lap.matrix + lap.matrix.T) / 2))
        direct = float(vals[1])
        scale = max(1.0, float(graph.total_weight()))
        if abs(direct - block) > FLOAT_AGREEMENT_TOL * scale:
            raise InvariantBreach(f"lambda*_min routes disagree: direct {direct}, block {block}")
    return LambdaStar(block, direct, block, oms)


def equivariance_defect(n: int, k: int, B) -> bool:
    """True when N_B Psi_k == Psi_k N_B exactly."""
    p = psi(n, k)
    left = n_b_operator(n, k + 1, B).matrix.dot(p)
    right = p.dot(n_b_operator(n, k, B).matrix)
    return not bool((left == right).all())


def identity(n: int, k: int, exact: bool = True) -> Operator:
    return Operator(eye(multichoose(n, k), exact), f"I MS({n},{k})")
