"""The Sym(n) side: Z_k on k-tuples of distinct vertices and its Laplacian."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .base import InvariantBreach, Operator, check_dim, zeros
from .combinatorics import TupleSpace
from .hypergraph import Hypergraph, popcount, vertices_of

SUM_PATH_MAX_B = 6
CROSS_CHECK_MAX_B = 4


@lru_cache(maxsize=None)
def _tuples(n: int, k: int) -> TupleSpace:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    check_dim(math.perm(n, k), f"Z_{k} at n={n}")
    return TupleSpace(n, k)


def _pb_by_sum(n: int, k: int, mask: int) -> np.ndarray:
    space = _tuples(n, k)
    members = vertices_of(mask)
    b = len(members)
    dim = space.dimension
    counts = np.zeros((dim, dim), dtype=np.int64)
    for image in itertools.permutations(members):
        sigma = list(range(n))
        for src, dst in zip(members, image):
            sigma[src] = dst
        for col, t in enumerate(space.states):
            counts[space.index[tuple(sigma[x] for x in t)], col] += 1
    out = zeros((dim, dim), True)
    fact = math.factorial(b)
    for i, j in zip(*np.nonzero(counts)):
        out[i, j] = Fraction(int(counts[i, j]), fact)
    return out


def _pb_by_law(n: int, k: int, mask: int) -> np.ndarray:
    """Entry (target, source) is (b - r)!/b! when the two tuples agree off B and
    use B in the same r slots, else 0."""
    space = _tuples(n, k)
    b = popcount(mask)
    dim = space.dimension
    out = zeros((dim, dim), True)
    groups: dict[tuple, list[int]] = {}
    for idx, t in enumerate(space.states):
        groups.setdefault(tuple(-1 if mask >> x & 1 else x for x in t), []).append(idx)
    for key, members in groups.items():
        r = key.count(-1)
        val = Fraction(math.factorial(b - r), math.factorial(b))
        for i in members:
            for j in members:
                out[i, j] = val
    return out


def p_b_zk(n: int, k: int, B, exact: bool = True, method: str = "auto") -> Operator:
    """(1/|B|!) sum over Sym(B) of the permutation action on distinct k-tuples.

    method "sum" adds the |B|! permutation matrices, "law" fills entries from
    the closed-form coefficient; "auto" uses the sum for |B| <= 6 and checks
    it against the law when |B| <= 4.
    """
    mask = B if isinstance(B, int) else sum(1 << x for x in B)
    b = popcount(mask)
    if method == "sum":
        mat = _pb_by_sum(n, k, mask)
    elif method == "law":
        mat = _pb_by_law(n, k, mask)
    elif method == "auto":
        mat = _pb_by_sum(n, k, mask) if b <= SUM_PATH_MAX_B else _pb_by_law(n, k, mask)
        if b <= CROSS_CHECK_MAX_B and not bool((mat == _pb_by_law(n, k, mask)).all()):
            raise InvariantBreach(f"P_B on Z_{k}: permutation sum and coefficient law disagree")
    else:
        raise ValueError(f"unknown method {method!r}")
    if not exact:
        mat = np.asarray(mat, dtype=float)
    return Operator(mat, f"P_B Z_{k}(n={n})")


def laplacian_zk(graph: Hypergraph, k: int, exact: bool | None = None) -> Operator:
    exact = graph.exact if exact is None else exact
    n = graph.n
    dim = _tuples(n, k).dimension
    out = zeros((dim, dim), exact)
    for mask, w in graph.items():
        if not w or popcount(mask) < 2:
            continue
        p = _pb_by_law(n, k, mask)
        w = Fraction(w) if exact else float(w)
        if exact:
            out = out - p * w
        else:
            out = out - np.asarray(p, dtype=float) * w
        for i in range(dim):
            out[i, i] += w
    return Operator(out, f"L Z_{k}(n={n})")


def sn_mean_field_eigenvalue(n: int, c: Sequence) -> Fraction:
    """sum_l c_l (n / l) binom(n - 2, l - 2), over l >= 2; ``c`` lists c_0..c_n."""
    if any(x < 0 for x in c):
        raise ValueError("coefficients must be non-negative")
    total = Fraction(0)
    for ell, cl in enumerate(c):
        if ell >= 2 and cl:
            total += Fraction(cl) * Fraction(n, ell) * math.comb(n - 2, ell - 2)
    return total


def relabel_tuple_operator(op: Operator, n: int, k: int, perm: Sequence[int]) -> np.ndarray:
    """Conjugate an operator on Z_k by the vertex relabelling x -> perm[x]."""
    space = _tuples(n, k)
    idx = [space.index[tuple(perm[x] for x in t)] for t in space.states]
    out = op.matrix.copy()
    for i in range(len(idx)):
        for j in range(len(idx)):
            out[idx[i], idx[j]] = op.matrix[i, j]
    return out
