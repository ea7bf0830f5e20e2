"""Hypergraphs supported on the (n-1)-subsets: the n x n matrices M_k, A_t, D_t.

Weights are indexed by the missing vertex: ``c[x]`` sits on [n] minus {x}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .base import Operator, zeros
from .exact import (
    Poly,
    charpoly,
    linear,
    poly,
    poly_add,
    poly_deriv,
    poly_mul,
    poly_prod,
    poly_scale,
    poly_sub,
    real_roots,
)
from .hypergraph import Hypergraph, codim1
from .kmp import t_k
from .spectrum import Spectrum, cluster

GRID_POINTS_PER_SIDE = 64
GRID_DECADES = 3
GRID_EDGE = 0.9


@dataclass(frozen=True)
class Codim1Instance:
    n: int
    c: tuple

    def __post_init__(self) -> None:
        if len(self.c) != self.n:
            raise ValueError(f"expected {self.n} weights, got {len(self.c)}")
        if any(x < 0 for x in self.c):
            raise ValueError("codimension-1 weights must be non-negative")

    @classmethod
    def of(cls, c: Sequence, exact: bool = True) -> "Codim1Instance":
        vals = tuple(Fraction(x) for x in c) if exact else tuple(float(x) for x in c)
        return cls(len(vals), vals)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for x in self.c)

    @property
    def total(self):
        return sum(self.c, Fraction(0) if self.exact else 0.0)

    def hypergraph(self) -> Hypergraph:
        return codim1(self.n, list(self.c))


@dataclass(frozen=True)
class TParameter:
    value: object
    provenance: str = "free"  # "free" or "t_k"
    k: int | None = None

    def __post_init__(self) -> None:
        if self.value >= 1:
            raise ValueError(f"t must be < 1, got {self.value}")

    @classmethod
    def for_k(cls, n: int, k: int) -> "TParameter":
        return cls(t_k(n, k), "t_k", k)


def _t(t) -> object:
    return t.value if isinstance(t, TParameter) else t


def d_t_matrix(inst: Codim1Instance, t) -> Operator:
    """diag(c) (I + t (J - I)): row i is c_i on the diagonal and t c_i elsewhere."""
    t = _t(t)
    if t >= 1:
        raise ValueError(f"t must be < 1, got {t}")
    exact = inst.exact and not isinstance(t, float)
    n = inst.n
    out = zeros((n, n), exact)
    for i in range(n):
        for j in range(n):
            out[i, j] = inst.c[i] if i == j else t * inst.c[i]
    return Operator(out, f"D_t(n={n})", symmetric=False)


def a_t_matrix(inst: Codim1Instance, t) -> Operator:
    d = d_t_matrix(inst, t)
    n = inst.n
    out = -d.matrix
    for i in range(n):
        out[i, i] = out[i, i] + inst.total
    return Operator(out, f"A_t(n={n})", symmetric=False)


def m_k_matrix(inst: Codim1Instance, k: int) -> Operator:
    if inst.n < 3:
        raise ValueError(f"M_k needs n >= 3, got n={inst.n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    tk = t_k(inst.n, k)
    op = a_t_matrix(inst, tk if inst.exact else float(tk))
    return Operator(op.matrix, f"M_{k}(n={inst.n})", symmetric=False)


# --- spectra of the non-symmetric n x n matrices ---------------------------------------


def d_t_eigenvalues_float(c: Sequence[float], t: float) -> np.ndarray:
    """Eigenvalues of D_t through the symmetric C^1/2 (I + t(J - I)) C^1/2 on the support of c.

    D_t is block upper triangular once the zero-weight rows are moved last,
    and those rows are zero, so they only contribute zero eigenvalues.
    """
    c = np.asarray(c, dtype=float)
    support = c > 0
    m = int(support.sum())
    s = np.sqrt(c[support])
    k = np.full((m, m), t) + (1.0 - t) * np.eye(m)
    vals = np.linalg.eigvalsh(s[:, None] * k * s[None, :]) if m else np.zeros(0)
    return np.sort(np.concatenate([vals, np.zeros(len(c) - m)]))


def m_k_spectrum(inst: Codim1Instance, k: int, exact: bool | None = None) -> Spectrum:
    exact = inst.exact if exact is None else exact
    if exact:
        op = m_k_matrix(inst, k)
        p = charpoly(op.matrix.tolist())
        return Spectrum(op.space, "exact", real_roots(p), p)
    tk = float(t_k(inst.n, k))
    total = float(sum(float(x) for x in inst.c))
    vals = total - d_t_eigenvalues_float(inst.c, tk)
    scale = max(1.0, total)
    return Spectrum(f"M_{k}(n={inst.n})", "float", cluster(vals, 1e-8 * scale))


def lambda_min_m_k(inst: Codim1Instance, k: int, exact: bool | None = None):
    return m_k_spectrum(inst, k, exact).min()


# --- the polynomials P and Q ------------------------------------------------------------


Bivariate = tuple  # coefficients in x (ascending), each a Poly in t


def _interpolate(ts: Sequence[Fraction], values: Sequence[Fraction]) -> Poly:
    """Lagrange interpolation through (ts[i], values[i]), exact."""
    out: Poly = ()
    for i, (ti, vi) in enumerate(zip(ts, values)):
        if not vi:
            continue
        basis: Poly = poly([1])
        denom = Fraction(1)
        for j, tj in enumerate(ts):
            if j != i:
                basis = poly_mul(basis, linear(tj))
                denom *= ti - tj
        out = poly_add(out, poly_scale(basis, vi / denom))
    return out


def p_bivariate(inst: Codim1Instance) -> Bivariate:
    """P(x, t) = det(xI - D_t), by interpolating charpolys at n + 1 values of t."""
    c = [Fraction(x) for x in inst.c]
    inst = Codim1Instance(inst.n, tuple(c))
    ts = [Fraction(-j) for j in range(inst.n + 1)]
    polys = [charpoly(d_t_matrix(inst, t).matrix.tolist()) for t in ts]
    return tuple(
        _interpolate(ts, [p[i] if i < len(p) else Fraction(0) for p in polys]) for i in range(inst.n + 1)
    )


def q_bivariate(inst: Codim1Instance) -> Bivariate:
    """Q(x, t) = prod_i (x - (1 - t) c_i)."""
    # each factor is x + (c_i t - c_i); coefficients in x are polys in t
    out: Bivariate = (poly([1]),)
    for ci in inst.c:
        ci = Fraction(ci)
        factor = (poly([-ci, ci]), poly([1]))
        out = _bi_mul(out, factor)
    return out


def _bi_mul(a: Bivariate, b: Bivariate) -> Bivariate:
    out: list[Poly] = [()] * (len(a) + len(b) - 1)
    for i, pa in enumerate(a):
        for j, pb in enumerate(b):
            out[i + j] = poly_add(out[i + j], poly_mul(pa, pb))
    return tuple(out)


def _fix_t(bi: Bivariate, t) -> Poly:
    from .exact import poly_eval

    return poly([poly_eval(p, Fraction(t)) if p else 0 for p in bi])


def _fix_x(bi: Bivariate, x) -> Poly:
    out: Poly = ()
    xp = Fraction(1)
    for p in bi:
        out = poly_add(out, poly_scale(p, xp))
        xp *= Fraction(x)
    return out


def char_poly_P(inst: Codim1Instance, t=None, x=None) -> Poly:
    """Coefficients (ascending) of P in the variable that is not fixed."""
    if (t is None) == (x is None):
        raise ValueError("fix exactly one of t and x")
    if x is None:
        c = [Fraction(v) for v in inst.c]
        return charpoly(d_t_matrix(Codim1Instance(inst.n, tuple(c)), Fraction(_t(t))).matrix.tolist())
    return _fix_x(p_bivariate(inst), x)


def char_poly_Q(inst: Codim1Instance, t=None, x=None) -> Poly:
    if (t is None) == (x is None):
        raise ValueError("fix exactly one of t and x")
    if x is None:
        tt = Fraction(_t(t))
        return poly_prod(linear((1 - tt) * Fraction(ci)) for ci in inst.c)
    return _fix_x(q_bivariate(inst), x)


def pq_identities(inst: Codim1Instance) -> tuple[bool, bool]:
    """Check P = Q - t dQ/dt and (1 - t) P = (1 - t + n t) Q - t x dQ/dx as bivariate identities."""
    p = p_bivariate(inst)
    q = q_bivariate(inst)
    tpoly = poly([0, 1])
    first = tuple(poly_sub(qi, poly_mul(tpoly, poly_deriv(qi))) for qi in q)
    one_minus_t = poly([1, -1])
    lhs = tuple(poly_mul(one_minus_t, pi) for pi in p)
    scale = poly([1, inst.n - 1])
    rhs = tuple(
        poly_sub(poly_mul(scale, qi), poly_scale(poly_mul(tpoly, qi), i)) for i, qi in enumerate(q)
    )
    return _bi_eq(p, first), _bi_eq(lhs, rhs)


def _bi_eq(a: Bivariate, b: Bivariate) -> bool:
    m = max(len(a), len(b))
    a = tuple(a) + ((),) * (m - len(a))
    b = tuple(b) + ((),) * (m - len(b))
    return all(poly(x) == poly(y) for x, y in zip(a, b))


# --- h(t) and the monotonicity scan --------------------------------------------------------


def monotonicity_grid() -> list[float]:
    """64 log-spaced points on each side of 0, strictly inside (-0.9, 0.9), ascending."""
    pos = [GRID_EDGE * 10 ** (-GRID_DECADES * j / GRID_POINTS_PER_SIDE) for j in range(1, GRID_POINTS_PER_SIDE + 1)]
    return sorted([-x for x in pos] + pos)


def largest_root_curve(inst: Codim1Instance, t_grid: Sequence, exact: bool = False) -> list[tuple]:
    """(t, h(t)) with h(t) the largest eigenvalue of D_t."""
    out = []
    for t in t_grid:
        if t >= 1 or t == 0:
            raise ValueError(f"grid points must be < 1 and non-zero, got {t}")
        if exact:
            roots = real_roots(char_poly_P(inst, t=Fraction(t)))
            out.append((t, roots[-1][0]))
        else:
            out.append((t, float(d_t_eigenvalues_float([float(x) for x in inst.c], float(t))[-1])))
    return out


@dataclass(frozen=True)
class MonotonicityReport:
    ok: bool
    worst_margin: float
    steps: int


def monotonicity_check(curve: Sequence[tuple], tol: float = 1e-10) -> MonotonicityReport:
    """h must not increase when stepping toward 0 from either side (margin >= -tol)."""
    neg = [(t, h) for t, h in curve if t < 0]
    pos = [(t, h) for t, h in curve if t > 0]
    margins = []
    # negative side: ascending t walks toward 0
    for (_, h_far), (_, h_near) in zip(neg, neg[1:]):
        margins.append(float(h_far) - float(h_near))
    # positive side: descending t walks toward 0
    pos_desc = pos[::-1]
    for (_, h_far), (_, h_near) in zip(pos_desc, pos_desc[1:]):
        margins.append(float(h_far) - float(h_near))
    worst = min(margins, default=0.0)
    return MonotonicityReport(worst >= -tol, worst, len(margins))


def codim1_gap_closed_forms(n: int) -> tuple[Fraction, Fraction]:
    """(lambda_min(M_2), lambda_min(M_1)) for unit weights on every (n-1)-subset."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return Fraction((n + 1) * (n - 2), n), Fraction(n * (n - 2), n - 1)


def uniform_instance(n: int) -> Codim1Instance:
    return Codim1Instance(n, tuple([Fraction(1)] * n))


def parity_ordering(omegas: Sequence, strict: bool = False, tol: float = 0.0) -> bool:
    """omega_1 <= omega_3 <= omega_5 ... and omega_2 <= omega_4 <= ...; 1-based list."""
    from .exact import exact_cmp

    def le(a, b) -> bool:
        if isinstance(a, float) or isinstance(b, float):
            diff = float(b) - float(a)
            return diff > tol if strict else diff >= -tol
        c = exact_cmp(a, b)
        return c < 0 if strict else c <= 0

    for j in range(len(omegas) - 2):
        if not le(omegas[j], omegas[j + 2]):
            return False
    return True


def interlacing(inst: Codim1Instance, t0) -> bool:
    """Roots of P(., t0) interlace those of Q(., t0); P's larger for t0 > 0, smaller for t0 < 0."""
    t0 = Fraction(t0)
    pr = [float(r) for r, m in real_roots(char_poly_P(inst, t=t0)) for _ in range(m)]
    qr = [float(r) for r, m in real_roots(char_poly_Q(inst, t=t0)) for _ in range(m)]
    pr.sort(reverse=True)
    qr.sort(reverse=True)
    eps = 1e-12
    if t0 > 0:
        # p_1 >= q_1 >= p_2 >= q_2 >= ...
        return all(pr[i] >= qr[i] - eps for i in range(len(pr))) and all(
            qr[i] >= pr[i + 1] - eps for i in range(len(pr) - 1)
        )
    return all(qr[i] >= pr[i] - eps for i in range(len(pr))) and all(
        pr[i] >= qr[i + 1] - eps for i in range(len(pr) - 1)
    )


def pure_vs_m_k(inst: Codim1Instance, k: int):
    """(charpoly of the KMP_k pure block, charpoly of M_k) for the block identification."""
    from .kmp import pure_operator
    from .exact import charpoly_blockwise

    g = inst.hypergraph().as_exact()
    pure = pure_operator(g, k, exact=True)
    return charpoly_blockwise(pure.matrix.tolist()), charpoly(m_k_matrix(Codim1Instance.of(inst.c), k).matrix.tolist())


def block_identification(inst: Codim1Instance, k: int) -> bool:
    """Spectrum of KMP_k on pure(n, k) against that of M_k, exactly.

    k = 1: spec(M_1) = spec(pure) plus the value sum(c) (from the all-ones vector).
    k >= 2: charpoly(pure) = charpoly(M_k) (x - sum c)^(dim - n).
    """
    from .exact import poly_pow

    p_pure, p_m = pure_vs_m_k(inst, k)
    total = sum(Fraction(x) for x in inst.c)
    if k == 1:
        return poly_mul(p_pure, linear(total)) == p_m
    extra = (len(p_pure) - 1) - inst.n
    if extra < 0:
        return False
    return p_pure == poly_mul(p_m, poly_pow(linear(total), extra))


def eigen_pairs_uniform(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Eigenvalues (n-1)(1-t_k) and n-1+t_k of M_k for unit weights."""
    t = t_k(n, k)
    return (n - 1) * (1 - t), n - 1 + t

