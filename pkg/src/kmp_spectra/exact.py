"""Exact rational linear algebra and real-rooted polynomial toolkit.

Polynomials are tuples of ``Fraction`` coefficients in *ascending* degree
order (``p[i]`` is the coefficient of ``x**i``), with no trailing zeros; the
zero polynomial is ``()``.

Every characteristic polynomial produced by this package belongs to a matrix
similar to a real symmetric one, so it is real-rooted.  For such polynomials
Descartes' rule of signs is exact, which gives a cheap root counter
(``count_roots_above``) used for isolation and comparison instead of Sturm
chains.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

Poly = tuple  # tuple[Fraction, ...]

# --- polynomials --------------------------------------------------------------


def poly(coeffs: Iterable) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    return len(p) - 1


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_scale(q, -1))


def poly_scale(p: Poly, c) -> Poly:
    return poly(c * a for a in p)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def poly_pow(p: Poly, e: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_prod(factors: Iterable[Poly]) -> Poly:
    out: Poly = (Fraction(1),)
    for f in factors:
        out = poly_mul(out, f)
    return out


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(rem) - 1 < dq:
        return (), poly(rem)
    quot = [Fraction(0)] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i] / lead
        quot[i - dq] = c
        if c:
            for j in range(dq + 1):
                rem[i - dq + j] -= c * q[j]
    return poly(quot), poly(rem[:dq])


def poly_deriv(p: Poly) -> Poly:
    return poly(i * p[i] for i in range(1, len(p)))


def poly_monic(p: Poly) -> Poly:
    if not p:
        return p
    return poly_scale(p, 1 / p[-1])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, poly_divmod(p, q)[1]
    return poly_monic(p)


def poly_eval(p: Poly, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def linear(root) -> Poly:
    """The monic polynomial x - root."""
    return poly((-Fraction(root), 1))


def taylor_shift(p: Poly, a) -> Poly:
    """Coefficients of p(x + a)."""
    c = list(p)
    n = len(c)
    a = Fraction(a)
    if a == 0:
        return tuple(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return tuple(c)


def poly_dilate(p: Poly, s) -> Poly:
    """Coefficients of p(s * x)."""
    s = Fraction(s)
    return poly(c * s**i for i, c in enumerate(p))


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree factors with their multiplicities."""
    p = poly_monic(p)
    if degree(p) < 1:
        return []
    out = []
    dp = poly_deriv(p)
    a = poly_gcd(p, dp)
    b = poly_divmod(p, a)[0]
    c = poly_divmod(dp, a)[0]
    d = poly_sub(c, poly_deriv(b))
    i = 1
    while degree(b) >= 1:
        a = poly_gcd(b, d)
        if degree(a) >= 1:
            out.append((a, i))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = poly_sub(c, poly_deriv(b))
        i += 1
    return out


def divides(q: Poly, p: Poly) -> bool:
    return not poly_divmod(p, q)[1]


def poly_to_strings(p: Poly, descending: bool = True) -> list[str]:
    seq = reversed(p) if descending else iter(p)
    return [frac_str(c) for c in seq]


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


# --- real-rooted root counting --------------------------------------------------


def sign_variations(coeffs: Iterable) -> int:
    count = 0
    last = 0
    for c in coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def count_roots_above(p: Poly, a) -> int:
    """Number of roots > a, with multiplicity, of a *real-rooted* polynomial."""
    return sign_variations(taylor_shift(p, a))


def count_roots_in(p: Poly, lo, hi) -> int:
    """Roots in the half-open interval (lo, hi], for real-rooted p."""
    return count_roots_above(p, lo) - count_roots_above(p, hi)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every root satisfies |x| < bound."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one root of squarefree real-rooted p."""
    if degree(p) < 1:
        return []
    bound = root_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots_in(p, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def _guess_rational(p: Poly, lo: Fraction, hi: Fraction) -> Fraction | None:
    """The root of p in (lo, hi] if it is rational with a modest denominator.

    The interval is narrowed to width ~2^-64 first; a rational root with
    denominator q then sits within 1/q^2 of any point of it, so
    ``limit_denominator`` recovers it for q up to about 2^31.
    """
    if poly_eval(p, hi) == 0:
        return hi
    width = (abs(lo) + abs(hi) + 1) * Fraction(1, 2**64)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0:
            return mid
        if count_roots_in(p, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    mid = (lo + hi) / 2
    for bound in (1, 12, 1000, 10**6, 2**31):
        cand = mid.limit_denominator(bound)
        if lo < cand <= hi and poly_eval(p, cand) == 0:
            return cand
    return None


@total_ordering
class AlgebraicReal:
    """A real root of a squarefree real-rooted polynomial, pinned by an interval.

    ``poly`` has exactly one root in the half-open interval ``(lo, hi]``.
    """

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, p: Poly, lo: Fraction, hi: Fraction):
        self.poly = p
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)

    def refine(self, width: Fraction | None = None) -> "AlgebraicReal":
        target = width if width is not None else (self.hi - self.lo) / 2
        while self.hi - self.lo > target:
            mid = (self.lo + self.hi) / 2
            if count_roots_in(self.poly, self.lo, mid) == 1:
                self.hi = mid
            else:
                self.lo = mid
        return self

    def __float__(self) -> float:
        self.refine(abs(self.hi) * Fraction(1, 2**60) + Fraction(1, 2**80))
        return float((self.lo + self.hi) / 2)

    def _cmp_fraction(self, r: Fraction) -> int:
        if r > self.hi:
            return -1
        if r <= self.lo:
            return 1
        if poly_eval(self.poly, r) == 0:
            return 0
        if count_roots_in(self.poly, self.lo, r) == 1:
            return -1
        return 1

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            return self._cmp_fraction(Fraction(other))
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo < hi:
            g = poly_gcd(self.poly, other.poly)
            if degree(g) >= 1 and count_roots_in(g, lo, hi) >= 1:
                return 0
        while True:
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            self.refine()
            other.refine()

    def __eq__(self, other) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __hash__(self) -> int:
        return hash((self.poly, "algebraic"))

    def __repr__(self) -> str:
        return f"AlgebraicReal(~{float(self):.12g})"


ExactReal = Union[Fraction, AlgebraicReal]


def exact_cmp(a: ExactReal, b: ExactReal) -> int:
    if isinstance(a, AlgebraicReal):
        return a._cmp(b)
    if isinstance(b, AlgebraicReal):
        return -b._cmp(a)
    return (a > b) - (a < b)


def to_float(x) -> float:
    return float(x)


def real_roots(p: Poly) -> list[tuple[ExactReal, int]]:
    """All roots of a real-rooted polynomial, ascending, with multiplicities."""
    out: list[tuple[ExactReal, int]] = []
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in isolate_real_roots(factor):
            rat = _guess_rational(factor, lo, hi)
            root: ExactReal = rat if rat is not None else AlgebraicReal(factor, lo, hi)
            out.append((root, mult))
    return sorted(out, key=_SortKey)


class _SortKey:
    __slots__ = ("pair",)

    def __init__(self, pair):
        self.pair = pair

    def __lt__(self, other) -> bool:
        return exact_cmp(self.pair[0], other.pair[0]) < 0


def min_root(p: Poly) -> ExactReal:
    """Smallest root of a real-rooted polynomial of degree >= 1."""
    p_sf = poly_divmod(p, poly_gcd(p, poly_deriv(p)))[0] if degree(p) > 1 else p
    p_sf = poly_monic(p_sf)
    bound = root_bound(p_sf)
    lo, hi = -bound, bound
    # shrink (lo, hi] until it holds exactly the smallest root
    while count_roots_in(p_sf, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_roots_in(p_sf, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    rat = _guess_rational(p_sf, lo, hi)
    return rat if rat is not None else AlgebraicReal(p_sf, lo, hi)


def has_root(p: Poly, r: Fraction) -> bool:
    return poly_eval(p, Fraction(r)) == 0


def root_multiplicity(p: Poly, r: Fraction) -> int:
    lin = linear(r)
    m = 0
    while p and poly_eval(p, Fraction(r)) == 0:
        p = poly_divmod(p, lin)[0]
        m += 1
    return m


# --- matrices (lists of lists of Fraction) ---------------------------------------


def to_fraction_rows(a) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in a]


def charpoly(a) -> Poly:
    """det(xI - A) over Q via Hessenberg reduction (O(n^3) field operations)."""
    h = to_fraction_rows(a)
    n = len(h)
    if n == 0:
        return (Fraction(1),)
    _hessenberg_inplace(h)
    # p_m(x) = (x - h_mm) p_{m-1} - sum_i h_{i,m} (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    ps: list[Poly] = [(Fraction(1),)]
    for m in range(n):
        p = poly_mul(linear(h[m][m]), ps[m])
        t = Fraction(1)
        for i in range(m - 1, -1, -1):
            t *= h[i + 1][i]
            if t == 0:
                break
            if h[i][m]:
                p = poly_sub(p, poly_scale(ps[i], t * h[i][m]))
        ps.append(p)
    return ps[n]


def _hessenberg_inplace(h: list[list[Fraction]]) -> None:
    n = len(h)
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        pivot = h[m][m - 1]
        for i in range(m + 1, n):
            f = h[i][m - 1]
            if f == 0:
                continue
            f = f / pivot
            row_i, row_m = h[i], h[m]
            for j in range(m - 1, n):
                if row_m[j]:
                    row_i[j] -= f * row_m[j]
            for row in h:
                if row[i]:
                    row[m] += f * row[i]


def block_components(a) -> list[list[int]]:
    """Index sets of the connected components of the sparsity graph of A + A^T."""
    n = len(a)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        row = a[i]
        for j in range(n):
            if i != j and row[j] != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def charpoly_blockwise(a) -> Poly:
    """Characteristic polynomial as the product over decoupled index blocks."""
    rows = to_fraction_rows(a)
    factors = []
    for comp in block_components(rows):
        sub = [[rows[i][j] for j in comp] for i in comp]
        factors.append(charpoly(sub))
    return poly_prod(factors)


def rref(a) -> tuple[list[list[Fraction]], list[int]]:
    m = to_fraction_rows(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(a) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column."""
    m, pivots = rref(a)
    cols = len(a[0]) if len(a) else 0
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def rank(a) -> int:
    if not len(a):
        return 0
    return len(rref(a)[1])


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))


def gram_schmidt(vectors: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Mutually orthogonal (not normalised) vectors spanning the same space."""
    out: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for u, nu in zip(out, norms):
            c = dot(w, u) / nu
            if c:
                w = [x - c * y for x, y in zip(w, u)]
        nw = dot(w, w)
        if nw != 0:
            out.append(w)
            norms.append(nw)
    return out


def matmul(a, b) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


def transpose(a) -> list[list]:
    return [list(col) for col in zip(*a)]


def solve(a, b) -> list[list[Fraction]]:
    """X with A X = B for square invertible A (Gauss-Jordan)."""
    n = len(a)
    aug = [list(map(Fraction, a[i])) + list(map(Fraction, b[i])) for i in range(n)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in m[:n]]


def is_symmetric(a) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def lcm_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out
