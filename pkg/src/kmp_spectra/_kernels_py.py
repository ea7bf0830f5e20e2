"""Pure-Python Weingarten pair-counting kernels (reference and fallback).

Both kernels evaluate the delta constraints of the Weingarten expansion

    sum_{sigma, tau} prod_t [i_t = i'_{sigma(t)}] [j_t = j'_{tau(t)}] Wg(tau sigma^-1)

and return, instead of a rational number, how many surviving (sigma, tau)
pairs land in each conjugacy class of ``tau sigma^-1``.  The caller dots the
counts with a Weingarten table, so the kernels stay pure integer code.

``perms`` is the list of all permutations of Sym(l) in one-line notation and
``class_table[a][b]`` is the class index of ``perms[a] * perms[b]^-1``.
"""

from __future__ import annotations


def _valid(rows, crows, perms):
    ell = len(rows)
    return [
        s
        for s, p in enumerate(perms)
        if all(rows[t] == crows[p[t]] for t in range(ell))
    ]


def monomial_class_counts(rows, cols, crows, ccols, perms, class_table, nclass):
    """Class counts for the monomial prod A[rows_t, cols_t] * conj(A[crows_t, ccols_t])."""
    counts = [0] * nclass
    sigmas = _valid(rows, crows, perms)
    if not sigmas:
        return counts
    taus = _valid(cols, ccols, perms)
    for tau in taus:
        row = class_table[tau]
        for sigma in sigmas:
            counts[row[sigma]] += 1
    return counts


def torinv_class_counts(arr_out, arr_in, in_b, perms, class_table, nclass):
    """Summed class counts for one torus-invariant matrix entry of P_B on S_{k,k}.

    The entry pairs u_J = sum_{a, b in arr(J)} e_a (x) e^b with the image of
    u_I = sum_{a', b' in arr(I)} e_{a'} (x) e^{b'} under the U_B average.  For
    each of the |arr(J)|^2 |arr(I)|^2 monomials, factors with an index outside
    B are replaced by Kronecker deltas (A is the identity there) and the
    remaining in-B factors go through the pair count.
    """
    counts = [0] * nclass
    reduced_in = []
    for a in arr_out:
        for a2 in arr_in:
            red = _reduce(a, a2, in_b)
            if red is not None:
                reduced_in.append(red)
    if not reduced_in:
        return counts
    for rows, cols in reduced_in:
        for crows, ccols in reduced_in:
            if len(crows) != len(rows):
                continue
            sigmas = _valid(rows, crows, perms)
            if not sigmas:
                continue
            taus = _valid(cols, ccols, perms)
            for tau in taus:
                row = class_table[tau]
                for sigma in sigmas:
                    counts[row[sigma]] += 1
    return counts


def _reduce(a, a2, in_b):
    """Drop out-of-B factors A[a_t, a2_t]; None if one of them is a zero delta."""
    rows = []
    cols = []
    for x, y in zip(a, a2):
        if in_b[x] and in_b[y]:
            rows.append(x)
            cols.append(y)
        elif x != y:
            return None
    return tuple(rows), tuple(cols)
