import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kmp_spectra.base import ResourceGuardError
from kmp_spectra.kmp import n_b_operator
from kmp_spectra.weingarten import (
    MonomialSpec,
    laplacian_rkm,
    wg_sum_identities,
    monomial_integral,
    projection_rkm,
    projection_torinv_skk,
    wg_table,
)
from oracles import haar_unitary


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("d", range(1, 9))
def test_wg_sum_identities(k, d):
    table = wg_table(k, d)
    want, want_signed = wg_sum_identities(k, d)
    assert table.permutation_sum() == want
    assert table.permutation_sum(signed=True) == want_signed


def test_signed_sum_vanishes_below_k():
    assert wg_table(4, 2).permutation_sum(signed=True) == 0


@pytest.mark.parametrize("d", range(2, 9))
def test_wg2_closed_forms(d):
    t = wg_table(2, d)
    assert t((0, 1)) == Fraction(1, d * d - 1)
    assert t((1, 0)) == Fraction(-1, d**3 - d)


def test_wg1():
    assert wg_table(1, 5)((0,)) == Fraction(1, 5)


def test_table_guard():
    with pytest.raises(ResourceGuardError):
        wg_table(7, 3)


def test_known_integral_exact():
    spec = MonomialSpec(2, (0, 1), (0, 1), (0, 1), (0, 1))
    assert monomial_integral(spec) == Fraction(1, 3)
    assert monomial_integral(MonomialSpec(3, (0,), (0,), (0,), (0,))) == Fraction(1, 3)
    assert monomial_integral(MonomialSpec(2, (0, 0), (0, 0), (0, 0), (0, 0))) == Fraction(1, 3)


def test_known_integral_monte_carlo():
    rng = np.random.default_rng(20240611)
    total = 0.0
    count = 0
    for _ in range(5):
        u = haar_unitary(rng, 2, 200_000)
        f = u[:, 0, 0] * u[:, 1, 1]
        total += float(np.sum(np.abs(f) ** 2))
        count += len(f)
    assert abs(total / count - 1 / 3) < 3e-3


@pytest.mark.parametrize(
    "rows,cols,crows,ccols",
    [((0, 1), (1, 0), (0, 1), (0, 1)), ((0, 0), (0, 1), (0, 0), (1, 0)), ((0,), (1,), (0,), (1,))],
)
def test_integrals_against_monte_carlo(rows, cols, crows, ccols):
    rng = np.random.default_rng(7)
    u = haar_unitary(rng, 2, 400_000)
    f = np.ones(len(u), dtype=complex)
    for r, c in zip(rows, cols):
        f = f * u[:, r, c]
    for r, c in zip(crows, ccols):
        f = f * np.conj(u[:, r, c])
    exact = float(monomial_integral(MonomialSpec(2, rows, cols, crows, ccols)))
    assert abs(f.mean() - exact) < 5e-3


def test_unbalanced_vanishes_fuzz():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        d = int(rng.integers(1, 4))
        k = int(rng.integers(1, 4))
        m = int(rng.integers(0, 4))
        rows, cols = tuple(rng.integers(0, d, k)), tuple(rng.integers(0, d, k))
        crows, ccols = tuple(rng.integers(0, d, m)), tuple(rng.integers(0, d, m))
        balanced = k == m and sorted(rows) == sorted(crows) and sorted(cols) == sorted(ccols)
        if not balanced:
            assert monomial_integral(MonomialSpec(d, rows, cols, crows, ccols)) == 0


def test_monomial_spec_validation():
    with pytest.raises(ValueError):
        MonomialSpec(2, (0, 2), (0, 0))
    with pytest.raises(ValueError):
        MonomialSpec(2, (0,), (0, 1))


@pytest.mark.parametrize("n,k,m", [(2, 1, 1), (3, 1, 1), (2, 2, 2), (3, 2, 1)])
def test_projection_rkm_is_orthogonal_projection(n, k, m):
    for mask in range(1 << n):
        p = projection_rkm(mask, n, k, m).matrix
        assert (p == p.T).all()
        assert (p.dot(p) == p).all()


@settings(max_examples=15)
@given(st.integers(2, 3), st.data())
def test_nested_projections(n, data):
    b2 = data.draw(st.integers(0, (1 << n) - 1))
    b1 = data.draw(st.integers(0, (1 << n) - 1)) & b2
    p1 = projection_rkm(b1, n, 1, 1).matrix
    p2 = projection_rkm(b2, n, 1, 1).matrix
    assert (p1.dot(p2) == p2).all()
    assert (p2.dot(p1) == p2).all()


def test_projection_single_vertex_phase_average():
    # U_B for |B| = 1 is a circle of phases: A e_0 (x) conj(A) e_0 survives, unbalanced terms die
    p = projection_rkm(0b01, 2, 1, 1).matrix
    basis = list(itertools.product(range(2), repeat=2))
    for i, a in enumerate(basis):
        balanced = (a[0] == 0) == (a[1] == 0)
        assert p[i, i] == (1 if balanced else 0)


def test_projection_rkm_float_matches_exact():
    a = projection_rkm(0b011, 3, 2, 1).matrix.astype(float)
    b = projection_rkm(0b011, 3, 2, 1, exact=False).matrix
    assert np.abs(a - b).max() <= 1e-15


def test_laplacian_rkm_psd(path3):
    vals = np.linalg.eigvalsh(laplacian_rkm(path3, 1, 1).matrix.astype(float))
    assert vals.min() >= -1e-12
    assert vals.max() <= 2 + 1e-12


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 1), (4, 2)])
def test_torinv_equals_n_b(n, k):
    for mask in range(1 << n):
        assert (projection_torinv_skk(mask, n, k).matrix == n_b_operator(n, k, mask).matrix).all()


def test_r10_laplacian_is_diag_phi():
    from kmp_spectra.hypergraph import phi

    g = random_hypergraph_exact(4, 11)
    lap = laplacian_rkm(g, 1, 0).matrix
    assert (lap == np.diag(np.array(phi(g).per_vertex, dtype=object))).all()


def test_full_set_k1_m1_is_trace_pairing():
    n = 3
    p = projection_rkm((1 << n) - 1, n, 1, 1).matrix
    basis = list(itertools.product(range(n), repeat=2))
    for r, (i, ib) in enumerate(basis):
        for c, (j, jb) in enumerate(basis):
            want = Fraction(1, n) if i == ib and j == jb else 0
            assert p[r, c] == want


def random_hypergraph_exact(n, seed):
    from kmp_spectra.hypergraph import random_hypergraph

    return random_hypergraph(n, 0.6, "uniform01", seed, exact=True)
