import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kmp_spectra.base import InvariantBreach, ResourceGuardError
from kmp_spectra.exact import dot
from kmp_spectra.hypergraph import Hypergraph, is_connected, mask_of, phi, random_hypergraph
from kmp_spectra.kmp import (
    equivariance_defect,
    g_vector,
    kmp_laplacian,
    lambda_min_star_kmp,
    n_b_operator,
    omega_k,
    omegas,
    psi,
    pure_basis,
    pure_operator,
    t_k,
)
from kmp_spectra.spectrum import spectrum
from oracles import nb_brute

small_nk = st.tuples(st.integers(2, 5), st.integers(1, 3))


@pytest.mark.parametrize("n,k", [(2, 1), (3, 2), (4, 2), (3, 3)])
def test_n_b_matches_brute_force(n, k):
    for mask in range(1 << n):
        B = {x for x in range(n) if mask >> x & 1}
        got = n_b_operator(n, k, mask).matrix
        assert got.tolist() == nb_brute(n, k, B)


def test_n_b_examples():
    assert (n_b_operator(3, 2, 0b001).matrix == np.eye(6, dtype=object)).all()
    m = n_b_operator(2, 1, 0b11).matrix
    assert (m == Fraction(1, 2)).all()


@given(small_nk, st.data())
def test_n_b_is_an_orthogonal_projection(nk, data):
    n, k = nk
    mask = data.draw(st.integers(0, (1 << n) - 1))
    p = n_b_operator(n, k, mask).matrix
    assert (p.dot(p) == p).all()
    assert (p == p.T).all()
    vals = np.linalg.eigvalsh(p.astype(float))
    assert np.allclose(vals, np.round(vals), atol=1e-10)
    assert set(np.round(vals).astype(int)) <= {0, 1}


def test_n_b_spectrum_exact_zero_one():
    s = spectrum(n_b_operator(4, 2, 0b0111))
    assert {v for v, _ in s.eigenvalues} <= {Fraction(0), Fraction(1)}


@given(st.integers(2, 5), st.integers(0, 3), st.data())
def test_psi_equivariance(n, k, data):
    mask = data.draw(st.integers(0, (1 << n) - 1))
    assert not equivariance_defect(n, k, mask)


def test_psi_small_examples():
    p0 = psi(3, 0)
    assert p0[:, 0].tolist() == [1, 1, 1]
    p1 = psi(3, 1)
    # colex on MS(3,2): 00, 01, 11, 02, 12, 22
    assert p1[:, 0].tolist() == [2, 1, 0, 1, 0, 0]


@pytest.mark.parametrize("n,k", [(2, 1), (3, 2), (4, 3), (5, 2)])
def test_psi_injective(n, k):
    assert np.linalg.matrix_rank(psi(n, k).astype(float)) == math.comb(n + k - 1, k)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2), (4, 3), (5, 3)])
def test_pure_basis_orthogonal_complement(n, k):
    basis = pure_basis(n, k)
    assert basis.dim == math.comb(n + k - 1, k) - math.comb(n + k - 2, k - 1)
    p = psi(n, k - 1)
    for col in basis.columns:
        assert all(dot(p[:, j], col) == 0 for j in range(p.shape[1]))
    for i, a in enumerate(basis.columns):
        for b in basis.columns[:i]:
            assert dot(a, b) == 0


@pytest.mark.parametrize("n,k", [(3, 2), (4, 3)])
def test_float_pure_basis_spans_same_space(n, k):
    q = np.array(pure_basis(n, k, exact=False).columns, dtype=float)
    e = np.array(pure_basis(n, k).columns, dtype=float)
    assert np.allclose(q @ q.T, np.eye(len(q)), atol=1e-12)
    proj = q.T @ q
    assert np.allclose(proj @ e.T, e.T, atol=1e-10)


def test_g_vector_closed_form():
    g = g_vector(3, 2, 0)
    # colex MS(3,2): 00, 01, 11, 02, 12, 22; counts of vertex 0: 2, 1, 0, 1, 0, 0
    assert g.coefficients == (3, -3, 1, -3, 1, 1)


@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_g_vector_in_pure(n, k, data):
    x = data.draw(st.integers(0, n - 1))
    g = g_vector(n, k, x).coefficients
    p = psi(n, k - 1)
    assert all(dot(p[:, j], g) == 0 for j in range(p.shape[1]))


@given(st.integers(2, 5), st.integers(1, 3), st.data())
def test_g_vector_action_scalar(n, k, data):
    x = data.draw(st.integers(0, n - 1))
    y = data.draw(st.integers(0, n - 1))
    full = (1 << n) - 1
    nb = n_b_operator(n, k, full ^ (1 << x)).matrix
    gx = np.array(g_vector(n, k, x).coefficients, dtype=object)
    gy = np.array(g_vector(n, k, y).coefficients, dtype=object)
    scale = Fraction(1) if x == y else t_k(n, k)
    assert (nb.dot(gy) == scale * gx).all()
    assert t_k(n, k) == Fraction((-1) ** k, math.comb(n + k - 2, k))


def test_path_spectra(path3):
    s1 = spectrum(kmp_laplacian(path3, 1))
    assert s1.values() == [0, Fraction(1, 2), Fraction(3, 2)]
    s2 = spectrum(pure_operator(path3, 2))
    assert s2.values() == [Fraction(2, 3), Fraction(4, 3), 2]
    f2 = spectrum(pure_operator(path3, 2, exact=False))
    assert np.allclose(f2.values(), [2 / 3, 4 / 3, 2], atol=1e-9)


def test_zero_graph_gives_zero_operator():
    lap = kmp_laplacian(Hypergraph(3, {}), 2, exact=True).matrix
    assert (lap == 0).all()


def test_float_matches_exact_entries():
    g = random_hypergraph(4, 0.6, "uniform01", 5, exact=True)
    a = kmp_laplacian(g, 3, exact=True).matrix.astype(float)
    b = kmp_laplacian(g.as_float(), 3, exact=False).matrix
    assert np.abs(a - b).max() <= 1e-12


def test_pure_operator_self_adjoint_exactly():
    g = random_hypergraph(4, 0.5, "uniform01", 9, exact=True)
    assert pure_operator(g, 3).check_self_adjoint()


def test_resource_guard(monkeypatch):
    monkeypatch.setenv("KMP_SPECTRA_MAX_DIM", "10")
    with pytest.raises(ResourceGuardError):
        kmp_laplacian(Hypergraph(4, {0b11: Fraction(1)}), 3)


def test_k_must_be_positive():
    with pytest.raises(ValueError):
        kmp_laplacian(Hypergraph(3, {}), 0)


def _draw(seed, n=4, exact=False):
    return random_hypergraph(n, 0.45, "uniform01", seed, exact=exact)


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_spectrum_within_zero_and_total_weight(seed, k):
    g = _draw(seed)
    vals = np.array(spectrum(kmp_laplacian(g, k, exact=False)).floats())
    total = float(g.total_weight())
    assert vals.min() >= -1e-10 and vals.max() <= total + 1e-10


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_omega_at_most_phi(seed):
    g = _draw(seed)
    bound = float(phi(g).minimum)
    assert all(float(w) <= bound + 1e-10 for w in omegas(g, 4, exact=False))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_connectivity_and_gap(seed):
    g = _draw(seed)
    star = lambda_min_star_kmp(g, 3, exact=False)
    if is_connected(g):
        assert star.value > 1e-12
    else:
        assert abs(star.value) <= 1e-12


def test_lambda_star_routes_agree_exactly():
    g = _draw(17, exact=True)
    star = lambda_min_star_kmp(g, 3, exact=True)
    assert star.direct == star.block
    assert star.value == min(star.omegas)


def test_omega_equals_min_new_eigenvalue_exact(path3):
    assert omega_k(path3, 1) == Fraction(1, 2)
    assert omega_k(path3, 2) == Fraction(2, 3)


@pytest.mark.parametrize("seed", range(3))
def test_omegas_exact_against_float(seed):
    g = _draw(seed, exact=True)
    ex = [float(w) for w in omegas(g, 3, exact=True)]
    fl = [float(w) for w in omegas(g.as_float(), 3, exact=False)]
    assert np.allclose(ex, fl, atol=1e-9)


def test_relabel_invariance_of_omegas():
    g = _draw(23, exact=True)
    perm = (2, 0, 3, 1)
    assert omegas(g, 3) == omegas(g.relabel(perm), 3)
