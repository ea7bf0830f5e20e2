from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kmp_spectra.codim1 import (
    Codim1Instance,
    TParameter,
    a_t_matrix,
    block_identification,
    char_poly_P,
    char_poly_Q,
    codim1_gap_closed_forms,
    d_t_eigenvalues_float,
    d_t_matrix,
    eigen_pairs_uniform,
    interlacing,
    lambda_min_m_k,
    largest_root_curve,
    m_k_matrix,
    m_k_spectrum,
    monotonicity_check,
    monotonicity_grid,
    parity_ordering,
    pq_identities,
    uniform_instance,
)
from kmp_spectra.exact import linear, poly_prod
from kmp_spectra.kmp import omegas

weights = st.lists(st.integers(0, 8), min_size=3, max_size=5).map(lambda xs: [Fraction(x, 4) for x in xs])


@pytest.mark.parametrize("n", range(3, 7))
def test_closed_forms(n):
    inst = uniform_instance(n)
    m2, m1 = codim1_gap_closed_forms(n)
    assert lambda_min_m_k(inst, 2) == m2
    assert lambda_min_m_k(inst, 1) == m1


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (5, 3)])
def test_uniform_eigen_pairs(n, k):
    vals = set(m_k_spectrum(uniform_instance(n), k).values())
    assert set(eigen_pairs_uniform(n, k)) <= vals


def test_path_example_m_k():
    # the path {1,2},{2,3} is codim-1 with c = (1, 0, 1)
    inst = Codim1Instance.of([1, 0, 1])
    assert m_k_spectrum(inst, 2).values() == [Fraction(2, 3), Fraction(4, 3), 2]
    assert m_k_spectrum(inst, 1).values() == [Fraction(1, 2), Fraction(3, 2), 2]


def test_d_t_matrix_shape():
    inst = Codim1Instance.of([1, 2, 3])
    d = d_t_matrix(inst, Fraction(1, 2)).matrix
    assert d[1, 1] == 2 and d[1, 0] == 1 and d[2, 0] == Fraction(3, 2)
    a = a_t_matrix(inst, Fraction(1, 2)).matrix
    assert a[0, 0] == 5 and a[0, 1] == Fraction(-1, 2)


def test_m_k_uses_t_k():
    inst = Codim1Instance.of([1, 1, 1, 1])
    assert (m_k_matrix(inst, 2).matrix == a_t_matrix(inst, TParameter.for_k(4, 2)).matrix).all()
    with pytest.raises(ValueError):
        m_k_matrix(Codim1Instance.of([1, 1]), 1)
    with pytest.raises(ValueError):
        TParameter(Fraction(1))


@given(weights, st.floats(-0.95, 0.95))
def test_float_eigenvalues_against_general_solver(c, t):
    inst = Codim1Instance.of(c, exact=False)
    mat = d_t_matrix(inst, t).matrix.astype(float)
    want = np.sort(np.linalg.eigvals(mat).real)
    assert np.allclose(d_t_eigenvalues_float(inst.c, t), want, atol=1e-8)


@settings(max_examples=15)
@given(weights)
def test_pq_identities(c):
    assert pq_identities(Codim1Instance.of(c)) == (True, True)


def test_p_equals_q_at_zero():
    inst = Codim1Instance.of([3, 1, 2])
    assert char_poly_P(inst, t=0) == char_poly_Q(inst, t=0)
    assert char_poly_Q(inst, t=0) == poly_prod(linear(x) for x in (3, 1, 2))


@settings(max_examples=10)
@given(weights, st.sampled_from([Fraction(1, 3), Fraction(3, 4), Fraction(-1, 2), Fraction(-2, 5)]))
def test_interlacing(c, t0):
    assert interlacing(Codim1Instance.of(c), t0)


@settings(max_examples=10)
@given(weights)
def test_block_identification(c):
    inst = Codim1Instance.of(c)
    for k in (1, 2):
        assert block_identification(inst, k)


def test_monotonicity_grid_shape():
    grid = monotonicity_grid()
    assert len(grid) == 128
    assert grid == sorted(grid)
    assert all(0 < abs(t) < 0.9 for t in grid)


def test_h_at_zero_is_largest_weight():
    inst = Codim1Instance.of([5, 3, 2, 1], exact=False)
    (_, h), = largest_root_curve(inst, [1e-12])
    assert h == pytest.approx(5, abs=1e-9)


def test_monotonicity_uniform():
    curve = largest_root_curve(Codim1Instance.of([3, 2, 2, 1], exact=False), monotonicity_grid())
    assert monotonicity_check(curve).ok


def test_monotonicity_exact_agrees_with_float():
    inst = Codim1Instance.of([3, 2, 1])
    grid = [-0.5, -0.1, 0.1, 0.5]
    ex = [float(h) for _, h in largest_root_curve(inst, grid, exact=True)]
    fl = [h for _, h in largest_root_curve(Codim1Instance.of([3, 2, 1], exact=False), grid)]
    assert np.allclose(ex, fl, atol=1e-10)


def test_monotonicity_check_flags_increase():
    curve = [(-0.5, 1.0), (-0.1, 2.0), (0.1, 1.0), (0.5, 1.5)]
    rep = monotonicity_check(curve)
    assert not rep.ok and rep.worst_margin == pytest.approx(-1.0)


def test_parity_ordering():
    assert parity_ordering([1, 2, 3, 4])
    assert not parity_ordering([3, 2, 1, 4])
    assert not parity_ordering([1, 2, 1, 4], strict=True)


@settings(max_examples=10)
@given(st.lists(st.integers(1, 8), min_size=4, max_size=4))
def test_codim1_orderings_on_pure_block(raw):
    inst = Codim1Instance.of([Fraction(x, 3) for x in raw], exact=False)
    oms = omegas(inst.hypergraph().as_float(), 4, exact=False)
    assert parity_ordering(oms, strict=True, tol=1e-10)
    floor = min(oms[:2])
    assert all(w >= floor - 1e-10 for w in oms)


def test_min_first_two_up_to_k8():
    rng = np.random.default_rng(3)
    for _ in range(10):
        inst = Codim1Instance.of(list(rng.uniform(0.1, 2, 5)), exact=False)
        mins = [lambda_min_m_k(inst, k) for k in range(1, 9)]
        assert min(mins[:2]) <= min(mins) + 1e-10
