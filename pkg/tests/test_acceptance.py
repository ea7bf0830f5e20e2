"""The ten acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <id>: PASS|FAIL <detail>`` line, even
under output capture, and then asserts.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from kmp_spectra.base import as_float
from kmp_spectra.codim1 import (
    Codim1Instance,
    block_identification,
    codim1_gap_closed_forms,
    lambda_min_m_k,
    largest_root_curve,
    monotonicity_check,
    monotonicity_grid,
    uniform_instance,
)
from kmp_spectra.exact import charpoly_blockwise, divides
from kmp_spectra.hypergraph import gamma_ell, is_connected, phi, random_hypergraph
from kmp_spectra.kmp import (
    equivariance_defect,
    g_vector,
    kmp_laplacian,
    lambda_min_star_kmp,
    n_b_operator,
    omegas,
    pure_operator,
    t_k,
)
from kmp_spectra.meanfield import eigen_residual, gamma_ell_eigenvalue, mean_field_report, random_coefficients, v0_vector
from kmp_spectra.rng import SplitMix64
from kmp_spectra.spectrum import spectrum
from kmp_spectra.sweep import SweepConfig, sweep
from kmp_spectra.symgroup import laplacian_zk
from kmp_spectra.verify import PATH_KMP1, PATH_PURE2, path_graph
from kmp_spectra.weingarten import laplacian_rkm, wg_sum_identities, projection_torinv_skk, wg_table

SEED = 20240611


@pytest.fixture
def report(capsys):
    def emit(ident, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {ident}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, detail

    return emit


def test_01_path_example(report):
    start = time.perf_counter()
    g = path_graph(True)
    ok = spectrum(kmp_laplacian(g, 1)).values() == list(PATH_KMP1)
    ok &= spectrum(pure_operator(g, 2)).values() == list(PATH_PURE2)
    gf = g.as_float()
    f1 = spectrum(kmp_laplacian(gf, 1, exact=False)).floats()
    f2 = spectrum(pure_operator(gf, 2, exact=False)).floats()
    resid = max(np.abs(np.array(f1) - [float(x) for x in PATH_KMP1]).max(),
                np.abs(np.array(f2) - [float(x) for x in PATH_PURE2]).max())
    elapsed = time.perf_counter() - start
    ok = ok and resid <= 1e-9 and elapsed < 1.0
    report(1, ok, f"path example exact and float (resid {resid:.1e}, {elapsed:.2f}s)")


def test_02_mean_field(report):
    start = time.perf_counter()
    rng = SplitMix64(SEED)
    bad = []
    for n in (3, 4, 5):
        for trial in range(20):
            c = random_coefficients(rng, n)
            rep = mean_field_report(n, c, k_max=4, exact=True)
            if not rep.ok:
                bad.append((n, trial, rep.to_json()))
        for ell in range(2, n + 1):
            if eigen_residual(gamma_ell(n, ell), v0_vector(n), gamma_ell_eigenvalue(n, ell)) != 0:
                bad.append((n, "v0", ell))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    report(2, ok, f"mean-field 60 instances, failures={len(bad)} ({elapsed:.1f}s)")


def test_03_codim1_closed_forms(report):
    bad = []
    for n in range(3, 7):
        m2, m1 = codim1_gap_closed_forms(n)
        inst = uniform_instance(n)
        if lambda_min_m_k(inst, 2) != m2 or lambda_min_m_k(inst, 1) != m1:
            bad.append(n)
        if m2 != Fraction((n + 1) * (n - 2), n) or m1 != Fraction(n * (n - 2), n - 1):
            bad.append(n)
    report(3, not bad, f"closed forms n=3..6, failures={bad}")


def test_04_torinv_equivalence(report):
    start = time.perf_counter()
    bad = []
    for n in (3, 4):
        for k in (1, 2, 3):
            for mask in range(1 << n):
                if not (projection_torinv_skk(mask, n, k).matrix == n_b_operator(n, k, mask).matrix).all():
                    bad.append((n, k, mask))
    worst = 0.0
    for mask in range(1 << 5):
        a = projection_torinv_skk(mask, 5, 2, exact=False).matrix
        b = n_b_operator(5, 2, mask, exact=False).matrix
        worst = max(worst, float(np.abs(as_float(a) - as_float(b)).max()))
    elapsed = time.perf_counter() - start
    ok = not bad and worst <= 1e-12 and elapsed < 300
    report(4, ok, f"torus-invariant P_B == N_B, mismatches={len(bad)}, n=5 float diff {worst:.1e} ({elapsed:.1f}s)")


def test_05_weingarten(report):
    bad = []
    for k in range(1, 6):
        for d in range(1, 9):
            t = wg_table(k, d)
            if (t.permutation_sum(), t.permutation_sum(signed=True)) != wg_sum_identities(k, d):
                bad.append((k, d))
            if d < k and t.permutation_sum(signed=True) != 0:
                bad.append((k, d, "signed"))
    for d in range(2, 9):
        t = wg_table(2, d)
        if t((0, 1)) != Fraction(1, d * d - 1) or t((1, 0)) != Fraction(-1, d**3 - d):
            bad.append((2, d, "closed"))
    report(5, not bad, f"Weingarten sums k<=5 d<=8 and Wg_2 closed forms, failures={bad}")


def test_06_sn_containment(report):
    start = time.perf_counter()
    rng = SplitMix64(SEED + 6)
    bad = []
    for n, count in ((3, 10), (4, 5)):
        for trial in range(count):
            g = random_hypergraph(n, 0.5, "uniform01", rng.fork(trial), exact=True)
            for k in (1, 2):
                small = charpoly_blockwise(laplacian_zk(g, k).matrix.tolist())
                big = charpoly_blockwise(laplacian_rkm(g, k, k).matrix.tolist())
                if not divides(small, big):
                    bad.append((n, trial, k))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    report(6, ok, f"Sym(n) charpoly divides R_kk charpoly on 15 graphs, failures={bad} ({elapsed:.1f}s)")


def test_07_block_identification(report):
    rng = SplitMix64(SEED + 7)
    bad = []
    for n in (3, 4, 5):
        c = [Fraction(rng.randint(1, 12), 4) for _ in range(n)]
        inst = Codim1Instance.of(c)
        for k in (1, 2, 3):
            if not block_identification(inst, k):
                bad.append((n, k, [str(x) for x in c]))
    report(7, not bad, f"spec(M_k) vs pure block for n=3..5, k=1..3, failures={bad}")


def test_08_property_suite(report):
    problems = []
    for n in range(2, 6):
        for k in range(0, 4):
            if any(equivariance_defect(n, k, mask) for mask in range(1 << n)):
                problems.append(("equivariance", n, k))
    for n in range(2, 6):
        for k in range(1, 4):
            full = (1 << n) - 1
            for x in range(n):
                nb = n_b_operator(n, k, full ^ (1 << x)).matrix
                gx = np.array(g_vector(n, k, x).coefficients, dtype=object)
                for y in range(n):
                    gy = np.array(g_vector(n, k, y).coefficients, dtype=object)
                    want = gx if x == y else t_k(n, k) * gx
                    if not (nb.dot(gy) == want).all():
                        problems.append(("g-vector", n, k, x, y))
            if t_k(n, k) != Fraction((-1) ** k, math.comb(n + k - 2, k)):
                problems.append(("t_k", n, k))
    for n, k in ((3, 2), (4, 2), (4, 3), (5, 2)):
        for mask in range(1 << n):
            vals = {v for v, _ in spectrum(n_b_operator(n, k, mask)).eigenvalues}
            if not vals <= {0, 1}:
                problems.append(("N_B spectrum", n, k, mask))
    rng = SplitMix64(SEED + 8)
    for trial in range(100):
        n = 3 + trial % 3
        g = random_hypergraph(n, 0.4, "uniform01", rng.fork(trial))
        total = float(g.total_weight())
        for k in (1, 2, 3):
            vals = spectrum(kmp_laplacian(g, k, exact=False)).floats()
            if vals and (vals[0] < -1e-10 or vals[-1] > total + 1e-10):
                problems.append(("range", trial, k))
        oms = omegas(g, 3, exact=False)
        if any(w > float(phi(g).minimum) + 1e-10 for w in oms):
            problems.append(("phi", trial))
        star = lambda_min_star_kmp(g, 3, exact=False).value
        if is_connected(g) != (star > 1e-12):
            problems.append(("connectivity", trial, star))
    report(8, not problems, f"property suite, problems={problems[:5]}")


def test_09_conjecture_sweep(report):
    start = time.perf_counter()
    cfg = SweepConfig(n=4, k_max=4, trials=500, seed=SEED, tolerance=1e-8)
    records, summary = sweep(cfg)
    elapsed = time.perf_counter() - start
    stable, parity = summary.violations["stable_gap"], summary.violations["parity"]
    replayable = all(r.graph is not None for r in records if r.violation)
    ok = stable == 0 and parity == 0 and replayable and elapsed < 1800
    report(9, ok, f"sweep 500 trials n=4 k_max=4: stable_gap={stable} parity={parity} ({elapsed:.1f}s)")


def test_10_monotonicity(report):
    rng = SplitMix64(SEED + 10)
    grid = monotonicity_grid()
    worst = math.inf
    bad = []
    for trial in range(50):
        n = 3 + trial % 4
        c = sorted((rng.uniform() * 2 for _ in range(n)), reverse=True)
        if c[1] <= 0:
            c[1] = 0.5 * c[0]
        rep = monotonicity_check(largest_root_curve(Codim1Instance.of(c, exact=False), grid), tol=1e-10)
        worst = min(worst, rep.worst_margin)
        if not rep.ok or rep.steps != 126:
            bad.append(trial)
    report(10, not bad, f"h(t) monotone toward 0 on 50 instances, worst margin {worst:.2e}")
