"""Verification suites: each returns a JSON-ready dict with a top-level ``pass``."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .base import as_float
from .codim1 import (
    Codim1Instance,
    block_identification,
    codim1_gap_closed_forms,
    lambda_min_m_k,
    m_k_spectrum,
    parity_ordering,
    pq_identities,
)
from .exact import exact_cmp
from .hypergraph import Hypergraph, from_json, is_connected, mean_field
from .kmp import kmp_laplacian, n_b_operator, pure_operator
from .meanfield import mean_field_report
from .spectrum import spectra_contains, spectrum, value_to_json
from .symgroup import laplacian_zk, sn_mean_field_eigenvalue
from .weingarten import laplacian_rkm, wg_sum_identities, projection_torinv_skk, wg_table

SUITES = ("mean-field", "codim1", "kmp-equiv", "sn-containment", "weingarten", "path-example", "conjectures")

PATH_GRAPH = {"n": 3, "edges": [{"B": [1, 2], "w": "1"}, {"B": [2, 3], "w": "1"}]}
PATH_KMP1 = (Fraction(0), Fraction(1, 2), Fraction(3, 2))
PATH_PURE2 = (Fraction(2, 3), Fraction(4, 3), Fraction(2))


def path_graph(exact: bool = True) -> Hypergraph:
    return from_json(PATH_GRAPH, exact)


def _matches(spec, expected: Sequence[Fraction], tol: float) -> tuple[bool, float]:
    vals = spec.values()
    if len(vals) != len(expected):
        return False, float("inf")
    if spec.mode == "exact":
        return all(exact_cmp(v, e) == 0 for v, e in zip(vals, expected)), 0.0
    resid = max(abs(float(v) - float(e)) for v, e in zip(vals, expected))
    return resid <= tol, resid


def verify_path_example(exact: bool = True, tol: float = 1e-9) -> dict:
    g = path_graph(True)
    out = {"suite": "path-example", "mode": "exact" if exact else "float"}
    s1 = spectrum(kmp_laplacian(g, 1, exact))
    s2 = spectrum(pure_operator(g, 2, exact))
    ok1, r1 = _matches(s1, PATH_KMP1, tol)
    ok2, r2 = _matches(s2, PATH_PURE2, tol)
    out["kmp1"] = {"spectrum": s1.to_json(), "pass": ok1, "residual": r1}
    out["pure2"] = {"spectrum": s2.to_json(), "pass": ok2, "residual": r2}
    out["pass"] = ok1 and ok2
    return out


def verify_mean_field(n: int, coeffs: Sequence, exact: bool = True, k_max: int = 4, tol: float = 1e-9) -> dict:
    report = mean_field_report(n, coeffs, k_max, exact)
    out = {"suite": "mean-field", "report": report.to_json()}
    c = [Fraction(x) for x in coeffs]
    sn_value = sn_mean_field_eigenvalue(n, c)
    g = mean_field(n, c)
    kmp1 = spectrum(kmp_laplacian(g, 1, exact))
    if kmp1.mode == "exact":
        present = kmp1.multiplicity(sn_value) > 0 if any(c[2:]) else True
    else:
        present = kmp1.multiplicity(float(sn_value), tol) > 0 if any(c[2:]) else True
    out["sn_eigenvalue"] = value_to_json(sn_value)
    out["sn_in_kmp1_spectrum"] = present
    out["sn_at_least_unitary"] = sn_value >= report.formula_value
    out["pass"] = report.ok and present and out["sn_at_least_unitary"]
    return out


def verify_codim1(n: int, weights: Sequence, exact: bool = True, k_max: int = 6, tol: float = 1e-9) -> dict:
    inst = Codim1Instance.of(weights, exact)
    out: dict = {"suite": "codim1", "n": n, "weights": [value_to_json(x) for x in inst.c]}
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    spectra = {}
    mins = []
    for k in range(1, k_max + 1):
        s = m_k_spectrum(inst, k, exact)
        spectra[str(k)] = s.to_json()
        mins.append(s.min())
    out["M_k_spectra"] = spectra
    out["lambda_min"] = [value_to_json(v) for v in mins]
    connected = is_connected(inst.hypergraph())
    # omega_k = lambda_min(M_k): the extra value sum(c) is the top of every spectrum here
    ordering = parity_ordering(mins, strict=False, tol=0.0 if exact else tol)
    strict = parity_ordering(mins, strict=True, tol=0.0 if exact else tol) if connected and n >= 3 else None
    out["parity_ordering"] = ordering
    out["strict_parity_ordering"] = strict
    floor = mins[0] if len(mins) == 1 else min(mins[:2], key=float)
    out["min_of_first_two_is_global"] = all(float(m) >= float(floor) - (0 if exact else tol) for m in mins)
    checks = [ordering, strict is not False, out["min_of_first_two_is_global"]]
    if exact:
        out["pq_identities"] = list(pq_identities(inst))
        checks += out["pq_identities"]
        if n <= 5:
            out["block_identification"] = {str(k): block_identification(inst, k) for k in range(1, min(k_max, 3) + 1)}
            checks += list(out["block_identification"].values())
    if all(x == inst.c[0] for x in inst.c) and inst.c[0] == 1:
        m2, m1 = codim1_gap_closed_forms(n)
        got2, got1 = lambda_min_m_k(inst, 2, exact), lambda_min_m_k(inst, 1, exact)
        ok = abs(float(got2) - float(m2)) <= tol and abs(float(got1) - float(m1)) <= tol
        if exact:
            ok = exact_cmp(got2, m2) == 0 and exact_cmp(got1, m1) == 0
        out["closed_forms"] = {"M2": value_to_json(m2), "M1": value_to_json(m1), "pass": ok}
        checks.append(ok)
    out["pass"] = all(checks)
    return out


def verify_kmp_equiv(n: int, k: int, graph: Hypergraph | None = None, exact: bool = True, tol: float = 1e-12) -> dict:
    """Weingarten-built P_B on the torus-invariant block against N_B, for every B."""
    mismatches = []
    worst = 0.0
    for mask in range(1 << n):
        wg = projection_torinv_skk(mask, n, k, True).matrix
        nb = n_b_operator(n, k, mask, True).matrix
        if exact:
            if not bool((wg == nb).all()):
                mismatches.append([x + 1 for x in range(n) if mask >> x & 1])
        else:
            diff = float(abs(as_float(wg) - as_float(nb)).max(initial=0.0))
            worst = max(worst, diff)
            if diff > tol:
                mismatches.append([x + 1 for x in range(n) if mask >> x & 1])
    out = {"suite": "kmp-equiv", "n": n, "k": k, "subsets_checked": 1 << n, "mismatches": mismatches}
    if not exact:
        out["max_abs_difference"] = worst
    ok = not mismatches
    if graph is not None:
        if graph.n != n:
            raise ValueError(f"graph has n={graph.n}, expected {n}")
        lap = kmp_laplacian(graph.as_exact(), k, True).matrix
        total = lap * 0
        dim = lap.shape[0]
        for mask, w in graph.as_exact().items():
            p = projection_torinv_skk(mask, n, k, True).matrix
            for i in range(dim):
                total[i, i] += w
            total = total - p * w
        out["laplacian_equal"] = bool((total == lap).all())
        ok = ok and out["laplacian_equal"]
    out["pass"] = ok
    return out


def verify_sn_containment(graph: Hypergraph, k: int, exact: bool = True, tol: float = 1e-7) -> dict:
    if exact:
        graph = graph.as_exact()
    small = spectrum(laplacian_zk(graph, k, exact))
    big = spectrum(laplacian_rkm(graph, k, k, exact))
    rep = spectra_contains(small, big, tol)
    return {
        "suite": "sn-containment",
        "k": k,
        "z_k_spectrum": small.to_json(),
        "r_kk_dimension": big.dim,
        "containment": rep.to_json(),
        "pass": rep.contained,
    }


def verify_weingarten(k: int, d: int) -> dict:
    table = wg_table(k, d)
    s, signed = table.permutation_sum(), table.permutation_sum(signed=True)
    want_s, want_signed = wg_sum_identities(k, d)
    out = {
        "suite": "weingarten",
        "table": table.to_json(),
        "sum": value_to_json(s),
        "sum_expected": value_to_json(want_s),
        "signed_sum": value_to_json(signed),
        "signed_sum_expected": value_to_json(want_signed),
    }
    ok = s == want_s and signed == want_signed
    if k == 2 and d >= 2:
        ident = table((0, 1))
        swap = table((1, 0))
        closed = ident == Fraction(1, d * d - 1) and swap == Fraction(-1, d**3 - d)
        out["closed_forms"] = closed
        ok = ok and closed
    out["pass"] = ok
    return out


def verify_conjectures(graph: Hypergraph, k_max: int, exact: bool = True, tol: float = 1e-8) -> dict:
    """Replay the sweep verdicts on one stored hypergraph."""
    from .sweep import evaluate

    res = evaluate(graph.as_exact() if exact else graph.as_float(), k_max, exact, tol)
    out = {"suite": "conjectures", "k_max": k_max, "digest": graph.digest()}
    for key, val in res.items():
        if isinstance(val, list):
            out[key] = [value_to_json(v) for v in val]
        elif key == "phi":
            out[key] = value_to_json(val)
        else:
            out[key] = val
    out["pass"] = res["stable_gap"] and res["parity"] and res["phi_bound"]
    return out
