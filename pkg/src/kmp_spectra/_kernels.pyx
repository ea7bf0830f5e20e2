# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Weingarten pair-counting kernels.

Same contracts as ``_kernels_py``; arguments are converted to C int arrays
once per call and all loops run without touching Python objects.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline bint _sigma_ok(const int* rows, const int* crows, const int[:, ::1] perms,
                           Py_ssize_t s, Py_ssize_t ell) noexcept nogil:
    cdef Py_ssize_t t
    for t in range(ell):
        if rows[t] != crows[perms[s, t]]:
            return False
    return True


cdef void _accumulate(const int* rows, const int* cols, const int* crows, const int* ccols,
                      Py_ssize_t ell, const int[:, ::1] perms, const int[:, ::1] table,
                      long long* counts, int* sig_buf, int* tau_buf) noexcept nogil:
    cdef Py_ssize_t nperm = perms.shape[0]
    cdef Py_ssize_t s, a, b, ns = 0, nt = 0
    for s in range(nperm):
        if _sigma_ok(rows, crows, perms, s, ell):
            sig_buf[ns] = <int>s
            ns += 1
    if ns == 0:
        return
    for s in range(nperm):
        if _sigma_ok(cols, ccols, perms, s, ell):
            tau_buf[nt] = <int>s
            nt += 1
    for a in range(nt):
        for b in range(ns):
            counts[table[tau_buf[a], sig_buf[b]]] += 1


def monomial_class_counts(rows, cols, crows, ccols, perms, class_table, Py_ssize_t nclass):
    cdef int[::1] r = np.ascontiguousarray(rows, dtype=np.intc)
    cdef int[::1] c = np.ascontiguousarray(cols, dtype=np.intc)
    cdef int[::1] cr = np.ascontiguousarray(crows, dtype=np.intc)
    cdef int[::1] cc = np.ascontiguousarray(ccols, dtype=np.intc)
    cdef int[:, ::1] p = np.ascontiguousarray(perms, dtype=np.intc).reshape(len(perms), -1)
    cdef int[:, ::1] tab = np.ascontiguousarray(class_table, dtype=np.intc).reshape(len(perms), len(perms))
    cdef Py_ssize_t ell = r.shape[0]
    cdef Py_ssize_t nperm = p.shape[0]
    out = np.zeros(nclass, dtype=np.longlong)
    cdef long long[::1] counts = out
    cdef int* sig_buf = <int*> malloc(nperm * sizeof(int))
    cdef int* tau_buf = <int*> malloc(nperm * sizeof(int))
    try:
        if ell == 0:
            counts[tab[0, 0]] += 1
        else:
            _accumulate(&r[0], &c[0], &cr[0], &cc[0], ell, p, tab, &counts[0], sig_buf, tau_buf)
    finally:
        free(sig_buf)
        free(tau_buf)
    return [int(x) for x in out]


def torinv_class_counts(arr_out, arr_in, in_b, perms, class_table, Py_ssize_t nclass):
    cdef int[:, ::1] ao = np.ascontiguousarray(arr_out, dtype=np.intc)
    cdef int[:, ::1] ai = np.ascontiguousarray(arr_in, dtype=np.intc)
    cdef unsigned char[::1] mask = np.ascontiguousarray(in_b, dtype=np.uint8)
    cdef int[:, ::1] p = np.ascontiguousarray(perms, dtype=np.intc).reshape(len(perms), -1)
    cdef int[:, ::1] tab = np.ascontiguousarray(class_table, dtype=np.intc).reshape(len(perms), len(perms))
    cdef Py_ssize_t k = ao.shape[1]
    cdef Py_ssize_t no = ao.shape[0], ni = ai.shape[0], nperm = p.shape[0]
    cdef Py_ssize_t x, y, t, ell, nred = 0, u, v
    cdef int av, bv
    cdef bint ok
    out = np.zeros(nclass, dtype=np.longlong)
    cdef long long[::1] counts = out
    # reduced (rows, cols) per surviving (a, a') pair, packed with stride k
    cdef int* red_rows = <int*> malloc(no * ni * k * sizeof(int) + sizeof(int))
    cdef int* red_cols = <int*> malloc(no * ni * k * sizeof(int) + sizeof(int))
    cdef int* red_len = <int*> malloc(no * ni * sizeof(int) + sizeof(int))
    cdef int* sig_buf = <int*> malloc(nperm * sizeof(int))
    cdef int* tau_buf = <int*> malloc(nperm * sizeof(int))
    try:
        with nogil:
            for x in range(no):
                for y in range(ni):
                    ok = True
                    ell = 0
                    for t in range(k):
                        av = ao[x, t]
                        bv = ai[y, t]
                        if mask[av] and mask[bv]:
                            red_rows[nred * k + ell] = av
                            red_cols[nred * k + ell] = bv
                            ell += 1
                        elif av != bv:
                            ok = False
                            break
                    if ok:
                        red_len[nred] = <int>ell
                        nred += 1
            for u in range(nred):
                for v in range(nred):
                    if red_len[u] != red_len[v]:
                        continue
                    if red_len[u] == 0:
                        counts[tab[0, 0]] += 1
                        continue
                    _accumulate(&red_rows[u * k], &red_cols[u * k],
                                &red_rows[v * k], &red_cols[v * k],
                                red_len[u], p, tab, &counts[0], sig_buf, tau_buf)
    finally:
        free(red_rows)
        free(red_cols)
        free(red_len)
        free(sig_buf)
        free(tau_buf)
    return [int(x) for x in out]
