"""Backend selection for the Weingarten pair-counting kernels.

The compiled extension ``_kernels`` is used when it was built; otherwise, or
when ``KMP_SPECTRA_PURE_PYTHON=1`` is set, the pure-Python twin is used.
Both return identical integer counts.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import _kernels_py
from .combinatorics import cycle_partition, partitions_of, permutations_of

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("KMP_SPECTRA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"


@lru_cache(maxsize=None)
def class_tables(ell: int):
    """Permutations of Sym(ell) and the class index of p_a * p_b^-1.

    Class indices follow ``partitions_of(ell)`` order.
    """
    perms = permutations_of(ell)
    classes = {p.parts: i for i, p in enumerate(partitions_of(ell))}
    inverse = [tuple(sorted(range(ell), key=lambda t: p[t])) for p in perms]
    table = [
        [classes[cycle_partition(tuple(a[binv[t]] for t in range(ell))).parts] for binv in inverse]
        for a in perms
    ]
    if BACKEND == "compiled" and ell > 0:
        return (
            np.array(perms, dtype=np.intc),
            np.array(table, dtype=np.intc),
            len(classes),
        )
    return perms, table, len(classes)


def monomial_class_counts(rows, cols, crows, ccols) -> list[int]:
    ell = len(rows)
    perms, table, nclass = class_tables(ell)
    if ell == 0:
        return [1]
    return list(_impl.monomial_class_counts(rows, cols, crows, ccols, perms, table, nclass))


def torinv_class_counts(arr_out, arr_in, in_b, ell: int) -> list[int]:
    perms, table, nclass = class_tables(ell)
    if ell == 0:
        survivors = sum(
            1
            for a in arr_out
            for a2 in arr_in
            if all(x == y for x, y in zip(a, a2))
        )
        return [survivors * survivors]
    if BACKEND == "compiled":
        return list(
            _impl.torinv_class_counts(
                np.array(arr_out, dtype=np.intc),
                np.array(arr_in, dtype=np.intc),
                np.array(in_b, dtype=np.uint8),
                perms,
                table,
                nclass,
            )
        )
    return list(_impl.torinv_class_counts(arr_out, arr_in, in_b, perms, table, nclass))
