# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled enumeration kernel.

Mirrors credence._kernel_py.weighted_marginal operation-for-operation; see
that module for the determinism contract.  Must be compiled with
-ffp-contract=off so products and sums round exactly like CPython floats.
"""

from libc.stdlib cimport free, malloc


def weighted_marginal(
    int[::1] cards,
    int[::1] name_order,
    int[::1] par_flat,
    long long[::1] par_off,
    int[::1] par_len,
    double[::1] cpt_flat,
    long long[::1] cpt_off,
    double[::1] wt_flat,
    long long[::1] wt_off,
    unsigned char[::1] has_wt,
    int[::1] query,
    double[::1] out_sums,
):
    """Fill ``out_sums`` (pre-zeroed, first query variable slowest); return the total."""
    cdef Py_ssize_t n = cards.shape[0]
    cdef Py_ssize_t nq = query.shape[0]
    cdef Py_ssize_t k, j
    cdef int i, p, q
    cdef long long row, g
    cdef double w
    cdef double total = 0.0

    cdef int* s = <int*> malloc(n * sizeof(int))
    if s == NULL:
        raise MemoryError()
    for k in range(n):
        s[k] = 0

    try:
        while True:
            w = 1.0
            for k in range(n):
                i = name_order[k]
                row = 0
                for j in range(par_off[i], par_off[i] + par_len[i]):
                    p = par_flat[j]
                    row = row * cards[p] + s[p]
                w = w * cpt_flat[cpt_off[i] + row * cards[i] + s[i]]
            for k in range(n):
                i = name_order[k]
                if has_wt[i]:
                    w = w * wt_flat[wt_off[i] + s[i]]
            total += w
            g = 0
            for k in range(nq):
                q = query[k]
                g = g * cards[q] + s[q]
            out_sums[g] += w

            # odometer increment, last declared variable fastest
            k = n - 1
            while k >= 0:
                s[k] += 1
                if s[k] < cards[k]:
                    break
                s[k] = 0
                k -= 1
            if k < 0:
                break
    finally:
        free(s)
    return total
