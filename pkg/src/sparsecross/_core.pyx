# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: weighted index enumeration, CSR matvec, level sums.

Semantics must match :mod:`sparsecross._fallback` exactly; tests compare the
two backends on shared inputs.
"""

from libc.math cimport lgamma, log, exp, INFINITY

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


cdef struct _EnumCtx:
    double *logb
    double *log_suffix
    double *lgam
    int *exps
    int nslots
    double log_thresh


cdef void _rec(_EnumCtx *ctx, int i, int r, double log_acc, list out):
    cdef int e
    cdef double lb
    if r == 0:
        if log_acc >= ctx.log_thresh:
            out.append((log_acc, tuple([ctx.exps[j] for j in range(ctx.nslots)])))
        return
    if i == ctx.nslots:
        return
    if log_acc + r * ctx.log_suffix[i] - ctx.lgam[r] < ctx.log_thresh:
        return
    lb = ctx.logb[i]
    for e in range(r, -1, -1):
        ctx.exps[i] = e
        _rec(ctx, i + 1, r - e, log_acc + e * lb - ctx.lgam[e], out)
    ctx.exps[i] = 0


def enumerate_weighted_indexes(logb, suffix_l1, double log_thresh, int max_level):
    """See _fallback.enumerate_weighted_indexes."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] logb_arr = \
        np.ascontiguousarray(logb, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] suffix_arr = \
        np.ascontiguousarray(suffix_l1, dtype=np.float64)
    cdef int nslots = logb_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] log_suffix = np.empty(nslots)
    cdef int i
    for i in range(nslots):
        log_suffix[i] = log(suffix_arr[i]) if suffix_arr[i] > 0.0 else -INFINITY
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lgam = np.empty(max_level + 1)
    for i in range(max_level + 1):
        lgam[i] = lgamma(i + 1.0)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] exps = np.zeros(nslots, dtype=np.int32)

    cdef _EnumCtx ctx
    ctx.logb = &logb_arr[0] if nslots > 0 else NULL
    ctx.log_suffix = &log_suffix[0] if nslots > 0 else NULL
    ctx.lgam = &lgam[0]
    ctx.exps = <int *> &exps[0] if nslots > 0 else NULL
    ctx.nslots = nslots
    ctx.log_thresh = log_thresh

    out: list = []
    cdef int level
    for level in range(max_level + 1):
        _rec(&ctx, 0, level, lgam[level], out)
    return out


def csr_matvec(indptr, indices, data, x):
    """y = A @ x for a CSR matrix; row sums run left to right."""
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ip = \
        np.ascontiguousarray(indptr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ix = \
        np.ascontiguousarray(indices, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dv = \
        np.ascontiguousarray(data, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xv = \
        np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.zeros(n)
    cdef Py_ssize_t row, t
    cdef double acc
    for row in range(n):
        acc = 0.0
        for t in range(ip[row], ip[row + 1]):
            acc += dv[t] * xv[ix[t]]
        y[row] = acc
    return y


def level_sums_pth_power(x, double p, int max_level):
    """See _fallback.level_sums_pth_power."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = \
        np.ascontiguousarray(x, dtype=np.float64)
    cdef int n = max_level + 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lgam = np.empty(n)
    cdef int i, t, u
    for i in range(n):
        lgam[i] = lgamma(i + 1.0)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] new = np.empty(n)
    s[0] = 1.0
    cdef double xj, log_xj, acc
    cdef Py_ssize_t j
    for j in range(xs.shape[0]):
        xj = xs[j]
        if xj == 0.0:
            continue
        log_xj = log(xj)
        for t in range(n):
            acc = 0.0
            for u in range(t + 1):
                acc += exp(p * (lgam[t] - lgam[u] - lgam[t - u] + u * log_xj)) \
                    * s[t - u]
            new[t] = acc
        s[:] = new[:]
    return np.asarray(s).copy()
