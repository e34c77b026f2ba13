"""Pure numpy/Python implementations of the hot kernels.

These mirror ``_core`` (the Cython extension) exactly; the active backend is
picked in :mod:`sparsecross.kernels`.  Keep both implementations in lockstep.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"


def enumerate_weighted_indexes(logb, suffix_l1, log_thresh, max_level):
    """Enumerate exponent vectors s (over ``len(logb)`` slots) with
    log w(s) >= log_thresh, level by level up to ``max_level``.

    ``logb[i]`` is ln b at slot i (slots sorted by descending b), and
    ``suffix_l1[i]`` is sum of b over slots >= i.  A partial assignment with
    remaining degree r at slot i is abandoned when even the aggregated mass
    of all its completions,

        (M!/s_partial!) * b**s_partial * suffix_l1[i]**r / r!,

    falls below the threshold; this dominates every single completion.
    Returns a list of (log_w, exponent tuple) pairs.
    """
    logb = np.asarray(logb, dtype=np.float64)
    suffix = np.asarray(suffix_l1, dtype=np.float64)
    nslots = logb.shape[0]
    log_suffix = np.full(nslots, -np.inf)
    pos = suffix[:nslots] > 0.0
    log_suffix[pos] = np.log(suffix[:nslots][pos])

    lgam = [math.lgamma(i + 1) for i in range(max_level + 1)]
    out = []
    exps = [0] * nslots

    def rec(i: int, r: int, log_acc: float) -> None:
        if r == 0:
            if log_acc >= log_thresh:
                out.append((log_acc, tuple(exps)))
            return
        if i == nslots:
            return
        if log_acc + r * log_suffix[i] - lgam[r] < log_thresh:
            return
        lb = logb[i]
        for e in range(r, -1, -1):
            exps[i] = e
            rec(i + 1, r - e, log_acc + e * lb - lgam[e])
        exps[i] = 0

    for level in range(max_level + 1):
        rec(0, level, lgam[level])
    return out


def csr_matvec(indptr, indices, data, x):
    """y = A @ x for a CSR matrix; row sums run left to right."""
    indptr = np.asarray(indptr)
    products = np.asarray(data) * np.asarray(x)[np.asarray(indices)]
    y = np.zeros(indptr.shape[0] - 1)
    starts = indptr[:-1]
    nonempty = indptr[1:] > starts
    if products.size:
        sums = np.add.reduceat(products, np.minimum(starts, products.size - 1))
        y[nonempty] = sums[nonempty]
    return y


def level_sums_pth_power(x, p, max_level):
    """S[M] = sum over exponent vectors s with |s|_1 = M of
    ((M!/s!) * prod_j x_j^{s_j})**p, for M = 0..max_level.

    Computed by absorbing one coordinate at a time:
        S_new[t] = sum_u C(t,u)**p * x_j**(p*u) * S_old[t-u],
    which keeps every intermediate a partial level sum (all terms positive).
    """
    x = np.asarray(x, dtype=np.float64)
    n = max_level + 1
    lgam = np.array([math.lgamma(i + 1) for i in range(n)])
    s = np.zeros(n)
    s[0] = 1.0
    for xj in x:
        if xj == 0.0:
            continue
        with np.errstate(divide="ignore"):
            log_xj = math.log(xj)
        new = np.empty(n)
        for t in range(n):
            u = np.arange(t + 1)
            logc = p * (lgam[t] - lgam[u] - lgam[t - u] + u * log_xj)
            new[t] = float(np.sum(np.exp(logc) * s[t - u]))
        s = new
    return s
