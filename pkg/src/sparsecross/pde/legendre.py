"""Orthonormal Legendre polynomials under the uniform measure on [-1, 1]."""

from __future__ import annotations

import math

import numpy as np

from ..multiindex import MultiIndex


def legendre_coupling(n: int) -> tuple[float, float]:
    """Coefficients in y * Lhat_n = c_upper Lhat_{n+1} + c_lower Lhat_{n-1}.

    Lhat_n = sqrt(2n+1) P_n is orthonormal for the uniform probability
    measure on [-1, 1]; the three-term recurrence for P_n gives

        c_lower(n) = n / sqrt((2n - 1)(2n + 1)),   c_lower(0) = 0,
        c_upper(n) = (n + 1) / sqrt((2n + 1)(2n + 3)).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    c_lower = 0.0 if n == 0 else n / math.sqrt((2 * n - 1) * (2 * n + 1))
    c_upper = (n + 1) / math.sqrt((2 * n + 1) * (2 * n + 3))
    return c_lower, c_upper


def legendre_values(nmax: int, y) -> np.ndarray:
    """Table of Lhat_n(y) for n = 0..nmax; shape (len(y), nmax + 1)."""
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    out = np.empty((y.shape[0], nmax + 1))
    p_prev = np.ones_like(y)
    out[:, 0] = p_prev
    if nmax == 0:
        return out
    p_cur = y.copy()
    out[:, 1] = math.sqrt(3.0) * p_cur
    for n in range(1, nmax):
        p_next = ((2 * n + 1) * y * p_cur - n * p_prev) / (n + 1)
        out[:, n + 1] = math.sqrt(2 * n + 3) * p_next
        p_prev, p_cur = p_cur, p_next
    return out


def tensor_legendre_values(s_list: list[MultiIndex], y_nodes: np.ndarray
                           ) -> np.ndarray:
    """Matrix of Lhat_s(y_q) for the given indices; shape (Q, len(s_list)).

    ``y_nodes`` has shape (Q, J); indices must be supported within 1..J.
    """
    y_nodes = np.atleast_2d(np.asarray(y_nodes, dtype=np.float64))
    q, j_dims = y_nodes.shape
    nmax = max((e for s in s_list for _, e in s.entries), default=0)
    tables = [legendre_values(nmax, y_nodes[:, j]) for j in range(j_dims)]
    out = np.ones((q, len(s_list)))
    for col, s in enumerate(s_list):
        for dim, exp in s.entries:
            if dim > j_dims:
                raise ValueError(
                    f"index {s} uses dimension {dim} beyond the {j_dims} "
                    "parametric dimensions")
            out[:, col] *= tables[dim - 1][:, exp]
    return out


def gauss_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights for the uniform probability measure."""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights / 2.0
