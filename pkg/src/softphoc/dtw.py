"""Dynamic time warping between channel-distribution sequences."""

import numpy as np

from .errors import EmptySequence, ShapeMismatch

NORM_EPS = 1e-12


def cosine_cost_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise local costs 1 - cos(u, v); cost 1 where a vector has
    (near-)zero norm."""
    na = np.linalg.norm(a, axis=1)
    nb = np.linalg.norm(b, axis=1)
    denom = np.outer(np.maximum(na, NORM_EPS), np.maximum(nb, NORM_EPS))
    cost = 1.0 - (a @ b.T) / denom
    cost[na < NORM_EPS, :] = 1.0
    cost[:, nb < NORM_EPS] = 1.0
    return np.maximum(cost, 0.0)


def dtw_distance(a, b) -> float:
    """Normalized DTW distance between two descriptor sequences.

    Classic dynamic program over the |a| x |b| grid with the moves
    (i-1, j), (i, j-1) and (i-1, j-1); the accumulated cost of the
    optimal monotone alignment is divided by (|a| + |b|) so scores are
    comparable across sequence lengths. Symmetric in its arguments.

    The recurrence is evaluated along anti-diagonals so each wavefront
    is a vectorized update instead of a per-cell Python loop.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] == 0 or b.shape[0] == 0:
        raise EmptySequence("both sequences need at least one sample")
    if a.shape[1] != b.shape[1]:
        raise ShapeMismatch(f"channel counts differ: {a.shape[1]} vs {b.shape[1]}")

    cost = cosine_cost_matrix(a, b)
    n, m = cost.shape
    rows = np.arange(n)

    prev1 = np.full(n, np.inf)  # diagonal k-1, indexed by row i
    prev2 = np.full(n, np.inf)  # diagonal k-2
    prev1[0] = cost[0, 0]
    for k in range(1, n + m - 1):
        i_lo = max(0, k - m + 1)
        i_hi = min(k, n - 1)
        idx = rows[i_lo:i_hi + 1]
        local = cost[idx, k - idx]

        best = prev1[i_lo:i_hi + 1].copy()  # move (i, j-1)
        shifted = prev1[i_lo - 1:i_hi] if i_lo >= 1 else np.concatenate(
            ([np.inf], prev1[:i_hi]))
        np.minimum(best, shifted, out=best)  # move (i-1, j)
        shifted = prev2[i_lo - 1:i_hi] if i_lo >= 1 else np.concatenate(
            ([np.inf], prev2[:i_hi]))
        np.minimum(best, shifted, out=best)  # move (i-1, j-1)

        cur = np.full(n, np.inf)
        cur[i_lo:i_hi + 1] = local + best
        prev2, prev1 = prev1, cur
    return float(prev1[n - 1]) / (n + m)
