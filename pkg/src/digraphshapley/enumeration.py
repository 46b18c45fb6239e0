import logging

import numpy as np
from numba import njit, prange

from .kernel import IsUndominated

logger = logging.getLogger(__name__)


@njit
def EnumerateBranch(out_edges, in_edges, values, first):
    """Walks every consistent entry order that starts with player `first`, summing marginal contribution vectors.

    Backtracking over prefixes: a player may enter the entered set S only if it is undominated in the
    restriction to S plus itself, so every completed prefix is a consistent order and every consistent
    order is reached. Candidates are tried in increasing order, so orders are visited lexicographically.

    Arguments:
    out_edges -- shape (n,) int64 array of out-neighbour masks
    in_edges -- shape (n,) int64 array of in-neighbour masks
    values -- shape (2**n,) float64 game table
    first -- 0-based index of the player entering first

    Returns:
    total -- shape (n,) array, sum of marginal vectors over the branch
    count -- number of consistent orders in the branch
    """
    n = out_edges.shape[0]
    total = np.zeros(n)
    count = 0
    sequence = np.empty(n, dtype=np.int64)
    next_candidate = np.zeros(n + 1, dtype=np.int64)
    prefix = np.zeros(n + 1, dtype=np.int64)
    # a lone player is never dominated
    sequence[0] = first
    prefix[1] = 1 << first
    depth = 1
    while depth > 0:
        if depth == n:
            count += 1
            for t in range(n):
                total[sequence[t]] += values[prefix[t + 1]] - values[prefix[t]]
            depth -= 1
            continue
        S = prefix[depth]
        i = next_candidate[depth]
        while i < n:
            if not (S >> i) & 1 and IsUndominated(out_edges, in_edges, S | (1 << i), i):
                break
            i += 1
        if i < n:
            sequence[depth] = i
            next_candidate[depth] = i + 1
            prefix[depth + 1] = S | (1 << i)
            next_candidate[depth + 1] = 0
            depth += 1
        else:
            next_candidate[depth] = 0
            depth -= 1
    return total, count


def EnumerateShapley(out_edges, in_edges, values):
    """Sums marginal contribution vectors over all consistent entry orders, one branch per first player.

    Returns:
    totals -- shape (n, n) array; row f holds the branch sum for first player f
    counts -- shape (n,) int64 array of branch sizes
    """
    n = out_edges.shape[0]
    totals = np.zeros((n, n))
    counts = np.zeros(n, dtype=np.int64)
    for first in prange(n):
        total, count = EnumerateBranch(out_edges, in_edges, values, first)
        totals[first, :] = total
        counts[first] = count
    return totals, counts

# JIT this function and its parallel version
EnumerateShapley_parallel = njit(EnumerateShapley, parallel=True)
EnumerateShapley = njit(EnumerateShapley)


def enumerate_shapley(values, g, parallel=False):
    """Returns (allocation, permutation_count) by walking every consistent entry order.

    Arguments:
    values -- shape (2**n,) float64 game table
    g -- unrestricted Digraph

    Optional arguments:
    parallel -- If True, will parallelize over the first entering player. (default False)
    """
    if parallel:
        totals, counts = EnumerateShapley_parallel(g.out_edges, g.in_edges, values)
    else:
        totals, counts = EnumerateShapley(g.out_edges, g.in_edges, values)
    count = 0
    total = np.zeros(g.n)
    for first in range(g.n):  # fixed reduction order
        count += int(counts[first])
        total += totals[first]
    logger.debug("enumerated %d consistent orders on %d players", count, g.n)
    if count == 0:
        return total, 0
    return total / count, count
