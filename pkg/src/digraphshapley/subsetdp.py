import logging
from fractions import Fraction

import numpy as np
from numba import njit, prange

from .errors import InternalError
from .kernel import UndominatedMask

logger = logging.getLogger(__name__)


def UndominatedTable(out_edges, in_edges):
    """Returns the undominated set of every coalition.

    Arguments:
    out_edges -- shape (n,) int64 array of out-neighbour masks
    in_edges -- shape (n,) int64 array of in-neighbour masks

    Returns:
    shape (2**n,) int64 array; entry S is the mask of players undominated in the restriction to S (0 for S = 0)
    """
    n = out_edges.shape[0]
    size = 1 << n
    table = np.zeros(size, dtype=np.int64)
    for S in prange(1, size):
        table[S] = UndominatedMask(out_edges, in_edges, S)
    return table

# JIT this function and its parallel version
UndominatedTable_parallel = njit(UndominatedTable, parallel=True)
UndominatedTable = njit(UndominatedTable)


@njit
def PrefixCounts(undominated, n):
    """Returns c with c[S] = number of consistent ways to enter exactly the players of S, in any order.

    c[0] = 1 and c[S] = sum of c[S - {i}] over the players i undominated in the restriction to S.
    """
    size = 1 << n
    counts = np.zeros(size, dtype=np.int64)
    counts[0] = 1
    for S in range(1, size):
        total = 0
        entering = undominated[S]
        for i in range(n):
            if (entering >> i) & 1:
                total += counts[S ^ (1 << i)]
        counts[S] = total
    return counts


@njit
def SuffixCounts(undominated, n, grand):
    """Returns d with d[T] = number of consistent completions of an entered set T up to the coalition grand.

    d[grand] = 1 and d[T] = sum of d[T + {j}] over the players j of grand - T undominated in the restriction to T + {j}.
    Entries for masks that are not subsets of grand are left at 0.
    """
    size = 1 << n
    counts = np.zeros(size, dtype=np.int64)
    counts[grand] = 1
    for T in range(grand - 1, -1, -1):
        if T & ~grand:
            continue
        total = 0
        for j in range(n):
            bit = 1 << j
            if (grand & bit) and not (T & bit) and (undominated[T | bit] >> j) & 1:
                total += counts[T | bit]
        counts[T] = total
    return counts


def SubsetShapley(undominated, prefix, suffix, values, n):
    """Returns the Shapley allocation from the prefix and suffix counts.

    Player i is credited v(S + {i}) - v(S) once per consistent order that enters S and then i,
    i.e. prefix[S] * suffix[S + {i}] times. Each product counts a subset of the consistent orders,
    so it never exceeds prefix[grand]. Weights are normalised before multiplying the marginal.

    Arguments:
    undominated -- undominated set of every coalition, from UndominatedTable
    prefix -- from PrefixCounts
    suffix -- from SuffixCounts with the grand coalition
    values -- shape (2**n,) float64 game table

    Returns:
    shape (n,) array of payoffs, index p-1 for player p
    """
    size = 1 << n
    total_count = prefix[size - 1]
    allocation = np.zeros(n)
    for i in prange(n):
        bit = 1 << i
        acc = 0.
        for S in range(size):
            if S & bit:
                continue
            T = S | bit
            if (undominated[T] >> i) & 1:
                weight = prefix[S] * suffix[T]
                if weight != 0:
                    acc += (weight / total_count) * (values[T] - values[S])
        allocation[i] = acc
    return allocation

# JIT this function and its parallel version; every player's sum runs in a fixed mask order
SubsetShapley_parallel = njit(SubsetShapley, parallel=True)
SubsetShapley = njit(SubsetShapley)


def subset_tables(g, parallel=False):
    """Returns (undominated, prefix, suffix) tables for a digraph.

    Arguments:
    g -- Digraph; the suffix counts complete up to g's players

    Optional arguments:
    parallel -- If True, builds the undominated table over all available cores (default False)
    """
    if parallel:
        undominated = UndominatedTable_parallel(g.out_edges, g.in_edges)
    else:
        undominated = UndominatedTable(g.out_edges, g.in_edges)
    prefix = PrefixCounts(undominated, g.n)
    suffix = SuffixCounts(undominated, g.n, g.players)
    if prefix[g.players] <= 0 or suffix[0] != prefix[g.players]:
        raise InternalError("consistent permutation counts are inconsistent: c(N)=%d, d(empty)=%d"
                            % (prefix[g.players], suffix[0]))
    return undominated, prefix, suffix


def subset_shapley(values, g, parallel=False):
    """Returns (allocation, permutation_count) computed by the subset DP.

    Arguments:
    values -- shape (2**n,) float64 game table
    g -- unrestricted Digraph

    Optional arguments:
    parallel -- If True, will parallelize over all available cores. (default False)
    """
    undominated, prefix, suffix = subset_tables(g, parallel=parallel)
    if parallel:
        allocation = SubsetShapley_parallel(undominated, prefix, suffix, values, g.n)
    else:
        allocation = SubsetShapley(undominated, prefix, suffix, values, g.n)
    count = int(prefix[g.players])
    logger.debug("subset DP on %d players: %d consistent orders", g.n, count)
    return allocation, count


def exact_subset_shapley(exact_values, g):
    """Returns the allocation as Fractions, using Python integers throughout.

    Arguments:
    exact_values -- list of 2**n integer payoffs indexed by coalition mask
    g -- unrestricted Digraph
    """
    undominated, prefix, suffix = subset_tables(g)
    undominated = undominated.tolist()
    prefix = prefix.tolist()
    suffix = suffix.tolist()
    size = 1 << g.n
    total_count = prefix[size - 1]
    allocation = []
    for i in range(g.n):
        bit = 1 << i
        numerator = 0
        for S in range(size):
            if S & bit:
                continue
            T = S | bit
            if (undominated[T] >> i) & 1:
                numerator += prefix[S] * suffix[T] * (exact_values[T] - exact_values[S])
        allocation.append(Fraction(numerator, total_count))
    return tuple(allocation)
