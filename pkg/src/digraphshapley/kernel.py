import numpy as np
from numba import njit

# Coalitions are int64 bitmasks: bit p-1 is set iff player p is a member.
# out_edges[p] / in_edges[p] hold the direct out-/in-neighbours of player p+1.


@njit
def ReachMask(edges, S, i):
    """Returns the players of S, other than i, reachable from i by a directed path inside the restriction to S.

    Arguments:
    edges -- shape (n,) int64 array of neighbour masks; pass in_edges instead of out_edges to get the players that reach i
    S -- coalition mask, must contain i
    i -- 0-based player index
    """
    n = edges.shape[0]
    reached = 0
    frontier = edges[i] & S
    while frontier:
        reached |= frontier
        expanded = 0
        for j in range(n):
            if (frontier >> j) & 1:
                expanded |= edges[j]
        frontier = expanded & S & ~reached
    return reached & ~(1 << i)


@njit
def Dominates(out_edges, in_edges, S, i, j):
    """True if player i reaches player j inside the restriction to S but j does not reach i (0-based indices)."""
    reach_i = ReachMask(out_edges, S, i)
    if not (reach_i >> j) & 1:
        return False
    return not (ReachMask(in_edges, S, i) >> j) & 1


@njit
def IsUndominated(out_edges, in_edges, S, i):
    """True if no player of S dominates i in the restriction to S.

    Every player that reaches i must also be reached from i, i.e. the predecessors of i are a subset of its successors.
    """
    predecessors = ReachMask(in_edges, S, i)
    if predecessors == 0:
        return True
    successors = ReachMask(out_edges, S, i)
    return (predecessors & ~successors) == 0


@njit
def UndominatedMask(out_edges, in_edges, S):
    """Returns the mask of players of S that are undominated in the restriction to S."""
    n = out_edges.shape[0]
    undominated = 0
    for i in range(n):
        if (S >> i) & 1 and IsUndominated(out_edges, in_edges, S, i):
            undominated |= 1 << i
    return undominated


def coalition_sizes(n):
    """Returns shape (2**n,) int64 array holding the cardinality of every coalition mask."""
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.zeros(1 << n, dtype=np.int64)
    for bit in range(n):
        sizes += (masks >> bit) & 1
    return sizes
