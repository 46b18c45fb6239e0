from itertools import permutations

import numpy as np

from .permutations import is_consistent, marginal_vector


def Shapley_bruteforce(v, g):
    """Returns the exact Shapley value of the digraph game (v, g) by checking every one of the n! entry orders.

    Each order is tested with is_consistent (dense closure per prefix) and the marginal vectors of the
    consistent ones are averaged. Shares no traversal code with the enumeration or subset DP engines,
    so it serves as an independent reference.

    Arguments:
    v -- CharacteristicFunction on n players
    g -- Digraph on the same n players

    Returns:
    allocation -- shape (n,) array of payoffs, index p-1 for player p
    count -- number of consistent orders
    """
    total = np.zeros(v.n)
    count = 0
    for order in permutations(range(1, v.n + 1)):
        if is_consistent(g, order):
            total += marginal_vector(v, order)
            count += 1
    if count == 0:
        return total, 0
    return total / count, count
