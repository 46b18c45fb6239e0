"""Entry orders, consistency with a digraph, and enumeration/counting of consistent orders.

An entry order lists players in the order they enter: order[t-1] enters at step t. It is
consistent with a digraph if every entering player is undominated among the players already
entered plus itself.
"""

import logging
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatchError, InternalError, PermutationError
from .subsetdp import PrefixCounts, UndominatedTable

__all__ = ["EntryOrder", "PrefixSets", "make_entry_order", "position", "prefix_sets", "is_consistent",
           "enumerate_consistent", "count_consistent", "marginal_vector", "cycle_orders"]

logger = logging.getLogger(__name__)


class PrefixSets(NamedTuple):
    before: int  # mask of players entering strictly before i
    with_i: int  # before plus i


class EntryOrder(tuple):
    """Permutation of players given as the sequence in which they enter. Compares like a plain tuple."""

    __slots__ = ()

    def position(self, i):
        """1-based step at which player i enters."""
        try:
            return self.index(i) + 1
        except ValueError:
            raise PermutationError("player %r does not appear in %s" % (i, list(self)), field="i")

    def prefix_sets(self, i):
        t = self.position(i)
        before = 0
        for p in self[:t - 1]:
            before |= 1 << (p - 1)
        return PrefixSets(before, before | (1 << (i - 1)))

    def prefix_masks(self):
        """Returns the n+1 masks of the players entered after 0, 1, ..., n steps."""
        masks = [0]
        for p in self:
            masks.append(masks[-1] | (1 << (p - 1)))
        return masks

    def __repr__(self):
        return "EntryOrder(%s)" % list(self)


def make_entry_order(sequence, n=None, players=None):
    """Validates a sequence of 1-based player ids as a permutation and returns it as an EntryOrder.

    Arguments:
    sequence -- iterable of player ids in entry order

    Optional arguments:
    n -- the sequence must be a permutation of 1..n
    players -- ascending tuple of player ids the sequence must permute (overrides n)
    """
    try:
        items = list(sequence)
    except TypeError:
        raise PermutationError("expected a sequence of player ids", field="order")
    for p in items:
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise PermutationError("expected integer player ids, got %r" % (p,), field="order")
    items = [int(p) for p in items]
    if players is None:
        players = tuple(range(1, (len(items) if n is None else n) + 1))
    if tuple(sorted(items)) != tuple(players):
        raise PermutationError("%s is not a permutation of %s" % (items, list(players)), field="order")
    return EntryOrder(items)


def position(order, i):
    return order.position(i)


def prefix_sets(order, i):
    return order.prefix_sets(i)


def _closure(adjacency):
    """Reflexive-free transitive closure of a dense boolean adjacency matrix (Warshall)."""
    reach = adjacency.copy()
    for k in range(reach.shape[0]):
        reach |= reach[:, k:k + 1] & reach[k:k + 1, :]
    return reach


def is_consistent(g, order):
    """True if every player in the order is undominated within the restriction to the players entered so far plus itself.

    Dominance is evaluated on a dense closure of each prefix restriction, independently of the bitmask kernels
    used by enumerate_consistent, count_consistent and the Shapley engines.

    Arguments:
    g -- Digraph (or a restriction of one)
    order -- sequence of the graph's players in entry order
    """
    order = make_entry_order(order, players=g.player_ids)
    adjacency = g.adjacency_matrix()
    index = np.array(order, dtype=np.int64) - 1
    for t in range(1, len(order)):
        members = index[:t + 1]
        reach = _closure(adjacency[np.ix_(members, members)])
        entering = t
        # some earlier j reaches the entering player without being reached back
        if np.any(reach[:entering, entering] & ~reach[entering, :entering]):
            return False
    return True


def enumerate_consistent(g):
    """Yields every entry order consistent with g exactly once, in lexicographic order.

    Forward backtracking: a prefix that entered S is extended by any player i not in S that is
    undominated in the restriction to S + {i}. Undominated sets are memoised per coalition since
    they do not depend on the order S was entered in.

    Arguments:
    g -- Digraph (or a restriction of one; orders then permute its players)

    Yields:
    EntryOrder instances
    """
    players = g.player_ids
    n = len(players)
    memo = {}
    sequence = []

    def undominated(S):
        if S not in memo:
            memo[S] = g._undominated(S)
        return memo[S]

    def extend(S):
        if len(sequence) == n:
            yield EntryOrder(sequence)
            return
        for p in players:
            bit = 1 << (p - 1)
            if S & bit or not undominated(S | bit) & bit:
                continue
            sequence.append(p)
            yield from extend(S | bit)
            sequence.pop()

    yield from extend(0)


def count_consistent(g):
    """Returns the exact number of entry orders consistent with g, by the prefix-count subset DP.

    c(empty) = 1; c(S) = sum of c(S - {i}) over players i undominated in the restriction to S; the answer is c(players of g).
    """
    undominated = UndominatedTable(g.out_edges, g.in_edges)
    counts = PrefixCounts(undominated, g.n)
    count = int(counts[g.players])
    if count <= 0:
        raise InternalError("consistent permutation count %d is not positive" % count)
    return count


def marginal_vector(v, order):
    """Returns the marginal contribution vector of an entry order.

    Component p-1 is v(players entered up to and including p) - v(players entered before p).

    Arguments:
    v -- CharacteristicFunction
    order -- permutation of 1..v.n in entry order

    Returns:
    shape (n,) float64 array
    """
    if len(order) != v.n:
        raise DimensionMismatchError("order has %d players but the game has %d" % (len(order), v.n), field="order")
    order = make_entry_order(order, n=v.n)
    masks = order.prefix_masks()
    vector = np.zeros(v.n)
    for t, p in enumerate(order):
        vector[p - 1] = v.value(masks[t + 1]) - v.value(masks[t])
    return vector


def cycle_orders(n):
    """Returns the n consistent orders of the directed cycle (1, 2, ..., n, 1) in lexicographic order.

    The order ending with player k enters k-1, k-2, ..., k+1, k (labels taken mod n).
    """
    orders = [EntryOrder(((k - t - 1) % n) + 1 for t in range(1, n + 1)) for k in range(1, n + 1)]
    return sorted(orders)
