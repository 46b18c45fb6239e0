import json
import logging
import numbers
import os

import numpy as np

from .coalition import as_mask, check_player, full_mask, players_of, popcount, require_member
from .config import MAX_PLAYERS
from .errors import (CapacityError, MembershipError, PlayerCountError, PlayerRangeError, SelfLoopError,
                     ValidationError)
from .kernel import Dominates, ReachMask, UndominatedMask

__all__ = ["Digraph", "make_digraph", "restrict", "successors", "dominates", "undominated",
           "cycle_digraph", "path_digraph", "empty_digraph", "complete_digraph", "load_digraph"]

logger = logging.getLogger(__name__)


def check_player_count(n, field="n"):
    """Returns n as an int after checking 1 <= n <= MAX_PLAYERS."""
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise ValidationError("expected an integer player count, got %r" % (n,), field=field)
    n = int(n)
    if n < 1:
        raise PlayerCountError("need at least one player, got %d" % n, field=field)
    if n > MAX_PLAYERS:
        raise CapacityError("%d players exceeds the supported maximum of %d" % (n, MAX_PLAYERS), field=field)
    return n


class Digraph(object):
    """Directed graph on the players 1..n, possibly restricted to a coalition of them.

    A restriction keeps the original player labels: its players are a subset of 1..n and its
    edges are the edges of the parent graph with both endpoints among those players.
    Instances are immutable; all queries are pure.
    """

    __slots__ = ("_n", "_players", "_out", "_in")

    def __init__(self, n, out_edges, players=None):
        self._n = n
        self._players = full_mask(n) if players is None else players
        out = np.array(out_edges, dtype=np.int64) & self._players
        for p in range(n):
            if not (self._players >> p) & 1:
                out[p] = 0
        inn = np.zeros(n, dtype=np.int64)
        for p in range(n):
            for q in range(n):
                if (out[p] >> q) & 1:
                    inn[q] |= 1 << p
        out.setflags(write=False)
        inn.setflags(write=False)
        self._out = out
        self._in = inn

    @property
    def n(self):
        """Size of the label space 1..n."""
        return self._n

    @property
    def players(self):
        """Coalition mask of the players present in this graph."""
        return self._players

    @property
    def player_ids(self):
        return players_of(self._players)

    @property
    def out_edges(self):
        """Read-only int64 array; entry p-1 is the mask of direct out-neighbours of player p."""
        return self._out

    @property
    def in_edges(self):
        return self._in

    @property
    def is_full(self):
        return self._players == full_mask(self._n)

    def edges(self):
        """Returns the sorted list of directed edges (a, b) with 1-based endpoints."""
        return [(a, b) for a in self.player_ids for b in players_of(int(self._out[a - 1]))]

    def out_degree(self, i):
        i = self._member(i)
        return popcount(int(self._out[i - 1]))

    def in_degree(self, i):
        i = self._member(i)
        return popcount(int(self._in[i - 1]))

    def adjacency_matrix(self):
        """Returns the (n, n) boolean adjacency matrix over all labels; rows and columns of absent players are empty."""
        bits = np.arange(self._n, dtype=np.int64)
        return ((self._out[:, None] >> bits[None, :]) & 1).astype(bool)

    def _coalition(self, S, field="S"):
        mask = as_mask(S, self._n, field=field)
        if mask & ~self._players:
            raise MembershipError("players %s are not in this graph" % list(players_of(mask & ~self._players)),
                                  field=field)
        return mask

    def _member(self, i, field="i"):
        i = check_player(i, self._n, field=field)
        require_member(self._players, i, field=field)
        return i

    def restrict(self, S):
        """Returns the restriction of this graph to the coalition S (mask or iterable of player ids)."""
        S = self._coalition(S)
        return Digraph(self._n, self._out, players=S)

    def successors(self, S, i):
        """Returns the mask of players j != i of S reachable from i by a directed path inside the restriction to S."""
        S = self._coalition(S)
        i = self._member(i)
        require_member(S, i)
        return int(ReachMask(self._out, S, i - 1))

    def successors_closed(self, S, i):
        """Returns successors(S, i) with i added."""
        return self.successors(S, i) | (1 << (int(i) - 1))

    def predecessors(self, S, i):
        """Returns the mask of players j != i of S that reach i by a directed path inside the restriction to S."""
        S = self._coalition(S)
        i = self._member(i)
        require_member(S, i)
        return int(ReachMask(self._in, S, i - 1))

    def dominates(self, S, i, j):
        """True if i dominates j in the restriction to S: i reaches j, but j does not reach i."""
        S = self._coalition(S)
        i = self._member(i)
        j = self._member(j, field="j")
        require_member(S, i)
        require_member(S, j, field="j")
        if i == j:
            raise ValidationError("dominance is only defined between distinct players", field="j")
        return bool(Dominates(self._out, self._in, S, i - 1, j - 1))

    def undominated(self, S):
        """Returns the mask of players of S that no player of S dominates in the restriction to S."""
        S = self._coalition(S)
        if S == 0:
            raise MembershipError("the undominated set of the empty coalition is undefined", field="S")
        return self._undominated(S)

    def _undominated(self, S):
        return int(UndominatedMask(self._out, self._in, S))

    def strongly_connected_components(self, S=None):
        """Returns the strongly connected components of the restriction to S as masks, ordered by lowest member."""
        S = self._players if S is None else self._coalition(S)
        components = []
        remaining = S
        while remaining:
            i = (remaining & -remaining).bit_length() - 1
            mutual = ReachMask(self._out, S, i) & ReachMask(self._in, S, i)
            component = int(mutual) | (1 << i)
            components.append(component)
            remaining &= ~component
        return components

    def source_components(self, S=None):
        """Returns the strongly connected components of the restriction to S that no edge from elsewhere in S enters."""
        S = self._players if S is None else self._coalition(S)
        sources = []
        for component in self.strongly_connected_components(S):
            entering = 0
            for p in players_of(component):
                entering |= int(self._in[p - 1])
            if entering & S & ~component == 0:
                sources.append(component)
        return sources

    def is_single_cycle(self):
        """True if the graph is one directed cycle through all of its players (at least two of them)."""
        ids = self.player_ids
        if len(ids) < 2:
            return False
        for p in ids:
            if popcount(int(self._out[p - 1])) != 1 or popcount(int(self._in[p - 1])) != 1:
                return False
        start = ids[0]
        return int(ReachMask(self._out, self._players, start - 1)) | (1 << (start - 1)) == self._players

    def to_json(self):
        """Returns the graph JSON mapping {"n": n, "edges": [[a, b], ...]}."""
        return {"n": self._n, "edges": [[a, b] for a, b in self.edges()]}

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self._n == other._n and self._players == other._players
                and np.array_equal(self._out, other._out))

    def __hash__(self):
        return hash((self._n, self._players, tuple(int(x) for x in self._out)))

    def __repr__(self):
        if self.is_full:
            return "Digraph(n=%d, edges=%s)" % (self._n, self.edges())
        return "Digraph(n=%d, players=%s, edges=%s)" % (self._n, list(self.player_ids), self.edges())


def make_digraph(n, edges):
    """Builds a digraph on players 1..n.

    Arguments:
    n -- number of players, 1 <= n <= 20
    edges -- iterable of ordered pairs (a, b) of 1-based player ids; duplicates collapse to one edge

    Returns:
    Digraph instance
    """
    n = check_player_count(n)
    out = np.zeros(n, dtype=np.int64)
    for index, edge in enumerate(edges):
        field = "edges[%d]" % index
        try:
            a, b = edge
        except (TypeError, ValueError):
            raise ValidationError("expected a pair of player ids, got %r" % (edge,), field=field)
        a = check_player(a, n, field=field)
        b = check_player(b, n, field=field)
        if a == b:
            raise SelfLoopError("self-loop on player %d" % a, field=field)
        out[a - 1] |= 1 << (b - 1)
    return Digraph(n, out)


def restrict(g, S):
    return g.restrict(S)


def successors(g, S, i):
    return g.successors(S, i)


def dominates(g, S, i, j):
    return g.dominates(S, i, j)


def undominated(g, S):
    return g.undominated(S)


def cycle_digraph(n):
    """Directed cycle (1, 2, ..., n, 1). Needs n >= 2."""
    if n < 2:
        raise PlayerCountError("a directed cycle needs at least two players, got %d" % n, field="n")
    return make_digraph(n, [(p, p % n + 1) for p in range(1, n + 1)])


def path_digraph(n):
    """Directed path 1 -> 2 -> ... -> n."""
    return make_digraph(n, [(p, p + 1) for p in range(1, n)])


def empty_digraph(n):
    return make_digraph(n, [])


def complete_digraph(n):
    return make_digraph(n, [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b])


def _read_json(source, what):
    """Returns the mapping behind source: a mapping, inline JSON text, or a file path."""
    if isinstance(source, dict):
        return source
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text, origin = source, "inline %s" % what
    else:
        origin = os.fspath(source)
        try:
            with open(origin, "r", encoding="utf-8") as fh:
                text = fh.read()
        except UnicodeDecodeError:
            raise ValidationError("%s is not UTF-8 text" % origin, field=what)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError("malformed JSON in %s: %s" % (origin, e), field=what)
    if not isinstance(data, dict):
        raise ValidationError("expected a JSON object in %s" % origin, field=what)
    return data


def load_digraph(source):
    """Loads a digraph from the graph JSON format {"n": 3, "edges": [[1,2],[2,3],[3,1]]}.

    Arguments:
    source -- path to a JSON file, inline JSON text, or an already parsed mapping

    Returns:
    Digraph instance
    """
    data = _read_json(source, "graph")
    if "n" not in data:
        raise ValidationError("missing required key", field="n")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise ValidationError("expected a list of [a, b] pairs", field="edges")
    for index, edge in enumerate(edges):
        if not isinstance(edge, list) or len(edge) != 2:
            raise ValidationError("expected a [a, b] pair, got %r" % (edge,), field="edges[%d]" % index)
    unknown = set(data) - {"n", "edges"}
    if unknown:
        logger.warning("ignoring unknown graph keys %s", sorted(unknown))
    g = make_digraph(data["n"], [tuple(edge) for edge in edges])
    logger.debug("loaded %r", g)
    return g
