import logging
import math
import numbers

import numpy as np

from .coalition import as_mask, coalition_key, full_mask, parse_coalition_key, popcount
from .digraph import _read_json, check_player_count
from .errors import DimensionMismatchError, EmptyGameError, ValidationError
from .kernel import coalition_sizes

__all__ = ["CharacteristicFunction", "make_explicit", "make_symmetric", "make_power", "value",
           "marginal_contribution", "linear_combination", "load_game"]

logger = logging.getLogger(__name__)

EXPLICIT = "explicit"
SYMMETRIC = "symmetric"
POWER = "power"


def _real(x, field):
    if isinstance(x, bool) or not isinstance(x, numbers.Real):
        raise ValidationError("expected a real number, got %r" % (x,), field=field)
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError("expected a finite number, got %r" % x, field=field)
    return x


def _reals(values, field):
    try:
        items = list(values)
    except TypeError:
        raise ValidationError("expected an array of real numbers", field=field)
    return np.array([_real(x, "%s[%d]" % (field, index)) for index, x in enumerate(items)], dtype=np.float64)


class CharacteristicFunction(object):
    """TU game v: 2^N -> R with v(empty) = 0.

    Three kinds share one interface:
    explicit -- a table of 2**n payoffs indexed by coalition mask
    symmetric -- v(S) = f[|S|] for an array f of n+1 payoffs
    power -- v(S) = |S|**k, with v(empty) = 0 for every k including k = 0
    """

    __slots__ = ("_n", "_kind", "_table", "_f", "_k")

    def __init__(self, n, kind, table=None, f=None, k=None):
        self._n = n
        self._kind = kind
        self._table = table
        self._f = f
        self._k = k

    @property
    def n(self):
        return self._n

    @property
    def kind(self):
        return self._kind

    @property
    def k(self):
        return self._k

    def value(self, S):
        """Returns v(S) for a coalition given as a mask or as an iterable of player ids."""
        S = as_mask(S, self._n)
        if self._kind == EXPLICIT:
            return float(self._table[S])
        if self._kind == SYMMETRIC:
            return float(self._f[popcount(S)])
        if S == 0:
            return 0.0
        return float(popcount(S) ** self._k)

    def table(self):
        """Returns the read-only shape (2**n,) float64 array of v over all coalition masks."""
        if self._kind == EXPLICIT:
            return self._table
        sizes = coalition_sizes(self._n)
        if self._kind == SYMMETRIC:
            table = self._f[sizes]
        else:
            table = sizes.astype(np.float64) ** self._k
            table[0] = 0.
        table.setflags(write=False)
        return table

    def as_symmetric(self):
        """Returns the size profile f (f[s] = v(S) for |S| = s) of a symmetric or power game, None for explicit games."""
        if self._kind == SYMMETRIC:
            return self._f.copy()
        if self._kind == POWER:
            f = np.arange(self._n + 1, dtype=np.float64) ** self._k
            f[0] = 0.
            return f
        return None

    def is_integer_valued(self):
        if self._kind == POWER:
            return True
        values = self._table if self._kind == EXPLICIT else self._f
        return bool(np.all(np.floor(values) == values))

    def exact_values(self):
        """Returns v over all coalition masks as a list of Python ints. Only valid for integer-valued games."""
        if self._kind == POWER:
            sizes = coalition_sizes(self._n).tolist()
            return [0 if s == 0 else s ** self._k for s in sizes]
        if not self.is_integer_valued():
            raise ValidationError("game has non-integer payoffs", field="values")
        return [int(x) for x in self.table().tolist()]

    def grand_value(self):
        return self.value(full_mask(self._n))

    def to_json(self):
        """Returns the game JSON mapping for this game."""
        if self._kind == POWER:
            return {"type": POWER, "n": self._n, "k": self._k}
        if self._kind == SYMMETRIC:
            return {"type": SYMMETRIC, "n": self._n, "f": self._f.tolist()}
        return {"type": EXPLICIT, "n": self._n,
                "values": {coalition_key(S): x for S, x in enumerate(self._table.tolist())}}

    def __repr__(self):
        if self._kind == POWER:
            return "CharacteristicFunction(power, n=%d, k=%d)" % (self._n, self._k)
        if self._kind == SYMMETRIC:
            return "CharacteristicFunction(symmetric, n=%d, f=%s)" % (self._n, self._f.tolist())
        return "CharacteristicFunction(explicit, n=%d)" % self._n


def make_explicit(n, table):
    """Builds an explicit game from its table of payoffs indexed by coalition mask.

    Arguments:
    n -- number of players
    table -- 2**n payoffs; entry S is v of the coalition whose members are the set bits of S
    """
    n = check_player_count(n)
    table = _reals(table, "values")
    if table.shape[0] != 1 << n:
        raise DimensionMismatchError("expected %d payoffs for %d players, got %d" % (1 << n, n, table.shape[0]),
                                     field="values")
    if table[0] != 0:
        raise EmptyGameError("v(empty coalition) must be 0, got %g" % table[0], field="values")
    table.setflags(write=False)
    return CharacteristicFunction(n, EXPLICIT, table=table)


def make_symmetric(n, f):
    """Builds a symmetric game v(S) = f[|S|].

    Arguments:
    n -- number of players
    f -- n+1 payoffs indexed by coalition size, f[0] = 0
    """
    n = check_player_count(n)
    f = _reals(f, "f")
    if f.shape[0] != n + 1:
        raise DimensionMismatchError("expected %d entries for %d players, got %d" % (n + 1, n, f.shape[0]), field="f")
    if f[0] != 0:
        raise EmptyGameError("f(0) must be 0, got %g" % f[0], field="f")
    f.setflags(write=False)
    return CharacteristicFunction(n, SYMMETRIC, f=f)


def make_power(n, k):
    """Builds the power game v(S) = |S|**k, with v(empty) = 0 also for k = 0."""
    n = check_player_count(n)
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 0:
        raise ValidationError("expected a nonnegative integer exponent, got %r" % (k,), field="k")
    k = int(k)
    # v(N) = n**k is the largest payoff and must be a finite double
    too_large = n > 1 and k * math.log2(n) > 1025
    if not too_large:
        try:
            float(n ** k)
        except OverflowError:
            too_large = True
    if too_large:
        raise ValidationError("%d**%d does not fit a double" % (n, k), field="k")
    return CharacteristicFunction(n, POWER, k=k)


def value(v, S):
    return v.value(S)


def marginal_contribution(v, S, i):
    """Returns v(S u {i}) - v(S) for a coalition mask S and 1-based player i."""
    S = as_mask(S, v.n)
    return v.value(S | (1 << (int(i) - 1))) - v.value(S)


def linear_combination(a, v, b, w):
    """Returns the explicit game a*v + b*w."""
    if v.n != w.n:
        raise DimensionMismatchError("games have %d and %d players" % (v.n, w.n), field="n")
    return make_explicit(v.n, a * v.table() + b * w.table())


def load_game(source, n=None):
    """Loads a game from the game JSON formats:

    {"type": "power", "n": 3, "k": 2}
    {"type": "symmetric", "n": 3, "f": [0, 1, 4, 9]}
    {"type": "explicit", "n": 2, "values": {"": 0, "1": 1, "2": 2, "1,2": 5}}

    Explicit keys are comma separated ascending player lists; every nonempty coalition must be present,
    and the empty key may be omitted.

    Arguments:
    source -- path to a JSON file, inline JSON text, or an already parsed mapping

    Optional arguments:
    n -- expected number of players (e.g. from the digraph); a mismatch is an error

    Returns:
    CharacteristicFunction instance
    """
    data = _read_json(source, "game")
    kind = data.get("type")
    if kind not in (POWER, SYMMETRIC, EXPLICIT):
        raise ValidationError("expected one of power, symmetric, explicit, got %r" % (kind,), field="type")
    if "n" not in data:
        raise ValidationError("missing required key", field="n")
    players = check_player_count(data["n"])
    if n is not None and players != n:
        raise DimensionMismatchError("game has %d players but the graph has %d" % (players, n), field="n")

    if kind == POWER:
        if "k" not in data:
            raise ValidationError("missing required key", field="k")
        v = make_power(players, data["k"])
    elif kind == SYMMETRIC:
        if not isinstance(data.get("f"), list):
            raise ValidationError("expected a list of n+1 payoffs", field="f")
        v = make_symmetric(players, data["f"])
    else:
        values = data.get("values")
        if not isinstance(values, dict):
            raise ValidationError("expected an object mapping coalition keys to payoffs", field="values")
        table = [None] * (1 << players)
        table[0] = 0.
        for key, x in values.items():
            S = parse_coalition_key(key, players)
            field = "values[%r]" % key
            if S and table[S] is not None:
                raise ValidationError("coalition listed twice", field=field)
            table[S] = _real(x, field)
        for S, x in enumerate(table):
            if x is None:
                raise ValidationError("missing payoff for coalition %r" % coalition_key(S), field="values")
        v = make_explicit(players, table)
    logger.debug("loaded %r", v)
    return v
