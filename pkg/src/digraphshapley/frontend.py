import json
import logging
from dataclasses import dataclass

import numpy as np

from .bruteforce import Shapley_bruteforce
from .config import AGREEMENT_TOL, AUTO_DP_THRESHOLD, EFFICIENCY_RTOL, ENUMERATION_LIMIT, EXACT_LIMIT, ORACLE_LIMIT
from .enumeration import enumerate_shapley
from .errors import (DimensionMismatchError, EmptyGameError, EngineSelectionError, GuardError, InternalError,
                     ValidationError)
from .subsetdp import exact_subset_shapley, subset_shapley

__all__ = ["ShapleyOutcome", "ShapleyValue", "shapley_enumeration", "shapley_subset_dp",
           "shapley_cycle_closed_form", "shapley_oracle", "exact_allocation", "check_efficiency", "self_check",
           "ENGINES"]

logger = logging.getLogger(__name__)

ENUM = "enum"
DP = "dp"
CLOSED_FORM = "closed-form"
ORACLE = "oracle"
ENGINES = ("auto", ENUM, DP, CLOSED_FORM, ORACLE)


@dataclass(frozen=True, eq=False)
class ShapleyOutcome:
    """Shapley value of a digraph game.

    allocation -- shape (n,) array, index p-1 holds player p's payoff
    permutation_count -- number of consistent entry orders averaged over
    engine -- label of the engine that computed the allocation
    """
    allocation: np.ndarray
    permutation_count: int
    engine: str

    def to_dict(self):
        return {"engine": self.engine, "permutation_count": self.permutation_count,
                "allocation": [float(x) for x in self.allocation]}

    def to_json(self):
        """Returns the compact JSON text of to_dict()."""
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _check_pair(v, g):
    if v.n != g.n:
        raise DimensionMismatchError("game has %d players but the graph has %d" % (v.n, g.n), field="n")
    if not g.is_full:
        raise ValidationError("Shapley values need the unrestricted graph, got a restriction to %s"
                              % list(g.player_ids), field="graph")


def _guard(n, limit, what, force):
    if n <= limit:
        return
    if not force:
        raise GuardError("%s is limited to %d players (got %d); pass force=True (--force) to override"
                         % (what, limit, n))
    logger.warning("%s on %d players exceeds the guard of %d; continuing because it was forced", what, n, limit)


def _outcome(allocation, count, engine):
    if count <= 0:
        raise InternalError("%s engine found %d consistent permutations" % (engine, count))
    allocation = np.asarray(allocation, dtype=np.float64)
    allocation.setflags(write=False)
    return ShapleyOutcome(allocation, count, engine)


def shapley_enumeration(v, g, force=False, parallel=False):
    """Returns the Shapley value of (v, g) by summing marginal vectors over every consistent entry order.

    Arguments:
    v -- CharacteristicFunction
    g -- Digraph on the same players

    Optional arguments:
    force -- allow more than 10 players despite the factorial cost (default False)
    parallel -- If True, will parallelize over the first entering player. (default False)

    Returns:
    ShapleyOutcome
    """
    _check_pair(v, g)
    _guard(g.n, ENUMERATION_LIMIT, "enumeration", force)
    allocation, count = enumerate_shapley(v.table(), g, parallel=parallel)
    return _outcome(allocation, count, ENUM)


def shapley_subset_dp(v, g, parallel=False):
    """Returns the Shapley value of (v, g) from prefix and suffix counts of consistent orders over coalition masks.

    Arguments:
    v -- CharacteristicFunction
    g -- Digraph on the same players

    Optional arguments:
    parallel -- If True, will parallelize over all available cores. (default False)

    Returns:
    ShapleyOutcome
    """
    _check_pair(v, g)
    allocation, count = subset_shapley(v.table(), g, parallel=parallel)
    return _outcome(allocation, count, DP)


def shapley_cycle_closed_form(f, n):
    """Returns the Shapley value of the symmetric game v(S) = f[|S|] on the directed cycle (1, 2, ..., n, 1).

    Every player receives f[n]/n.

    Arguments:
    f -- n+1 payoffs indexed by coalition size, f[0] = 0
    n -- number of players

    Returns:
    shape (n,) array
    """
    f = np.asarray(f, dtype=np.float64)
    if n < 1:
        raise ValidationError("need at least one player, got %d" % n, field="n")
    if f.shape != (n + 1,):
        raise DimensionMismatchError("expected %d entries for %d players, got %d" % (n + 1, n, f.size), field="f")
    if f[0] != 0:
        raise EmptyGameError("f(0) must be 0, got %g" % f[0], field="f")
    return np.full(n, f[n] / n)


def shapley_oracle(v, g, force=False):
    """Returns the Shapley value of (v, g) by filtering all n! entry orders. Reference implementation for testing.

    Optional arguments:
    force -- allow more than 8 players (default False)
    """
    _check_pair(v, g)
    _guard(g.n, ORACLE_LIMIT, "the oracle", force)
    allocation, count = Shapley_bruteforce(v, g)
    return _outcome(allocation, count, ORACLE)


def _closed_form_outcome(v, g):
    if not g.is_single_cycle():
        raise EngineSelectionError("the closed form needs a graph that is a single directed cycle", field="engine")
    f = v.as_symmetric()
    if f is None:
        raise EngineSelectionError("the closed form needs a symmetric or power game, got an explicit one",
                                   field="engine")
    # a directed cycle on n players has exactly n consistent orders
    return _outcome(shapley_cycle_closed_form(f, g.n), g.n, CLOSED_FORM)


def ShapleyValue(v, g, method="auto", parallel=False, force=False):
    """Returns the Shapley value of the digraph game (v, g), averaging marginal contribution vectors over the entry orders consistent with g.

    Arguments:
    v -- CharacteristicFunction
    g -- Digraph on the same players

    Optional arguments:
    method -- 'auto', 'enum', 'dp', 'closed-form' or 'oracle' (default auto picks the subset DP above 8 players, enumeration otherwise)
    parallel -- If True, will use the parallel kernels of the chosen engine. (default False)
    force -- lift the size guards of enumeration and the oracle (default False)

    Returns:
    ShapleyOutcome
    """
    if method not in ENGINES:
        raise ValidationError("expected one of %s, got %r" % (", ".join(ENGINES), method), field="engine")
    _check_pair(v, g)
    if method == "auto":
        method = DP if g.n > AUTO_DP_THRESHOLD else ENUM
    logger.debug("computing the Shapley value of %r on %r with the %s engine", v, g, method)
    if method == ENUM:
        return shapley_enumeration(v, g, force=force, parallel=parallel)
    if method == DP:
        return shapley_subset_dp(v, g, parallel=parallel)
    if method == ORACLE:
        return shapley_oracle(v, g, force=force)
    return _closed_form_outcome(v, g)


def exact_allocation(v, g):
    """Returns the Shapley value as a tuple of Fractions, or None if v is not integer-valued or g has more than 12 players."""
    _check_pair(v, g)
    if g.n > EXACT_LIMIT or not v.is_integer_valued():
        return None
    return exact_subset_shapley(v.exact_values(), g)


def check_efficiency(outcome, v, rtol=EFFICIENCY_RTOL):
    """Raises InternalError unless the allocation sums to v(N) within rtol (relative to max(1, |v(N)|))."""
    grand = v.grand_value()
    total = float(np.sum(outcome.allocation))
    if abs(total - grand) > rtol * max(1., abs(grand)):
        raise InternalError("%s allocation sums to %r, expected v(N) = %r" % (outcome.engine, total, grand))


def _reference_engine(engine, v, g):
    if engine == CLOSED_FORM:
        return DP
    if engine != ENUM and g.n <= ENUMERATION_LIMIT:
        return ENUM
    if engine != DP:
        return DP
    if g.is_single_cycle() and v.as_symmetric() is not None:
        return CLOSED_FORM
    return None


def self_check(v, g, outcome, tol=AGREEMENT_TOL, parallel=False):
    """Recomputes the Shapley value with a second engine and raises InternalError on disagreement.

    Returns:
    the reference ShapleyOutcome, or None when no second engine applies
    """
    reference = _reference_engine(outcome.engine, v, g)
    if reference is None:
        logger.warning("no second engine available for %d players; self-check skipped", g.n)
        return None
    other = ShapleyValue(v, g, method=reference, parallel=parallel)
    logger.info("self-check: %s against %s", outcome.engine, other.engine)
    if other.permutation_count != outcome.permutation_count:
        raise InternalError("engines disagree on the permutation count: %s gives %d, %s gives %d"
                            % (outcome.engine, outcome.permutation_count, other.engine, other.permutation_count))
    if not np.allclose(outcome.allocation, other.allocation, rtol=tol, atol=tol):
        worst = int(np.argmax(np.abs(outcome.allocation - other.allocation)))
        raise InternalError("engines disagree for player %d: %s gives %r, %s gives %r"
                            % (worst + 1, outcome.engine, float(outcome.allocation[worst]), other.engine,
                               float(other.allocation[worst])))
    return other
