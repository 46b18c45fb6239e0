import logging
import os

import numba

from .errors import ValidationError

logger = logging.getLogger(__name__)

MAX_PLAYERS = 20  # coalitions fit an int64 mask, tables fit 2**20 entries, 20! < 2**63
ENUMERATION_LIMIT = 10  # factorial-cost guard for enumeration and listing
ORACLE_LIMIT = 8
AUTO_DP_THRESHOLD = 8  # method='auto' picks the subset DP above this many players
EXACT_LIMIT = 12  # largest n for which exact rational allocations are produced
EFFICIENCY_RTOL = 1e-9
AGREEMENT_TOL = 1e-9

THREADS_ENV = "DIGRAPH_SHAPLEY_THREADS"


def thread_count(environ=None):
    """Returns the thread cap requested through DIGRAPH_SHAPLEY_THREADS, or 0 for the numba default.

    Optional arguments:
    environ -- mapping to read instead of os.environ
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 0
    try:
        threads = int(raw)
    except ValueError:
        raise ValidationError("expected a nonnegative integer, got %r" % raw, field=THREADS_ENV)
    if threads < 0:
        raise ValidationError("expected a nonnegative integer, got %d" % threads, field=THREADS_ENV)
    return threads


def configure_threads(environ=None):
    """Applies DIGRAPH_SHAPLEY_THREADS to numba. Returns the thread count in effect, or 0 if untouched."""
    threads = thread_count(environ)
    if threads == 0:
        return 0
    threads = min(threads, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(threads)
    logger.info("numba parallel kernels capped at %d threads", threads)
    return threads
