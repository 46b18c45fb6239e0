from itertools import product

import numpy as np
import pytest

from digraphshapley import make_digraph, make_explicit

CORPUS_SIZE = 200
CORPUS_SEED = 20260418


def random_digraph(rng, n, p=0.5):
    """Digraph on n players where each possible edge (no self-loops) is present with probability p."""
    edges = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b and rng.random() < p]
    return make_digraph(n, edges)


def random_explicit_game(rng, n, low=-10., high=10.):
    table = rng.uniform(low, high, size=1 << n)
    table[0] = 0.
    return make_explicit(n, table)


def all_digraphs(n):
    """Yields every digraph without self-loops on n players."""
    pairs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    for present in product((False, True), repeat=len(pairs)):
        yield make_digraph(n, [pair for pair, keep in zip(pairs, present) if keep])


@pytest.fixture(scope="session")
def corpus():
    """200 random (digraph, explicit game) pairs with 1 to 7 players."""
    rng = np.random.default_rng(CORPUS_SEED)
    pairs = []
    for _ in range(CORPUS_SIZE):
        n = int(rng.integers(1, 8))
        pairs.append((random_digraph(rng, n), random_explicit_game(rng, n)))
    return pairs
