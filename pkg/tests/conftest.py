"""Shared helpers: tiny independent enumerators used to check the oracle."""

import itertools

import numpy as np
import pytest


def box_minimum_pure(g_entries, bound, radius=None):
    """Pure-python exhaustive minimum of a^T G a over small integer sets.

    Scans every nonzero a with |a_i| <= bound entrywise; when radius is
    given, points with |a| > radius are skipped, making the search
    region exactly the lattice ball.  Deliberately naive; only usable
    for tiny n and bound.
    """
    g = [[float(x) for x in row] for row in np.asarray(g_entries)]
    n = len(g)
    best_f = None
    best_a = None
    for a in itertools.product(range(-bound, bound + 1), repeat=n):
        if not any(a):
            continue
        if radius is not None and sum(x * x for x in a) > radius * radius:
            continue
        f = sum(a[i] * g[i][j] * a[j] for i in range(n) for j in range(n))
        if best_f is None or f < best_f:
            best_f = f
            best_a = a
    return best_f, best_a


@pytest.fixture(scope="session")
def box_minimum():
    return box_minimum_pure


def random_gram(rng, n):
    """Random well-conditioned positive definite matrix."""
    m = rng.standard_normal((n, n))
    g = m @ m.T + (0.1 + rng.uniform(0.0, 1.0)) * np.eye(n)
    return 0.5 * (g + g.T)


@pytest.fixture(scope="session")
def gram_factory():
    return random_gram
