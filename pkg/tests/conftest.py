"""Shared brute-force oracles, independent of the library's fast paths."""
import itertools

import pytest

import macaulay as M


def brute_lower_shadow_labels(labels):
    """Unit decrements of exponent vectors, keeping coordinates nonnegative."""
    out = set()
    for v in labels:
        for i in range(len(v)):
            if v[i] > 0:
                out.add(v[:i] + (v[i] - 1,) + v[i + 1:])
    return out


def brute_upper_shadow_labels(labels, lengths, cap=None):
    """Unit increments staying inside the shape (and under the truncation)."""
    out = set()
    for v in labels:
        for i in range(len(v)):
            w = v[:i] + (v[i] + 1,) + v[i + 1:]
            if lengths[i] is not None and w[i] >= lengths[i]:
                continue
            if cap is not None and sum(w) > cap:
                continue
            out.add(w)
    return out


def brute_min_shadow(poset, level, q, direction="lower"):
    """Minimum shadow size over all q-subsets, by direct enumeration."""
    ids = poset.level(level)
    shadow = poset.lower_shadow if direction == "lower" else poset.upper_shadow
    best = None
    arg = None
    for combo in itertools.combinations(ids, q):
        s = len(shadow(combo))
        if best is None or s < best:
            best, arg = s, combo
    return best, frozenset(arg or ())


def labels_of(poset, ids):
    return sorted(poset.labels[x] for x in ids)


@pytest.fixture(scope="session")
def m34():
    return M.multiset_lattice([3, 4])


@pytest.fixture(scope="session")
def m43():
    return M.multiset_lattice([4, 3])


@pytest.fixture(scope="session")
def m222():
    return M.multiset_lattice([2, 2, 2])
