import pytest

import macaulay as M
from macaulay.errors import ResourceLimitError, SearchBudgetExceeded
from macaulay.verify import macaulay_by_definition

from conftest import brute_min_shadow, labels_of


def test_kruskal_katona_holds(m222):
    assert M.is_macaulay(m222, M.lex_order(m222)).holds


def test_clements_lindstrom_holds(m34):
    assert M.is_macaulay(m34, M.lex_order(m34)).holds


def test_unsorted_caps_fail(m43):
    v = M.is_macaulay(m43, M.lex_order(m43))
    assert not v.holds
    f = v.failures[0]
    assert f.level == 3 and f.reason == "nestedness" and f.size == 1
    assert labels_of(m43, f.witness) == [(3, 0)]
    assert len(f.witness_shadow) == 1 and len(f.segment_shadow) == 2


def test_failure_witnesses_reverify(m43):
    v = M.is_macaulay(m43, M.lex_order(m43), all_failures=True)
    for f in v.failures:
        if f.reason == "nestedness":
            assert len(m43.lower_shadow(f.witness)) < len(m43.lower_shadow(f.segment))
        else:
            assert set(f.segment_shadow) != set(f.expected_prefix)


def test_agrees_with_literal_definition():
    cases = [
        (M.multiset_lattice([3, 4]), True),
        (M.multiset_lattice([4, 3]), False),
        (M.multiset_lattice([2, 2, 2]), True),
        (M.multiset_lattice([2, 2], truncation=1), True),
    ]
    for p, expected in cases:
        for direction in ("lower", "upper"):
            table = M.lex_order(p)
            fast = M.is_macaulay(p, table, direction=direction)
            slow, _ = macaulay_by_definition(p, table, direction=direction)
            assert fast.holds == slow == expected


def test_upper_direction_matches_lower(m34, m43, m222):
    for p in (m34, m43, m222):
        t = M.lex_order(p)
        assert (
            M.is_macaulay(p, t, direction="lower").holds
            == M.is_macaulay(p, t, direction="upper").holds
        )


def test_min_shadow_examples(m222, m34, m43):
    assert M.min_shadow(m222, 2, 2) == (3, *[None][:0]) or M.min_shadow(m222, 2, 2)[0] == 3
    assert M.min_shadow(m34, 1, 0) == (0, frozenset())
    size, witness = M.min_shadow(m34, 3, 1)
    assert size == 1 and labels_of(m34, witness) == [(0, 3)]
    size, witness = M.min_shadow(m43, 3, 1)
    assert size == 1 and labels_of(m43, witness) == [(3, 0)]


def test_min_shadow_against_brute():
    p = M.multiset_lattice([3, 3])
    for lvl in range(1, p.max_rank + 1):
        for q in range(len(p.level(lvl)) + 1):
            size, witness = M.min_shadow(p, lvl, q)
            bsize, _ = brute_min_shadow(p, lvl, q)
            assert size == bsize
            if q:
                assert len(p.lower_shadow(witness)) == size


def test_segment_never_beats_min_shadow(m34, m43):
    for p in (m34, m43):
        lex = M.lex_order(p)
        for lvl in range(1, p.max_rank + 1):
            ids = lex.level_in_order(lvl)
            for q in range(1, len(ids) + 1):
                seg_size = len(p.lower_shadow(ids[:q]))
                min_size, _ = M.min_shadow(p, lvl, q)
                assert seg_size >= min_size


def test_macaulay_order_attains_min_shadow(m34):
    lex = M.lex_order(m34)
    for lvl in range(1, m34.max_rank + 1):
        ids = lex.level_in_order(lvl)
        for q in range(1, len(ids) + 1):
            assert len(m34.lower_shadow(ids[:q])) == M.min_shadow(m34, lvl, q)[0]


def test_resource_cap():
    p = M.multiset_lattice([2] * 6)  # levels 1,6,15,20,15,6,1
    with pytest.raises(ResourceLimitError, match="level 2"):
        M.is_macaulay(p, M.lex_order(p), max_subsets=2 ** 10)
    with pytest.raises(ResourceLimitError, match="level 3"):
        M.min_shadow(p, 3, 2, max_subsets=2 ** 10)


def test_check_dual_lemma(m222, m43):
    assert M.check_dual_lemma(m222, M.lex_order(m222))
    assert M.check_dual_lemma(m43, M.lex_order(m43))
    s = M.singleton()
    assert M.check_dual_lemma(s, M.lex_order(s))


def test_verdict_merge(m222):
    t = M.lex_order(m222)
    v1 = M.is_macaulay(m222, t)
    merged = v1.merge(v1)
    assert merged.holds and merged.subsets_examined == 2 * v1.subsets_examined


def test_mismatched_table_rejected(m222, m34):
    with pytest.raises(ValueError):
        M.is_macaulay(m222, M.lex_order(m34))


def test_search_on_chain():
    c = M.chain(5)
    t = M.search_macaulay_order(c)
    assert t is not None and M.is_macaulay(c, t).holds
    assert t.position == tuple(range(5))  # first order tried is the canonical one


def test_search_on_m22():
    p = M.multiset_lattice([2, 2])
    t = M.search_macaulay_order(p)
    assert t is not None and M.is_macaulay(p, t).holds


def test_search_on_star_product():
    from macaulay.families import star

    p = M.cartesian_product([star(2), star(2)])
    t = M.search_macaulay_order(p)
    assert t is not None
    assert M.is_macaulay(p, t).holds
    assert M.is_macaulay(p, t, direction="upper").holds


def test_search_budget_exhaustion():
    p = M.multiset_lattice([4, 3])
    with pytest.raises(SearchBudgetExceeded):
        M.search_macaulay_order(p, budget=3)


def test_sorted_caps_hold_at_scale():
    # the largest desk-scale grid: levels up to 19 elements, ~1.5M subsets
    p = M.multiset_lattice([5, 5, 5])
    v = M.is_macaulay(p, M.lex_order(p))
    assert v.holds and v.subsets_examined > 10 ** 6


def test_truncated_free_grids_hold():
    # degree-truncated unbounded grids stay Macaulay under lex, level by level
    for lengths, cap in [((None, None), 4), ((None, None, None), 3), ((3, None), 4)]:
        p = M.multiset_lattice(lengths, truncation=cap)
        assert M.is_macaulay(p, M.lex_order(p)).holds, (lengths, cap)


def _random_order(poset, rng):
    ids = list(range(poset.n))
    rng.shuffle(ids)
    return M.explicit_order(poset, ids)


def _random_poset(rng):
    """Random ranked poset: levels of random sizes, random covers, then repair."""
    import itertools

    sizes = [1] + [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
    ids = []
    rank = []
    for r, s in enumerate(sizes):
        for _ in range(s):
            rank.append(r)
            ids.append(len(ids))
    covers = set()
    start = {r: sum(sizes[:r]) for r in range(len(sizes))}
    for r in range(1, len(sizes)):
        for j in range(sizes[r]):
            x = start[r] + j
            below = [start[r - 1] + i for i in range(sizes[r - 1])]
            picks = rng.sample(below, rng.randint(1, len(below)))
            for b in picks:
                covers.add((b, x))
    return M.RankedPoset(len(ids), sorted(covers), rank)


@pytest.mark.parametrize("seed", range(8))
def test_verifier_theorems_hold_on_random_inputs(seed):
    """Dual-lemma agreement and lower/upper equivalence are theorems: they
    must come out true for any finite poset and any order, Macaulay or not."""
    import random as _random

    rng = _random.Random(seed)
    p = _random_poset(rng)
    t = _random_order(p, rng)
    lower = M.is_macaulay(p, t, direction="lower")
    upper = M.is_macaulay(p, t, direction="upper")
    assert lower.holds == upper.holds
    slow, _ = macaulay_by_definition(p, t, direction="lower")
    assert lower.holds == slow
    try:
        dual_ok = M.check_dual_lemma(p, t)
    except M.PosetError:
        return  # not dually ranked: maximal elements off the top rank
    assert dual_ok
