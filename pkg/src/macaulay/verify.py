"""Exhaustive desk-scale verification of the Macaulay property.

A (poset, order) pair is Macaulay when, level by level, the shadow of every
initial segment is an initial segment of the next level (continuity) and is
no larger than the shadow of any other subset of the same size (nestedness).
Checking direction "lower" uses plain per-level segments and lower shadows;
direction "upper" uses the reversed per-level segments and upper shadows,
which is the form the dual side of the theory wants.

The nestedness oracle enumerates every subset of a level with a Gray-code
walk, maintaining shadow counts incrementally, so the 2^k scan costs O(1)
shadow updates per step instead of recomputing unions.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from .errors import ResourceLimitError, SearchBudgetExceeded
from .orders import OrderTable, dual_order, explicit_order
from .poset import RankedPoset, dual

DEFAULT_SUBSET_CAP = 2 ** 22


@dataclass
class MacaulayFailure:
    level: int
    reason: str  # "nestedness" | "continuity"
    size: int
    witness: tuple  # offending subset (ids)
    witness_shadow: tuple
    segment: tuple  # the initial segment of the same size
    segment_shadow: tuple
    expected_prefix: Optional[tuple] = None  # continuity only

    def describe(self, poset: RankedPoset) -> str:
        labs = lambda ids: "{" + ", ".join(str(poset.labels[x]) for x in ids) + "}"
        if self.reason == "nestedness":
            return (
                f"level {self.level}, size {self.size}: subset {labs(self.witness)} has shadow of "
                f"size {len(self.witness_shadow)} < {len(self.segment_shadow)} for the segment "
                f"{labs(self.segment)}"
            )
        return (
            f"level {self.level}, size {self.size}: shadow {labs(self.segment_shadow)} of the "
            f"segment {labs(self.segment)} is not the initial segment {labs(self.expected_prefix)}"
        )


@dataclass
class MacaulayVerdict:
    holds: bool
    direction: str
    failures: list = field(default_factory=list)
    subsets_examined: int = 0
    levels_checked: int = 0
    elapsed: float = 0.0

    def merge(self, other: "MacaulayVerdict") -> "MacaulayVerdict":
        """Associative combination of verdicts from independent level scans."""
        return MacaulayVerdict(
            self.holds and other.holds,
            self.direction,
            self.failures + other.failures,
            self.subsets_examined + other.subsets_examined,
            self.levels_checked + other.levels_checked,
            self.elapsed + other.elapsed,
        )

    def to_dict(self, poset: Optional[RankedPoset] = None) -> dict:
        out = {
            "holds": self.holds,
            "direction": self.direction,
            "failures": [
                {
                    "level": f.level,
                    "reason": f.reason,
                    "size": f.size,
                    "witness": list(f.witness),
                    "witness_labels": [str(poset.labels[x]) for x in f.witness] if poset else None,
                    "witness_shadow_size": len(f.witness_shadow),
                    "segment_shadow_size": len(f.segment_shadow),
                }
                for f in self.failures
            ],
            "stats": {
                "subsets_examined": self.subsets_examined,
                "levels_checked": self.levels_checked,
            },
        }
        return out


def _level_frames(poset, table, direction):
    """Yield (level, source ids in segment order, shadow lists, target ids in segment order)."""
    reverse = direction == "upper"
    if direction == "lower":
        pairs = [(i, i - 1) for i in range(1, poset.max_rank + 1)]
        neigh = poset.down
    elif direction == "upper":
        pairs = [(i, i + 1) for i in range(poset.max_rank)]
        neigh = poset.up
    else:
        raise ValueError(f"direction must be 'lower' or 'upper', got {direction!r}")
    for src, dst in pairs:
        source = table.level_in_order(src, reverse=reverse)
        target = table.level_in_order(dst, reverse=reverse)
        tpos = {x: j for j, x in enumerate(target)}
        sh = [tuple(tpos[y] for y in neigh[x]) for x in source]
        yield src, source, sh, target


def _gray_minima(sh, k, want_masks=True):
    """Minimum shadow size over all subsets of each size, via a Gray-code walk.

    Returns (min_size, argmin_mask) arrays indexed by subset size.
    """
    nt = 1 + max((j for t in sh for j in t), default=-1)
    counts = [0] * nt
    in_set = [False] * k
    best = [None] * (k + 1)
    best_mask = [0] * (k + 1)
    best[0] = 0
    shadow = 0
    size = 0
    mask = 0
    for t in range(1, 1 << k):
        j = (t & -t).bit_length() - 1
        bit = 1 << j
        if in_set[j]:
            in_set[j] = False
            size -= 1
            mask ^= bit
            for idx in sh[j]:
                counts[idx] -= 1
                if counts[idx] == 0:
                    shadow -= 1
        else:
            in_set[j] = True
            size += 1
            mask ^= bit
            for idx in sh[j]:
                if counts[idx] == 0:
                    shadow += 1
                counts[idx] += 1
        if best[size] is None or shadow < best[size]:
            best[size] = shadow
            if want_masks:
                best_mask[size] = mask
    return best, best_mask


def _mask_to_ids(mask, source):
    return tuple(source[j] for j in range(len(source)) if mask >> j & 1)


def is_macaulay(
    poset: RankedPoset,
    table: OrderTable,
    direction: str = "lower",
    max_subsets: int = DEFAULT_SUBSET_CAP,
    all_failures: bool = False,
) -> MacaulayVerdict:
    """Exhaustively decide the per-level segment/shadow property.

    Each level is scanned over all of its subsets; levels whose subset count
    exceeds `max_subsets` raise ResourceLimitError naming the level.  With
    `all_failures` the scan continues past the first offending level.
    """
    t0 = time.perf_counter()
    if table.poset != poset:
        raise ValueError("order table does not belong to this poset")
    verdict = MacaulayVerdict(True, direction)
    for lvl, source, sh, target in _level_frames(poset, table, direction):
        k = len(source)
        if (1 << k) > max_subsets:
            raise ResourceLimitError(
                f"level {lvl} has {k} elements; 2^{k} subsets exceed the cap of {max_subsets}"
            )
        # segment pass: incremental shadows of prefixes, with exact-prefix check
        seg_sizes = [0] * (k + 1)
        seg_prefix_ok = [True] * (k + 1)
        nt = len(target)
        counts = [0] * nt
        shadow = 0
        max_idx = -1
        for q in range(1, k + 1):
            for idx in sh[q - 1]:
                if counts[idx] == 0:
                    shadow += 1
                    if idx > max_idx:
                        max_idx = idx
                counts[idx] += 1
            seg_sizes[q] = shadow
            seg_prefix_ok[q] = max_idx == shadow - 1
        best, best_mask = _gray_minima(sh, k)
        verdict.subsets_examined += 1 << k
        verdict.levels_checked += 1
        level_failed = False
        for q in range(1, k + 1):
            if best[q] is not None and best[q] < seg_sizes[q]:
                segment = source[:q]
                witness = _mask_to_ids(best_mask[q], source)
                verdict.failures.append(
                    MacaulayFailure(
                        lvl,
                        "nestedness",
                        q,
                        witness,
                        tuple(sorted(poset.lower_shadow(witness) if direction == "lower" else poset.upper_shadow(witness))),
                        segment,
                        tuple(sorted(poset.lower_shadow(segment) if direction == "lower" else poset.upper_shadow(segment))),
                    )
                )
                level_failed = True
            elif not seg_prefix_ok[q]:
                segment = source[:q]
                shadow_ids = (
                    poset.lower_shadow(segment) if direction == "lower" else poset.upper_shadow(segment)
                )
                verdict.failures.append(
                    MacaulayFailure(
                        lvl,
                        "continuity",
                        q,
                        segment,
                        tuple(sorted(shadow_ids)),
                        segment,
                        tuple(sorted(shadow_ids)),
                        expected_prefix=target[: len(shadow_ids)],
                    )
                )
                level_failed = True
            if level_failed and not all_failures:
                break
        if level_failed and not all_failures:
            break
    verdict.holds = not verdict.failures
    verdict.elapsed = time.perf_counter() - t0
    return verdict


def min_shadow(
    poset: RankedPoset,
    level: int,
    q: int,
    direction: str = "lower",
    max_subsets: int = DEFAULT_SUBSET_CAP,
):
    """Minimum shadow cardinality over all q-subsets of a level, with one minimizer."""
    ids = poset.level(level)
    k = len(ids)
    if q < 0 or q > k:
        raise ValueError(f"q={q} out of range for level of size {k}")
    if q == 0:
        return 0, frozenset()
    if (1 << k) > max_subsets:
        raise ResourceLimitError(
            f"level {level} has {k} elements; 2^{k} subsets exceed the cap of {max_subsets}"
        )
    neigh = poset.down if direction == "lower" else poset.up
    tindex = {}
    sh = []
    for x in ids:
        row = []
        for y in neigh[x]:
            row.append(tindex.setdefault(y, len(tindex)))
        sh.append(tuple(row))
    best, best_mask = _gray_minima(sh, k)
    return best[q], frozenset(_mask_to_ids(best_mask[q], ids))


def macaulay_by_definition(poset: RankedPoset, table: OrderTable, direction: str = "lower"):
    """Literal restatement of the defining containment, as an independent oracle.

    For every level and every subset A, the shadow of the initial segment of
    size |A| must be contained in the first |shadow(A)| elements of the next
    level.  Enumerates subsets directly with fresh set arithmetic; quadratic
    in ways the fast path is not, so keep it to small posets.
    """
    reverse = direction == "upper"
    shadow_of = poset.lower_shadow if direction == "lower" else poset.upper_shadow
    for lvl, source, _sh, target in _level_frames(poset, table, direction):
        k = len(source)
        for mask in range(1, 1 << k):
            A = [source[j] for j in range(k) if mask >> j & 1]
            seg = source[: len(A)]
            allowed = set(target[: len(shadow_of(A))])
            if not set(shadow_of(seg)) <= allowed:
                return False, (lvl, tuple(A))
    return True, None


def check_dual_lemma(poset: RankedPoset, table: OrderTable, **kw) -> bool:
    """Whether the verdict on (P, o) matches the verdict on (dual P, dual o)."""
    here = is_macaulay(poset, table, direction="lower", **kw)
    there = is_macaulay(dual(poset), dual_order(table), direction="lower", **kw)
    return here.holds == there.holds


def _level_pair_ok(poset, source, target, direction):
    """All subsets of `source` satisfy nestedness+continuity against `target`."""
    neigh = poset.down if direction == "lower" else poset.up
    tpos = {x: j for j, x in enumerate(target)}
    sh = [tuple(tpos[y] for y in neigh[x]) for x in source]
    k = len(source)
    counts = [0] * len(target)
    shadow = 0
    max_idx = -1
    seg_sizes = [0] * (k + 1)
    for q in range(1, k + 1):
        for idx in sh[q - 1]:
            if counts[idx] == 0:
                shadow += 1
                if idx > max_idx:
                    max_idx = idx
            counts[idx] += 1
        if max_idx != shadow - 1:
            return False
        seg_sizes[q] = shadow
    best, _ = _gray_minima(sh, k, want_masks=False)
    return all(best[q] is None or best[q] >= seg_sizes[q] for q in range(1, k + 1))


def search_macaulay_order(poset: RankedPoset, budget: int = 200_000) -> Optional[OrderTable]:
    """Backtracking search for a per-level order that passes is_macaulay.

    Levels are assigned bottom-up; a candidate permutation of level i is kept
    only if every subset of level i already satisfies the property against
    the fixed order of level i-1.  Elements are tried in canonical order, so
    the search is deterministic.  Returns None when the space is exhausted;
    raises SearchBudgetExceeded when `budget` permutations were tried first.
    """
    levels = [list(poset.level(i)) for i in range(poset.max_rank + 1)]
    chosen: list = [None] * len(levels)
    nodes = 0

    def extend(i):
        nonlocal nodes
        if i == len(levels):
            return True
        for perm in permutations(levels[i]):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"no verdict within {budget} permutations")
            chosen[i] = list(perm)
            if i > 0 and not _level_pair_ok(poset, list(perm), chosen[i - 1], "lower"):
                continue
            if extend(i + 1):
                return True
        chosen[i] = None
        return False

    if not extend(0):
        return None
    ids = [x for lvl in chosen for x in lvl]
    table = explicit_order(poset, ids)
    assert is_macaulay(poset, table, direction="lower").holds
    return table
