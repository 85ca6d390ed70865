"""Hilbert functions, initial monomial data, segment spaces, Macaulay rings.

Linear algebra here runs in two coordinate systems.  Normal-form coordinates
(the non-pivot monomials of each degree) are an honest basis of the degree
slice and are order-free; they are used to span ideals and measure
dimensions.  Basis coordinates re-express vectors over a leveled monomial
basis sorted ascending by a total order, so that RREF pivots read off
initial monomials.

Initial segment spaces follow the dual-side convention: the segment of size
q in a degree consists of the q order-largest classes.  That is the side on
which "the segment space is an ideal" characterizes Macaulay rings.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import RingError, ResourceLimitError
from .linalg import express_in_basis, in_row_space, rref, rref_with_transform
from .orders import OrderTable
from .poset import RankedPoset, reachability
from .rings import (
    Polynomial,
    RingModel,
    degree_rep_lex_order,
    is_level_linearly_independent,
    is_monomial_order,
    monomials_of_degree,
    poset_of_monomials,
)
from .verify import MacaulayVerdict, is_macaulay

MAX_ANTICHAIN_GROUND = 24


class RingContext:
    """A ring together with its class poset and cached residue matrices."""

    def __init__(self, ring: RingModel, poset: Optional[RankedPoset] = None):
        self.ring = ring
        self.poset = poset if poset is not None else poset_of_monomials(ring)
        self._residues = {}
        self._level_ids = [tuple(self.poset.level(i)) for i in range(ring.D + 1)]
        lli, lli_deg = is_level_linearly_independent(ring)
        self.lli = lli
        self.lli_fail_degree = lli_deg

    def classes_at(self, degree):
        return self._level_ids[degree] if degree <= self.ring.D else ()

    def residue(self, element_id):
        """Normal-form coordinates of a class, cached."""
        if element_id not in self._residues:
            deg, idx = self.ring.class_of[self.poset.labels[element_id]]
            self._residues[element_id] = self.ring.class_residue_coords(deg, idx)
        return self._residues[element_id]

    def nf_width(self, degree):
        return self.ring.hilb[degree]

    def mul_by_monomial(self, element_id, exp):
        deg, idx = self.ring.class_of[self.poset.labels[element_id]]
        tgt = self.ring.mul_class_by_monomial(deg, idx, exp)
        if tgt is None:
            return None
        tdeg, tidx = tgt
        return self.poset.id_of(self.ring.classes[tdeg][tidx].rep)

    def span_dim(self, degree, class_ids):
        """Dimension of the span of class residues inside the degree slice."""
        if not class_ids:
            return 0
        if self.lli:
            return len(class_ids)
        rows = [self.residue(x) for x in class_ids]
        return len(rref(rows, self.nf_width(degree), self.ring.field)[0])


# ---------------------------------------------------------------------------
# Ideals


class IdealSpec:
    """A homogeneous ideal of the ring, spanned degree by degree.

    Slices are generated by generator multiples, which is exact for
    homogeneous input.  Construction audits closure under multiplication by
    the variables up to degree D.
    """

    def __init__(self, ctx: RingContext, generators: Sequence[Polynomial], audit=True):
        self.ctx = ctx
        ring = ctx.ring
        F = ring.field
        self.generators = tuple(generators)
        gens_classes = []
        for g in self.generators:
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise RingError("ideal generators must be homogeneous")
            e = g.degree()
            if e > ring.D:
                raise RingError(f"generator degree {e} exceeds truncation {ring.D}")
            comb = {}
            for exp, coef in g.terms.items():
                key = ring.class_of.get(tuple(exp))
                if key is None:
                    continue
                comb[key] = F.add(comb.get(key, F.zero), F.of(coef))
            comb = {k: v for k, v in comb.items() if v != F.zero}
            if comb:
                gens_classes.append((e, comb))
        self._slices = []  # per degree: (rref rows over nf coords, pivots)
        self.dims = []
        for i in range(ring.D + 1):
            rows = []
            for e, comb in gens_classes:
                if e > i:
                    continue
                for m in monomials_of_degree(ring.spec.d, i - e):
                    vec = [F.zero] * ring.hilb[i]
                    alive = False
                    for (cdeg, cidx), coef in comb.items():
                        tgt = ring.mul_class_by_monomial(cdeg, cidx, m)
                        if tgt is None:
                            continue
                        res = ring.class_residue_coords(*tgt)
                        for j, r in enumerate(res):
                            if r != F.zero:
                                vec[j] = F.add(vec[j], F.mul(coef, r))
                        alive = True
                    if alive and any(v != F.zero for v in vec):
                        rows.append(vec)
            red, pivots = rref(rows, ring.hilb[i], F)
            self._slices.append((red, pivots))
            self.dims.append(len(red))
        if audit:
            self._audit_closure()

    def _audit_closure(self):
        ring = self.ctx.ring
        F = ring.field
        for i in range(ring.D):
            red, _ = self._slices[i]
            nxt_red, nxt_piv = self._slices[i + 1]
            nonpiv = ring.nonpivot_cols[i]
            mons = ring.monomials[i]
            for row in red:
                for var in range(ring.spec.d):
                    vec = [F.zero] * ring.hilb[i + 1]
                    for j, coef in enumerate(row):
                        if coef == F.zero:
                            continue
                        src = mons[nonpiv[j]]
                        exp = tuple(e + (1 if k == var else 0) for k, e in enumerate(src))
                        key = ring.class_of.get(exp)
                        if key is None:
                            continue
                        res = ring.class_residue_coords(*key)
                        for t, r in enumerate(res):
                            if r != F.zero:
                                vec[t] = F.add(vec[t], F.mul(coef, r))
                    if not in_row_space(nxt_red, nxt_piv, vec, F):
                        raise RingError(f"ideal slices not closed under x_{var+1} at degree {i}")

    def slice(self, degree):
        return self._slices[degree]


def ideal_in_ring(ctx: RingContext, generators: Sequence[Polynomial]) -> IdealSpec:
    return IdealSpec(ctx, generators)


def hilbert_function(ctx: RingContext, ideal: IdealSpec) -> dict:
    """Degreewise dimension of the ideal, computed by exact RREF."""
    return {i: ideal.dims[i] for i in range(ctx.ring.D + 1)}


# ---------------------------------------------------------------------------
# Leveled bases and initial monomial data


@dataclass(frozen=True)
class LeveledMonomialBasis:
    """Per degree, an ordered list of class ids whose residues form a basis."""

    levels: tuple


def leveled_basis(ctx: RingContext, table: OrderTable) -> LeveledMonomialBasis:
    """Greedy basis: scan classes ascending by the order, keep independent ones.

    With level linear independence every class is kept, which is the unique
    choice; otherwise the greedy scan makes initial-monomial data
    deterministic and compatible with the order.
    """
    ring = ctx.ring
    F = ring.field
    levels = []
    for i in range(ring.D + 1):
        ids = table.level_in_order(i)
        if ctx.lli:
            levels.append(tuple(ids))
            continue
        kept = []
        rows = []
        for x in ids:
            cand = rows + [list(ctx.residue(x))]
            if len(rref(cand, ring.hilb[i], F)[0]) > len(rows):
                rows, _ = rref(cand, ring.hilb[i], F)
                kept.append(x)
        if len(kept) != ring.hilb[i]:
            raise RingError(f"degree {i}: classes do not span the slice")
        levels.append(tuple(kept))
    return LeveledMonomialBasis(tuple(levels))


@dataclass
class InitialMonomialData:
    ims: tuple  # per degree, class ids (ascending by the order)
    imv_dims: tuple
    imi_dims: tuple
    imi_classes: tuple  # per degree, frozenset of class ids


def upset_closure(poset: RankedPoset, seed_ids) -> frozenset:
    """All elements weakly above the seeds."""
    seen = set(seed_ids)
    stack = list(seed_ids)
    while stack:
        x = stack.pop()
        for y in poset.up[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def initial_monomial_data(
    ctx: RingContext,
    ideal: IdealSpec,
    table: OrderTable,
    basis: Optional[LeveledMonomialBasis] = None,
) -> InitialMonomialData:
    """Initial monomial sets, the dimensions of their span, and of their ideal.

    The degree-i initial monomial set consists of the RREF pivot classes of
    the ideal slice written over the leveled basis with columns ascending by
    the order; so a pivot is the order-least monomial of some slice element.
    """
    ring = ctx.ring
    F = ring.field
    if basis is None:
        basis = leveled_basis(ctx, table)
    ims = []
    imv_dims = []
    for i in range(ring.D + 1):
        cols = basis.levels[i]
        bas_rows = [list(ctx.residue(x)) for x in cols]
        if bas_rows:
            b_red, b_piv, b_tr = rref_with_transform(bas_rows, ring.hilb[i], F)
        rows_b = []
        red_i, _ = ideal.slice(i)
        for row in red_i:
            coeffs = express_in_basis(b_red, b_piv, b_tr, list(row), F)
            if coeffs is None:
                raise RingError(f"degree {i}: ideal slice escapes the leveled basis span")
            rows_b.append(coeffs)
        red_b, piv_b = rref(rows_b, len(cols), F)
        ims.append(tuple(cols[c] for c in piv_b))
        imv_dims.append(len(piv_b))
    gens = [x for lvl in ims for x in lvl]
    closure = upset_closure(ctx.poset, gens) if gens else frozenset()
    imi_classes = []
    imi_dims = []
    for i in range(ring.D + 1):
        here = frozenset(x for x in closure if ctx.poset.rank[x] == i)
        imi_classes.append(here)
        imi_dims.append(ctx.span_dim(i, sorted(here)))
    return InitialMonomialData(tuple(ims), tuple(imv_dims), tuple(imi_dims), tuple(imi_classes))


# ---------------------------------------------------------------------------
# Segment spaces


@dataclass
class GradedSubspace:
    """Per-degree RREF over leveled-basis columns, plus true dimensions."""

    columns: tuple  # per degree, class ids used as coordinates
    rows: tuple  # per degree, RREF rows over those columns
    dims: tuple


def dual_segment(table: OrderTable, level: int, q: int):
    """The q order-largest elements of a level (the dual-side initial segment)."""
    return table.level_in_order(level, reverse=True)[:q]


def initial_segment_space(
    ctx: RingContext, v_dims, table: OrderTable, basis: Optional[LeveledMonomialBasis] = None
):
    """Span of the per-degree dual segments whose sizes are prescribed by v_dims.

    Returns (GradedSubspace, segment class ids per degree).  Dimensions can
    drop below the segment size exactly when the ring is not level linearly
    independent.
    """
    ring = ctx.ring
    F = ring.field
    if basis is None:
        basis = leveled_basis(ctx, table)
    if isinstance(v_dims, dict):
        v_dims = [v_dims.get(i, 0) for i in range(ring.D + 1)]
    v_dims = list(v_dims) + [0] * (ring.D + 1 - len(v_dims))
    segs = []
    col_rows = []
    dims = []
    for i in range(ring.D + 1):
        q = v_dims[i]
        avail = len(ctx.classes_at(i))
        if q < 0 or q > avail:
            raise RingError(f"degree {i}: requested {q} classes, only {avail} exist")
        seg = tuple(dual_segment(table, i, q))
        segs.append(seg)
        cols = basis.levels[i]
        bas_rows = [list(ctx.residue(x)) for x in cols]
        if bas_rows:
            b_red, b_piv, b_tr = rref_with_transform(bas_rows, ring.hilb[i], F)
            rows_b = []
            for x in seg:
                coeffs = express_in_basis(b_red, b_piv, b_tr, list(ctx.residue(x)), F)
                rows_b.append(coeffs)
            red_b, _ = rref(rows_b, len(cols), F)
        else:
            red_b = []
        col_rows.append(tuple(tuple(r) for r in red_b))
        dims.append(len(red_b))
    space = GradedSubspace(tuple(tuple(b) for b in basis.levels), tuple(col_rows), tuple(dims))
    return space, tuple(segs)


def segment_is_ideal(ctx: RingContext, segments) -> tuple:
    """Whether per-degree class prefixes are closed under upper shadows.

    A monomial space is an ideal exactly when each level's upper shadow lands
    in the next level's part; returns (flag, first failing degree or None).
    """
    poset = ctx.poset
    sets = [frozenset(s) for s in segments]
    sets += [frozenset()] * (ctx.ring.D + 1 - len(sets))
    for i in range(ctx.ring.D):
        nxt = sets[i + 1]
        for x in sets[i]:
            for y in poset.up[x]:
                if y not in nxt:
                    return False, i
    return True, None


# ---------------------------------------------------------------------------
# Macaulay ring verification


@dataclass
class IdealWitness:
    generator_labels: tuple
    profile: tuple
    failing_degree: int
    kind: str  # "segment-not-ideal" | "hilbert-mismatch"


@dataclass
class RingMacaulayVerdict:
    holds: Optional[bool]
    mode: str
    lli: bool
    lli_fail_degree: Optional[int]
    monomial_order_verified: Optional[bool] = None
    monomial_order_counterexample: Optional[tuple] = None
    order_is_monomial: Optional[bool] = None
    order_counterexample: Optional[tuple] = None
    hypothesis_ok: bool = True
    hypothesis_reason: Optional[str] = None
    scope: str = "full"
    poset_verdict: Optional[MacaulayVerdict] = None
    ideal_witnesses: list = dc_field(default_factory=list)
    ideals_checked: int = 0
    agreement: Optional[bool] = None

    def to_dict(self, poset=None):
        return {
            "holds": self.holds,
            "mode": self.mode,
            "scope": self.scope,
            "order_is_monomial": self.order_is_monomial,
            "order_counterexample": (
                [str(x) for x in self.order_counterexample]
                if self.order_counterexample
                else None
            ),
            "hypotheses": {
                "level_linear_independence": self.lli,
                "lli_failing_degree": self.lli_fail_degree,
                "monomial_order_verified": self.monomial_order_verified,
                "monomial_order_counterexample": (
                    [str(x) for x in self.monomial_order_counterexample]
                    if self.monomial_order_counterexample
                    else None
                ),
                "ok": self.hypothesis_ok,
                "reason": self.hypothesis_reason,
            },
            "poset_verdict": self.poset_verdict.to_dict(poset) if self.poset_verdict else None,
            "ideal_witnesses": [
                {
                    "generators": [str(l) for l in w.generator_labels],
                    "profile": list(w.profile),
                    "failing_degree": w.failing_degree,
                    "kind": w.kind,
                }
                for w in self.ideal_witnesses
            ],
            "ideals_checked": self.ideals_checked,
            "agreement": self.agreement,
        }


def _antichains(poset: RankedPoset, ground):
    """All antichains of the given ground elements (including the empty one)."""
    above = reachability(poset)
    comparable = {}
    for x in ground:
        comparable[x] = {y for y in ground if y in above[x] or x in above[y]} - {x}
    out = []

    def extend(i, chosen):
        out.append(tuple(chosen))
        for j in range(i, len(ground)):
            x = ground[j]
            if all(x not in comparable[c] for c in chosen):
                chosen.append(x)
                extend(j + 1, chosen)
                chosen.pop()

    extend(0, [])
    return out


def check_monomial_ideal_profile(ctx: RingContext, table: OrderTable, upset_ids):
    """Segment test for one monomial ideal given as an upset of the class poset.

    Returns (profile, witness or None): the profile is the degreewise
    dimension of the ideal, and the witness describes the first degree where
    the segment space of that profile fails to be an ideal of equal size.
    """
    ring = ctx.ring
    by_degree = [sorted(x for x in upset_ids if ctx.poset.rank[x] == i) for i in range(ring.D + 1)]
    profile = tuple(ctx.span_dim(i, by_degree[i]) for i in range(ring.D + 1))
    segs = [tuple(dual_segment(table, i, profile[i])) for i in range(ring.D + 1)]
    ok, fail_deg = segment_is_ideal(ctx, segs)
    if not ok:
        return profile, (fail_deg, "segment-not-ideal")
    for i in range(ring.D + 1):
        if ctx.span_dim(i, segs[i]) != profile[i]:
            return profile, (i, "hilbert-mismatch")
    return profile, None


def is_macaulay_ring(
    ring: RingModel,
    table: OrderTable,
    mode: str = "both",
    max_gen_degree: Optional[int] = None,
    allow_non_lli: bool = False,
    monomial_order_candidate: Optional[OrderTable] = None,
    max_subsets: int = None,
    ctx: Optional[RingContext] = None,
) -> RingMacaulayVerdict:
    """Decide whether dual-side segment spaces of ideals are again ideals.

    mode="monomial-ideals" enumerates the monomial ideals generated in
    degrees <= max_gen_degree as upsets of the class poset and tests each
    profile.  mode="poset" checks the class poset on the upper-shadow side,
    which by the correspondence between the two sides needs level linear
    independence plus a verified monomial order; the default candidate is
    the degree-major representative-lex order.  mode="both" cross-checks.
    """
    if ctx is None:
        ctx = RingContext(ring)
    poset = ctx.poset
    if table.poset != poset:
        raise RingError("order table must be over the ring's poset of monomials")
    verdict = RingMacaulayVerdict(None, mode, ctx.lli, ctx.lli_fail_degree)
    # informative: the supplied order itself need not be multiplicative
    verdict.order_is_monomial, verdict.order_counterexample = is_monomial_order(ring, table)

    def run_poset():
        cand = monomial_order_candidate or degree_rep_lex_order(poset)
        ok, cex = is_monomial_order(ring, cand)
        verdict.monomial_order_verified = ok
        verdict.monomial_order_counterexample = cex
        if not ctx.lli:
            verdict.hypothesis_ok = False
            verdict.hypothesis_reason = (
                f"level linear independence fails at degree {ctx.lli_fail_degree}"
            )
            return None
        if not ok:
            verdict.hypothesis_ok = False
            verdict.hypothesis_reason = "no verified monomial order on the class poset"
            return None
        kw = {"max_subsets": max_subsets} if max_subsets else {}
        return is_macaulay(poset, table, direction="upper", **kw)

    def run_ideals():
        if not ctx.lli and not allow_non_lli:
            verdict.hypothesis_ok = False
            verdict.hypothesis_reason = (
                f"level linear independence fails at degree {ctx.lli_fail_degree}"
            )
            return None
        if not ctx.lli:
            verdict.scope = "monomial-ideals-only"
        g = max_gen_degree
        if g is None:
            g = min(3, max(ring.D - 1, 0))
        ground = [x for x in range(poset.n) if poset.rank[x] <= g]
        if len(ground) > MAX_ANTICHAIN_GROUND:
            raise ResourceLimitError(
                f"{len(ground)} generator candidates exceed the antichain cap"
            )
        failures = []
        checked = 0
        for anti in _antichains(poset, ground):
            checked += 1
            ups = upset_closure(poset, anti) if anti else frozenset()
            profile, bad = check_monomial_ideal_profile(ctx, table, ups)
            if bad is not None:
                failures.append(
                    IdealWitness(
                        tuple(poset.labels[x] for x in anti), profile, bad[0], bad[1]
                    )
                )
        verdict.ideals_checked = checked
        return failures

    if mode == "poset":
        pv = run_poset()
        verdict.poset_verdict = pv
        verdict.holds = pv.holds if pv is not None else None
    elif mode == "monomial-ideals":
        fails = run_ideals()
        if fails is None:
            verdict.holds = None
        else:
            verdict.ideal_witnesses = fails
            verdict.holds = not fails
    elif mode == "both":
        pv = run_poset()
        verdict.poset_verdict = pv
        fails = run_ideals() if verdict.hypothesis_ok else None
        if pv is None or fails is None:
            verdict.holds = None
        else:
            verdict.ideal_witnesses = fails
            ideals_hold = not fails
            verdict.agreement = pv.holds == ideals_hold
            verdict.holds = pv.holds and ideals_hold
    else:
        raise RingError(f"unknown mode {mode!r}")
    return verdict
