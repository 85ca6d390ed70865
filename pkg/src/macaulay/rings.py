"""Truncated graded quotients of polynomial rings over exact fields.

A ring model is built degree by degree up to an explicit truncation D: the
degree-i slice of the ideal is spanned by generator multiples (exact for a
homogeneous ideal, no Groebner machinery needed), monomials are reduced to
normal form against its RREF, and monomials with equal nonzero residue are
grouped into classes.  Everything downstream (Hilbert functions, the poset
of monomials, order checks) speaks in terms of these classes; any statement
involving degrees is implicitly "up to degree D".
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .errors import RingError
from .linalg import GFp, QQ, reduce_vector, rref
from .orders import OrderTable, RECIPE_RESOLVERS, explicit_order
from .poset import RankedPoset

DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "prime"  # "rationals" | "prime"
    p: Optional[int] = DEFAULT_PRIME

    def __post_init__(self):
        if self.kind not in ("rationals", "prime"):
            raise RingError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime" and (self.p is None or self.p < 2):
            raise RingError("prime field needs a modulus")

    def field(self):
        return QQ if self.kind == "rationals" else GFp(self.p)

    def to_json(self):
        return "q" if self.kind == "rationals" else f"p:{self.p}"

    @classmethod
    def from_json(cls, text):
        if text == "q":
            return cls("rationals", None)
        if text.startswith("p:"):
            return cls("prime", int(text[2:]))
        raise RingError(f"unknown field spec {text!r}")


RATIONALS = FieldSpec("rationals", None)


class Polynomial:
    """Sparse polynomial with Fraction coefficients keyed by exponent tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {}
        for exp, coef in dict(terms).items():
            c = Fraction(coef)
            if c != 0:
                self.terms[tuple(int(e) for e in exp)] = c

    def is_zero(self):
        return not self.terms

    def degree(self):
        if self.is_zero():
            raise RingError("zero polynomial has no degree")
        degs = {sum(e) for e in self.terms}
        if len(degs) != 1:
            raise RingError("polynomial is not homogeneous")
        return degs.pop()

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def to_json(self):
        return [
            {"exp": list(e), "coef": str(c)}
            for e, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(t["exp"]): Fraction(t["coef"]) for t in data})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({self.terms!r})"


def monomial(exp):
    return Polynomial({tuple(exp): 1})


@dataclass(frozen=True)
class QuotientRingSpec:
    """K[x_1..x_d]/H truncated at degree D, H given by homogeneous generators."""

    d: int
    field: FieldSpec
    generators: tuple
    D: int

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.d < 1:
            raise RingError("need at least one variable")
        if self.D < 0:
            raise RingError("truncation degree must be nonnegative")
        for g in self.generators:
            if g.is_zero():
                raise RingError("generators must be nonzero")
            if not g.is_homogeneous():
                raise RingError("generators must be homogeneous")
            if any(len(e) != self.d for e in g.terms):
                raise RingError("generator exponent length must match variable count")
            if g.degree() == 0:
                raise RingError("unit ideal: degree-0 generator makes 1 lie in H")

    def to_json(self):
        return {
            "d": self.d,
            "field": self.field.to_json(),
            "generators": [g.to_json() for g in self.generators],
            "D": self.D,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            data["d"],
            FieldSpec.from_json(data["field"]),
            tuple(Polynomial.from_json(g) for g in data["generators"]),
            data["D"],
        )

    def with_field(self, field_spec: FieldSpec) -> "QuotientRingSpec":
        return QuotientRingSpec(self.d, field_spec, self.generators, self.D)


def ring_spec_from_file(path) -> QuotientRingSpec:
    with open(path) as fh:
        return QuotientRingSpec.from_json(json.load(fh))


@dataclass(frozen=True)
class MonomialClass:
    """Monomials of one degree sharing a nonzero residue; rep is the lex-least."""

    degree: int
    members: frozenset
    rep: tuple


def monomials_of_degree(d, i):
    """Exponent vectors of degree i in d variables, lex ascending."""
    out = []
    for bars in combinations_with_replacement(range(d), i):
        v = [0] * d
        for b in bars:
            v[b] += 1
        out.append(tuple(v))
    out.sort()
    return out


class RingModel:
    """Built quotient ring: classes, normal forms and Hilbert values per degree."""

    def __init__(self, spec: QuotientRingSpec):
        self.spec = spec
        self.field = spec.field.field()
        self.monomials = []  # per degree, lex ascending
        self.ideal_rref = []  # per degree: (rows, pivots)
        self.nonpivot_cols = []  # per degree: non-pivot column indices
        self.classes = []  # per degree: list[MonomialClass], sorted by rep
        self.class_of = {}  # exponent tuple -> (degree, index) or None when zero in S
        self.hilb = []
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        F = self.field
        spec = self.spec
        for i in range(spec.D + 1):
            mons = monomials_of_degree(spec.d, i)
            col = {m: j for j, m in enumerate(mons)}
            rows = []
            for g in spec.generators:
                e = g.degree()
                if e > i:
                    continue
                for m in monomials_of_degree(spec.d, i - e):
                    row = [F.zero] * len(mons)
                    for exp, coef in g.terms.items():
                        shifted = tuple(a + b for a, b in zip(exp, m))
                        row[col[shifted]] = F.add(row[col[shifted]], F.of(coef))
                    rows.append(row)
            red, pivots = rref(rows, len(mons), F)
            piv_set = set(pivots)
            nonpiv = [j for j in range(len(mons)) if j not in piv_set]
            self.monomials.append(mons)
            self.ideal_rref.append((red, pivots))
            self.nonpivot_cols.append(nonpiv)
            self.hilb.append(len(nonpiv))
            self._classify(i, mons, red, pivots, nonpiv)
        if self.hilb[0] == 0:
            raise RingError("unit ideal: 1 lies in H")

    def _nf_vector(self, degree, exp):
        """Normal form of a monomial, as a tuple over non-pivot columns."""
        mons = self.monomials[degree]
        red, pivots = self.ideal_rref[degree]
        F = self.field
        j = mons.index(exp)
        vec = [F.zero] * len(mons)
        vec[j] = F.one
        _, residual = reduce_vector(red, pivots, vec, F)
        return tuple(residual[c] for c in self.nonpivot_cols[degree])

    def _classify(self, degree, mons, red, pivots, nonpiv):
        F = self.field
        piv_row = {c: r for r, c in enumerate(pivots)}
        fibers = {}
        for j, m in enumerate(mons):
            if j in piv_row:
                # nf(e_j) = e_j - pivot_row(j), which vanishes on pivot columns
                row = red[piv_row[j]]
                nf = tuple(F.neg(row[c]) for c in nonpiv)
            else:
                nf = tuple(F.one if c == j else F.zero for c in nonpiv)
            if all(x == F.zero for x in nf):
                self.class_of[m] = None
                continue
            fibers.setdefault(nf, []).append(m)
        classes = []
        for nf, members in fibers.items():
            classes.append(MonomialClass(degree, frozenset(members), min(members)))
        classes.sort(key=lambda c: c.rep)
        self.classes.append(classes)
        for idx, c in enumerate(classes):
            for m in c.members:
                self.class_of[m] = (degree, idx)

    # -- queries -----------------------------------------------------------

    @property
    def D(self):
        return self.spec.D

    def hilbert(self):
        return tuple(self.hilb)

    def class_count(self, degree):
        return len(self.classes[degree])

    def class_residue_coords(self, degree, idx):
        """Residue of a class in normal-form coordinates of its degree."""
        return self._nf_vector(degree, self.classes[degree][idx].rep)

    def mul_class_by_monomial(self, degree, idx, exp):
        """Class of (class representative) * x^exp, or None when the product is zero."""
        rep = self.classes[degree][idx].rep
        out = tuple(a + b for a, b in zip(rep, exp))
        if sum(out) > self.D:
            raise RingError(f"product degree {sum(out)} exceeds truncation {self.D}")
        return self.class_of.get(out)

    def mul_class_by_var(self, degree, idx, var):
        exp = tuple(1 if j == var else 0 for j in range(self.spec.d))
        return self.mul_class_by_monomial(degree, idx, exp)


def build_ring(spec: QuotientRingSpec) -> RingModel:
    """Materialize classes, normal forms and Hilbert values up to degree D."""
    return RingModel(spec)


def poset_of_monomials(ring: RingModel) -> RankedPoset:
    """Classes of degree <= D ordered by monomial division, ranked by degree.

    Covers are multiplications by a single variable (the upper shadow of a
    class is exactly its nonzero variable multiples).
    """
    ids = {}
    labels = []
    rank = []
    for i, classes in enumerate(ring.classes):
        for idx, c in enumerate(classes):
            ids[(i, idx)] = len(labels)
            labels.append(c.rep)
            rank.append(i)
    covers = set()
    for i, classes in enumerate(ring.classes):
        if i == ring.D:
            break
        for idx in range(len(classes)):
            for var in range(ring.spec.d):
                tgt = ring.mul_class_by_var(i, idx, var)
                if tgt is not None:
                    covers.add((ids[(i, idx)], ids[tgt]))
    return RankedPoset(len(labels), sorted(covers), rank, labels)


def is_level_linearly_independent(ring: RingModel):
    """True when each degree's distinct residues are linearly independent.

    Classes always span their degree slice, so independence is equivalent to
    the class count matching the Hilbert value; returns (flag, first failing
    degree or None).
    """
    for i in range(ring.D + 1):
        if len(ring.classes[i]) != ring.hilb[i]:
            return False, i
    return True, None


def class_poset_index(ring: RingModel, poset: RankedPoset):
    """Map (degree, class index) -> poset element id for poset_of_monomials output."""
    out = {}
    for x in range(poset.n):
        deg = poset.rank[x]
        rep = poset.labels[x]
        out[ring.class_of[rep]] = x
    return out


def rep_lex_order(poset: RankedPoset) -> OrderTable:
    """Plain lexicographic order on class representatives, across all degrees.

    For a quotient that identifies no monomials this restricts the ambient
    lexicographic order, so it is a monomial order.
    """
    ids = sorted(range(poset.n), key=lambda x: poset.labels[x])
    return explicit_order(poset, ids, {"kind": "rep-lex"})


def degree_rep_lex_order(poset: RankedPoset) -> OrderTable:
    """Degree first, then representative lex inside each degree.

    The default monomial-order candidate: within a degree lex is translation
    invariant, and across degrees multiplication preserves the degree gap,
    so this is a monomial order on monomial quotients and on rings whose
    only identifications happen inside single degrees of basic factors.
    """
    ids = sorted(range(poset.n), key=lambda x: (poset.rank[x], poset.labels[x]))
    return explicit_order(poset, ids, {"kind": "degree-rep-lex"})


RECIPE_RESOLVERS["degree-rep-lex"] = lambda poset, recipe: degree_rep_lex_order(poset)


def is_monomial_order(ring: RingModel, table: OrderTable):
    """Check multiplicativity: m1 < m2 implies m*m1 < m*m2 when both products live.

    Returns (flag, counterexample) where the counterexample is a triple of
    class representatives (m1, m2, m).
    """
    poset = table.poset
    pos = table.position
    all_classes = [(poset.rank[x], poset.labels[x], x) for x in range(poset.n)]
    for deg_m, rep_m, xm in all_classes:
        if deg_m == 0:
            continue
        for deg1, rep1, x1 in all_classes:
            if deg1 + deg_m > ring.D:
                continue
            for deg2, rep2, x2 in all_classes:
                if x1 == x2 or deg2 + deg_m > ring.D:
                    continue
                if pos[x1] >= pos[x2]:
                    continue
                p1 = ring.class_of.get(tuple(a + b for a, b in zip(rep1, rep_m)))
                p2 = ring.class_of.get(tuple(a + b for a, b in zip(rep2, rep_m)))
                if p1 is None or p2 is None:
                    continue
                y1 = _class_id(poset, ring, p1)
                y2 = _class_id(poset, ring, p2)
                # strict reading: the products must be distinct and ordered
                if y1 == y2 or pos[y1] >= pos[y2]:
                    return False, (rep1, rep2, rep_m)
    return True, None


def _class_id(poset, ring, key):
    deg, idx = key
    return poset.id_of(ring.classes[deg][idx].rep)


def recognize_tree_ring(ring: RingModel):
    """Detect a tree-shaped poset of monomials and return its leg decomposition.

    When the Hasse graph is a tree, the nonzero monomials must be pure powers
    of pairwise-annihilating variables; returns [(variable, max exponent)]
    for the live variables, or None.  Verdicts are relative to degree D.
    """
    poset = poset_of_monomials(ring)
    if len(poset.covers) != poset.n - 1:
        return None
    d = ring.spec.d
    legs = {}
    for x in range(poset.n):
        if poset.rank[x] == 0:
            continue
        deg, idx = ring.class_of[poset.labels[x]]
        pures = {
            next(j for j, e in enumerate(m) if e) for m in ring.classes[deg][idx].members
            if sum(1 for e in m if e) == 1
        }
        mixed = any(sum(1 for e in m if e) > 1 for m in ring.classes[deg][idx].members)
        if len(pures) != 1 or mixed:
            return None
        var = pures.pop()
        legs[var] = max(legs.get(var, 0), deg)
    live = sorted(legs)
    for i in live:
        for j in live:
            if i < j and ring.D >= 2:
                exp = tuple((1 if k in (i, j) else 0) for k in range(d))
                if ring.class_of.get(exp) is not None:
                    return None
    return [(i, legs[i]) for i in live]


# ---------------------------------------------------------------------------
# Tensor products (combined quotients)


def _lift(poly: Polynomial, d_total, offset):
    return Polynomial(
        {
            tuple([0] * offset + list(e) + [0] * (d_total - offset - len(e))): c
            for e, c in poly.terms.items()
        }
    )


def tensor_ring(specs: Sequence[QuotientRingSpec], D: Optional[int] = None) -> QuotientRingSpec:
    """Combined quotient on the disjoint union of the variables.

    The default truncation is the sum of the factor truncations, which keeps
    every product of factor classes visible.
    """
    if not specs:
        raise RingError("tensor of zero rings is not defined")
    fields = {s.field for s in specs}
    if len(fields) != 1:
        raise RingError("tensor factors must share a field")
    d_total = sum(s.d for s in specs)
    gens = []
    offset = 0
    for s in specs:
        gens.extend(_lift(g, d_total, offset) for g in s.generators)
        offset += s.d
    if D is None:
        D = sum(s.D for s in specs)
    return QuotientRingSpec(d_total, specs[0].field, tuple(gens), D)


def tensor_power(spec: QuotientRingSpec, n: int, D: Optional[int] = None) -> QuotientRingSpec:
    return tensor_ring([spec] * n, D)
