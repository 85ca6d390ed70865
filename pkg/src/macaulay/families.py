"""Named poset and ring families with their published shadow-minimizing orders.

Each family couples a construction with the block order known to make it
Macaulay.  Spider powers use border-chaser starts with per-block domination
permutations; colored square-free products sit on the dual side and take
hyperrectangle-chaser starts with lexicographic blocks; torus products use
colexicographic starts with lexicographic blocks, diamond powers the other
way around.  The Leck family carries no bundled order: none of the block
orders here fits it, so inventing one would be guesswork.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import OrderError, PosetError, RingError
from .orders import (
    OrderTable,
    RECIPE_RESOLVERS,
    dual_order,
    explicit_order,
    lex_order,
    rank_vectors,
)
from .poset import RankedPoset, cartesian_power, cartesian_product, dual, multiset_lattice
from .rings import (
    FieldSpec,
    Polynomial,
    QuotientRingSpec,
    build_ring,
    monomial,
    poset_of_monomials,
    rep_lex_order,
    tensor_power,
    tensor_ring,
)

# ---------------------------------------------------------------------------
# Combinatorial families


def star(n: int) -> RankedPoset:
    """n bottom elements below a single top; labels 0..n-1 plus head n."""
    if n < 1:
        raise PosetError("star needs at least one leg")
    return spider(n - 1, 1)


def spider(k: int, length: int) -> RankedPoset:
    """k+1 legs with `length` elements each, joined below a head of rank `length`.

    Elements are labeled 0..(k+1)*length; the leg of a non-head label is its
    residue mod k+1 and its rank is the quotient.
    """
    if k < 0 or length < 1:
        raise PosetError("spider needs k >= 0 and leg length >= 1")
    head = (k + 1) * length
    rank = [a // (k + 1) for a in range(head)] + [length]
    covers = []
    for a in range(head):
        b = a + (k + 1)
        covers.append((a, b if b < head else head))
    return RankedPoset(head + 1, covers, rank, list(range(head + 1)))


def colored_poset(ns: Sequence[int]) -> RankedPoset:
    """Product of dual stars (the class posets of square-free quotients)."""
    return cartesian_product([dual(star(n)) for n in ns])


# ---------------------------------------------------------------------------
# Block-order helpers over explicit factor tosets


def _positions_table(poset, factor_tosets, split, recipe, public_recipe):
    index = [{v: i for i, v in enumerate(t)} for t in factor_tosets]
    lengths = tuple(len(t) for t in factor_tosets)
    vecs = []
    for x in range(poset.n):
        parts = split(poset.labels[x])
        try:
            vecs.append(tuple(ix[p] for ix, p in zip(index, parts)))
        except KeyError:
            raise OrderError(f"label {poset.labels[x]!r} does not match the factor tosets")
    ranking = rank_vectors(list(set(vecs)), lengths, recipe)
    if len(ranking) != poset.n:
        raise OrderError("factor positions must be distinct per element")
    return OrderTable(poset, [ranking[v] for v in vecs], public_recipe)


def _split_flat(sizes):
    offsets = []
    at = 0
    for s in sizes:
        offsets.append((at, at + s))
        at += s

    def split(label):
        return [tuple(label[a:b]) for a, b in offsets]

    return split


def mermin_murai_order(poset: RankedPoset, ns: Sequence[int], side: str = "poset") -> OrderTable:
    """Block order for colored square-free products.

    Per factor the toset runs bottom first then the variables; the bottom is
    grouped with the first variable and every other variable is a block by
    itself.  Starts are ordered by the lexicographic hyperrectangle chaser
    (the dual-side counterpart of the chaser used on the star side), blocks
    lexicographically.  Factor sizes must be nonincreasing.  On the ring the
    result coincides with a domination order over the ambient variables.
    """
    ns = list(ns)
    if any(n < 1 for n in ns):
        raise OrderError("factor sizes must be positive")
    if ns != sorted(ns, reverse=True):
        raise OrderError("factor sizes must be nonincreasing")
    if side == "poset":
        tosets = [[n] + list(range(n)) for n in ns]
        split = (lambda label: list(label)) if len(ns) > 1 else (lambda label: [label])
    elif side == "ring":
        tosets = [
            [tuple([0] * n)] + [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
            for n in ns
        ]
        split = _split_flat(ns)
    else:
        raise OrderError(f"unknown side {side!r}")
    cuts = [[1] + list(range(3, n + 2)) for n in ns]
    recipe = {
        "kind": "block",
        "cuts": cuts,
        "starts": {"kind": "hc"},
        "blocks": {"kind": "lex"},
    }
    public = {"kind": "family-default", "family": "colored", "params": list(ns), "side": side}
    return _positions_table(poset, tosets, split, recipe, public)


def _be_block_perm(block_index):
    """Per-block domination permutation: coordinates with lower legs lead.

    The published rule scans leg labels from the largest down, taking unused
    coordinates largest-first and filling the last comparison slots first;
    equivalently, compare coordinates sorted by (leg, coordinate) ascending.
    """
    order = sorted(range(len(block_index)), key=lambda j: (block_index[j], j))
    return [j + 1 for j in order]


def bezrukov_elsasser_order(poset: RankedPoset, k: int, length: int, n: int) -> OrderTable:
    """Block order on a spider power: border-chaser starts, domination blocks."""
    expected = spider(k, length)
    toset = [j + h * (k + 1) for j in range(k + 1) for h in range(length)]
    toset.append((k + 1) * length)  # the head rides in the last leg's block
    if poset.n != expected.n ** n:
        raise OrderError("poset is not the expected spider power")
    tosets = [toset] * n
    split = (lambda label: list(label)) if n > 1 else (lambda label: [label])
    cuts = [[1 + j * length for j in range(k + 1)]] * n
    recipe = {
        "kind": "block",
        "cuts": cuts,
        "starts": {"kind": "bc"},
        "blocks": lambda b: {"kind": "dom", "perm": _be_block_perm(b)},
    }
    public = {"kind": "family-default", "family": "be", "params": [k, length, n]}
    return _positions_table(poset, tosets, split, recipe, public)


def bezrukov_elsasser_poset(k: int, length: int, n: int) -> RankedPoset:
    return cartesian_power(spider(k, length), n)


# ---------------------------------------------------------------------------
# Ring families


def kk_ring(d: int, field: FieldSpec = FieldSpec()) -> QuotientRingSpec:
    """Quotient by the squares of all variables (square-free monomials survive)."""
    gens = [monomial(tuple(2 if j == i else 0 for j in range(d))) for i in range(d)]
    return QuotientRingSpec(d, field, gens, d)


def cl_ring(caps: Sequence[int], field: FieldSpec = FieldSpec()) -> QuotientRingSpec:
    """Quotient by pure variable powers; the class poset is the grid of the caps."""
    caps = list(caps)
    d = len(caps)
    gens = [monomial(tuple(caps[i] if j == i else 0 for j in range(d))) for i in range(d)]
    return QuotientRingSpec(d, field, gens, sum(c - 1 for c in caps))


def _colored_basic(n: int, field: FieldSpec) -> QuotientRingSpec:
    gens = []
    for i in range(n):
        for j in range(i, n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            gens.append(monomial(tuple(e)))
    return QuotientRingSpec(n, field, gens, 1)


def colored_sf_ring(ns: Sequence[int], field: FieldSpec = FieldSpec(), D=None) -> QuotientRingSpec:
    """Tensor of quotients by the full degree-2 piece: one variable survives per factor."""
    return tensor_ring([_colored_basic(n, field) for n in ns], D)


def be_basic_ring(k: int, length: int, field: FieldSpec = FieldSpec()) -> QuotientRingSpec:
    """k+1 variables, powers capped at length+1, distinct variables annihilating."""
    d = k + 1
    gens = [monomial(tuple(length + 1 if j == i else 0 for j in range(d))) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            e = [0] * d
            e[i] = 1
            e[j] = 1
            gens.append(monomial(tuple(e)))
    return QuotientRingSpec(d, field, gens, length)


def be_ring(k: int, length: int, n: int, field: FieldSpec = FieldSpec(), D=None) -> QuotientRingSpec:
    return tensor_power(be_basic_ring(k, length, field), n, D)


def torus_basic_ring(p: int, field: FieldSpec = FieldSpec()) -> QuotientRingSpec:
    """Two capped legs glued at the top; the class Hasse graph is a 2p-cycle.

    The cap p+1 (rather than p) keeps the glued top class alive, matching
    the even-cycle description of these quotients.
    """
    if p < 2:
        raise RingError("torus parameter must be at least 2")
    gens = [
        monomial((p + 1, 0)),
        monomial((0, p + 1)),
        monomial((1, 1)),
        Polynomial({(p, 0): 1, (0, p): -1}),
    ]
    return QuotientRingSpec(2, field, gens, p)


def torus_ring(ks: Sequence[int], field: FieldSpec = FieldSpec(), D=None) -> QuotientRingSpec:
    return tensor_ring([torus_basic_ring(k, field) for k in ks], D)


def torus_order(poset: RankedPoset, ks: Sequence[int]) -> OrderTable:
    """Colexicographic starts over the two legs of each factor, lex inside blocks."""
    ks = list(ks)
    if ks != sorted(ks):
        raise OrderError("torus parameters must be nondecreasing")
    tosets = []
    for p in ks:
        t = [(0, 0)] + [(a, 0) for a in range(1, p)] + [(0, b) for b in range(1, p)] + [(0, p)]
        tosets.append(t)
    split = _split_flat([2] * len(ks))
    cuts = [[1, p + 1] for p in ks]
    recipe = {
        "kind": "block",
        "cuts": cuts,
        "starts": {"kind": "colex"},
        "blocks": {"kind": "lex"},
    }
    public = {"kind": "family-default", "family": "torus", "params": list(ks)}
    return _positions_table(poset, tosets, split, recipe, public)


def diamond_basic_ring(field: FieldSpec = FieldSpec()) -> QuotientRingSpec:
    """Three annihilating variables with all squares glued: 1, x1, x2, x3, top.

    The gluing relations are quadratic; linear ones would collapse the whole
    middle level, not just the squares.
    """
    gens = [monomial((3, 0, 0)), monomial((0, 3, 0)), monomial((0, 0, 3))]
    for i in range(3):
        for j in range(i + 1, 3):
            e = [0, 0, 0]
            e[i] = 1
            e[j] = 1
            gens.append(monomial(tuple(e)))
    gens.append(Polynomial({(2, 0, 0): 1, (0, 2, 0): -1}))
    gens.append(Polynomial({(0, 2, 0): 1, (0, 0, 2): -1}))
    return QuotientRingSpec(3, field, gens, 2)


def diamond_ring(n: int, field: FieldSpec = FieldSpec(), D=None) -> QuotientRingSpec:
    return tensor_power(diamond_basic_ring(field), n, D)


def diamond_order(poset: RankedPoset, n: int) -> OrderTable:
    """Lexicographic starts over blocks {1,x1} | {x2} | {x3,top}, colex inside."""
    toset = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 2)]
    split = _split_flat([3] * n)
    recipe = {
        "kind": "block",
        "cuts": [[1, 3, 4]] * n,
        "starts": {"kind": "lex"},
        "blocks": {"kind": "colex"},
    }
    public = {"kind": "family-default", "family": "diamond", "params": [n]}
    return _positions_table(poset, [toset] * n, split, recipe, public)


def leck_basic_ring(d: int, field: FieldSpec = FieldSpec()) -> QuotientRingSpec:
    """Square-free monomials minus the top: the Boolean lattice with its apex removed."""
    if d < 2:
        raise RingError("a basic factor needs at least two variables")
    gens = [monomial(tuple(2 if j == i else 0 for j in range(d))) for i in range(d)]
    gens.append(monomial(tuple([1] * d)))
    return QuotientRingSpec(d, field, gens, d - 1)


def leck_ring(ds: Sequence[int], kk_d: int, field: FieldSpec = FieldSpec(), D=None) -> QuotientRingSpec:
    """Tensor of top-removed Boolean factors with one square-free grid factor.

    No order is bundled: the known Macaulay order for these is neither a
    domination order nor a block order, and no construction is published.
    """
    specs = [leck_basic_ring(d, field) for d in ds]
    if kk_d > 0:
        specs.append(kk_ring(kk_d, field))
    return tensor_ring(specs, D)


def tensor_monomial_order(poset: RankedPoset, factor_sizes: Sequence[int]) -> OrderTable:
    """Factor-wise lexicographic order over per-factor degree-major class orders.

    When every factor's degree-major order is a monomial order, this product
    order is one on the tensor ring; it is the standard candidate for glued
    factors, where a flat degree-major order stops being multiplicative.
    """
    sizes = list(factor_sizes)
    split = _split_flat(sizes)

    def key(label):
        return tuple((sum(sub), sub) for sub in split(label))

    ids = sorted(range(poset.n), key=lambda x: key(poset.labels[x]))
    return explicit_order(
        poset, ids, {"kind": "tensor-degree-lex", "sizes": sizes}
    )


def spider_tuple_of_class(label, k: int, length: int, n: int):
    """Map a tensor class exponent vector to the spider-power element it mirrors."""
    d = k + 1
    out = []
    for f in range(n):
        sub = label[f * d: (f + 1) * d]
        nz = [(j, e) for j, e in enumerate(sub) if e]
        if not nz:
            out.append((k + 1) * length)  # dual rank 0 = the head
        else:
            (j, p), = nz
            out.append(j + (length - p) * (k + 1))
    return tuple(out) if n > 1 else out[0]


def be_ring_order(poset: RankedPoset, k: int, length: int, n: int) -> OrderTable:
    """Pullback of the dual spider-power order to the tensor ring's class poset."""
    q = bezrukov_elsasser_poset(k, length, n)
    od = dual_order(bezrukov_elsasser_order(q, k, length, n))
    pos = [od.position[q.id_of(spider_tuple_of_class(poset.labels[x], k, length, n))] for x in range(poset.n)]
    return OrderTable(
        poset, pos, {"kind": "family-default", "family": "be-ring", "params": [k, length, n]}
    )


# ---------------------------------------------------------------------------
# Builtin registry (CLI surface and acceptance drivers)


def _parse_ints(text):
    return [int(x) for x in text.split(",") if x != ""]


class Builtin:
    """A named construction: its poset, and the family's published order if any."""

    def __init__(self, name, poset, order_factory, ring_spec=None, candidate_factory=None):
        self.name = name
        self.poset = poset
        self._order_factory = order_factory
        self.ring_spec = ring_spec
        self._candidate_factory = candidate_factory

    def default_order(self) -> OrderTable:
        if self._order_factory is None:
            raise OrderError(f"{self.name}: no published order for this family")
        return self._order_factory(self.poset)

    def monomial_order_candidate(self) -> Optional[OrderTable]:
        if self._candidate_factory is None:
            return None
        return self._candidate_factory(self.poset)


def _ring_builtin(name, spec, order_factory, candidate_factory=None):
    ring = build_ring(spec)
    poset = poset_of_monomials(ring)
    return Builtin(name, poset, order_factory, spec, candidate_factory)


def builtin(spec_str: str, field: FieldSpec = FieldSpec()) -> Builtin:
    """Resolve builtin poset descriptors like multiset:3,4 or torus:3,2."""
    text = spec_str
    if text.startswith("builtin:"):
        text = text[len("builtin:"):]
    kind, _, rest = text.partition(":")
    if kind == "multiset":
        caps = _parse_ints(rest)
        return Builtin(text, multiset_lattice(caps), lex_order)
    if kind == "chain":
        (n,) = _parse_ints(rest)
        return Builtin(text, multiset_lattice([n]), lex_order)
    if kind == "star":
        (n,) = _parse_ints(rest)
        return Builtin(text, star(n), lambda p: bezrukov_elsasser_order(p, n - 1, 1, 1))
    if kind == "spider":
        k, l = _parse_ints(rest)
        return Builtin(text, spider(k, l), lambda p: bezrukov_elsasser_order(p, k, l, 1))
    if kind == "be":
        k, l, n = _parse_ints(rest)
        return Builtin(
            text,
            bezrukov_elsasser_poset(k, l, n),
            lambda p: bezrukov_elsasser_order(p, k, l, n),
        )
    if kind == "colored":
        ns = _parse_ints(rest)
        return Builtin(text, colored_poset(ns), lambda p: mermin_murai_order(p, ns, side="poset"))
    if kind == "kk":
        (d,) = _parse_ints(rest)
        return _ring_builtin(text, kk_ring(d, field), lex_order)
    if kind == "cl":
        caps = _parse_ints(rest)
        return _ring_builtin(text, cl_ring(caps, field), lex_order)
    if kind == "colored-ring":
        ns = _parse_ints(rest)
        return _ring_builtin(
            text, colored_sf_ring(ns, field), lambda p: mermin_murai_order(p, ns, side="ring")
        )
    if kind == "be-ring":
        lpow, d, n = _parse_ints(rest)
        return _ring_builtin(
            text,
            be_ring(d - 1, lpow - 1, n, field),
            lambda p: be_ring_order(p, d - 1, lpow - 1, n),
        )
    if kind == "torus":
        vals = _parse_ints(rest)
        p, n = (vals[0], vals[1]) if len(vals) > 1 else (vals[0], 1)
        ks = [p] * n
        return _ring_builtin(
            text,
            torus_ring(ks, field),
            lambda q: torus_order(q, ks),
            lambda q: tensor_monomial_order(q, [2] * n),
        )
    if kind == "diamond":
        (n,) = _parse_ints(rest)
        return _ring_builtin(
            text,
            diamond_ring(n, field),
            lambda p: diamond_order(p, n),
            lambda p: tensor_monomial_order(p, [3] * n),
        )
    if kind == "leck":
        ds_text, _, kk_text = rest.partition(",")
        ds = [int(x) for x in ds_text.split("+")]
        kk_d = int(kk_text) if kk_text else 0
        return _ring_builtin(text, leck_ring(ds, kk_d, field), None)
    raise PosetError(f"unknown builtin poset {spec_str!r}")


def ring_builtin(spec_str: str, field: FieldSpec = FieldSpec()) -> Builtin:
    b = builtin(spec_str, field)
    if b.ring_spec is None:
        raise RingError(f"{spec_str!r} is not a ring builtin")
    return b


def _resolve_family(poset, recipe):
    fam = recipe["family"]
    params = recipe["params"]
    if fam == "colored":
        return mermin_murai_order(poset, params, side=recipe.get("side", "poset"))
    if fam == "be":
        return bezrukov_elsasser_order(poset, *params)
    if fam == "be-ring":
        return be_ring_order(poset, *params)
    if fam == "torus":
        return torus_order(poset, params)
    if fam == "diamond":
        return diamond_order(poset, *params)
    raise OrderError(f"unknown family recipe {fam!r}")


def acceptance_constructions(field: FieldSpec = FieldSpec()):
    """The ten named constructions at desk sizes, each with a total order.

    Families with a published Macaulay order carry it; the Leck family has
    none and rides with the representative-lex order (its duality behaviour
    is what gets exercised, not Macaulayness).  Returns (name, poset, order,
    expect_macaulay) tuples.
    """
    out = []

    def add(name, b, expect, order=None):
        out.append((name, b.poset, order if order is not None else b.default_order(), expect))

    add("star:3", builtin("star:3", field), True)
    add("spider:2,2", builtin("spider:2,2", field), True)
    add("be:1,2,2", builtin("be:1,2,2", field), True)
    add("kk:3", builtin("kk:3", field), True)
    add("cl:3,4", builtin("cl:3,4", field), True)
    add("colored:2,2", builtin("colored:2,2", field), True)
    add("be-ring:3,2,2", builtin("be-ring:3,2,2", field), True)
    add("torus:3,2", builtin("torus:3,2", field), True)
    add("diamond:2", builtin("diamond:2", field), True)
    leck = builtin("leck:2,1", field)
    add("leck:2,1", leck, None, rep_lex_order(leck.poset))
    return out


RECIPE_RESOLVERS["family-default"] = _resolve_family
RECIPE_RESOLVERS["rep-lex"] = lambda poset, recipe: rep_lex_order(poset)
RECIPE_RESOLVERS["tensor-degree-lex"] = lambda poset, recipe: tensor_monomial_order(
    poset, recipe["sizes"]
)
