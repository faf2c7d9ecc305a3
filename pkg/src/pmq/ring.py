"""PMQ-rings over Z and prime fields, and their quadratic structure.

The PMQ-ring is the free module on the underlying set with basis product
<a><b> = <ab> when the product is defined and 0 otherwise.  For a normed,
maximally decomposable, coconnected and pairwise determined PMQ, the ring
is quadratic: it is presented by its norm-one generators with the degree-2
relations

    <a><b> = <b><a^b>        for all norm-one a, b,
    <a><b> = 0               whenever ab is undefined,

and the graded dimensions of the quadratic quotient equal the number of
elements of each norm.  The dimension check is run over the rationals by
exact elimination and is reported rather than assumed, so near-misses
(structures lacking one of the hypotheses) can be inspected honestly.

The dual presentation has one generator per norm-one element and one
relation per norm-two element c: the sum of <a>'<b>' over the pairs with
ab = c.

For geodesic PMQs of symmetric groups, ordering the transposition
generators by height gives a monomial basis: the products along strictly
increasing heights biject with the permutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import FinitePmq, conjugacy_classes
from .errors import PreconditionError
from .properties import is_coconnected, is_maximally_decomposable, is_pairwise_determined
from .symgeo import all_transpositions, height, identity, perm_mul, perm_norm

RingElem = dict[int, int]   # element index -> coefficient

__all__ = [
    "ring_elem",
    "ring_elem_labels",
    "ring_mul",
    "ring_add",
    "scalar_mul",
    "augmentation",
    "class_sum",
    "class_sum_centrality",
    "invariant_basis_is_class_sums",
    "QuadraticPresentation",
    "quadratic_presentation",
    "quadratic_quotient_dimensions",
    "degree2_kernel",
    "relator_span_dimension",
    "DualPresentation",
    "quadratic_dual",
    "dual_relators_span_annihilator",
    "pbw_check_sdgeo",
]


# ---------------------------------------------------------------------------
# arithmetic

def _trim(x: RingElem, mod: int) -> RingElem:
    if mod:
        return {k: v % mod for k, v in x.items() if v % mod}
    return {k: v for k, v in x.items() if v}


def ring_elem(q: FinitePmq, label_coeffs: dict[str, int], mod: int = 0) -> RingElem:
    return _trim({q.index(l): c for l, c in label_coeffs.items()}, mod)


def ring_elem_labels(q: FinitePmq, x: RingElem) -> dict[str, int]:
    """Label-to-coefficient map, the JSON-facing form of a ring element."""
    return {q.labels[a]: c for a, c in sorted(x.items())}


def ring_add(x: RingElem, y: RingElem, mod: int = 0) -> RingElem:
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + v
    return _trim(out, mod)


def scalar_mul(c: int, x: RingElem, mod: int = 0) -> RingElem:
    return _trim({k: c * v for k, v in x.items()}, mod)


def ring_mul(q: FinitePmq, x: RingElem, y: RingElem, mod: int = 0) -> RingElem:
    out: RingElem = {}
    prod = q.prod
    for a, ca in x.items():
        for b, cb in y.items():
            c = prod.get((a, b))
            if c is not None:
                out[c] = out.get(c, 0) + ca * cb
    return _trim(out, mod)


def augmentation(q: FinitePmq, x: RingElem, mod: int = 0) -> int:
    v = x.get(q.unit, 0)
    return v % mod if mod else v


def class_sum(q: FinitePmq, cls: Sequence[str]) -> RingElem:
    return {q.index(l): 1 for l in cls}


def class_sum_centrality(q: FinitePmq) -> bool:
    """Every conjugacy-class sum commutes with every basis element."""
    for cls in conjugacy_classes(q):
        s = class_sum(q, cls)
        for b in range(len(q)):
            e = {b: 1}
            if ring_mul(q, s, e) != ring_mul(q, e, s):
                return False
    return True


def invariant_basis_is_class_sums(q: FinitePmq) -> bool:
    """Solve the conjugation-invariance linear system and compare its
    solution space with the span of the class sums.

    Invariance under the adjoint action means invariance under every
    generator (-)^b, i.e. the coefficient function is constant on each
    conjugacy class; the solution space must be exactly the class-sum span.
    """
    n = len(q)
    classes = conjugacy_classes(q)
    # constraints: coeff[a] - coeff[a^b] = 0
    pivots: dict[int, list[Fraction]] = {}
    rows = []
    for a in range(n):
        for b in range(n):
            img = q.conj[a][b]
            if img != a:
                row = [Fraction(0)] * n
                row[a] += 1
                row[img] -= 1
                rows.append(row)
    rank = _rank(rows, n)
    return n - rank == len(classes)


def _rank(rows: list[list[Fraction]], width: int) -> int:
    mat = [row[:] for row in rows]
    rank = 0
    col = 0
    while col < width and rank < len(mat):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col] / pv
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# quadratic presentation

@dataclass(frozen=True)
class QuadraticPresentation:
    """Degree-1 generators (the norm-one elements, by label) and degree-2
    relators, stored as coefficient dicts over ordered generator pairs."""

    generators: tuple[str, ...]
    pair_relators: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    zero_relators: tuple[tuple[int, int], ...]

    def relator_vectors(self) -> list[dict[tuple[int, int], int]]:
        out: list[dict[tuple[int, int], int]] = []
        for left, right in self.pair_relators:
            if left != right:
                out.append({left: 1, right: -1})
        for pair in self.zero_relators:
            out.append({pair: 1})
        return out


def _tameness(q: FinitePmq, r_max: Optional[int] = None) -> Optional[str]:
    if q.norm is None:
        return "norm"
    ok, _ = is_maximally_decomposable(q)
    if not ok:
        return "maximally_decomposable"
    cocon, _ = is_coconnected(q)
    if not cocon:
        return "coconnected"
    pw, _, _ = is_pairwise_determined(q, r_max)
    if not pw:
        return "pairwise_determined"
    return None


def quadratic_presentation(
    q: FinitePmq, *, require_tame: bool = True, r_max: Optional[int] = None
) -> QuadraticPresentation:
    """The generators-and-relations data of the ring in degree <= 2.

    With ``require_tame`` (the default) the four hypotheses that make the
    presentation exhaustive are checked first and a failure refuses with the
    property's name; pass False to emit the same relator families for any
    normed, maximally decomposable structure, then judge the quotient by its
    graded dimensions.
    """
    norm = q.require_norm()
    if require_tame:
        failed = _tameness(q, r_max)
        if failed:
            raise PreconditionError(f"ring is not known quadratic: {failed} fails", failed=failed)
    else:
        ok, witness = is_maximally_decomposable(q)
        if not ok:
            raise PreconditionError(
                f"degree-one part does not generate: {witness}",
                failed="maximally_decomposable",
            )
    ones = [a for a in range(len(q)) if norm[a] == 1]
    pos = {a: i for i, a in enumerate(ones)}
    pair_relators = []
    zero_relators = []
    for a in ones:
        for b in ones:
            ab = q.prod.get((a, b))
            if ab is None:
                zero_relators.append((pos[a], pos[b]))
            left = (pos[a], pos[b])
            right = (pos[b], pos[q.conj[a][b]])
            pair_relators.append((left, right))
    return QuadraticPresentation(
        tuple(q.labels[a] for a in ones), tuple(pair_relators), tuple(zero_relators)
    )


def quadratic_quotient_dimensions(
    q: FinitePmq, max_degree: int, presentation: Optional[QuadraticPresentation] = None
) -> list[tuple[int, int, int]]:
    """Graded dimensions of the quadratic quotient vs. the norm census.

    Returns (degree, dim of quotient, number of elements of that norm) for
    degrees 0..max_degree.  The quotient dimensions are computed over the
    rationals, degree by degree: the degree-n part is the quotient of
    (degree n-1 part) tensor (generators) by the image of the relators
    multiplied in on the right.
    """
    norm = q.require_norm()
    pres = presentation or quadratic_presentation(q, require_tame=False)
    gens = list(range(len(pres.generators)))
    relators = pres.relator_vectors()
    census = [sum(1 for a in range(len(q)) if norm[a] == d) for d in range(max_degree + 1)]

    out = [(0, 1, census[0])]
    if max_degree == 0:
        return out
    # degree-1 basis: the generators themselves
    basis: list[tuple[int, ...]] = [(g,) for g in gens]
    red: dict[tuple[int, ...], list[Fraction]] = {
        (g,): [Fraction(i == g) for i in gens] for g in gens
    }
    prev_basis: list[tuple[int, ...]] = [()]
    out.append((1, len(basis), census[1]))
    for degree in range(2, max_degree + 1):
        # relation vectors inside (span of basis) tensor (generators)
        dim_prev = len(basis)
        width = dim_prev * len(gens)
        rows: list[list[Fraction]] = []
        for u in prev_basis:
            for rel in relators:
                row = [Fraction(0)] * width
                for (x, y), coeff in rel.items():
                    vec = red[u + (x,)]
                    for i, c in enumerate(vec):
                        if c:
                            row[i * len(gens) + y] += coeff * c
                rows.append(row)
        echelon, pivot_cols = _reduced_echelon(rows, width)
        free_cols = [c for c in range(width) if c not in pivot_cols]
        new_basis = [basis[c // len(gens)] + (c % len(gens),) for c in free_cols]
        col_of = {c: i for i, c in enumerate(free_cols)}
        new_red: dict[tuple[int, ...], list[Fraction]] = {}
        for i, u in enumerate(basis):
            vec_u = [Fraction(0)] * len(basis)
            vec_u[i] = Fraction(1)
            for y in gens:
                coords = [Fraction(0)] * width
                coords[i * len(gens) + y] = Fraction(1)
                coords = _reduce_by(echelon, pivot_cols, coords)
                new_red[u + (y,)] = [coords[c] for c in free_cols]
        prev_basis, basis, red = basis, new_basis, new_red
        out.append((degree, len(basis), census[degree]))
    return out


def _reduced_echelon(rows: list[list[Fraction]], width: int):
    mat = [row[:] for row in rows if any(row)]
    pivots: list[int] = []
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank], pivots


def _reduce_by(echelon: list[list[Fraction]], pivot_cols: list[int], vec: list[Fraction]):
    out = vec[:]
    for row, col in zip(echelon, pivot_cols):
        f = out[col]
        if f:
            out = [x - f * y for x, y in zip(out, row)]
    return out


def degree2_kernel(q: FinitePmq) -> list[dict[tuple[int, int], int]]:
    """Basis data for the full degree-2 kernel of generators -> ring:
    undefined pairs as monomial relators plus differences of pairs with the
    same defined product.  This is what the quadratic relators must span for
    the ring itself to be quadratic."""
    norm = q.require_norm()
    ones = [a for a in range(len(q)) if norm[a] == 1]
    pos = {a: i for i, a in enumerate(ones)}
    out: list[dict[tuple[int, int], int]] = []
    by_product: dict[int, list[tuple[int, int]]] = {}
    for a in ones:
        for b in ones:
            ab = q.prod.get((a, b))
            if ab is None:
                out.append({(pos[a], pos[b]): 1})
            else:
                by_product.setdefault(ab, []).append((pos[a], pos[b]))
    for pairs in by_product.values():
        for other in pairs[1:]:
            out.append({pairs[0]: 1, other: -1})
    return out


def relator_span_dimension(vectors: list[dict[tuple[int, int], int]], ngens: int) -> int:
    width = ngens * ngens
    rows = []
    for v in vectors:
        row = [Fraction(0)] * width
        for (x, y), c in v.items():
            row[x * ngens + y] += c
        rows.append(row)
    return _rank(rows, width)


# ---------------------------------------------------------------------------
# quadratic dual

@dataclass(frozen=True)
class DualPresentation:
    """Dual generators (one per norm-one element) and one relator per
    norm-two element: the sum of <a>'<b>' over its factorisations."""

    generators: tuple[str, ...]
    relators: tuple[tuple[str, tuple[tuple[int, int], ...]], ...]


def quadratic_dual(q: FinitePmq, *, require_tame: bool = True) -> DualPresentation:
    norm = q.require_norm()
    if require_tame:
        failed = _tameness(q)
        if failed:
            raise PreconditionError(f"dual presentation needs tameness: {failed} fails", failed=failed)
    ones = [a for a in range(len(q)) if norm[a] == 1]
    pos = {a: i for i, a in enumerate(ones)}
    twos = [c for c in range(len(q)) if norm[c] == 2]
    relators = []
    for c in twos:
        pairs = tuple(
            (pos[a], pos[b])
            for a in ones
            for b in ones
            if q.prod.get((a, b)) == c
        )
        relators.append((q.labels[c], pairs))
    return DualPresentation(tuple(q.labels[a] for a in ones), tuple(relators))


def dual_relators_span_annihilator(q: FinitePmq) -> bool:
    """The dual relators must span the annihilator of the quadratic relator
    space inside the dual of (generators tensor generators)."""
    pres = quadratic_presentation(q, require_tame=False)
    ngens = len(pres.generators)
    width = ngens * ngens
    rel_rank = relator_span_dimension(pres.relator_vectors(), ngens)
    dual = quadratic_dual(q, require_tame=False)
    dual_vectors = [
        {pair: 1 for pair in pairs} for _, pairs in dual.relators
    ]
    dual_rank = relator_span_dimension(dual_vectors, ngens)
    if dual_rank != width - rel_rank:
        return False
    # orthogonality: every dual relator kills every quadratic relator
    for dv in dual_vectors:
        for rel in pres.relator_vectors():
            if sum(dv.get(p, 0) * c for p, c in rel.items()) != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# monomial basis for symmetric geodesic rings

def pbw_check_sdgeo(d: int) -> tuple[bool, dict[int, int]]:
    """Monomials of transpositions with strictly increasing heights biject
    with permutations; returns the census by length, totalling d!.

    Each monomial multiplies to a permutation whose norm is the monomial's
    length, the monotone factorisation inverts the map, and the census per
    degree equals the norm census of the group.
    """
    import math

    from .symgeo import monotone_decomposition

    by_height = {
        h: [t for t in all_transpositions(d) if height(t) == h] for h in range(2, d + 1)
    }
    census: dict[int, int] = {0: 1}
    images = {identity(d): ()}
    ok = True
    heights = sorted(by_height)
    for r in range(1, d):
        for hs in itertools.combinations(heights, r):
            for combo in itertools.product(*(by_height[h] for h in hs)):
                sigma = identity(d)
                for t in combo:
                    sigma = perm_mul(sigma, t)
                if perm_norm(sigma) != r:
                    ok = False
                if sigma in images:
                    ok = False
                if monotone_decomposition(sigma) != list(combo):
                    ok = False
                images[sigma] = combo
                census[r] = census.get(r, 0) + 1
    if sum(census.values()) != math.factorial(d) or len(images) != math.factorial(d):
        ok = False
    return ok, census
