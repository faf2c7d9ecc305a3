"""Named structures used across the test-suite, scripts and documentation.

Everything here is a plain construction over the core tables: abelian
truncations of the natural numbers, the six-element "Segre" PMQ whose ring
is the quadratic algebra with one identified product, quandles of
transpositions with the trivial product, and the geodesic PMQs of symmetric
groups (re-exported from the permutation module).
"""

from __future__ import annotations

from .core import FiniteGroup, FinitePmq
from .symgeo import all_transpositions, perm_label, sym_geodesic_pmq, sym_geodesic_pair

__all__ = [
    "unit_pmq",
    "group_pmq",
    "cyclic_group",
    "natural_truncation",
    "natural_with_double_one",
    "segre_pmq",
    "pointed_set_pmq",
    "transposition_quandle",
    "norm_one_truncation",
    "sym_geodesic_pmq",
    "sym_geodesic_pair",
    "rack_three_example",
]


def unit_pmq() -> FinitePmq:
    return FinitePmq.build(["1"], 0, [[0]], {(0, 0): 0}, [0])


def cyclic_group(n: int) -> FiniteGroup:
    labels = [str(i) for i in range(n)]
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup.from_table(labels, mult)


def group_pmq(g: FiniteGroup) -> FinitePmq:
    """A group is a PMQ: total product, conjugation a^b = b^-1 a b."""
    n = len(g)
    conj = [[g.conj(a, b) for b in range(n)] for a in range(n)]
    prod = {(a, b): g.mult[a][b] for a in range(n) for b in range(n)}
    return FinitePmq.build(g.labels, g.unit, conj, prod)


def natural_truncation(n: int) -> FinitePmq:
    """{0, ..., n} with addition defined when the sum stays in range and the
    identity norm."""
    labels = [str(i) for i in range(n + 1)]
    conj = [[a for _ in range(n + 1)] for a in range(n + 1)]
    prod = {(a, b): a + b for a in range(n + 1) for b in range(n + 1) if a + b <= n}
    return FinitePmq.build(labels, 0, conj, prod, list(range(n + 1)))


def natural_with_double_one(n: int) -> FinitePmq:
    """{0, 1, 1', 2, ..., n} with 1' + 1' = 2, 1' + m = m + 1 for m >= 1.

    Abelian, maximally decomposable but not coconnected: 2 has the four
    decompositions (1,1), (1',1'), (1,1') and (1',1) into norm-1 elements and
    only the last two are connected by a standard move.
    """
    if n < 2:
        raise ValueError("needs n >= 2 so that 1' + 1' exists")
    labels = [str(i) for i in range(n + 1)] + ["1'"]
    m = len(labels)
    prime = m - 1
    norm = list(range(n + 1)) + [1]

    def add(a: int, b: int) -> int | None:
        va = 1 if a == prime else a
        vb = 1 if b == prime else b
        if a == prime and b == 0:
            return prime
        if b == prime and a == 0:
            return prime
        s = va + vb
        return s if s <= n else None

    conj = [[a for _ in range(m)] for a in range(m)]
    prod = {}
    for a in range(m):
        for b in range(m):
            c = add(a, b)
            if c is not None:
                prod[(a, b)] = c
    return FinitePmq.build(labels, 0, conj, prod, norm)


def segre_pmq() -> FinitePmq:
    """Six elements 1, a, a', b, b', c; the only products of non-units are
    ab = ba = c and a'b' = b'a' = c; norm 1 on a, a', b, b' and 2 on c."""
    labels = ["1", "a", "a'", "b", "b'", "c"]
    n = len(labels)
    ix = {lbl: i for i, lbl in enumerate(labels)}
    conj = [[a for _ in range(n)] for a in range(n)]
    prod: dict[tuple[int, int], int] = {}
    for i in range(n):
        prod[(0, i)] = i
        prod[(i, 0)] = i
    for x, y in (("a", "b"), ("b", "a"), ("a'", "b'"), ("b'", "a'")):
        prod[(ix[x], ix[y])] = ix["c"]
    return FinitePmq.build(labels, 0, conj, prod, [0, 1, 1, 1, 1, 2])


def pointed_set_pmq(labels_with_norm: dict[str, int], unit: str = "1") -> FinitePmq:
    """A pointed set as an abelian PMQ with trivial product and given norm."""
    labels = [unit] + sorted(l for l in labels_with_norm if l != unit)
    n = len(labels)
    conj = [[a for _ in range(n)] for a in range(n)]
    prod = {(0, a): a for a in range(n)}
    prod.update({(a, 0): a for a in range(n)})
    norm = [0] + [labels_with_norm[l] for l in labels[1:]]
    return FinitePmq.build(labels, 0, conj, prod, norm)


def transposition_quandle(d: int) -> FinitePmq:
    """Unit plus the transpositions of S_d under conjugation, trivial
    product, norm 1 on every transposition."""
    trs = all_transpositions(d)
    labels = ["1"] + [perm_label(t) for t in trs]
    n = len(labels)
    from .symgeo import perm_conj

    conj = [[a for _ in range(n)] for a in range(n)]
    for i, s in enumerate(trs, start=1):
        for j, t in enumerate(trs, start=1):
            conj[i][j] = 1 + trs.index(perm_conj(s, t))
    prod = {(0, a): a for a in range(n)}
    prod.update({(a, 0): a for a in range(n)})
    return FinitePmq.build(labels, 0, conj, prod, [0] + [1] * len(trs))


def norm_one_truncation(q: FinitePmq) -> FinitePmq:
    """The sub-PMQ of elements of norm <= 1, with the trivial product.

    Conjugation restricts because the norm is conjugation invariant.
    """
    norm = q.require_norm()
    keep = [a for a in range(len(q)) if norm[a] <= 1]
    reindex = {a: i for i, a in enumerate(keep)}
    labels = [q.labels[a] for a in keep]
    n = len(keep)
    conj = [[reindex[q.conj[a][b]] for b in keep] for a in keep]
    unit = reindex[q.unit]
    prod = {(unit, i): i for i in range(n)}
    prod.update({(i, unit): i for i in range(n)})
    return FinitePmq.build(labels, unit, conj, prod, [norm[a] for a in keep])


def rack_three_example() -> FinitePmq:
    """The three-element rack {1, a, b} with a^b = a^a = b and b^b = b^a = a,
    trivial product: a rack with unit that is not a quandle."""
    labels = ["1", "a", "b"]
    conj = [
        [0, 0, 0],
        [1, 2, 2],
        [2, 1, 1],
    ]
    prod = {(0, a): a for a in range(3)}
    prod.update({(a, 0): a for a in range(3)})
    return FinitePmq.build(labels, 0, conj, prod, [0, 1, 1])
