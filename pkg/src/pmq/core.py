"""Finite partially multiplicative quandles: tables, axioms, constructions.

A partially multiplicative quandle (PMQ) is a set with a marked unit, a total
conjugation operation (a, b) -> a^b and a partially defined product
(a, b) -> ab.  The conjugation makes the set a quandle with unit, the product
makes it a partial monoid, and the two structures satisfy the compatibility
identities

    ab defined  <=>  b(a^b) defined, and then ab = b(a^b),
    a^(bc) = (a^b)^c            whenever bc is defined,
    ab defined  <=>  (a^c)(b^c) defined, and then (ab)^c = (a^c)(b^c).

This module stores finite PMQs as explicit tables over string labels, checks
every axiom exhaustively with minimal witnesses, and implements the basic
constructions: a group as a PMQ, the semidirect PMQ of a right group action,
the join of a PMQ-group pair, and the geodesic PMQ of a normed group.

Conventions
-----------
* Elements are opaque string labels with a fixed total order (declaration
  order); all canonical choices -- witnesses, lexicographic minima -- use it.
* Group-like composition takes the right factor first: (s*t)(x) = s(t(x)).
* ``a^(b^-1)`` denotes the inverse of the bijection ``(-)^b`` applied to
  ``a``; the table for it is derived, never declared.

All structures are immutable after construction; every operation may be used
concurrently on shared values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import AxiomError, NormRequiredError, PreconditionError, StructureError

__all__ = [
    "FiniteGroup",
    "FinitePmq",
    "ValidationReport",
    "Violation",
    "PmqGroupPair",
    "validate",
    "require_valid",
    "conjugacy_classes",
    "semidirect_pmq",
    "join_pmq_group",
    "geodesic_pmq",
    "group_norm_report",
]


# ---------------------------------------------------------------------------
# groups

@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mult[a][b]`` is the product with the right factor applied first when
    elements act as functions.  ``inv`` and ``unit`` are derived and checked.
    """

    labels: tuple[str, ...]
    mult: tuple[tuple[int, ...], ...]
    unit: int = field(default=-1)
    inv: tuple[int, ...] = field(default=())

    @staticmethod
    def from_table(labels: Sequence[str], mult: Sequence[Sequence[int]]) -> "FiniteGroup":
        n = len(labels)
        if len(set(labels)) != n:
            raise StructureError("duplicate group labels")
        rows = tuple(tuple(row) for row in mult)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise StructureError("multiplication table is not square")
        if any(x < 0 or x >= n for r in rows for x in r):
            raise StructureError("multiplication table entry out of range")
        unit = None
        for e in range(n):
            if all(rows[e][a] == a and rows[a][e] == a for a in range(n)):
                unit = e
                break
        if unit is None:
            raise AxiomError("no two-sided unit in multiplication table")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if rows[a][b] == unit and rows[b][a] == unit:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise AxiomError(f"element {labels[a]!r} has no inverse")
        for a in range(n):
            for b in range(n):
                ab = rows[a][b]
                for c in range(n):
                    if rows[ab][c] != rows[a][rows[b][c]]:
                        raise AxiomError(
                            f"associativity fails at ({labels[a]}, {labels[b]}, {labels[c]})"
                        )
        return FiniteGroup(tuple(labels), rows, unit, tuple(inv))

    def __len__(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj(self, a: int, b: int) -> int:
        """b^-1 a b."""
        m = self.mult
        return m[m[self.inv[b]][a]][b]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"unknown group element {label!r}") from None


# ---------------------------------------------------------------------------
# finite PMQs

@dataclass(frozen=True)
class FinitePmq:
    """Tabulated finite PMQ.

    * ``conj[a][b]`` = a^b, total.
    * ``conj_inv[a][b]`` = a^(b^-1), derived by inverting each column of
      ``conj``; ``None`` entries mark columns that fail to be bijections
      (the structure is then invalid and ``validate`` will say so).
    * ``prod`` maps (a, b) to ab for exactly the defined products.
    * ``norm`` is optional; operations that need it fail fast without it.
    """

    labels: tuple[str, ...]
    unit: int
    conj: tuple[tuple[int, ...], ...]
    prod: Mapping[tuple[int, int], int]
    norm: Optional[tuple[int, ...]] = None
    conj_inv: tuple[Optional[tuple[int, ...]], ...] = field(default=(), compare=False)

    @staticmethod
    def build(
        labels: Sequence[str],
        unit: int,
        conj: Sequence[Sequence[int]],
        prod: Mapping[tuple[int, int], int],
        norm: Optional[Sequence[int]] = None,
    ) -> "FinitePmq":
        n = len(labels)
        if len(set(labels)) != n:
            raise StructureError("duplicate element labels")
        if not (0 <= unit < n):
            raise StructureError("unit outside the element set")
        rows = tuple(tuple(r) for r in conj)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise StructureError("conjugation table is not square")
        if any(x < 0 or x >= n for r in rows for x in r):
            raise StructureError("conjugation entry outside the element set")
        for (a, b), c in prod.items():
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise StructureError("product entry outside the element set")
        if norm is not None:
            norm = tuple(norm)
            if len(norm) != n or any(v < 0 for v in norm):
                raise StructureError("norm must assign a nonnegative integer to each element")
        # Invert each column of conj where possible.
        conj_inv: list[Optional[tuple[int, ...]]] = []
        for b in range(n):
            col = [rows[a][b] for a in range(n)]
            if sorted(col) == list(range(n)):
                invcol = [0] * n
                for a, img in enumerate(col):
                    invcol[img] = a
                conj_inv.append(tuple(invcol))
            else:
                conj_inv.append(None)
        return FinitePmq(tuple(labels), unit, rows, dict(prod), norm, tuple(conj_inv))

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"unknown element {label!r}") from None

    def conjugate(self, a: int, b: int) -> int:
        return self.conj[a][b]

    def conjugate_inv(self, a: int, b: int) -> int:
        col = self.conj_inv[b]
        if col is None:
            raise AxiomError(f"conjugation by {self.labels[b]!r} is not a bijection")
        return col[a]

    def product(self, a: int, b: int) -> Optional[int]:
        return self.prod.get((a, b))

    def product_word(self, word: Iterable[int]) -> Optional[int]:
        """Left-to-right fold of the partial product; None when undefined.

        Conditional associativity makes definedness and value independent of
        the bracketing, so the fold decides definedness of the whole product.
        """
        acc = self.unit
        for x in word:
            nxt = self.prod.get((acc, x))
            if nxt is None:
                return None
            acc = nxt
        return acc

    def require_norm(self) -> tuple[int, ...]:
        if self.norm is None:
            raise NormRequiredError()
        return self.norm

    def elements_of_norm(self, r: int) -> list[int]:
        norm = self.require_norm()
        return [a for a in range(len(self.labels)) if norm[a] == r]

    def braid_act(self, seq: Sequence[int], i: int, sign: int) -> tuple[int, ...]:
        """Standard move at 1-based position i on a tuple of elements.

        Positive: (.., a, b, ..) -> (.., b, a^b, ..); negative is its inverse
        (.., a, b, ..) -> (.., b^(a^-1), a, ..).
        """
        if not (1 <= i <= len(seq) - 1):
            raise IndexError(f"move position {i} out of range")
        a, b = seq[i - 1], seq[i]
        if sign > 0:
            pair = (b, self.conj[a][b])
        else:
            pair = (self.conjugate_inv(b, a), a)
        return tuple(seq[: i - 1]) + pair + tuple(seq[i + 1 :])

    def to_labels(self, seq: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in seq)


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[str, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> list[str]:
        return [v.axiom for v in self.violations]

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{v.axiom} at {v.witness}: {v.detail}" for v in self.violations)


def validate(q: FinitePmq, *, rack: bool = False, stop_first: bool = False) -> ValidationReport:
    """Exhaustively check every axiom, reporting the first witness per axiom.

    Witnesses are minimal in the scan order induced by the declaration order
    of elements.  With ``rack=True`` the idempotence axiom a^a = a is skipped
    (the remaining axioms define a partially multiplicative rack).
    """
    n = len(q.labels)
    labels = q.labels
    conj = q.conj
    prod = q.prod
    unit = q.unit
    out: list[Violation] = []

    def hit(axiom: str, witness: tuple[int, ...], detail: str) -> bool:
        out.append(Violation(axiom, tuple(labels[i] for i in witness), detail))
        return stop_first

    # (-)^b is a bijection for every b.
    bijective = True
    for b in range(n):
        col = [conj[a][b] for a in range(n)]
        if sorted(col) != list(range(n)):
            bijective = False
            if hit("conj-bijective", (b,), "conjugation by this element is not a bijection"):
                return ValidationReport(tuple(out))
            break

    # 1^a = 1 and a^1 = a.
    for a in range(n):
        if conj[unit][a] != unit:
            if hit("conj-unit", (a,), "1^a != 1"):
                return ValidationReport(tuple(out))
            break
        if conj[a][unit] != a:
            if hit("conj-unit", (a,), "a^1 != a"):
                return ValidationReport(tuple(out))
            break

    # a^a = a (quandles only).
    if not rack:
        for a in range(n):
            if conj[a][a] != a:
                if hit("conj-idempotence", (a,), "a^a != a"):
                    return ValidationReport(tuple(out))
                break

    # (a^b)^c = (a^c)^(b^c), via column composition.
    cols = [tuple(conj[a][b] for a in range(n)) for b in range(n)]
    done = False
    for b in range(n):
        colb = cols[b]
        for c in range(n):
            colc = cols[c]
            colbc = cols[colc[b]]
            for a in range(n):
                if colc[colb[a]] != colbc[colc[a]]:
                    done = hit("conj-distributivity", (a, b, c), "(a^b)^c != (a^c)^(b^c)")
                    break
            else:
                continue
            break
        else:
            continue
        break
    if done:
        return ValidationReport(tuple(out))

    # Unit laws of the partial product.
    for a in range(n):
        if prod.get((unit, a)) != a or prod.get((a, unit)) != a:
            if hit("unit-product", (a,), "1a and a1 must be defined and equal a"):
                return ValidationReport(tuple(out))
            break

    # Conditional associativity, both implications.
    done = False
    for (a, b), ab in prod.items():
        for c in range(n):
            abc = prod.get((ab, c))
            if abc is None:
                continue
            bc = prod.get((b, c))
            if bc is None or prod.get((a, bc)) != abc:
                done = hit("associativity", (a, b, c), "(ab)c defined but a(bc) missing or different")
                break
        if done:
            break
    if not done:
        for (b, c), bc in prod.items():
            for a in range(n):
                abc = prod.get((a, bc))
                if abc is None:
                    continue
                ab = prod.get((a, b))
                if ab is None or prod.get((ab, c)) != abc:
                    done = hit("associativity", (a, b, c), "a(bc) defined but (ab)c missing or different")
                    break
            if done:
                break
    if done:
        return ValidationReport(tuple(out))

    # ab defined <=> b(a^b) defined, with equal values.
    done = False
    for a in range(n):
        conja = conj[a]
        for b in range(n):
            ab = prod.get((a, b))
            swapped = prod.get((b, conja[b]))
            if (ab is None) != (swapped is None) or ab != swapped:
                done = hit("product-conj-swap", (a, b), "ab and b(a^b) disagree")
                break
        if done:
            break
    if done:
        return ValidationReport(tuple(out))

    # a^(bc) = (a^b)^c whenever bc is defined.
    done = False
    for (b, c), bc in prod.items():
        colb, colc, colbc = cols[b], cols[c], cols[bc]
        for a in range(n):
            if colbc[a] != colc[colb[a]]:
                done = hit("conj-of-product", (a, b, c), "a^(bc) != (a^b)^c")
                break
        if done:
            break
    if done:
        return ValidationReport(tuple(out))

    # ab defined <=> (a^c)(b^c) defined, with (ab)^c = (a^c)(b^c).
    done = False
    for (a, b), ab in prod.items():
        for c in range(n):
            colc = cols[c]
            img = prod.get((colc[a], colc[b]))
            if img is None or img != colc[ab]:
                done = hit("product-equivariance", (a, b, c), "(ab)^c != (a^c)(b^c)")
                break
        if done:
            break
    if not done and bijective:
        for (x, y), _ in prod.items():
            for c in range(n):
                icol = q.conj_inv[c]
                if prod.get((icol[x], icol[y])) is None:
                    done = hit(
                        "product-equivariance",
                        (icol[x], icol[y], c),
                        "(a^c)(b^c) defined but ab is not",
                    )
                    break
            if done:
                break
    if done:
        return ValidationReport(tuple(out))

    # Norm axioms, when a norm is present.
    if q.norm is not None:
        norm = q.norm
        for a in range(n):
            if (norm[a] == 0) != (a == unit):
                hit("norm-kernel", (a,), "norm vanishes exactly on the unit")
                break
        for (a, b), ab in prod.items():
            if norm[ab] != norm[a] + norm[b]:
                hit("norm-additive", (a, b), "N(ab) != N(a) + N(b)")
                break
        done = False
        for a in range(n):
            for b in range(n):
                if norm[conj[a][b]] != norm[a]:
                    done = hit("norm-conj-invariant", (a, b), "N(a^b) != N(a)")
                    break
            if done:
                break

    return ValidationReport(tuple(out))


def require_valid(q: FinitePmq, *, rack: bool = False) -> None:
    report = validate(q, rack=rack, stop_first=True)
    if not report.ok:
        raise AxiomError(f"invalid structure: {report}", report)


# ---------------------------------------------------------------------------
# conjugacy classes

def conjugacy_classes(q: FinitePmq) -> list[tuple[str, ...]]:
    """Partition into minimal subsets closed under (-)^b and (-)^(b^-1).

    Classes are listed by their smallest member (declaration order), each
    class in declaration order.
    """
    part = _class_partition(q)
    return [tuple(q.labels[i] for i in cls) for cls in part]


def _class_partition(q: FinitePmq) -> list[tuple[int, ...]]:
    n = len(q.labels)
    seen = [False] * n
    classes: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            a = frontier.pop()
            for b in range(n):
                for img in (q.conj[a][b], q.conjugate_inv(a, b)):
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
        cls = tuple(sorted(orbit))
        for i in cls:
            seen[i] = True
        classes.append(cls)
    return classes


# ---------------------------------------------------------------------------
# constructions

def semidirect_pmq(
    g: FiniteGroup,
    points: Sequence[str],
    action: Mapping[tuple[str, str], str],
) -> FinitePmq:
    """The conjugation-and-action structure G |x S of a right action.

    Underlying set G + S; conjugation: a^s = a, h^g = g^-1 h g, s^g = s.g;
    the product is the group product on pairs of group elements plus the
    unit couples forced by the unit law.

    For a nontrivial group acting on a nonempty set this is not a PMQ and
    ``validate`` says so precisely: (g g^-1)s is defined while g^-1 s is
    not, so conditional associativity fails at (g, g^-1, s), and no way of
    defining mixed products repairs it without killing the action.  All
    derived data (conjugacy classes, enveloping group) are insensitive to
    the defect.
    """
    if set(points) & set(g.labels):
        raise StructureError("group labels and point labels must be disjoint")
    ng, ns = len(g.labels), len(points)
    act = [[None] * ng for _ in range(ns)]
    for s in range(ns):
        for x in range(ng):
            img = action.get((points[s], g.labels[x]))
            if img is None or img not in points:
                raise StructureError(f"action undefined or out of range at ({points[s]}, {g.labels[x]})")
            act[s][x] = points.index(img)
    for s in range(ns):
        if act[s][g.unit] != s:
            raise StructureError("action does not fix the unit")
        for x in range(ng):
            for y in range(ng):
                if act[act[s][x]][y] != act[s][g.mult[x][y]]:
                    raise StructureError("not a right action: s.(xy) != (s.x).y")

    labels = tuple(g.labels) + tuple(points)
    n = ng + ns
    conj = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if b >= ng:                      # conjugation by a point is trivial
                conj[a][b] = a
            elif a < ng:
                conj[a][b] = g.conj(a, b)
            else:
                conj[a][b] = ng + act[a - ng][b]
    prod = {(a, b): g.mult[a][b] for a in range(ng) for b in range(ng)}
    for s in range(ng, n):                   # unit products are forced by the axioms
        prod[(g.unit, s)] = s
        prod[(s, g.unit)] = s
    return FinitePmq.build(labels, g.unit, conj, prod)


@dataclass(frozen=True)
class PmqGroupPair:
    """A PMQ Q, a group G, a PMQ map e: Q -> G and a right action r of G on Q
    by PMQ automorphisms, with r(e(b)) = (-)^b and e(r(g)(a)) = g^-1 e(a) g.

    ``r_action[g][a]`` is the image of element a under r(g).
    """

    pmq: FinitePmq
    group: FiniteGroup
    e_map: tuple[int, ...]
    r_action: tuple[tuple[int, ...], ...]

    def check(self) -> None:
        q, g, e, r = self.pmq, self.group, self.e_map, self.r_action
        nq, ng = len(q), len(g)
        if len(e) != nq or any(not 0 <= x < ng for x in e):
            raise StructureError("e_map is not a map into the group")
        if len(r) != ng or any(len(row) != nq for row in r):
            raise StructureError("r_action must give a map of Q per group element")
        if e[q.unit] != g.unit:
            raise AxiomError("e does not preserve the unit")
        for a in range(nq):
            for b in range(nq):
                if e[q.conj[a][b]] != g.conj(e[a], e[b]):
                    raise AxiomError("e does not preserve conjugation")
        for (a, b), ab in q.prod.items():
            if e[ab] != g.mult[e[a]][e[b]]:
                raise AxiomError("e does not preserve defined products")
        for x in range(ng):
            row = r[x]
            if sorted(row) != list(range(nq)):
                raise AxiomError("r(g) is not a bijection of the PMQ")
            if row[q.unit] != q.unit:
                raise AxiomError("r(g) does not fix the unit")
            for a in range(nq):
                for b in range(nq):
                    if r[x][q.conj[a][b]] != q.conj[row[a]][row[b]]:
                        raise AxiomError("r(g) is not a quandle automorphism")
            for (a, b), ab in q.prod.items():
                if q.prod.get((row[a], row[b])) != row[ab]:
                    raise AxiomError("r(g) is not a partial-monoid automorphism")
        for x in range(ng):
            for y in range(ng):
                xy = g.mult[x][y]
                for a in range(nq):
                    if r[xy][a] != r[y][r[x][a]]:
                        raise AxiomError("r is not a right action")
        for b in range(nq):
            for a in range(nq):
                if r[e[b]][a] != q.conj[a][b]:
                    raise AxiomError("r(e(b)) differs from conjugation by b")
        for x in range(ng):
            for a in range(nq):
                if e[self.r_action[x][a]] != g.conj(e[a], x):
                    raise AxiomError("e is not equivariant")


def join_pmq_group(pair: PmqGroupPair) -> FinitePmq:
    """The complete PMQ Q >< G on the disjoint union of Q and G.

    Conjugation: abar^bbar = (a^b)bar, abar^gbar = r(g)(a)bar,
    gbar^abar = (e(a)^-1 g e(a))bar, gbar^hbar = (h^-1 g h)bar.
    Product (total): gbar hbar = (gh)bar, abar gbar = (e(a)g)bar,
    gbar abar = (g e(a))bar, abar bbar = (ab)bar when ab is defined in Q and
    (e(a)e(b))bar otherwise.
    """
    pair.check()
    q, g, e, r = pair.pmq, pair.group, pair.e_map, pair.r_action
    nq, ng = len(q), len(g)
    labels = tuple(q.labels) + tuple(f"[{x}]" for x in g.labels)
    n = nq + ng
    conj = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a < nq and b < nq:
                conj[a][b] = q.conj[a][b]
            elif a < nq:
                conj[a][b] = r[b - nq][a]
            elif b < nq:
                conj[a][b] = nq + g.conj(a - nq, e[b])
            else:
                conj[a][b] = nq + g.conj(a - nq, b - nq)
    prod: dict[tuple[int, int], int] = {}
    for a in range(n):
        for b in range(n):
            if a < nq and b < nq:
                ab = q.prod.get((a, b))
                prod[(a, b)] = ab if ab is not None else nq + g.mult[e[a]][e[b]]
            elif a < nq:
                prod[(a, b)] = nq + g.mult[e[a]][b - nq]
            elif b < nq:
                prod[(a, b)] = nq + g.mult[a - nq][e[b]]
            else:
                prod[(a, b)] = nq + g.mult[a - nq][b - nq]
    return FinitePmq.build(labels, q.unit, conj, prod)


def group_norm_report(g: FiniteGroup, norm: Sequence[int]) -> Optional[tuple[str, tuple[str, ...]]]:
    """Check a conjugation-invariant group norm; None if fine, else witness.

    Requirements: N(g) = 0 iff g = 1, N(gh) <= N(g) + N(h), and
    N(h^-1 g h) = N(g).
    """
    n = len(g)
    for a in range(n):
        if (norm[a] == 0) != (a == g.unit):
            return ("norm-kernel", (g.labels[a],))
    for a in range(n):
        for b in range(n):
            if norm[g.mult[a][b]] > norm[a] + norm[b]:
                return ("norm-triangle", (g.labels[a], g.labels[b]))
            if norm[g.conj(a, b)] != norm[a]:
                return ("norm-conj-invariant", (g.labels[a], g.labels[b]))
    return None


def geodesic_pmq(g: FiniteGroup, norm: Sequence[int]) -> FinitePmq:
    """The geodesic PMQ of a group with a conjugation-invariant norm.

    Same underlying quandle as the group; the product is restricted to the
    pairs on which the norm is additive, and the norm is kept as structure.
    """
    bad = group_norm_report(g, norm)
    if bad is not None:
        raise PreconditionError(f"not a conjugation-invariant group norm: {bad[0]} at {bad[1]}",
                                failed=bad[0], witness=bad[1])
    n = len(g)
    conj = [[g.conj(a, b) for b in range(n)] for a in range(n)]
    prod = {
        (a, b): g.mult[a][b]
        for a in range(n)
        for b in range(n)
        if norm[g.mult[a][b]] == norm[a] + norm[b]
    }
    return FinitePmq.build(g.labels, g.unit, conj, prod, norm)
