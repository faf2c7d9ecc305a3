"""Canonical forms in the completion of a finite normed PMQ.

The completion adjoins all missing products: its elements are equivalence
classes of finite sequences over the non-unit part of the PMQ, where two
sequences are equivalent when a chain of the following moves (and their
inverses) connects them:

  (1) contract an adjacent pair to its product, when defined;
  (2) replace (a, b) by (b, a^b);
  (3) replace (a, b) by (b^(a^-1), a).

Every move preserves the total norm, entries stay in the non-unit part, and
a sequence of total norm n has length at most n, so each equivalence class
is finite and breadth-first search decides equality exactly.  The canonical
representative is the length-lexicographic minimum of the class, using the
declaration order of elements.

A ``Completion`` object caches explored classes; the cache is an internal
memo only (results are independent of call order) and writes are appends,
so shared read access is safe.

Class sizes grow exponentially with the total norm (the number of
sequences of norm n over a fixed alphabet does), so keep the norms of the
classes you touch within a budget: products add norms, conjugation
preserves them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import FinitePmq, require_valid
from .errors import PreconditionError

Seq = tuple[int, ...]

__all__ = ["Completion", "HatElem", "verify_embedding"]


@dataclass(frozen=True)
class HatElem:
    """An element of the completion: its canonical sequence and total norm.

    Instances compare by canonical word within their completion; the empty
    word is the unit.
    """

    completion: "Completion" = field(compare=False, repr=False)
    word: Seq
    norm: int

    def __post_init__(self):
        object.__setattr__(self, "_pmq_id", id(self.completion.pmq))

    def __eq__(self, other):
        return (
            isinstance(other, HatElem)
            and self._pmq_id == other._pmq_id
            and self.word == other.word
        )

    def __hash__(self):
        return hash((self._pmq_id, self.word))

    @property
    def is_unit(self) -> bool:
        return not self.word

    def in_base(self) -> Optional[int]:
        """The underlying PMQ element when the class meets it, else None."""
        if not self.word:
            return self.completion.pmq.unit
        if len(self.word) == 1:
            return self.word[0]
        return None

    def labels(self) -> tuple[str, ...]:
        return self.completion.pmq.to_labels(self.word)

    def __mul__(self, other: "HatElem") -> "HatElem":
        return self.completion.mul(self, other)

    def conj(self, other: "HatElem") -> "HatElem":
        return self.completion.conj(self, other)

    def conj_inv(self, other: "HatElem") -> "HatElem":
        return self.completion.conj_inv(self, other)


class Completion:
    """Exact arithmetic in the completion of a finite normed PMQ."""

    def __init__(self, pmq: FinitePmq):
        pmq.require_norm()
        require_valid(pmq)
        self.pmq = pmq
        self._canon: dict[Seq, Seq] = {}
        self._levels: dict[int, list[Seq]] = {}
        self._factorizations: list[list[tuple[int, int]]] = [
            [] for _ in range(len(pmq))
        ]
        unit = pmq.unit
        for (a, b), c in pmq.prod.items():
            if a != unit and b != unit:
                self._factorizations[c].append((a, b))

    # -- basic constructors ---------------------------------------------

    def unit(self) -> HatElem:
        return HatElem(self, (), 0)

    def element(self, a: int) -> HatElem:
        if a == self.pmq.unit:
            return self.unit()
        return self.of_sequence((a,))

    def of_sequence(self, seq: Iterable[int]) -> HatElem:
        """The class of a sequence of PMQ elements (units are dropped)."""
        norm = self.pmq.require_norm()
        word = tuple(x for x in seq if x != self.pmq.unit)
        return HatElem(self, self.canonical(word), sum(norm[x] for x in word))

    def of_labels(self, labels: Iterable[str]) -> HatElem:
        return self.of_sequence(self.pmq.index(l) for l in labels)

    def extend_norm(self, seq: Iterable[int]) -> int:
        """The additive extension of the norm to the completion: the sum of
        the factor norms, zero exactly on the unit."""
        norm = self.pmq.require_norm()
        return sum(norm[x] for x in seq)

    # -- the move graph ---------------------------------------------------

    def _moves(self, seq: Seq):
        pmq = self.pmq
        prod = pmq.prod
        conj = pmq.conj
        facts = self._factorizations
        n = len(seq)
        for j in range(n - 1):
            a, b = seq[j], seq[j + 1]
            c = prod.get((a, b))
            if c is not None:
                yield seq[:j] + (c,) + seq[j + 2 :]
            yield seq[:j] + (b, conj[a][b]) + seq[j + 2 :]
            yield seq[:j] + (pmq.conjugate_inv(b, a), a) + seq[j + 2 :]
        for j in range(n):
            head, tail = seq[:j], seq[j + 1 :]
            for a, b in facts[seq[j]]:
                yield head + (a, b) + tail

    def canonical(self, seq: Seq) -> Seq:
        """Length-lexicographic minimum of the move class of ``seq``."""
        seq = tuple(x for x in seq if x != self.pmq.unit)
        cached = self._canon.get(seq)
        if cached is not None:
            return cached
        component = self._explore(seq)
        best = min(component, key=lambda s: (len(s), s))
        for s in component:
            self._canon[s] = best
        return best

    def _explore(self, seq: Seq) -> set[Seq]:
        seen = {seq}
        frontier = deque([seq])
        while frontier:
            cur = frontier.popleft()
            for nxt in self._moves(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    # -- operations --------------------------------------------------------

    def mul(self, x: HatElem, y: HatElem) -> HatElem:
        return HatElem(self, self.canonical(x.word + y.word), x.norm + y.norm)

    def conj(self, x: HatElem, y: HatElem) -> HatElem:
        """x^y, conjugating every factor of x by the factors of y in turn."""
        conj = self.pmq.conj
        word = x.word
        for c in y.word:
            word = tuple(conj[a][c] for a in word)
        return HatElem(self, self.canonical(word), x.norm)

    def conj_inv(self, x: HatElem, y: HatElem) -> HatElem:
        """x^(y^-1); inverse of ``conj`` by the same y."""
        pmq = self.pmq
        word = x.word
        for c in reversed(y.word):
            word = tuple(pmq.conjugate_inv(a, c) for a in word)
        return HatElem(self, self.canonical(word), x.norm)

    # -- norm levels -------------------------------------------------------

    def sequences_of_norm(self, n: int) -> list[Seq]:
        """All sequences over the non-unit part with total norm n."""
        cached = self._levels.get(n)
        if cached is not None:
            return cached
        norm = self.pmq.require_norm()
        positives = [
            (a, norm[a]) for a in range(len(self.pmq)) if a != self.pmq.unit
        ]
        if any(v == 0 for _, v in positives):
            raise PreconditionError("norm vanishes outside the unit")
        out: list[Seq] = []

        def extend(prefix: tuple[int, ...], remaining: int) -> None:
            if remaining == 0:
                out.append(prefix)
                return
            for a, v in positives:
                if v <= remaining:
                    extend(prefix + (a,), remaining - v)

        extend((), n)
        self._levels[n] = out
        return out

    def classes_of_norm(self, n: int) -> list[HatElem]:
        """Canonical forms of all classes of total norm n, sorted."""
        canons = {self.canonical(seq) for seq in self.sequences_of_norm(n)}
        return [HatElem(self, w, n) for w in sorted(canons, key=lambda s: (len(s), s))]

    def classes_up_to(self, n: int) -> list[HatElem]:
        out = []
        for level in range(n + 1):
            out.extend(self.classes_of_norm(level))
        return out


def verify_embedding(q: FinitePmq, pair=None, budget: Optional[int] = None) -> dict:
    """Check that the PMQ sits injectively in its completion and that the
    classes outside it absorb products and conjugation.

    Returns a report dict; ``ok`` is True when (i) distinct elements have
    distinct canonical forms, (ii) every class of length >= 2 within the
    norm budget stays outside the PMQ under product and conjugation by PMQ
    elements, and, when a PMQ-group pair is supplied, (iii) the injectivity
    is cross-checked in the complete PMQ built from the pair by adjoining
    the group.
    """
    comp = Completion(q)
    norm = q.require_norm()
    if budget is None:
        budget = max(norm) + 1
    images = {}
    collisions = []
    for a in range(len(q)):
        img = comp.element(a)
        if img in images:
            collisions.append((q.labels[images[img]], q.labels[a]))
        images[img] = a

    ideal_ok = True
    ideal_witness = None
    outside = [
        h
        for n in range(2, budget + 1)
        for h in comp.classes_of_norm(n)
        if h.in_base() is None
    ]
    units = [comp.element(a) for a in range(len(q)) if a != q.unit]
    for h in outside:
        for v in units:
            if h.norm + v.norm <= budget:
                if (h * v).in_base() is not None or (v * h).in_base() is not None:
                    ideal_ok = False
                    ideal_witness = (h.labels(), v.labels())
                    break
            if h.conj(v).in_base() is not None or h.conj_inv(v).in_base() is not None:
                ideal_ok = False
                ideal_witness = (h.labels(), v.labels())
                break
        if not ideal_ok:
            break

    join_ok = None
    if pair is not None:
        from .core import join_pmq_group

        joined = join_pmq_group(pair)   # complete PMQ, keeps Q's indices first
        join_ok = True
        for n in range(1, budget + 1):
            by_class: dict[Seq, set[int]] = {}
            for seq in comp.sequences_of_norm(n):
                value = joined.product_word(seq)
                by_class.setdefault(comp.canonical(seq), set()).add(value)
            if any(len(vals) != 1 for vals in by_class.values()):
                join_ok = False
        singleton_images = {joined.product_word((a,)) for a in range(len(q))}
        if len(singleton_images) != len(q):
            join_ok = False

    return {
        "injective": not collisions,
        "collisions": collisions,
        "ideal_outside": ideal_ok,
        "ideal_witness": ideal_witness,
        "join_cross_check": join_ok,
        "ok": not collisions and ideal_ok and join_ok is not False,
    }
