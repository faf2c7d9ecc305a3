"""Symmetric groups with the transposition word-length norm.

Permutations of [d] = {1, ..., d} are stored in one-line notation: a tuple
``sigma`` of length d with ``sigma[i - 1]`` the image of i.  Composition
takes the right factor first, (s*t)(x) = s(t(x)), so a sequence of
transpositions multiplies left to right with the last factor acting first.

The norm of a permutation is its word length in the generating set of all
transpositions, which equals d minus the number of cycles (fixed points
count as cycles).  Restricting the group product to norm-additive pairs
yields the geodesic PMQ of the symmetric group; its completion is described
in closed form by triples (sigma; partition of [d]; one weight per piece).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import FiniteGroup, FinitePmq, PmqGroupPair, geodesic_pmq
from .errors import StructureError

Perm = tuple[int, ...]
Transposition = tuple[int, int]

__all__ = [
    "identity",
    "perm_mul",
    "perm_inv",
    "perm_conj",
    "perm_norm",
    "is_geodesic",
    "height",
    "transposition",
    "all_transpositions",
    "monotone_decomposition",
    "symmetric_group",
    "sym_geodesic_pmq",
    "sym_geodesic_pair",
    "GeoHatElem",
    "seq_to_triple",
    "validate_triple",
    "geo_hat_mul",
    "geo_hat_conj",
    "triples_of_weight",
    "clebsch_connect",
    "apply_moves",
    "env_word_problem",
]


# ---------------------------------------------------------------------------
# permutation basics

def identity(d: int) -> Perm:
    return tuple(range(1, d + 1))


def perm_mul(s: Perm, t: Perm) -> Perm:
    """(s*t)(x) = s(t(x))."""
    return tuple(s[t[i] - 1] for i in range(len(s)))


def perm_inv(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v - 1] = i + 1
    return tuple(out)


def perm_conj(a: Perm, b: Perm) -> Perm:
    """a^b = b^-1 a b."""
    return perm_mul(perm_mul(perm_inv(b), a), b)


def cycles(s: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(s)
    out = []
    for start in range(1, len(s) + 1):
        if seen[start - 1]:
            continue
        cyc = [start]
        seen[start - 1] = True
        x = s[start - 1]
        while x != start:
            cyc.append(x)
            seen[x - 1] = True
            x = s[x - 1]
        out.append(tuple(cyc))
    return out


def perm_norm(s: Perm) -> int:
    """Transposition word length: d minus the number of cycles."""
    return len(s) - len(cycles(s))


def is_geodesic(s: Perm, t: Perm) -> bool:
    return perm_norm(perm_mul(s, t)) == perm_norm(s) + perm_norm(t)


def height(s: Perm) -> int:
    """Greatest i with s(i) != i; 0 for the identity."""
    for i in range(len(s), 0, -1):
        if s[i - 1] != i:
            return i
    return 0


def transposition(d: int, i: int, j: int) -> Perm:
    if i == j or not (1 <= i <= d and 1 <= j <= d):
        raise StructureError(f"({i},{j}) is not a transposition of [{d}]")
    out = list(range(1, d + 1))
    out[i - 1], out[j - 1] = j, i
    return tuple(out)


def all_transpositions(d: int) -> list[Perm]:
    return [transposition(d, i, j) for j in range(2, d + 1) for i in range(1, j)]


def transposition_pair(t: Perm) -> Transposition:
    """The two moved points (i, j) with i < j."""
    moved = [i + 1 for i, v in enumerate(t) if v != i + 1]
    if len(moved) != 2:
        raise StructureError("not a transposition")
    return (moved[0], moved[1])


def monotone_decomposition(s: Perm) -> list[Perm]:
    """The unique factorisation into transpositions of strictly increasing
    heights.

    Peels the last factor (ht(s), s^-1(ht(s))) from the right; the remaining
    permutation has strictly smaller height, so the recursion terminates in
    exactly norm(s) steps.
    """
    d = len(s)
    out: list[Perm] = []
    cur = s
    while True:
        h = height(cur)
        if h == 0:
            break
        t = transposition(d, h, perm_inv(cur)[h - 1])
        out.append(t)
        cur = perm_mul(cur, t)
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# the symmetric group and its geodesic PMQ as tables

def perm_label(s: Perm) -> str:
    return "".join(str(v) for v in s)


def symmetric_group(d: int) -> FiniteGroup:
    """S_d with elements ordered by (norm, one-line notation)."""
    if not (1 <= d <= 9):
        raise StructureError("supported range is 1 <= d <= 9")
    perms = sorted(itertools.permutations(range(1, d + 1)), key=lambda p: (perm_norm(p), p))
    index = {p: i for i, p in enumerate(perms)}
    mult = [[index[perm_mul(a, b)] for b in perms] for a in perms]
    return FiniteGroup.from_table([perm_label(p) for p in perms], mult)


def sym_geodesic_pmq(d: int) -> FinitePmq:
    """The geodesic PMQ of S_d under the transposition word-length norm."""
    g = symmetric_group(d)
    perms = [tuple(int(ch) for ch in lbl) for lbl in g.labels]
    return geodesic_pmq(g, [perm_norm(p) for p in perms])


def sym_geodesic_pair(d: int) -> PmqGroupPair:
    """The pair (geodesic PMQ of S_d, S_d) with e the identity map and the
    group acting by conjugation."""
    g = symmetric_group(d)
    q = sym_geodesic_pmq(d)
    e = tuple(g.index(lbl) for lbl in q.labels)
    r = tuple(
        tuple(q.index(g.labels[g.conj(e[a], x)]) for a in range(len(q)))
        for x in range(len(g))
    )
    return PmqGroupPair(q, g, e, r)


# ---------------------------------------------------------------------------
# completion triples

@dataclass(frozen=True)
class GeoHatElem:
    """Closed-form element of the completion of the geodesic PMQ of S_d.

    ``partition`` pieces are sorted tuples, listed by minimum element;
    ``weights`` aligns with ``partition``.  Valid triples satisfy
      (1) sigma preserves every piece;
      (2) w >= 2|P| - norm(sigma|P) - 2 on every piece, and w = 0 on
          singleton pieces;
      (3) w = norm(sigma|P) mod 2 on every piece.
    """

    sigma: Perm
    partition: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.sigma)

    def total_weight(self) -> int:
        return sum(self.weights)

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "partition": [list(p) for p in self.partition],
            "weights": list(self.weights),
        }


def _normalise_partition(
    pieces: Iterable[Iterable[int]], weights: Iterable[int]
) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    paired = sorted(
        ((tuple(sorted(p)), w) for p, w in zip(pieces, weights)),
        key=lambda pw: pw[0][0],
    )
    return tuple(p for p, _ in paired), tuple(w for _, w in paired)


def make_triple(sigma: Perm, pieces, weights) -> GeoHatElem:
    p, w = _normalise_partition(pieces, weights)
    return GeoHatElem(sigma, p, w)


def restricted_norm(sigma: Perm, piece: Sequence[int]) -> int:
    """Norm of sigma restricted to an invariant subset."""
    inside = set(piece)
    ncycles = sum(1 for c in cycles(sigma) if c[0] in inside)
    return len(piece) - ncycles


def validate_triple(t: GeoHatElem) -> Optional[str]:
    """None when valid, else a description of the failed condition."""
    d = t.d
    covered = sorted(x for p in t.partition for x in p)
    if covered != list(range(1, d + 1)):
        return "partition does not cover [d] exactly once"
    if len(t.weights) != len(t.partition):
        return "weights misaligned with partition"
    for p in t.partition:
        inside = set(p)
        if any(t.sigma[x - 1] not in inside for x in p):
            return f"sigma does not preserve piece {p}"
    for p, w in zip(t.partition, t.weights):
        n = restricted_norm(t.sigma, p)
        if len(p) == 1:
            if w != 0:
                return f"singleton piece {p} must have weight 0"
            continue
        if w < 2 * len(p) - n - 2:
            return f"weight {w} on piece {p} below 2|P| - N - 2 = {2 * len(p) - n - 2}"
        if (w - n) % 2 != 0:
            return f"weight {w} on piece {p} has wrong parity"
    return None


def seq_to_triple(seq: Sequence[Perm], d: Optional[int] = None) -> GeoHatElem:
    """Invariants of a transposition sequence: the product, the orbit
    partition of the generated subgroup, and per-piece transposition counts.

    All three are constant on orbits of standard moves.
    """
    if d is None:
        if not seq:
            raise StructureError("empty sequence needs an explicit d")
        d = len(seq[0])
    parent = list(range(d + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    prod = identity(d)
    for t in seq:
        i, j = transposition_pair(t)
        parent[find(i)] = find(j)
        prod = perm_mul(prod, t)
    pieces: dict[int, list[int]] = {}
    for x in range(1, d + 1):
        pieces.setdefault(find(x), []).append(x)
    plist = list(pieces.values())
    weights = []
    for p in plist:
        inside = set(p)
        weights.append(sum(1 for t in seq if transposition_pair(t)[0] in inside))
    return make_triple(prod, plist, weights)


def _join_partitions(p1, p2, d: int) -> list[list[int]]:
    parent = list(range(d + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in list(p1) + list(p2):
        for x in p[1:]:
            parent[find(p[0])] = find(x)
    pieces: dict[int, list[int]] = {}
    for x in range(1, d + 1):
        pieces.setdefault(find(x), []).append(x)
    return list(pieces.values())


def geo_hat_mul(a: GeoHatElem, b: GeoHatElem) -> GeoHatElem:
    """Product: multiply the permutations, join the partitions, add the
    weights of the pieces absorbed into each joined piece."""
    d = a.d
    joined = _join_partitions(a.partition, b.partition, d)
    weights = []
    for piece in joined:
        inside = set(piece)
        w = sum(w for p, w in zip(a.partition, a.weights) if p[0] in inside)
        w += sum(w for p, w in zip(b.partition, b.weights) if p[0] in inside)
        weights.append(w)
    return make_triple(perm_mul(a.sigma, b.sigma), joined, weights)


def geo_hat_conj(a: GeoHatElem, b: GeoHatElem) -> GeoHatElem:
    """Conjugation relabels: (a)^(b) has permutation a.sigma^b.sigma and
    pieces b.sigma^-1(P); the weights follow their pieces."""
    inv = perm_inv(b.sigma)
    pieces = [[inv[x - 1] for x in p] for p in a.partition]
    return make_triple(perm_conj(a.sigma, b.sigma), pieces, a.weights)


def unit_triple(d: int) -> GeoHatElem:
    return make_triple(identity(d), [[x] for x in range(1, d + 1)], [0] * d)


def triples_of_weight(d: int, n: int) -> list[GeoHatElem]:
    """All valid triples with total weight n, enumerated directly from the
    closed-form conditions."""
    out: list[GeoHatElem] = []
    for part in _set_partitions(list(range(1, d + 1))):
        for sigma_pieces in itertools.product(*(_perms_of(piece) for piece in part)):
            sigma = list(range(1, d + 1))
            for piece, sp in zip(part, sigma_pieces):
                for x, y in zip(piece, sp):
                    sigma[x - 1] = y
            sig = tuple(sigma)
            ranges = []
            ok = True
            for piece in part:
                nres = restricted_norm(sig, piece)
                if len(piece) == 1:
                    ranges.append([0])
                    continue
                lo = max(2 * len(piece) - nres - 2, nres % 2)
                if (lo - nres) % 2:
                    lo += 1
                if lo > n:
                    ok = False
                    break
                ranges.append(list(range(lo, n + 1, 2)))
            if not ok:
                continue
            for ws in itertools.product(*ranges):
                if sum(ws) == n:
                    out.append(make_triple(sig, part, ws))
    return out


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + [list(p) for p in part]
        for i in range(len(part)):
            yield [list(p) for p in part[:i]] + [[first] + list(part[i])] + [
                list(p) for p in part[i + 1 :]
            ]


def _perms_of(piece: list[int]):
    for images in itertools.permutations(piece):
        yield images


# ---------------------------------------------------------------------------
# standard moves on transposition sequences

def apply_moves(seq: Sequence[Perm], moves: Iterable[int]) -> tuple[Perm, ...]:
    """Apply a signed move log: +i swaps (a_i, a_{i+1}) -> (a_{i+1}, a_i^a_{i+1}),
    -i is the inverse move."""
    cur = tuple(seq)
    for m in moves:
        i = abs(m)
        if not 1 <= i <= len(cur) - 1:
            raise IndexError(f"move position {i} out of range")
        a, b = cur[i - 1], cur[i]
        if m > 0:
            pair = (b, perm_conj(a, b))
        else:
            # inverse: (a, b) -> (b^(a^-1), a); for permutations a^-1 acts as a
            pair = (perm_mul(perm_mul(a, b), perm_inv(a)), a)
        cur = cur[: i - 1] + pair + cur[i:][1:]
    return cur


def _invert_moves(moves: Sequence[int]) -> list[int]:
    return [-m for m in reversed(moves)]


def _monotone_normalise(seq: Sequence[Perm]) -> tuple[list[int], tuple[Perm, ...]]:
    """Move log turning a minimal transposition factorisation into the
    monotone one.

    Works on a shrinking prefix.  In each round, every maximal-height factor
    of the prefix is pushed right with positive moves (conjugation by a
    lower factor keeps the height); whenever two maximal-height factors are
    adjacent they are distinct, by minimality, and the move
    (t, t') -> (t'^(t^-1), t) strictly lowers one height.  The round ends
    with a single maximal-height factor at the end of the prefix, which is
    peeled off; heights of peeled factors strictly decrease leftwards, so the
    result is the monotone factorisation.
    """
    cur = list(seq)
    log: list[int] = []
    end = len(cur)
    while end > 0:
        heights = [height(t) for t in cur[:end]]
        h = max(heights, default=0)
        if h == 0:
            break
        while True:
            idx = [i for i in range(end) if height(cur[i]) == h]
            # push each maximal-height factor right over lower factors
            pushed = False
            for i in reversed(idx):
                j = i
                while j + 1 < end and height(cur[j + 1]) < h:
                    a, b = cur[j], cur[j + 1]
                    cur[j], cur[j + 1] = b, perm_conj(a, b)
                    log.append(j + 1)
                    j += 1
                    pushed = True
            idx = [i for i in range(end) if height(cur[i]) == h]
            if len(idx) == 1 and idx[0] == end - 1:
                break
            if pushed:
                continue
            # maximal-height factors form a suffix block of size >= 2
            i = idx[0]
            a, b = cur[i], cur[i + 1]
            assert a != b, "equal adjacent factors in a minimal factorisation"
            cur[i], cur[i + 1] = perm_mul(perm_mul(a, b), perm_inv(a)), a
            log.append(-(i + 1))
        end -= 1
    return log, tuple(cur)


def clebsch_connect(s1: Sequence[Perm], s2: Sequence[Perm], d: Optional[int] = None):
    """Connect two transposition sequences by standard moves, when possible.

    Returns ``("log", moves)`` with ``apply_moves(s1, moves) == tuple(s2)``
    when the sequences lie in one orbit, else ``("different_invariants",
    description)`` naming the invariant (length, product, partition or
    per-piece weights) that separates them.

    Minimal factorisations (length equal to the norm of the product) are
    normalised constructively through their monotone form; other orbits are
    searched by bidirectional breadth-first search on the move graph.  The
    returned log is re-verified before being reported.
    """
    s1, s2 = tuple(s1), tuple(s2)
    if d is None:
        d = len(s1[0]) if s1 else (len(s2[0]) if s2 else 1)
    if len(s1) != len(s2):
        return ("different_invariants", "length")
    t1, t2 = seq_to_triple(s1, d), seq_to_triple(s2, d)
    if t1.sigma != t2.sigma:
        return ("different_invariants", "product")
    if t1.partition != t2.partition:
        return ("different_invariants", "partition")
    if t1.weights != t2.weights:
        return ("different_invariants", "weights")

    if len(s1) == perm_norm(t1.sigma):
        log1, m1 = _monotone_normalise(s1)
        log2, m2 = _monotone_normalise(s2)
        if m1 == m2:
            moves = log1 + _invert_moves(log2)
            assert apply_moves(s1, moves) == s2
            return ("log", moves)

    moves = _bidirectional_bfs(s1, s2)
    if moves is None:
        return ("different_invariants", "not connected within the searched orbit")
    assert apply_moves(s1, moves) == s2
    return ("log", moves)


def _neighbours(seq: tuple[Perm, ...]):
    for i in range(1, len(seq)):
        a, b = seq[i - 1], seq[i]
        yield i, seq[: i - 1] + (b, perm_conj(a, b)) + seq[i + 1 :]
        yield -i, seq[: i - 1] + (perm_mul(perm_mul(a, b), perm_inv(a)), a) + seq[i + 1 :]


def _bidirectional_bfs(s1: tuple[Perm, ...], s2: tuple[Perm, ...]) -> Optional[list[int]]:
    if s1 == s2:
        return []
    fwd = {s1: []}
    bwd = {s2: []}
    qf, qb = deque([s1]), deque([s2])
    while qf or qb:
        for frontier, table, other, forward in ((qf, fwd, bwd, True), (qb, bwd, fwd, False)):
            if not frontier:
                continue
            for _ in range(len(frontier)):
                cur = frontier.popleft()
                base = table[cur]
                for m, nxt in _neighbours(cur):
                    if nxt in table:
                        continue
                    path = base + [m]
                    table[nxt] = path
                    if nxt in other:
                        if forward:
                            return path + _invert_moves(other[nxt])
                        return other[nxt] + _invert_moves(path)
                    frontier.append(nxt)
    return None


# ---------------------------------------------------------------------------
# enveloping-group word problem

def env_word_problem(d: int, word: Sequence[tuple[Perm, int]]) -> tuple[int, Perm]:
    """Evaluate a word in generators [sigma]^(+-1) of the enveloping group of
    the geodesic PMQ inside Z x S_d.

    The pair (norm, underlying permutation) is a complete invariant: two
    words are equal in the enveloping group iff their images agree, and the
    image always lies in the index-2 subgroup of pairs with equal parity.
    """
    n = 0
    sigma = identity(d)
    for p, sign in word:
        if sign > 0:
            n += perm_norm(p)
            sigma = perm_mul(sigma, p)
        else:
            n -= perm_norm(p)
            sigma = perm_mul(sigma, perm_inv(p))
    return n, sigma
