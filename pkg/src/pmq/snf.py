"""Exact integer linear algebra: Smith normal form, ranks, homology data.

Matrices are sparse maps (row, col) -> int.  The Smith reduction uses
arbitrary-precision integers with pivot selection by smallest magnitude and
least fill-in, which keeps coefficient growth tame on the incidence-style
matrices produced by chain complexes.  Elementary divisors are returned
normalised (each divides the next), so ranks and torsion read off directly.
"""

from __future__ import annotations

from math import gcd
from typing import Mapping

Entries = Mapping[tuple[int, int], int]

__all__ = ["smith_normal_form", "integer_rank", "rank_mod_p", "homology_groups"]


def smith_normal_form(entries: Entries) -> list[int]:
    """Elementary divisors (positive, each dividing the next) of the integer
    matrix with the given sparse entries."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)

    divisors: list[int] = []
    while rows:
        # pivot: smallest magnitude, then least fill-in
        best = None
        best_key = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(cols[c]) - 1))
                if best_key is None or key < best_key:
                    best_key = key
                    best = (r, c)
                    if key[0] == 1 and key[1] == 0:
                        break
            else:
                continue
            break
        r0, c0 = best

        while True:
            pivot = rows[r0][c0]
            # clear the pivot column
            dirty = False
            for r in list(cols[c0]):
                if r == r0:
                    continue
                v = rows[r][c0]
                qt = v // pivot
                if qt:
                    _add_row(rows, cols, r, r0, -qt)
                if rows.get(r, {}).get(c0):
                    # remainder smaller than the pivot: swap roles
                    r0 = r
                    dirty = True
                    break
            if dirty:
                continue
            # clear the pivot row
            pivot = rows[r0][c0]
            for c in list(rows[r0]):
                if c == c0:
                    continue
                v = rows[r0][c]
                qt = v // pivot
                if qt:
                    _add_col(rows, cols, c, c0, -qt)
                if rows[r0].get(c):
                    c0 = c
                    dirty = True
                    break
            if not dirty:
                break
        divisors.append(abs(rows[r0][c0]))
        _drop_row(rows, cols, r0)
        _drop_col(rows, cols, c0)

    # enforce the divisibility chain
    divisors.sort()
    changed = True
    while changed:
        changed = False
        for i in range(len(divisors) - 1):
            a, b = divisors[i], divisors[i + 1]
            if b % a:
                g = gcd(a, b)
                divisors[i], divisors[i + 1] = g, a * b // g
                changed = True
        divisors.sort()
    return divisors


def _add_row(rows, cols, dst: int, src: int, factor: int) -> None:
    row = rows.get(dst, {})
    for c, v in rows[src].items():
        nv = row.get(c, 0) + factor * v
        if nv:
            if c not in row:
                cols.setdefault(c, set()).add(dst)
            row[c] = nv
        elif c in row:
            del row[c]
            cols[c].discard(dst)
    if row:
        rows[dst] = row
    else:
        rows.pop(dst, None)


def _add_col(rows, cols, dst: int, src: int, factor: int) -> None:
    for r in list(cols.get(src, ())):
        v = rows[r][src]
        nv = rows[r].get(dst, 0) + factor * v
        if nv:
            if dst not in rows[r]:
                cols.setdefault(dst, set()).add(r)
            rows[r][dst] = nv
        elif dst in rows[r]:
            del rows[r][dst]
            cols[dst].discard(r)


def _drop_row(rows, cols, r: int) -> None:
    for c in rows.pop(r, {}):
        cols[c].discard(r)
        if not cols[c]:
            del cols[c]


def _drop_col(rows, cols, c: int) -> None:
    for r in cols.pop(c, ()):
        rows[r].pop(c, None)
        if not rows[r]:
            del rows[r]


def integer_rank(entries: Entries) -> int:
    return len(smith_normal_form(entries))


def rank_mod_p(entries: Entries, p: int) -> int:
    """Rank over the field with p elements, by sparse elimination."""
    rows: list[dict[int, int]] = []
    grouped: dict[int, dict[int, int]] = {}
    for (r, c), v in entries.items():
        if v % p:
            grouped.setdefault(r, {})[c] = v % p
    rows = list(grouped.values())
    rank = 0
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c in pivots:
                piv = pivots[c]
                f = (row[c] * pow(piv[c], -1, p)) % p
                for cc, vv in piv.items():
                    nv = (row.get(cc, 0) - f * vv) % p
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            else:
                pivots[c] = row
                rank += 1
                break
    return rank


def homology_groups(
    differentials: Mapping[int, Entries],
    dims: Mapping[int, int],
    mod: int = 0,
) -> dict[int, dict]:
    """Homology of a chain complex from its sparse differentials.

    ``differentials[n]`` maps degree n to n-1; ``dims[n]`` is the rank of the
    degree-n module.  Over the integers each degree reports free rank and
    torsion (elementary divisors > 1 of the incoming differential); over a
    prime field only dimensions.
    """
    degrees = sorted(dims)
    out: dict[int, dict] = {}
    ranks: dict[int, int] = {}
    torsion_in: dict[int, list[int]] = {}
    for n in degrees:
        d = differentials.get(n, {})
        if mod:
            ranks[n] = rank_mod_p(d, mod)
            torsion_in[n] = []
        else:
            divisors = smith_normal_form(d)
            ranks[n] = len(divisors)
            torsion_in[n] = [v for v in divisors if v != 1]
    for n in degrees:
        rank_in = ranks.get(n + 1, 0)
        betti = dims[n] - ranks.get(n, 0) - rank_in
        entry = {"rank": betti}
        if not mod:
            entry["torsion"] = torsion_in.get(n + 1, [])
        out[n] = entry
    return out
