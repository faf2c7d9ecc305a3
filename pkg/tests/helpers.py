"""Independent re-evaluation of single axioms at reported witnesses.

Used by the mutation tests: when the validator rejects a structure naming
an axiom and a witness, the named axiom is re-evaluated here directly from
the tables, so a wrong axiom name cannot slip through.
"""

from __future__ import annotations

from pmq.core import FinitePmq


def axiom_holds_at(q: FinitePmq, axiom: str, witness: tuple[str, ...]) -> bool:
    ix = [q.index(lbl) for lbl in witness]
    conj = q.conj
    prod = q.prod
    unit = q.unit
    n = len(q)

    if axiom == "conj-bijective":
        (b,) = ix
        return sorted(conj[a][b] for a in range(n)) == list(range(n))
    if axiom == "conj-unit":
        (a,) = ix
        return conj[unit][a] == unit and conj[a][unit] == a
    if axiom == "conj-idempotence":
        (a,) = ix
        return conj[a][a] == a
    if axiom == "conj-distributivity":
        a, b, c = ix
        return conj[conj[a][b]][c] == conj[conj[a][c]][conj[b][c]]
    if axiom == "unit-product":
        (a,) = ix
        return prod.get((unit, a)) == a and prod.get((a, unit)) == a
    if axiom == "associativity":
        a, b, c = ix
        ab = prod.get((a, b))
        bc = prod.get((b, c))
        left = prod.get((ab, c)) if ab is not None else None
        right = prod.get((a, bc)) if bc is not None else None
        if (left is None) != (right is None):
            return False
        return left == right
    if axiom == "product-conj-swap":
        a, b = ix
        return prod.get((a, b)) == prod.get((b, conj[a][b]))
    if axiom == "conj-of-product":
        a, b, c = ix
        bc = prod.get((b, c))
        if bc is None:
            return True
        return conj[a][bc] == conj[conj[a][b]][c]
    if axiom == "product-equivariance":
        a, b, c = ix
        ab = prod.get((a, b))
        img = prod.get((conj[a][c], conj[b][c]))
        if (ab is None) != (img is None):
            return False
        if ab is None:
            return True
        return conj[ab][c] == img
    if axiom == "norm-kernel":
        (a,) = ix
        return (q.norm[a] == 0) == (a == unit)
    if axiom == "norm-additive":
        a, b = ix
        ab = prod.get((a, b))
        return ab is None or q.norm[ab] == q.norm[a] + q.norm[b]
    if axiom == "norm-conj-invariant":
        a, b = ix
        return q.norm[conj[a][b]] == q.norm[a]
    raise ValueError(f"unknown axiom {axiom!r}")


def mutate_once(q: FinitePmq, rng) -> FinitePmq:
    """A single random table edit: change a conjugation entry, rewrite a
    product value, delete a defined product or add an undefined one."""
    n = len(q)
    conj = [list(row) for row in q.conj]
    prod = dict(q.prod)
    kind = rng.randrange(4)
    if kind == 0:
        a, b = rng.randrange(n), rng.randrange(n)
        choices = [c for c in range(n) if c != conj[a][b]]
        conj[a][b] = rng.choice(choices)
    elif kind == 1 and prod:
        key = rng.choice(sorted(prod))
        choices = [c for c in range(n) if c != prod[key]]
        prod[key] = rng.choice(choices)
    elif kind == 2 and prod:
        key = rng.choice(sorted(prod))
        del prod[key]
    else:
        undefined = [
            (a, b) for a in range(n) for b in range(n) if (a, b) not in prod
        ]
        if undefined:
            key = rng.choice(undefined)
            prod[key] = rng.randrange(n)
        else:
            a, b = rng.randrange(n), rng.randrange(n)
            choices = [c for c in range(n) if c != conj[a][b]]
            conj[a][b] = rng.choice(choices)
    return FinitePmq.build(q.labels, q.unit, conj, prod, q.norm)
