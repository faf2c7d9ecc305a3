import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pmq.catalog import (
    cyclic_group,
    group_pmq,
    natural_truncation,
    rack_three_example,
    segre_pmq,
    sym_geodesic_pmq,
    transposition_quandle,
    unit_pmq,
)
from pmq.core import (
    FiniteGroup,
    FinitePmq,
    conjugacy_classes,
    geodesic_pmq,
    join_pmq_group,
    semidirect_pmq,
    validate,
)
from pmq.errors import PreconditionError, StructureError
from pmq.symgeo import sym_geodesic_pair, symmetric_group

from helpers import axiom_holds_at, mutate_once


def test_unit_pmq_valid():
    assert validate(unit_pmq()).ok


def test_group_is_pmq():
    assert validate(group_pmq(symmetric_group(3))).ok


def test_rack_fails_idempotence_only():
    report = validate(rack_three_example())
    assert report.axioms() == ["conj-idempotence"]
    assert report.violations[0].witness == ("a",)


def test_malformed_table_is_structural():
    with pytest.raises(StructureError):
        FinitePmq.build(["1", "a"], 0, [[0, 0], [1, 5]], {})
    with pytest.raises(StructureError):
        FinitePmq.build(["1", "a"], 0, [[0, 0], [1, 1]], {(0, 3): 0})


def test_conjugacy_classes_examples():
    # abelian: all singletons
    q = natural_truncation(3)
    assert all(len(c) == 1 for c in conjugacy_classes(q))
    # symmetric geodesic: unit / transpositions / 3-cycles
    sizes = sorted(len(c) for c in conjugacy_classes(sym_geodesic_pmq(3)))
    assert sizes == [1, 2, 3]


def test_semidirect_transitive_action_one_class():
    g = cyclic_group(2)
    action = {("s", "0"): "s", ("s", "1"): "t", ("t", "0"): "t", ("t", "1"): "s"}
    q = semidirect_pmq(g, ["s", "t"], action)
    # points are swapped by the generator, nontrivial products only in the group
    assert q.conjugate(q.index("s"), q.index("1")) == q.index("t")
    assert (q.index("s"), q.index("t")) not in q.prod
    assert (q.index("s"), q.index("1")) not in q.prod
    classes = conjugacy_classes(q)
    assert ("s", "t") in classes
    # a nontrivial group acting on a nonempty set cannot satisfy conditional
    # associativity: (g g^-1)s is defined, g^-1 s is not; the validator must
    # report exactly that and nothing else
    report = validate(q)
    assert set(report.axioms()) == {"associativity"}


def test_semidirect_validates_when_group_is_trivial():
    g = FiniteGroup.from_table(["1"], [[0]])
    q = semidirect_pmq(g, ["s", "t"], {("s", "1"): "s", ("t", "1"): "t"})
    assert validate(q).ok


def test_semidirect_trivial_group():
    g = FiniteGroup.from_table(["1"], [[0]])
    q = semidirect_pmq(g, ["s"], {("s", "1"): "s"})
    assert validate(q).ok
    assert len(q) == 2


def test_join_pmq_group_complete_and_ideal():
    pair = sym_geodesic_pair(3)
    joined = join_pmq_group(pair)
    assert validate(joined).ok
    nq = len(pair.pmq)
    n = len(joined)
    # complete product
    assert len(joined.prod) == n * n
    # the embedded PMQ part keeps its products
    for (a, b), c in pair.pmq.prod.items():
        assert joined.prod[(a, b)] == c
    # undefined products land in the group part
    t12 = pair.pmq.index("213")
    assert joined.prod[(t12, t12)] >= nq
    # the group copy is an ideal: conjugation-invariant and absorbing
    for g in range(nq, n):
        for b in range(n):
            assert joined.conj[g][b] >= nq
            assert joined.conjugate_inv(g, b) >= nq
            assert joined.prod[(g, b)] >= nq
            assert joined.prod[(b, g)] >= nq


def test_join_unit_pmq_trivial_group():
    g = FiniteGroup.from_table(["e"], [[0]])
    q = unit_pmq()
    from pmq.core import PmqGroupPair

    pair = PmqGroupPair(q, g, (0,), ((0,),))
    joined = join_pmq_group(pair)
    assert validate(joined).ok
    assert len(joined) == 2
    assert joined.prod[(0, 1)] == 1  # unit times the adjoined element


def test_geodesic_pmq_s3():
    g = symmetric_group(3)
    from pmq.symgeo import perm_norm

    norm = [perm_norm(tuple(int(c) for c in lbl)) for lbl in g.labels]
    q = geodesic_pmq(g, norm)
    assert validate(q).ok
    t12, t23 = q.index("213"), q.index("132")
    assert (t12, t23) in q.prod
    assert (t12, t12) not in q.prod


def test_geodesic_rejects_bad_norm():
    g = cyclic_group(3)
    with pytest.raises(PreconditionError):
        geodesic_pmq(g, [0, 1, 3])  # violates the triangle inequality


def test_geodesic_z2_unit_norm():
    q = geodesic_pmq(cyclic_group(2), [0, 1])
    assert validate(q).ok
    assert (1, 1) not in q.prod  # 1 + 1 != 0


def test_braid_act_examples():
    q = sym_geodesic_pmq(3)
    t12, t23, t13 = q.index("213"), q.index("132"), q.index("321")
    assert q.braid_act((t12, t23), 1, +1) == (t23, t13)
    # inverse move restores
    moved = q.braid_act((t12, t23), 1, +1)
    assert q.braid_act(moved, 1, -1) == (t12, t23)
    # unit neighbour: swap only
    u = q.unit
    assert q.braid_act((t12, u), 1, +1) == (u, t12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_mutations_detected_with_correct_axiom(seed):
    rng = random.Random(seed)
    q = sym_geodesic_pmq(3)
    mutant = mutate_once(q, rng)
    report = validate(mutant, stop_first=True)
    if not report.ok:
        v = report.violations[0]
        assert not axiom_holds_at(mutant, v.axiom, v.witness)


def test_constructions_all_validate():
    assert validate(join_pmq_group(sym_geodesic_pair(3))).ok
    assert validate(sym_geodesic_pmq(4)).ok
    assert validate(segre_pmq()).ok
    assert validate(transposition_quandle(3)).ok
