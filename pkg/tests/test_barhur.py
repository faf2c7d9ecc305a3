import random

import pytest

from pmq.barhur import (
    BisimplexArray,
    build_relative_complex,
    chain_map_commutes,
    enumerate_arrays,
    homology,
    poincare_report,
)
from pmq.catalog import (
    natural_truncation,
    segre_pmq,
    sym_geodesic_pmq,
    transposition_quandle,
)
from pmq.completion import Completion


def random_array(comp, rng, p, q, support=3, max_entry_norm=2):
    """A random array over the completion (no admissibility) with a bounded
    number of non-unit entries, so canonical forms stay at a searchable
    total norm."""
    pmq = comp.pmq
    positives = [a for a in range(len(pmq)) if a != pmq.unit]
    grid = [[comp.unit() for _ in range(q + 2)] for _ in range(p + 2)]
    cells = [(i, j) for i in range(p + 2) for j in range(q + 2)]
    for i, j in rng.sample(cells, min(support, len(cells))):
        length = rng.randint(1, max_entry_norm)
        grid[i][j] = comp.of_sequence(tuple(rng.choice(positives) for _ in range(length)))
    return BisimplexArray(comp, tuple(tuple(col) for col in grid))


@pytest.fixture(scope="module")
def comp3():
    return Completion(sym_geodesic_pmq(3))


def test_face_formula_direct_substitution(comp3):
    # two-column merge on a 2x2 inner grid over a geodesic PMQ
    q = comp3.pmq
    t12, t23 = q.index("213"), q.index("132")
    arr = BisimplexArray.from_inner(comp3, [(t12, q.unit), (q.unit, t23)])
    merged = arr.h_face(1)
    # row 1: t12 conjugated by nothing times unit; row 2: unit^... times t23
    assert merged.columns[1][1] == comp3.element(t12)
    assert merged.columns[1][2] == comp3.element(t23)
    # vertical merge multiplies entrywise
    vm = arr.v_face(1)
    assert vm.columns[1][1] == comp3.element(t12)
    assert vm.columns[2][1] == comp3.element(t23)


def test_face_merge_uses_conjugation(comp3):
    q = comp3.pmq
    t12, t23 = q.index("213"), q.index("132")
    # inner grid: column 1 = (1, t12), column 2 = (t23, 1): the second-row
    # merge conjugates t12 by the entry above in the right column
    arr = BisimplexArray.from_inner(comp3, [(q.unit, t12), (t23, q.unit)])
    merged = arr.h_face(1)
    conj_t12 = q.conj[t12][t23]
    assert merged.columns[1][1] == comp3.element(t23)
    assert merged.columns[1][2] == comp3.element(conj_t12)


def test_grading_preserved_by_all_maps(comp3):
    rng = random.Random(0)
    for _ in range(25):
        p, q = rng.randint(1, 2), rng.randint(1, 2)
        arr = random_array(comp3, rng, p, q, support=3, max_entry_norm=1)
        grading = arr.total_grading()
        for i in range(p + 1):
            assert arr.h_face(i).total_grading() == grading
            assert arr.h_degen(i).total_grading() == grading
        for j in range(q + 1):
            assert arr.v_face(j).total_grading() == grading
            assert arr.v_degen(j).total_grading() == grading


def test_bisimplicial_identities(comp3):
    rng = random.Random(1)
    for _ in range(12):
        arr = random_array(comp3, rng, 2, 2, support=4, max_entry_norm=1)
        p, q = arr.p, arr.q
        # d_i d_j = d_{j-1} d_i for i < j, horizontally and vertically
        for j in range(1, p + 1):
            for i in range(j):
                assert arr.h_face(j).h_face(i) == arr.h_face(i).h_face(j - 1)
        for j in range(1, q + 1):
            for i in range(j):
                assert arr.v_face(j).v_face(i) == arr.v_face(i).v_face(j - 1)
        # horizontal and vertical faces commute
        for i in range(p + 1):
            for j in range(q + 1):
                assert arr.h_face(i).v_face(j) == arr.v_face(j).h_face(i)


def test_degeneracy_then_matching_face_is_identity(comp3):
    rng = random.Random(2)
    arr = random_array(comp3, rng, 1, 2, support=3, max_entry_norm=1)
    for i in range(arr.p + 1):
        assert arr.h_degen(i).h_face(i) == arr
        assert arr.h_degen(i).h_face(i + 1) == arr
    for j in range(arr.q + 1):
        assert arr.v_degen(j).v_face(j) == arr
        assert arr.v_degen(j).v_face(j + 1) == arr


def test_grading_conserved_on_enumerated_arrays(comp3):
    # exhaustive over every admissible array of two small gradings: every
    # face and degeneracy keeps the column-major product (the shuffle
    # identity ab = b a^b at work)
    q = comp3.pmq
    for labels in (["231"], ["213", "132"]):
        b = comp3.of_labels(labels)
        for arr in enumerate_arrays(q, b):
            assert arr.total_grading() == b
            for i in range(arr.p + 1):
                if arr.p >= 1:
                    assert arr.h_face(i).total_grading() == b
                assert arr.h_degen(i).total_grading() == b
            for j in range(arr.q + 1):
                if arr.q >= 1:
                    assert arr.v_face(j).total_grading() == b
                assert arr.v_degen(j).total_grading() == b


def test_faces_of_nondegenerate_admissible_stay_nondegenerate(comp3):
    q = comp3.pmq
    b = comp3.of_labels(["231", "132"])
    for arr in enumerate_arrays(q, b):
        assert not arr.is_degenerate() and arr.is_admissible()
        for i in range(arr.p + 1):
            if arr.p >= 1:
                assert not arr.h_face(i).is_degenerate()
        for j in range(arr.q + 1):
            if arr.q >= 1:
                assert not arr.v_face(j).is_degenerate()


def test_enumerate_unit_grading():
    q = natural_truncation(2)
    comp = Completion(q)
    arrays = enumerate_arrays(q, comp.unit())
    assert len(arrays) == 1
    assert (arrays[0].p, arrays[0].q) == (0, 0)


def test_enumerate_five_arrays_for_grading_two():
    q = natural_truncation(2)
    comp = Completion(q)
    arrays = enumerate_arrays(q, comp.of_labels(["2"]))
    shapes = sorted((a.p, a.q) for a in arrays)
    assert shapes == [(1, 1), (1, 2), (2, 1), (2, 2), (2, 2)]


def test_enumerate_single_transposition_class():
    q = sym_geodesic_pmq(3)
    comp = Completion(q)
    arrays = enumerate_arrays(q, comp.of_labels(["213"]))
    assert len(arrays) == 1 and (arrays[0].p, arrays[0].q) == (1, 1)


def test_relative_complex_single_generator():
    q = natural_truncation(1)
    comp = Completion(q)
    cx = build_relative_complex(q, comp.of_labels(["1"]))
    assert cx.dims() == {2: 1}
    assert cx.differentials == {}
    assert homology(cx)[2] == {"rank": 1, "torsion": []}


def test_relative_complex_grading_two():
    q = natural_truncation(2)
    comp = Completion(q)
    cx = build_relative_complex(q, comp.of_labels(["2"]))
    assert cx.dims() == {2: 1, 3: 2, 4: 2}
    assert cx.euler_characteristic() == 1
    h = homology(cx)
    assert h[4] == {"rank": 1, "torsion": []}
    assert h[3]["rank"] == 0 and h[2]["rank"] == 0


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_symmetric_product_homology(n, m):
    q = natural_truncation(n)
    comp = Completion(q)
    cx = build_relative_complex(q, comp.of_labels([str(m)]))
    h = homology(cx)
    for degree, data in h.items():
        expected = 1 if degree == 2 * m else 0
        assert data["rank"] == expected and not data["torsion"]


def test_segre_top_homology_rank_two():
    q = segre_pmq()
    comp = Completion(q)
    cx = build_relative_complex(q, comp.of_labels(["c"]))
    h = homology(cx)
    assert h[4] == {"rank": 2, "torsion": []}
    assert h[3] == {"rank": 1, "torsion": []}


def test_homology_mod_p_dimensions():
    q = segre_pmq()
    comp = Completion(q)
    cx = build_relative_complex(q, comp.of_labels(["c"]), mod=5)
    h = homology(cx)
    assert h[4]["rank"] == 2


def test_hurwitz_cover_ranks():
    q = transposition_quandle(3)
    comp = Completion(q)
    cx = build_relative_complex(q, comp.of_labels(["213", "321"]))
    h = homology(cx)
    assert (h[3]["rank"], h[4]["rank"]) == (1, 1)


def test_poincare_reports():
    assert poincare_report(natural_truncation(3), 3)["passed"]
    assert poincare_report(transposition_quandle(3), 2)["passed"]
    rep = poincare_report(segre_pmq(), 2)
    assert not rep["passed"]
    assert rep["coconnected"] is False
    assert rep["gradings"]["c"]["top_rank"] == 2


def test_fundamental_class_sdgeo4_small_norms():
    q = sym_geodesic_pmq(4)
    comp = Completion(q)
    for b in comp.classes_up_to(2):
        if b.is_unit:
            continue
        h = homology(build_relative_complex(q, b))
        assert h[2 * b.norm] == {"rank": 1, "torsion": []}
    for b in comp.classes_of_norm(3)[:4]:
        h = homology(build_relative_complex(q, b))
        assert h[6] == {"rank": 1, "torsion": []}


def test_face_index_errors(comp3):
    q = comp3.pmq
    arr = BisimplexArray.from_inner(comp3, [(q.index("213"),)])
    with pytest.raises(IndexError):
        arr.h_face(2)
    with pytest.raises(IndexError):
        arr.v_face(2)
    with pytest.raises(IndexError):
        arr.h_degen(5)


def test_functoriality_of_inclusion():
    qa = natural_truncation(1)
    qb = natural_truncation(2)
    mapping = [qb.index(l) for l in qa.labels]
    comp_a = Completion(qa)
    # the induced map is a map of bisimplicial sets: every face and
    # degeneracy commutes on arbitrary arrays
    rng = random.Random(3)
    from pmq.barhur import induced_faces_commute

    for _ in range(20):
        arr = random_array(comp_a, rng, rng.randint(1, 2), rng.randint(1, 2), support=3)
        assert induced_faces_commute(qa, qb, mapping, arr)
    # at a grading without contractions it is also a relative chain map ...
    assert chain_map_commutes(qa, qb, mapping, comp_a.of_labels(["1"]))
    # ... but not where a product undefined in the source becomes defined in
    # the target: there the map of pairs does not exist
    assert not chain_map_commutes(qa, qb, mapping, comp_a.of_labels(["1", "1"]))
