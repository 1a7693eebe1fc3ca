"""Cross-module orchestration: witnesses, reports, the full suite."""

from morsegraded.cancellation import critical_multigraph, witnessed_non_essential_sets
from morsegraded.pipeline import (
    characterization_matches_direct,
    cm_koszul_witness,
    full_consistency_suite,
    morse_vs_betti,
    reduced_survivor_counts,
    sharpness_report,
)
from morsegraded.cancellation import cancel_interval
from morsegraded.homology import order_complex, reduced_betti


def test_cm_koszul_witness_squares(squares):
    window = squares.pres.degree_window(4)
    report = cm_koszul_witness(squares.pres, squares.gb, squares.cfg, window)
    assert report["cm_ok"]
    assert report["koszul_diagonal"] is True
    assert report["notice"] is None


def test_cm_koszul_witness_minor(minor):
    window = minor.pres.degree_window(4)
    report = cm_koszul_witness(minor.pres, minor.gb, minor.cfg, window)
    assert report["cm_ok"] and report["koszul_diagonal"] is True


def test_koszul_check_skipped_without_grading():
    from morsegraded.chains import FacetOrderConfig
    from morsegraded.groebner import buchberger, toric_ideal_basis
    from morsegraded.orders import TermOrder
    from morsegraded.semigroup import SemigroupPresentation

    pres = SemigroupPresentation(1, [(2,), (3,)])
    order = TermOrder(2)
    gb = buchberger(toric_ideal_basis(pres, 6), order)
    report = cm_koszul_witness(pres, gb, FacetOrderConfig(order), pres.degree_window(3))
    assert report["koszul_diagonal"] is None
    assert "NotStandardGraded" in report["notice"]


def test_sharpness_report_entries(minor, cyclic3):
    for ring, lam in ((minor, (1, 1, 1, 1)), (cyclic3, (1, 1, 1, 1, 1, 1))):
        window = ring.pres.degree_window(ring.gb.degree)
        entries = sharpness_report(ring.pres, ring.gb, window)
        assert any(tuple(e["multidegree"]) == lam for e in entries)


def test_full_suite_squares(squares):
    out = full_consistency_suite(squares.pres, squares.gb, squares.cfg, 4)
    assert out["ok"], out["checks"]
    assert out["checks"]["class_bijection"]


def test_full_suite_cyclic3(cyclic3):
    out = full_consistency_suite(cyclic3.pres, cyclic3.gb, cyclic3.cfg, 3)
    assert out["ok"], out["checks"]
    assert out["checks"]["resolution_bounds"]
    assert out["details"]["sharpness_witnesses"]


def test_morse_vs_betti_shapes(squares):
    res = cancel_interval(squares.pres, (2, 2, 1, 1), squares.cfg, squares.gb)
    betti = reduced_betti(order_complex(squares.pres, squares.interval((2, 2, 1, 1))), 0)
    cmp = morse_vs_betti(res, betti)
    assert cmp["inequality_ok"] and cmp["euler_ok"]
    assert cmp["euler_morse"] == 3
    assert reduced_survivor_counts(res) == {2: 2}


def test_characterization_helper(squares):
    assert characterization_matches_direct(squares.pres, squares.gb, squares.cfg, (2, 2, 1, 1))


def test_witnessed_membership(squares):
    fm = squares.matching((2, 2, 1, 1))
    sets = witnessed_non_essential_sets(fm, squares.gb, squares.cfg, (1, 2, 3, 4))
    members = [m for s in sets for m in s.members]
    assert members and all(m.witness is not None for m in members)
    for m in members:
        assert m.witness.cells[0] != m.witness.cells[-1]


def test_critical_multigraph_structure(squares):
    fm = squares.matching((2, 2, 1, 1))
    graph = critical_multigraph(fm)
    assert graph.multiplicity((3, 2, 1, 4), (2, 1, 3, 4)) == 1
    assert graph.multiplicity((2, 1, 3, 4), (3, 2, 1, 4)) == 0
    assert (1, 2, 3, 4) in graph.vertices


def test_free_semigroup_is_koszul(free_plane):
    window = free_plane.pres.degree_window(3)
    report = cm_koszul_witness(free_plane.pres, free_plane.gb, free_plane.cfg, window)
    assert report["cm_ok"] and report["koszul_diagonal"] is True


def test_full_suite_interacting_relations():
    # rings whose relations share variables exercise the matching fallback
    # and the refined automaton escape; everything must still agree
    from morsegraded.chains import FacetOrderConfig
    from morsegraded.groebner import buchberger, default_cap, toric_ideal_basis
    from morsegraded.orders import TermOrder
    from morsegraded.semigroup import SemigroupPresentation

    cases = [
        (2, [(3, 0), (2, 1), (1, 2), (0, 3)]),
        (
            5,
            [
                (1, 0, 1, 0, 0),
                (1, 0, 0, 1, 0),
                (1, 0, 0, 0, 1),
                (0, 1, 1, 0, 0),
                (0, 1, 0, 1, 0),
                (0, 1, 0, 0, 1),
            ],
        ),
    ]
    for e, gens in cases:
        pres = SemigroupPresentation(e, gens)
        order = TermOrder(pres.n)
        cfg = FacetOrderConfig(order)
        gb = buchberger(toric_ideal_basis(pres, default_cap(pres, 4)), order)
        out = full_consistency_suite(pres, gb, cfg, 4, deep_degree=4)
        assert out["ok"], out["checks"]


def test_full_suite_under_alternate_orders(squares):
    # the construction works for any term order, not just the default lex
    from morsegraded.chains import FacetOrderConfig
    from morsegraded.groebner import buchberger, toric_ideal_basis
    from morsegraded.orders import TermOrder

    rows = [[1, 1, 1, 1, 1], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [0, 0, 1, 0, 0], [0, 1, 0, 0, 0]]
    orders = [
        TermOrder(5, kind="graded-lex"),
        TermOrder(5, kind="graded-revlex"),
        TermOrder(5, kind="weight-matrix", rows=rows),
    ]
    for order in orders:
        cfg = FacetOrderConfig(order)
        gb = buchberger(toric_ideal_basis(squares.pres, 2), order)
        out = full_consistency_suite(squares.pres, gb, cfg, 4)
        assert out["ok"], (order.kind, out["checks"])


def test_full_suite_square_leading_term():
    # relation 2*(1,1) = (2,0) + (0,2) with the square as leading term
    from morsegraded.chains import FacetOrderConfig
    from morsegraded.groebner import buchberger, toric_ideal_basis
    from morsegraded.orders import TermOrder
    from morsegraded.semigroup import SemigroupPresentation

    pres = SemigroupPresentation(2, [(2, 0), (0, 2), (1, 1)])
    order = TermOrder(3)
    gb = buchberger(toric_ideal_basis(pres, 2), order)
    assert gb.elements[0].plus == (0, 0, 2)
    out = full_consistency_suite(pres, gb, FacetOrderConfig(order), 5, deep_degree=5)
    assert out["ok"], out["checks"]


def test_full_suite_non_graded_numerical_semigroup():
    # <2,3>: chains of unequal length, quadratic basis, non-pure complexes
    from morsegraded.chains import FacetOrderConfig
    from morsegraded.groebner import buchberger, default_cap, toric_ideal_basis
    from morsegraded.orders import TermOrder
    from morsegraded.semigroup import SemigroupPresentation

    pres = SemigroupPresentation(1, [(2,), (3,)])
    order = TermOrder(2)
    gb = buchberger(toric_ideal_basis(pres, default_cap(pres, 6)), order)
    assert gb.degree == 2
    out = full_consistency_suite(pres, gb, FacetOrderConfig(order), 6, deep_degree=6)
    assert out["ok"], out["checks"]
