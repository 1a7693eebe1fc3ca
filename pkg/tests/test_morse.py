"""Interval systems, truncation, critical cells, the face matching."""

from morsegraded.chains import ordered_facets
from morsegraded.morse import (
    RankInterval,
    assert_euler,
    build_face_matching,
    covers_all_ranks,
    critical_cell_of,
    direct_interval_system,
    euler_characteristic,
    labels_contribute,
    morse_numbers,
    msi_characterization,
    truncate_to_j_intervals,
    verify_acyclic,
)


def spans(system):
    return tuple(iv.span() for iv in system)


# -- characterization on the worked facets ------------------------------------


def test_least_facet_has_empty_system(squares):
    facets = ordered_facets(squares.interval((2, 2, 1, 1)), squares.cfg)
    assert facets[0].labels == (0, 0, 2, 3)
    assert direct_interval_system(facets, 0) == ()


def test_descending_witness_facet_system(squares):
    # descents at ranks 1 and 2 plus the adjacent syzygy pair at rank 3
    system = msi_characterization(squares.gb, squares.cfg, (3, 2, 1, 4))
    assert spans(system) == ((1, 1), (2, 2), (3, 3))
    kinds = [iv.kind for iv in system]
    assert kinds == ["descent", "descent", "syzygy"]


def test_interspersed_witness_facet_system(squares):
    # descent at rank 1, syzygy run over labels 1,3,4 spanning ranks 2..3
    system = msi_characterization(squares.gb, squares.cfg, (2, 1, 3, 4))
    assert spans(system) == ((1, 1), (2, 3))
    assert system[1].kind == "syzygy"


def test_full_window_facet_system(squares):
    system = msi_characterization(squares.gb, squares.cfg, (1, 2, 3, 4))
    assert spans(system) == ((1, 3),)


def test_no_system_for_free_ascending(free_plane):
    assert msi_characterization(free_plane.gb, free_plane.cfg, (0, 1)) == ()


def test_pair_swap_worked_facet(pair_swap):
    # descents at ranks 1,2 and the syzygy run over labels z2,z5,z6
    system = msi_characterization(pair_swap.gb, pair_swap.cfg, (3, 2, 1, 4, 5))
    assert spans(system) == ((1, 1), (2, 2), (3, 4))


def test_characterization_equals_direct_everywhere(squares, pair_swap, minor, cyclic3):
    for ring, depth in ((squares, 5), (pair_swap, 4), (minor, 4), (cyclic3, 4)):
        for lam in sorted(ring.pres.degree_window(depth)):
            facets = ordered_facets(ring.interval(lam), ring.cfg)
            for j, facet in enumerate(facets):
                direct = spans(direct_interval_system(facets, j))
                implied = spans(msi_characterization(ring.gb, ring.cfg, facet))
                assert direct == implied, (ring.name, lam, facet.labels)


# -- truncation -----------------------------------------------------------------


def make(spans_):
    return [RankInterval(lo, hi, "syzygy") for lo, hi in spans_]


def test_truncation_disjoint_unchanged():
    assert spans(truncate_to_j_intervals(make([(1, 1), (2, 3)]))) == ((1, 1), (2, 3))


def test_truncation_single_overlap():
    assert spans(truncate_to_j_intervals(make([(1, 2), (2, 3)]))) == ((1, 2), (3, 3))


def test_truncation_discards_swallowed_interval():
    # the middle interval is chopped to nothing and dropped
    assert spans(truncate_to_j_intervals(make([(1, 3), (2, 3), (3, 5)]))) == (
        (1, 3),
        (4, 5),
    )


def test_truncation_discards_non_minimal():
    # after chopping, (4,5) strictly contains (4,4) and is discarded
    got = spans(truncate_to_j_intervals(make([(1, 3), (2, 4), (3, 5)])))
    assert got == ((1, 3), (4, 4))


# -- critical cells ---------------------------------------------------------------


def test_cell_of_descending_witness(squares):
    facet = next(
        f
        for f in ordered_facets(squares.interval((2, 2, 1, 1)), squares.cfg)
        if f.labels == (3, 2, 1, 4)
    )
    system = msi_characterization(squares.gb, squares.cfg, facet)
    cell = critical_cell_of(facet, system, (2, 2, 1, 1), 5)
    assert cell.ranks == (1, 2, 3) and cell.dimension == 2


def test_cell_of_interspersed_witness(squares):
    facet = next(
        f
        for f in ordered_facets(squares.interval((2, 2, 1, 1)), squares.cfg)
        if f.labels == (2, 1, 3, 4)
    )
    system = msi_characterization(squares.gb, squares.cfg, facet)
    cell = critical_cell_of(facet, system, (2, 2, 1, 1), 5)
    assert cell.ranks == (1, 2) and cell.dimension == 1


def test_non_covering_system_gives_no_cell(squares):
    facet = next(
        f
        for f in ordered_facets(squares.interval((2, 2, 1, 1)), squares.cfg)
        if f.labels == (1, 3, 2, 4)
    )
    system = msi_characterization(squares.gb, squares.cfg, facet)
    assert not covers_all_ranks(system, 3)
    assert critical_cell_of(facet, system, (2, 2, 1, 1), 5) is None


def test_labels_contribute(squares):
    assert labels_contribute(squares.gb, squares.cfg, (3, 2, 1, 4))
    assert not labels_contribute(squares.gb, squares.cfg, (1, 3, 2, 4))


# -- the face matching --------------------------------------------------------------


def test_matching_on_relation_interval(squares):
    fm = squares.matching((2, 2, 1, 1))
    numbers = morse_numbers(fm.cells())
    assert numbers == {0: 2, 1: 4, 2: 5}
    assert verify_acyclic(fm)
    assert_euler(fm, fm.cells())


def test_matching_two_points(free_plane):
    ivl = free_plane.pres.interval((0, 0), (1, 1))
    fm = build_face_matching(ivl, free_plane.cfg, free_plane.gb)
    assert morse_numbers(fm.cells()) == {0: 2}
    assert euler_characteristic(fm) == 2


def test_matching_atom_interval(squares):
    ivl = squares.interval((0, 0, 1, 0))
    fm = build_face_matching(ivl, squares.cfg, squares.gb)
    cells = fm.cells()
    assert len(cells) == 1 and cells[0].dimension == -1
    assert cells[0].facet.labels == (2,)


def test_base_cell_is_least_facet_vertex(squares):
    fm = squares.matching((2, 2, 1, 1))
    base = [c for c in fm.cells() if c.is_base]
    assert len(base) == 1
    assert base[0].facet.labels == (0, 0, 2, 3)
    assert base[0].dimension == 0


def test_every_face_matched_or_critical(squares):
    fm = squares.matching((2, 2, 1, 1))
    crit = set(fm.critical)
    for mask in fm.owner:
        assert (mask in fm.partner) != (mask in crit)
    for a, b in fm.partner.items():
        assert fm.partner[b] == a
        assert abs(fm.dim(a) - fm.dim(b)) == 1


def test_morse_numbers_empty():
    assert morse_numbers([]) == {}


def test_verify_acyclic_identity_matching(squares):
    import copy

    fm = copy.copy(squares.matching((2, 2, 0, 0)))
    fm.partner = {}  # nothing matched: trivially acyclic
    assert verify_acyclic(fm)


def test_verify_acyclic_detects_cyclic_matching(squares):
    # triangle boundary matched all the way around: v_i <-> e_{i,i+1}
    import copy

    fm = copy.copy(squares.matching((2, 2, 0, 0)))
    v1, v2, v3 = 1, 2, 4
    e12, e23, e31 = v1 | v2, v2 | v3, v3 | v1
    fm.owner = {m: 0 for m in (v1, v2, v3, e12, e23, e31)}
    fm.partner = {v1: e12, e12: v1, v2: e23, e23: v2, v3: e31, e31: v3}
    fm.critical = {}
    assert not verify_acyclic(fm)
    # breaking one pair breaks the only cycle
    del fm.partner[v3], fm.partner[e31]
    assert verify_acyclic(fm)


def test_euler_identity_across_window(squares):
    for lam in sorted(squares.pres.degree_window(4)):
        fm = squares.matching(lam)
        assert_euler(fm, fm.cells())


def test_cell_dimension_counts_j_intervals(squares):
    fm = squares.matching((2, 2, 1, 1))
    for j, facet in enumerate(fm.facets):
        cell = critical_cell_of(facet, fm.systems[j], (2, 2, 1, 1), 5)
        if cell is not None and j > 0:
            assert cell.dimension == len(fm.j_systems[j]) - 1


def test_interval_system_accessor(squares):
    fm = squares.matching((2, 2, 1, 1))
    j = next(i for i, f in enumerate(fm.facets) if f.labels == (2, 1, 3, 4))
    system = fm.interval_system(j)
    assert system.facet.labels == (2, 1, 3, 4)
    assert tuple(iv.span() for iv in system.i_intervals) == ((1, 1), (2, 3))
    assert tuple(iv.span() for iv in system.j_intervals) == ((1, 1), (2, 3))


def test_pure_lead_window_height_bound(squares, pair_swap, cyclic3):
    # a syzygy interval whose window is exactly a leading term (nothing
    # interspersed) has height at most (basis degree) - 1
    for ring in (squares, pair_swap, cyclic3):
        d = ring.gb.degree
        leads = {b.plus for b in ring.gb.elements}
        for lam in sorted(ring.pres.degree_window(4)):
            from morsegraded.chains import saturated_chains
            from morsegraded.orders import content_monomial

            for facet in saturated_chains(ring.interval(lam)):
                for iv in msi_characterization(ring.gb, ring.cfg, facet):
                    if iv.kind != "syzygy":
                        continue
                    window = facet.labels[iv.lo - 1 : iv.hi + 1]
                    if content_monomial(window, ring.pres.n) in leads:
                        assert iv.height <= d - 1
