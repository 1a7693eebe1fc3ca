"""Term orders against a naive reference comparator."""

import random
from itertools import permutations

import pytest

from morsegraded.errors import ValidationError
from morsegraded.orders import TermOrder


def reference_compare(kind, priority, a, b):
    """Straightforward restatement of the three classical orders."""
    if kind in ("graded-lex", "graded-revlex") and sum(a) != sum(b):
        return 1 if sum(a) > sum(b) else -1
    if kind == "graded-revlex":
        for v in reversed(priority):
            if a[v] != b[v]:
                return -1 if a[v] > b[v] else 1
        return 0
    for v in priority:
        if a[v] != b[v]:
            return 1 if a[v] > b[v] else -1
    return 0


@pytest.mark.parametrize("kind", ["lex", "graded-lex", "graded-revlex"])
def test_matches_reference_on_random_pairs(kind):
    rng = random.Random(3)
    order = TermOrder(4, kind=kind)
    for _ in range(300):
        a = tuple(rng.randint(0, 3) for _ in range(4))
        b = tuple(rng.randint(0, 3) for _ in range(4))
        assert order.compare(a, b) == reference_compare(kind, order.priority, a, b)


def test_default_lex_prefers_high_index():
    order = TermOrder(5)
    # z1*z4 against z0^2
    assert order.compare((0, 1, 0, 0, 1), (2, 0, 0, 0, 0)) > 0


def test_equal_monomials_compare_equal():
    order = TermOrder(3, kind="graded-revlex")
    assert order.compare((1, 0, 2), (1, 0, 2)) == 0


def test_grevlex_classic_example():
    # with z0 > z1 > z2: z0*z2 vs z1^2 have equal degree; grevlex favors z1^2? no:
    # last nonzero of difference (1,-2,1) scanning z2,z1,z0 is +1 at z2 -> z0*z2 smaller
    order = TermOrder(3, kind="graded-revlex", priority=(0, 1, 2))
    assert order.compare((1, 0, 1), (0, 2, 0)) < 0


def test_one_is_minimal_and_multiplicative():
    rng = random.Random(5)
    for kind in ("lex", "graded-lex", "graded-revlex"):
        order = TermOrder(4, kind=kind)
        one = (0, 0, 0, 0)
        for _ in range(100):
            m = tuple(rng.randint(0, 3) for _ in range(4))
            if m != one:
                assert order.compare(one, m) < 0
            a = tuple(rng.randint(0, 3) for _ in range(4))
            b = tuple(rng.randint(0, 3) for _ in range(4))
            c = tuple(rng.randint(0, 2) for _ in range(4))
            ac = tuple(x + y for x, y in zip(a, c))
            bc = tuple(x + y for x, y in zip(b, c))
            assert order.compare(a, b) == order.compare(ac, bc)


def test_weight_matrix_order():
    order = TermOrder(3, kind="weight-matrix", rows=[[1, 1, 1], [1, 0, 0], [0, 1, 0]])
    assert order.compare((1, 0, 0), (0, 0, 1)) > 0
    assert order.compare((0, 0, 2), (1, 0, 0)) > 0  # degree first


def test_weight_matrix_rejects_rank_deficiency():
    with pytest.raises(ValidationError):
        TermOrder(3, kind="weight-matrix", rows=[[1, 1, 1], [2, 2, 2]])


def test_weight_matrix_rejects_negative_leading_column():
    with pytest.raises(ValidationError):
        TermOrder(2, kind="weight-matrix", rows=[[1, -1], [0, 1]])


def test_priority_must_be_permutation():
    with pytest.raises(ValidationError):
        TermOrder(3, priority=(0, 0, 2))


def test_label_rank_orders_variables():
    order = TermOrder(4)
    ranks = [order.label_rank[i] for i in range(4)]
    assert ranks == [0, 1, 2, 3]
    rev = TermOrder(4, priority=(0, 1, 2, 3))
    assert [rev.label_rank[i] for i in range(4)] == [3, 2, 1, 0]


def test_totality_on_small_support():
    order = TermOrder(3, kind="graded-revlex")
    mons = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    ordered = sorted(mons, key=order.sort_key())
    for x, y in zip(ordered, ordered[1:]):
        assert order.compare(x, y) < 0
    # antisymmetry and transitivity on every permutation of a sample triple
    for tri in permutations(mons[:9], 3):
        a, b, c = tri
        if order.compare(a, b) <= 0 and order.compare(b, c) <= 0:
            assert order.compare(a, c) <= 0
