import random

import pytest
from hypothesis import given, settings

from skeinlab import kauffman as K
from skeinlab.diagram import DiagramError, PlanarDiagram, disjoint_union, mirror
from skeinlab.generators import BRUNNIAN_JUNCTION, DBL_HOPF_JUNCTION, borromean, generate, hopf_chain
from skeinlab.laurent import parse

from diagen import diagrams

DELTA = parse("-A^2 - A^-2")

# (matching, coefficient) rows of the two resolution tables
DBL_HOPF_TABLE = [
    (((1, 2), (3, 5), (4, 6), (7, 8)), "A^-2 - A^2"),
    (((1, 5), (2, 3), (4, 8), (6, 7)), "A^-6 + A^-2 - A^2 - A^6"),
    (((1, 5), (2, 8), (3, 4), (6, 7)), "A^-4 - A^4"),
    (((1, 5), (2, 6), (3, 4), (7, 8)), "A^-2 - 2A^6 + A^10"),
    (((1, 2), (3, 4), (5, 6), (7, 8)), "A^-4 + 1 - 3A^4 + A^8"),
    (((1, 2), (3, 7), (4, 8), (5, 6)), "A^-2 - 2A^6 + A^10"),
    (((1, 2), (3, 5), (4, 8), (6, 7)), "A^-4 - A^4"),
    (((1, 5), (2, 3), (4, 6), (7, 8)), "A^-4 - A^4"),
    (((1, 4), (2, 3), (5, 8), (6, 7)), "A^-8"),
    (((1, 7), (2, 8), (3, 4), (5, 6)), "A^-2 - A^2"),
    (((1, 7), (2, 3), (4, 8), (5, 6)), "A^-4 - A^4"),
    (((1, 4), (2, 3), (5, 6), (7, 8)), "A^-6 - A^2"),
    (((1, 2), (3, 4), (5, 8), (6, 7)), "A^-6 - A^2"),
    (((1, 5), (2, 6), (3, 7), (4, 8)), "1 - A^4 - A^8 + A^12"),
]

BRUNNIAN_TABLE = [
    (((1, 2), (3, 5), (4, 6), (7, 8)), "A^4 - A^8"),
    (((1, 5), (2, 3), (4, 8), (6, 7)), "-A^-8 + 2 - A^8"),
    (((1, 5), (2, 8), (3, 4), (6, 7)), "-A^-10 + A^-2"),
    (((1, 5), (2, 6), (3, 4), (7, 8)), "-A^-8 + 2 - A^4"),
    (((1, 2), (3, 4), (5, 6), (7, 8)), "-A^-6 + A^-2 + A^2 - A^6"),
    (((1, 2), (3, 7), (4, 8), (5, 6)), "-A^-4 + 2 - A^8"),
    (((1, 5), (2, 3), (4, 6), (7, 8)), "-A^-6 + A^-2 + A^2 - A^6"),
    (((1, 2), (3, 5), (4, 8), (6, 7)), "A^2 - A^10"),
    (((1, 7), (2, 3), (4, 8), (5, 6)), "-A^-6 + A^-2 + A^2 - A^6"),
    (((1, 7), (2, 8), (3, 4), (5, 6)), "-A^-8 + A^-4"),
    (((1, 4), (2, 3), (5, 6), (7, 8)), "-A^-4 + 2 - A^4"),
    (((1, 2), (3, 4), (5, 8), (6, 7)), "1"),
    (((1, 5), (2, 6), (3, 7), (4, 8)), "-A^-6 + A^-2 + A^2 - A^6"),
]


def test_catalan_matches_closed_form():
    assert [K.catalan(n) for n in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    assert all(K.catalan(n) == K.catalan_closed(n) for n in range(30))


def test_region_worth():
    # 8 crossings with 4 strands out: 256 states against 14 pairings
    assert K.region_worth(8, 4)
    assert K.region_worth(3, 3)
    assert not K.region_worth(1, 2)
    assert not any(K.region_worth(0, n) for n in range(6))


def test_double_hopf_junction_table():
    t = K.resolve_region(PlanarDiagram(DBL_HOPF_JUNCTION), check=True)
    assert len(t) == 14
    assert t.coefficients() == {m: parse(c) for m, c in DBL_HOPF_TABLE}


def test_brunnian_junction_table():
    t = K.resolve_region(PlanarDiagram(BRUNNIAN_JUNCTION), check=True)
    assert len(t) == 13
    assert t.coefficients() == {m: parse(c) for m, c in BRUNNIAN_TABLE}
    assert ((1, 4), (2, 3), (5, 8), (6, 7)) not in t.coefficients()


def test_tangle_matchings_are_planar():
    for tile in (DBL_HOPF_JUNCTION, BRUNNIAN_JUNCTION):
        t = K.resolve_region(PlanarDiagram(tile))
        t.check_planar()
        assert len(t) <= K.catalan(4)


@settings(max_examples=200, deadline=None)
@given(diagrams(max_crossings=10))
def test_naive_equals_gathered(pd):
    assert K.bracket_naive(pd) == K.bracket_gathered(pd, check=True)


@settings(max_examples=80, deadline=None)
@given(diagrams(max_crossings=8))
def test_mirror_conjugates(pd):
    assert K.bracket_naive(mirror(pd)) == K.bracket_naive(pd).substitute_inverse()


@settings(max_examples=60, deadline=None)
@given(diagrams(max_crossings=5), diagrams(max_crossings=5))
def test_disjoint_union_multiplies_with_delta(a, b):
    assert K.bracket_naive(disjoint_union(a, b)) == DELTA * K.bracket_naive(a) * K.bracket_naive(b)


def test_single_crossing_plan_matches_auto_plan():
    pd = generate("brunnian_ring", 2)
    singles = [[i] for i in range(len(pd.crossings))]
    assert K.bracket_gathered(pd, singles) == K.bracket_gathered(pd) == K.bracket_naive(pd)


def test_random_plans_agree():
    rng = random.Random(7)
    pd = generate("dbl_hopf_ring", 4)
    idx = list(range(len(pd.crossings)))
    for _ in range(5):
        rng.shuffle(idx)
        cut = sorted(rng.sample(range(1, len(idx)), 3))
        plan = [idx[a:b] for a, b in zip([0] + cut, cut + [len(idx)])]
        try:
            got = K.bracket_gathered(pd, plan)
        except DiagramError:
            # a random region need not be bounded by a simple curve
            continue
        assert got == K.bracket_naive(pd)


def test_bad_plan_rejected():
    pd = hopf_chain(3)
    with pytest.raises(DiagramError):
        K.bracket_gathered(pd, [[0]])


def test_naive_cap():
    with pytest.raises(K.CapExceeded):
        K.bracket_naive(generate("brunnian_ring", 4))


def test_unknot_and_unlink():
    assert K.bracket(PlanarDiagram((), 1)) == parse("1")
    assert K.bracket(PlanarDiagram((), 3)) == DELTA ** 2
    with pytest.raises(DiagramError):
        K.bracket(PlanarDiagram((), 0))


def test_borromean_is_amphichiral():
    b = K.bracket(borromean())
    assert b == b.substitute_inverse()


def test_methods_agree_on_families():
    for fam, n in [("hopf_ring", 5), ("dbl_hopf_chain", 4), ("brunnian_chain", 3)]:
        pd = generate(fam, n)
        assert K.bracket(pd, "naive") == K.bracket(pd, "gathered")


def test_planner_uses_junction_regions():
    for n in (6, 8):
        regions = K.plan_regions(generate("dbl_hopf_ring", n)).regions
        assert sorted(len(r) for r in regions) == [8] * (n // 2)


def test_planner_partitions_random_diagram():
    from skeinlab.generators import braid_closure
    rng = random.Random(3)
    word = [rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(12)]
    pd = braid_closure(word, 4)
    K.plan_regions(pd).validate_for(pd)
    assert K.plan_regions(hopf_chain(2)).regions == [[0, 1]]
