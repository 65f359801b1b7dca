import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from espoints.errors import DegenerateInput
from espoints.geometry import (
    FAST_COORD_LIMIT,
    Orientation,
    PointSet,
    collinear_triples_fast,
    convex_hull,
    convex_position_by_quadruples,
    find_collinear_triple,
    four_in_convex_position,
    is_convex_position,
    is_general_position,
    orient_batch,
    orientation,
    point_in_convex_polygon,
)

coord = st.integers(-50, 50)
point = st.tuples(coord, coord)
big = st.integers(-(1 << 200), 1 << 200)


def test_orientation_examples():
    assert orientation((0, 0), (1, 0), (1, 1)) is Orientation.CCW
    assert orientation((0, 0), (1, 1), (2, 2)) is Orientation.COLLINEAR
    assert orientation((0, 0), (0, 1), (1, 1)) is Orientation.CW


def test_orientation_huge_coordinates_are_exact():
    # determinant is exactly 1 but the terms are ~2^400: floats would round it away
    M = 1 << 200
    assert orientation((0, 0), (M, M + 1), (M - 1, M)) is Orientation.CCW
    assert orientation((0, 0), (M, M), (2 * M, 2 * M)) is Orientation.COLLINEAR


@given(point, point, point)
def test_orientation_antisymmetric_and_cyclic(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)
    assert orientation(p, q, r) == orientation(q, r, p)


@given(st.tuples(big, big), st.tuples(big, big), st.tuples(big, big))
def test_orientation_antisymmetric_big(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)


@given(point, point, point, st.integers(1, 1000), coord, coord)
def test_orientation_translation_and_scaling(p, q, r, s, dx, dy):
    moved = [(s * x + dx, s * y + dy) for x, y in (p, q, r)]
    assert orientation(*moved) == orientation(p, q, r)


def test_orientation_randomized_antisymmetry_many():
    rng = np.random.default_rng(0)
    pts = rng.integers(-FAST_COORD_LIMIT, FAST_COORD_LIMIT, size=(100_000, 3, 2))
    a, b, c = pts[:, 0], pts[:, 1], pts[:, 2]
    o1 = orient_batch(a[:, 0], a[:, 1], b[:, 0], b[:, 1], c[:, 0], c[:, 1])
    o2 = orient_batch(a[:, 0], a[:, 1], c[:, 0], c[:, 1], b[:, 0], b[:, 1])
    assert np.array_equal(o1, -o2)
    # spot-check the batch against the scalar predicate
    for i in range(0, 100_000, 997):
        assert o1[i] == orientation(*map(tuple, pts[i].tolist()))


def test_orient_batch_object_path_matches_scalar():
    M = 1 << 70
    xs = np.array([0, M, 2 * M + 1], dtype=object)
    ys = np.array([0, M, 2 * M], dtype=object)
    s = orient_batch(xs[0], ys[0], xs[1], ys[1], xs[2:], ys[2:])
    assert int(s[0]) == orientation((0, 0), (M, M), (2 * M + 1, 2 * M))


def test_general_position_examples():
    assert is_general_position([(0, 0), (1, 0), (0, 1)])
    assert not is_general_position([(0, 0), (1, 1), (2, 2), (0, 5)])
    assert is_general_position([])
    assert not is_general_position([(0, 0), (0, 0), (1, 5)])


def test_pointset_rejects_degenerate_input():
    with pytest.raises(DegenerateInput):
        PointSet([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateInput):
        PointSet([(0, 0), (0, 0)], check=False)
    with pytest.raises(TypeError):
        PointSet([(0.5, 1)])


def _brute_collinear(pts):
    return any(orientation(pts[i], pts[j], pts[k]) == 0
               for i, j, k in itertools.combinations(range(len(pts)), 3))


def test_find_collinear_triple_matches_brute_force():
    rng = random.Random(3)
    for _ in range(300):
        pts = list({(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(rng.randint(3, 40))})
        S = PointSet(pts, check=False)
        t = find_collinear_triple(S)
        assert (t is not None) == _brute_collinear(pts)
        if t is not None:
            assert orientation(*(pts[i] for i in t)) == 0


def test_collinear_scan_reports_every_triple_of_a_line():
    pts = [(i, 2 * i) for i in range(5)] + [(1, 7), (3, -4)]
    found = set(collinear_triples_fast(PointSet(pts, check=False).xy))
    assert found == set(itertools.combinations(range(5), 3))


def test_find_collinear_triple_arbitrary_precision():
    M = 1 << 80
    pts = [(i * 7 + (i * i) % 5, i * i) for i in range(30)] + [(M, M), (2 * M, 2 * M), (3 * M, 3 * M)]
    S = PointSet(pts, check=False)
    assert not S.fast
    t = find_collinear_triple(S)
    assert t is not None and orientation(*(pts[i] for i in t)) == 0


def test_convex_hull_examples():
    square = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert sorted(convex_hull(square)) == [0, 1, 2, 3]
    assert convex_hull(square) == [0, 1, 2, 3]  # CCW from the lex minimum
    assert sorted(convex_hull([(0, 0), (4, 0), (4, 2), (0, 2), (2, 1)])) == [0, 1, 2, 3]
    para = [(x, x * x) for x in range(6)]
    assert sorted(convex_hull(para)) == list(range(6))


@given(st.lists(point, min_size=1, max_size=25, unique=True))
def test_hull_idempotent(pts):
    hull = convex_hull(pts)
    again = convex_hull([pts[i] for i in hull])
    assert [hull[i] for i in again] == hull


def test_is_convex_position_examples():
    square = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert is_convex_position(square)
    assert not is_convex_position([(0, 0), (4, 0), (2, 3), (2, 1)])
    assert is_convex_position([(0, 0), (5, 1), (2, 7)])
    with pytest.raises(ValueError):
        is_convex_position(square, [0, 1, 1])


def _general_position_sets(max_size):
    return st.lists(point, min_size=3, max_size=max_size, unique=True).filter(is_general_position)


@given(_general_position_sets(12))
def test_lemma1_equivalence(pts):
    idx = list(range(len(pts)))
    hull_based = is_convex_position(pts, idx, cross_check=False)
    assert hull_based == convex_position_by_quadruples(pts, idx)


def test_four_point_convexity():
    assert four_in_convex_position((0, 0), (2, 0), (2, 2), (0, 2))
    assert not four_in_convex_position((0, 0), (4, 0), (2, 3), (2, 1))


def test_point_in_convex_polygon_examples():
    tri = [(0, 0), (4, 0), (2, 3)]
    assert point_in_convex_polygon((2, 1), tri, open=True)
    assert not point_in_convex_polygon((2, 3), tri, open=True)
    assert point_in_convex_polygon((2, 3), tri, open=False)
    assert not point_in_convex_polygon((10, 10), tri)


def test_reflected_swaps_orientation_and_is_cached():
    S = PointSet([(0, 0), (3, 1), (1, 4)])
    R = S.reflected()
    assert R.reflected() is S
    assert orientation(*R.points) == orientation(*S.points)  # a half turn keeps orientation
    assert [tuple(p) for p in R.points] == [(0, 0), (-3, -1), (-1, -4)]
