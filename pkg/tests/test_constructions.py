import math

import pytest
from hypothesis import given, settings, strategies as st

from espoints.constructions import (
    GeneratorSpec,
    es_lower_bound_set,
    extremal_cupcap_set,
    generate,
    parabola_points,
    random_general_position,
)
from espoints.cupcap import longest_cap, longest_cup
from espoints.errors import NotFound
from espoints.geometry import find_collinear_triple, is_general_position
from espoints.oracle import contains_convex_ngon, largest_convex_subset, largest_convex_subset_exhaustive


def test_random_is_deterministic():
    a = random_general_position(300, 5000, 7)
    b = random_general_position(300, 5000, 7)
    c = random_general_position(300, 5000, 8)
    assert a.points == b.points
    assert a.points != c.points


@settings(max_examples=25)
@given(st.integers(3, 150), st.sampled_from([200, 10**4]), st.integers(0, 10**6))
def test_random_in_general_position(n, rng_range, seed):
    S = random_general_position(n, rng_range, seed)
    assert len(S) == n
    assert len(set(S.points)) == n
    assert all(abs(c) <= rng_range for p in S.points for c in p)
    assert is_general_position(S)


def test_random_big_coordinates():
    S = random_general_position(40, 10**30, 3)
    assert max(abs(c) for p in S.points for c in p) > 2**62
    assert find_collinear_triple(S) is None


def test_random_gives_up_when_crowded():
    with pytest.raises(RuntimeError):
        random_general_position(60, 2, 0)


def test_generator_spec_roundtrip():
    spec = GeneratorSpec("random", n=50, seed=4, coord_range=999)
    assert generate(spec).points == random_general_position(50, 999, 4).points
    meta = spec.metadata()
    assert meta["seed"] == 4 and meta["range"] == 999 and meta["kind"] == "random"
    assert generate(GeneratorSpec("parabola", n=5)).points == parabola_points(5).points
    with pytest.raises(ValueError):
        generate(GeneratorSpec("spiral", n=5))


def test_parabola():
    S = parabola_points(10)
    assert len(longest_cup(S)) == 10
    assert len(longest_cap(S)) == 2


@pytest.mark.parametrize("k", range(3, 7))
@pytest.mark.parametrize("l", range(3, 7))
def test_extremal_sizes_and_cupcaps(k, l):
    S = extremal_cupcap_set(k, l)
    assert len(S) == math.comb(k + l - 4, k - 2)
    assert is_general_position(S)
    assert len(longest_cup(S)) == k - 1
    assert len(longest_cap(S)) == l - 1


# frozen from a subset enumeration
@pytest.mark.parametrize("k,l,size,cup,cap", [(4, 4, 6, 3, 3), (5, 5, 20, 4, 4), (4, 5, 10, 3, 4)])
def test_extremal_frozen(k, l, size, cup, cap):
    S = extremal_cupcap_set(k, l)
    assert (len(S), len(longest_cup(S)), len(longest_cap(S))) == (size, cup, cap)


def test_extremal_bounds():
    with pytest.raises(ValueError):
        extremal_cupcap_set(1, 5)
    with pytest.raises(ValueError):
        extremal_cupcap_set(8, 8)
    assert len(extremal_cupcap_set(2, 6)) == 1


@pytest.mark.parametrize("n", range(3, 9))
def test_lower_bound_sizes(n):
    S = es_lower_bound_set(n)
    assert len(S) == 2 ** (n - 2)
    assert is_general_position(S)


@pytest.mark.parametrize("n,size,best", [(4, 4, 3), (5, 8, 4), (6, 16, 5)])
def test_lower_bound_frozen(n, size, best):
    S = es_lower_bound_set(n)
    assert len(S) == size
    assert largest_convex_subset_exhaustive(S).size == best


@pytest.mark.parametrize("n", range(4, 11))
def test_lower_bound_has_no_convex_ngon(n):
    S = es_lower_bound_set(n)
    assert largest_convex_subset(S).size == n - 1
    with pytest.raises(NotFound):
        contains_convex_ngon(S, n)


def test_lower_bound_range():
    with pytest.raises(ValueError):
        es_lower_bound_set(2)
    with pytest.raises(ValueError):
        es_lower_bound_set(13)
