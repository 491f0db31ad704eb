"""Shadows, umbrae, hulls, and the type censuses."""

import itertools
import random

import pytest

from selfsim.errors import InputError, LevelTooSmall
from selfsim.geometry import (ball_set, cone_type, enumerate_cone_types,
                              enumerate_shadow_types, horizontal_set, hull,
                              push_down_set, set_diameter, shadow_contains,
                              shadow_slice, shadow_type, umbra_contains,
                              umbra_slice)


def test_horizontal_set_validation():
    with pytest.raises(InputError):
        horizontal_set([])
    with pytest.raises(InputError):
        horizontal_set(["01"], base=["10"])
    V = horizontal_set(["01", "11"], base=["01"])
    assert V.level == 2 and V.size == 2


def test_shadow_is_a_suffix_test():
    V = horizontal_set(["00"])
    assert shadow_contains(V, "00")
    assert shadow_contains(V, "100")
    assert not shadow_contains(V, "101")
    assert not shadow_contains(V, "0")


def test_shadow_slice_counts(odometer):
    V = ball_set(odometer, "000", 1)
    for m in (3, 4, 5):
        sl = shadow_slice(odometer, V, m)
        assert len(sl) == V.size * 2 ** (m - 3)
        assert all(shadow_contains(V, u) for u in sl)
    assert shadow_slice(odometer, V, 2) == ()


def test_umbra_against_direct_definition(odometer):
    # scan every level-4 vertex and recompute membership from the definition
    V = ball_set(odometer, "000", 1)
    for u in odometer.vertices(4):
        direct = (shadow_contains(V, u)
                  and all(shadow_contains(V, w)
                          for w in odometer.neighbor_set(u)))
        assert umbra_contains(odometer, V, u) == direct


def test_umbra_level_of_base_is_empty(grig):
    V = ball_set(grig, "010", 1)
    assert all(not umbra_contains(grig, V, u) for u in V.words)


def test_unit_ball_inside_gives_umbra_members(odometer):
    # if the whole unit ball around v is in V, everything above x·v is umbral
    v = "0000"
    V = ball_set(odometer, v, 1)
    for x in odometer.letters():
        assert umbra_contains(odometer, V, x + v)


def test_umbra_slice_subset_of_shadow(basilica):
    V = ball_set(basilica, "0101", 1)
    um = umbra_slice(basilica, V, 6)
    sl = set(shadow_slice(basilica, V, 6))
    assert set(um) <= sl


# --------------------------------------------------------------------- hulls

def test_hull_layers_follow_the_formula(odometer):
    hs = 5
    V = ball_set(odometer, "0000", 1)
    h = hull(odometer, V, 2, hs)
    assert h.levels() == (4, 3)
    expect_top = set()
    for v in V.words:
        expect_top.update(odometer.horizontal_ball(v, hs))
    assert h.layer(4) == frozenset(expect_top)
    expect_down = set()
    for v in push_down_set(V, 1).words:
        expect_down.update(odometer.horizontal_ball(v, hs))
    assert h.layer(3) == frozenset(expect_down)


def test_hull_needs_room_below(odometer):
    V = ball_set(odometer, "01", 1)
    with pytest.raises(LevelTooSmall):
        hull(odometer, V, 8, 5)


def test_hull_contains_normal_form_geodesics(grig):
    rng = random.Random(3)
    hs = 5
    vs = grig.vertices(6)
    for _ in range(12):
        a = rng.choice(vs)
        b = rng.choice(grig.horizontal_ball(a, 5))
        if a == b:
            continue
        V = horizontal_set([a, b])
        D = set_diameter(grig, V)
        h = hull(grig, V, D, hs, warn_diameter=False)
        prof = grig.distance_profile(a, b)
        for level, _ in prof.realizing:
            pa, pb = a[6 - level:], b[6 - level:]
            path = grig.horizontal_path(pa, pb)
            assert path is not None
            for u in path:
                assert h.contains(u), (a, b, level, u)


def test_singleton_hull_d0_is_one_ball(odometer):
    V = horizontal_set(["0101"])
    h = hull(odometer, V, 0, 5)
    assert h.levels() == (4,)
    assert h.layer(4) == frozenset(odometer.horizontal_ball("0101", 5))


# ------------------------------------------------------------------ censuses

def test_cone_type_uniform_deep_on_odometer(odometer):
    # deep levels of a cycle all look alike
    forms = {cone_type(odometer, v, 5) for v in odometer.vertices(6)}
    assert len(forms) == 1
    forms3 = {cone_type(odometer, v, 5) for v in odometer.vertices(3)}
    assert len(forms3) == 1
    assert forms != forms3  # a radius-5 ball wraps the 8-cycle whole


def test_equal_cone_types_from_singleton_shadow_types(grig):
    a, b = "00100", "00101"
    if cone_type(grig, a, 5) == cone_type(grig, b, 5):
        sa = shadow_type(grig, horizontal_set([a], base=[a]), 0, 5)
        sb = shadow_type(grig, horizontal_set([b], base=[b]), 0, 5)
        assert sa == sb


@pytest.mark.parametrize("name,hs,total", [
    ("odometer", 5, 4),
    ("grigorchuk", 5, 22),
])
def test_cone_census_frozen_counts(complexes, name, hs, total):
    census = enumerate_cone_types(complexes[name], range(1, 11), hs)
    assert census.total == total
    assert census.stabilized()


def test_census_bookkeeping(grig):
    census = enumerate_cone_types(grig, range(1, 7), 5)
    cum = 0
    for row in census.rows:
        cum += len(row.new)
        assert row.cumulative == cum
        assert row.count <= 2 ** row.level
    assert census.total == cum


def test_shadow_census_odometer(odometer):
    census = enumerate_shadow_types(odometer, range(3, 9), 1, 2, 5)
    assert census.total == 6
    assert census.stabilized()
