"""The shift map: pullbacks, degree bounds, orbits, the dynatlas."""

import pytest

from selfsim.dynamics import (bounded_degree_stats, build_dynatlas,
                              component_diameter, hull_naturality_mismatches,
                              iterate_type, pullback_components, shift,
                              stabilizer_orbit, umbra_naturality_mismatches,
                              vertex_preimages)
from selfsim.errors import InputError, LevelTooSmall, NotAnIterate
from selfsim.geometry import ball_set, horizontal_set


def test_shift_drops_trailing_letters():
    assert shift("0110") == "011"
    assert shift("0110", 3) == "0"
    assert shift("01", 2) == ""
    with pytest.raises(InputError):
        shift("01", 3)


def test_preimages_append_every_suffix(odometer):
    pre = vertex_preimages(odometer, "01", 2)
    assert len(pre) == 4
    assert all(shift(u, 2) == "01" for u in pre)
    assert len(set(pre)) == 4


def test_pullback_components_partition(grig):
    V = ball_set(grig, "0101", 1)
    for k in (1, 2):
        comps = pullback_components(grig, V, k)
        all_vertices = [u for c in comps for u in c.vertices]
        assert sorted(all_vertices) == sorted(
            u for w in V.words for u in vertex_preimages(grig, w, k))
        for c in comps:
            assert {shift(u, k) for u in c.vertices} <= V.words
            assert all(shift(u, k) in V.base for u in c.base_pre)


def test_balls_map_onto_balls(basilica):
    # F^k carries each component of the pullback ONTO the ball
    V = ball_set(basilica, "0110", 1)
    for k in (1, 2):
        for c in pullback_components(basilica, V, k):
            assert {shift(u, k) for u in c.vertices} == V.words


def test_component_diameter_agrees_with_level_graph(odometer):
    V = ball_set(odometer, "0000", 1)
    comps = pullback_components(odometer, V, 1)
    for c in comps:
        d = component_diameter(odometer, c)
        ws = c.vertices
        exact = max(odometer.horizontal_distance(a, b)
                    for i, a in enumerate(ws) for b in ws[i + 1:])
        assert d == exact


@pytest.mark.parametrize("name,C,bound,stable_from", [
    ("odometer", 1, 6, 2),
    ("grigorchuk", 2, 9, 2),
])
def test_bounded_degree_quick(complexes, name, C, bound, stable_from):
    rep = bounded_degree_stats(complexes[name], 1, range(2, 6), range(0, 4))
    assert rep.C_observed == C
    assert rep.bound == bound
    assert rep.stable_from == stable_from
    assert not rep.violations


def test_orbit_report_shapes(grig):
    rep = stabilizer_orbit(grig, "0101", 1, "01")
    assert rep.q >= 1                      # identity always stabilizes
    assert rep.orbit_size >= 1
    assert rep.bound == sum(rep.q ** i for i in range(7))  # N=5
    assert rep.within_bound == (rep.orbit_size <= rep.bound)


def test_orbit_trivial_at_radius_zero(odometer):
    rep = stabilizer_orbit(odometer, "010", 0, "11")
    assert rep.q == 1 and rep.orbit_size == 1
    assert rep.hypothesis_ok  # m(0) = 0


def test_iterate_type_checks_its_arguments(odometer):
    V = ball_set(odometer, "0000", 1)
    W = horizontal_set(["00000"])
    with pytest.raises(NotAnIterate):
        iterate_type(odometer, W, V, 2, 2, 5)  # wrong level gap
    with pytest.raises(NotAnIterate):
        iterate_type(odometer, W, V, 1, 2, 5)  # shift misses most of V


def test_iterate_type_identity_at_k0(grig):
    V = ball_set(grig, "01010", 1)
    form = iterate_type(grig, V, V, 0, 2, 5)
    assert isinstance(form, str) and "m" in form


def test_dynatlas_small_run(odometer):
    rep = build_dynatlas(odometer, 1, range(3, 6), range(0, 3), 5)
    assert rep.degree_check
    assert rep.p == 1           # the shift is locally injective here
    assert rep.total == sum(n for _, n in rep.new_by_k)
    assert rep.D >= 2


def test_dynatlas_needs_room(odometer):
    with pytest.raises(LevelTooSmall):
        build_dynatlas(odometer, 1, range(2, 4), range(0, 2), 5, D=8)


def test_hull_naturality_exhaustive_small(grig, all_params):
    hs = all_params["grigorchuk"].hsigma
    for n in (3, 4):
        for v in grig.vertices(n):
            V = ball_set(grig, v, 1)
            for k in (1, 2):
                for comp in pullback_components(grig, V, k):
                    assert not hull_naturality_mismatches(
                        grig, comp.as_set(), V, k, 2, hs)


def test_umbra_naturality_sampled(basilica):
    V = ball_set(basilica, "010", 1)
    for k in (1, 2):
        for comp in pullback_components(basilica, V, k):
            assert not umbra_naturality_mismatches(
                basilica, comp.as_set(), V, k, (4, 5))
