"""Level graphs, the augmented tree, distances, parameter estimates."""

from collections import deque

import pytest

from selfsim.complexes import push_down
from selfsim.errors import DifferentLevels, KTooLarge


def test_push_down_strips_leading_letters():
    assert push_down("0110", 1) == "110"
    assert push_down("0110", 0) == "0110"
    assert push_down("01", 2) == ""
    with pytest.raises(KTooLarge):
        push_down("01", 3)


def test_level_graph_sizes_and_symmetry(grig):
    for n in range(5):
        g = grig.level_graph(n)
        assert len(g.vertices) == 2 ** n
        inv = grig.inverse_label
        for u in g.vertices:
            for i, v in g.arcs[u]:
                assert (inv[i], u) in g.arcs[v]


def test_odometer_level_graphs_are_cycles(odometer):
    # the adding machine acts transitively: each level is a single 2^n-cycle
    for n in range(2, 7):
        g = odometer.level_graph(n)
        for u in g.vertices:
            targets = {v for _, v in g.arcs[u] if v != u}
            assert len(targets) == 2
        seen = {g.vertices[0]}
        frontier = [g.vertices[0]]
        while frontier:
            u = frontier.pop()
            for _, v in g.arcs[u]:
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        assert len(seen) == 2 ** n


def test_horizontal_ball_and_path_agree(basilica):
    v = "010011"
    ball = basilica.horizontal_ball(v, 3)
    assert v in ball
    for u in ball:
        path = basilica.horizontal_path(v, u)
        assert path is not None and len(path) - 1 <= 3
        assert path[0] == v and path[-1] == u


def test_horizontal_distance_needs_equal_levels(odometer):
    with pytest.raises(DifferentLevels):
        odometer.horizontal_distance("01", "011")


def _tree_bfs(cx, start, top):
    """Distances in the slice through `top` by plain BFS; the oracle."""
    dist = {start: 0}
    q = deque([start])
    while q:
        u = q.popleft()
        nbrs = [v for _, v in cx.level_graph(len(u)).arcs[u]]
        if u:
            nbrs.append(u[1:])
        if len(u) < top:
            nbrs.extend(ch + u for ch in cx.letters())
        for v in nbrs:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


@pytest.mark.parametrize("name", ["odometer", "grigorchuk", "basilica"])
def test_graph_distance_matches_bfs(complexes, name):
    cx = complexes[name]
    verts = [v for n in range(4) for v in cx.vertices(n)]
    for i, u in enumerate(verts):
        truth = _tree_bfs(cx, u, 3)
        for v in verts[i + 1:]:
            assert cx.graph_distance(u, v) == truth[v], (u, v)


def test_distance_profile_realizations(grig):
    prof = grig.distance_profile("0110", "1001")
    assert prof.realizing
    for level, h in prof.realizing:
        assert (4 - level) * 2 + h == prof.distance
    assert prof.max_level >= prof.min_horizontal >= 0


def test_graph_distance_vertical_edges(odometer):
    assert odometer.graph_distance("011", "11") == 1
    assert odometer.graph_distance("011", "011") == 0


@pytest.mark.parametrize("name,value", [
    ("odometer", 5), ("grigorchuk", 5), ("basilica", 9),
])
def test_hsigma_estimates(complexes, name, value):
    cx = complexes[name]
    top = 9 if name == "basilica" else 8
    est = cx.estimate_hsigma(top)
    assert est.value == value
    assert est.stabilized


def test_delta_estimate_is_small(odometer):
    # trees-with-cycles this thin should look nearly 0-hyperbolic
    delta = odometer.estimate_delta(sample_count=400)
    assert 0 <= float(delta) <= 3
