"""The shift map on the complex: pullbacks, degree bounds, model-map atlas.

The shift F deletes the last letter of a word (the one nearest the root), so
k-step preimages of a vertex append every length-k word on the right.  All of
the finiteness content of the dynamics lives in how pulled-back ball
subcomplexes decompose into components and how those components map back
down; this module measures exactly that.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .canon import canonical_form, graph_hash
from .errors import InputError, LevelTooSmall, NotAnIterate
from .geometry import (HorizontalSet, ball_set, horizontal_set, hull,
                       hull_graph, hull_marks, umbra_slice)


def shift(u, k=1):
    if k < 0 or k > len(u):
        raise InputError(f"cannot shift {u!r} by {k}")
    return u[:len(u) - k]


def vertex_preimages(cx, v, k):
    """All k-step shift preimages of v: v with every length-k suffix appended."""
    return [v + "".join(y)
            for y in itertools.product(cx.letters(), repeat=k)]


@dataclass(frozen=True)
class PullbackComponent:
    level: int
    k: int
    vertices: tuple   # sorted words of the component
    base_pre: tuple   # preimages of the base points inside the component

    def as_set(self):
        return horizontal_set(self.vertices, self.base_pre)


def pullback_components(cx, V, k, base=None):
    """Components of the induced subcomplex on F^{-k}(V).

    Returns PullbackComponents sorted by smallest vertex; base defaults to
    V's base points (or all of V when no base is distinguished).
    """
    if base is None:
        base = V.base if V.base else tuple(sorted(V.words))
    base = set(base)
    pulled = set()
    for w in sorted(V.words):
        pulled.update(vertex_preimages(cx, w, k))
    comps = []
    left = set(pulled)
    while left:
        seed = min(left)
        comp = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for u in frontier:
                for t in cx.neighbor_set(u):
                    if t in left and t not in comp:
                        comp.add(t)
                        nxt.append(t)
            frontier = nxt
        left -= comp
        pre = tuple(sorted(u for u in comp if shift(u, k) in base))
        comps.append(PullbackComponent(V.level + k, k,
                                       tuple(sorted(comp)), pre))
    return sorted(comps, key=lambda c: c.vertices[0])


def component_diameter(cx, comp):
    """Horizontal diameter of a component's vertex set.

    Distances inside the component bound distances in the level graph from
    above, so they make a valid cap for the exact query.
    """
    verts = comp.vertices
    adj = {u: [t for t in cx.neighbor_set(u) if t in set(verts)]
           for u in verts}
    worst = 0
    for src in verts:
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for t in adj[u]:
                    if t not in dist:
                        dist[t] = dist[u] + 1
                        nxt.append(t)
            frontier = nxt
        far = max(dist.values())
        for tgt in verts:
            if tgt not in dist:
                raise AssertionError("component not connected")
        worst = max(worst, far)
    if worst == 0:
        return 0
    exact = 0
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            d = cx.horizontal_distance(a, b, cap=worst)
            exact = max(exact, d)
    return exact


# ---------------------------------------------------------- bounded degree

@dataclass(frozen=True)
class DegreeCell:
    level: int
    k: int
    components: int
    max_base_pre: int     # the paper's #Ṽ for the worst component
    max_base_diam: int    # horizontal diameter of the worst Ṽ


@dataclass(frozen=True)
class BoundedDegreeReport:
    r: int
    levels: tuple
    ks: tuple
    cells: tuple
    C_observed: int
    D_observed: int
    bound: int            # (2r+1)(C_observed+1)
    violations: tuple     # cells with max_base_diam >= bound
    stable_from: int      # first level opening 3 equal consecutive C values
    detection_rule: str = "C constant over 3 consecutive levels"


def bounded_degree_stats(cx, r, levels, ks):
    """Scan components of pulled-back r-balls for the degree/diameter bounds."""
    levels = tuple(levels)
    ks = tuple(ks)
    cells = []
    for n in levels:
        for k in ks:
            worst_count = 0
            worst_diam = 0
            total = 0
            for v in cx.vertices(n):
                V = ball_set(cx, v, r)
                for comp in pullback_components(cx, V, k):
                    total += 1
                    worst_count = max(worst_count, len(comp.base_pre))
                    if len(comp.base_pre) > 1:
                        diam = _set_diam(cx, comp.base_pre)
                        worst_diam = max(worst_diam, diam)
            cells.append(DegreeCell(n, k, total, worst_count, worst_diam))
    per_level = [max(c.max_base_pre for c in cells if c.level == n)
                 for n in levels]
    stable_from = None
    for i in range(len(levels) - 2):
        if per_level[i] == per_level[i + 1] == per_level[i + 2]:
            stable_from = levels[i]
            break
    # the theorem's constants live past its "sufficiently deep" threshold;
    # shallow fibers wrap around the level graph and would inflate them
    deep = [c for c in cells
            if stable_from is None or c.level >= stable_from]
    C = max(cell.max_base_pre for cell in deep)
    D_obs = max(cell.max_base_diam for cell in deep)
    bound = (2 * r + 1) * (C + 1)
    violations = tuple(c for c in deep if c.max_base_diam >= bound)
    return BoundedDegreeReport(r, levels, ks, tuple(cells), C, D_obs, bound,
                               violations, stable_from)


def _set_diam(cx, words):
    # BFS inside the full level graph, capped by a first crude pass
    worst = 0
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            d = cx.horizontal_distance(a, b)
            if d is None:
                raise AssertionError("base preimages in one component "
                                     "must be connected")
            worst = max(worst, d)
    return worst


# -------------------------------------------------------- stabilizer orbits

@dataclass(frozen=True)
class OrbitReport:
    v: str
    L: int
    w: str
    q: int
    orbit_size: int
    bound: int
    hypothesis_level: int
    hypothesis_ok: bool

    @property
    def within_bound(self):
        return self.orbit_size <= self.bound


def stabilizer_orbit(cx, v, L, w):
    """Orbit of v·w under the subgroup generated by Stab(v) ∩ ball(L).

    The bound 1+q+...+q^{N+1} (N the nucleus size) is guaranteed only when
    |v| ≥ m((N+1)L); the report carries that hypothesis check alongside.
    """
    act = cx.action
    H = [g for g in act.ball_ids(L) if act.act_id(g, v) == v]
    q = len(H)
    N = len(act.nucleus_ids())
    bound = sum(q ** i for i in range(N + 2))
    hyp_level = act.magic_level((N + 1) * L)
    start = v + w
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for h in H:
                t = act.act_id(h, u)
                if t not in orbit:
                    orbit.add(t)
                    nxt.append(t)
        frontier = nxt
    return OrbitReport(v, L, w, q, len(orbit), bound, hyp_level,
                       len(v) >= hyp_level)


# ------------------------------------------------------------- model maps

def iterate_type(cx, Vtil, V, k, D, hsigma):
    """Canonical form of the hull map F^k: hull(Ṽ,D) → hull(V,D).

    The encoding glues both hull graphs into one colored digraph with 'm'
    arcs from each domain vertex to its shift image; equal forms mean the two
    maps are isomorphic as labelled-graph maps.
    """
    if Vtil.level != V.level + k:
        raise NotAnIterate(f"levels {Vtil.level} vs {V.level} disagree with k={k}")
    if {shift(u, k) for u in Vtil.words} != set(V.words):
        raise NotAnIterate(f"shift^{k} does not map the set onto the target")
    hs = hull(cx, Vtil, D, hsigma, warn_diameter=False)
    ht = hull(cx, V, D, hsigma, warn_diameter=False)
    ns, arcs_s, colors_s, index_s = hull_graph(cx, hs)
    nt, arcs_t, colors_t, index_t = hull_graph(cx, ht)
    arcs = [(u, lab, t) for u, lab, t in arcs_s]
    arcs += [(u + ns, lab, t + ns) for u, lab, t in arcs_t]
    for (lvl, wd), i in index_s.items():
        img = (lvl - k, shift(wd, k))
        assert img in index_t, "hull naturality violated"
        arcs.append((i, "m", index_t[img] + ns))
    colors = [(0,) + c for c in colors_s] + [(1,) + c for c in colors_t]
    return canonical_form(ns + nt, arcs, colors)


@dataclass(frozen=True)
class DynatlasEntry:
    hash: str
    first_level: int
    first_k: int
    degree: int
    count: int


@dataclass(frozen=True)
class DynatlasReport:
    r: int
    hsigma: int
    D: int
    levels: tuple
    ks: tuple
    entries: tuple
    p: int                  # max component degree observed
    new_by_k: tuple         # (k, number of forms first seen at this k)
    C_observed: int
    degree_check: bool      # per (v,k): component degrees sum to d^k

    @property
    def stabilized(self):
        return (len(self.new_by_k) >= 2
                and all(n == 0 for _, n in self.new_by_k[-2:]))

    @property
    def total(self):
        return len(self.entries)


def build_dynatlas(cx, r, levels, ks, hsigma, D=None, sample_per_level=None,
                   seed=0):
    """Classify the maps F^k over components of pulled-back r-balls.

    First pass sizes the hull parameter D (bounded-degree bound, raised to
    the largest component diameter seen); second pass canonicalizes every
    component map.  Sampling, when requested, picks base vertices with the
    seeded generator but never drops components of a chosen vertex.
    """
    levels = tuple(levels)
    ks = tuple(ks)
    rng = random.Random(seed)
    chosen = {}
    for n in levels:
        verts = cx.vertices(n)
        if sample_per_level is not None and len(verts) > sample_per_level:
            verts = sorted(rng.sample(verts, sample_per_level))
        chosen[n] = verts
    jobs = []
    C = 0
    diam_max = 0
    for n in levels:
        for v in chosen[n]:
            V = ball_set(cx, v, r)
            for k in ks:
                for comp in pullback_components(cx, V, k):
                    jobs.append((n, k, V, comp))
                    C = max(C, len(comp.base_pre))
                    diam_max = max(diam_max, component_diameter(cx, comp))
    jobs.sort(key=lambda job: (job[1], job[0], job[2].base, job[3].vertices))
    if D is None:
        D = max((2 * r + 1) * (C + 1), diam_max, 2 * r)
    depth = -(-D // 2)
    if min(levels) < depth:
        raise LevelTooSmall(
            f"dynatlas with D={D} needs levels ≥ {depth}, got {min(levels)}")
    entries = {}
    counts = {}
    degree_check = True
    degree_sums = {}
    for n, k, V, comp in jobs:
        form = iterate_type(cx, comp.as_set(), V, k, D, hsigma)
        h = graph_hash(form)
        degree = len(comp.base_pre)
        key = (n, k, V.base)
        degree_sums[key] = degree_sums.get(key, 0) + degree
        if h not in entries:
            entries[h] = DynatlasEntry(h, n, k, degree, 0)
        elif entries[h].degree != degree:
            raise AssertionError("one form with two degrees")
        counts[h] = counts.get(h, 0) + 1
    for (n, k, _), total in degree_sums.items():
        if total != cx.d ** k:
            degree_check = False
    entries = {h: DynatlasEntry(h, e.first_level, e.first_k, e.degree,
                                counts[h])
               for h, e in entries.items()}
    new_by_k = []
    for k in sorted(set(ks)):
        new_by_k.append((k, sum(1 for e in entries.values()
                                if e.first_k == k)))
    ordered = tuple(sorted(entries.values(),
                           key=lambda e: (e.first_k, e.first_level, e.hash)))
    p = max((e.degree for e in entries.values()), default=0)
    return DynatlasReport(r, hsigma, D, levels, ks, ordered, p,
                          tuple(new_by_k), C, degree_check)


# ------------------------------------------------------------- naturality

def hull_naturality_mismatches(cx, Vtil, V, k, D, hsigma):
    """Layerwise differences between F^k(hull(Ṽ,D)) and hull(V,D)."""
    hs = hull(cx, Vtil, D, hsigma, warn_diameter=False)
    ht = hull(cx, V, D, hsigma, warn_diameter=False)
    bad = []
    for lvl, words in hs.layers:
        image = {shift(w, k) for w in words}
        target = set(ht.layer(lvl - k))
        if image != target:
            bad.append((lvl, tuple(sorted(image ^ target))))
    return bad


def umbra_naturality_mismatches(cx, Vtil, V, k, depths):
    """Compare F^k(U(Ṽ)) with U(V) on slices at the given codomain depths."""
    bad = []
    for m in depths:
        image = {shift(u, k) for u in umbra_slice(cx, Vtil, m + k)}
        target = set(umbra_slice(cx, V, m))
        if image != target:
            bad.append((m, tuple(sorted(image ^ target))))
    return bad
