"""Self-contained property battery behind the ``verify`` command.

Each check exercises one invariant the rest of the package relies on, at a
budget small enough that the whole battery stays interactive.  A check never
raises: unexpected exceptions are folded into a failed result so one broken
area cannot hide the others.  All sampling is seeded, so a fixed seed yields
a byte-identical report.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass

from .automaton import letter_char
from .boundary import (Ray, boundary_preimage_classes, divergence_product,
                       level_product, gromov_product, rays_equivalent,
                       shadow_umbra_inclusion, visual_distance, visual_params)
from .canon import canonical_form
from .complexes import push_down
from .dynamics import (build_dynatlas, bounded_degree_stats,
                       hull_naturality_mismatches, pullback_components,
                       shift, stabilizer_orbit, umbra_naturality_mismatches,
                       vertex_preimages)
from .geometry import (ball_set, enumerate_cone_types, hull, hull_graph,
                       shadow_contains, shadow_slice, umbra_slice)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str = ""


def _result(name, fn):
    try:
        ok, details = fn()
    except Exception as exc:  # a broken check is a failed check
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(ok), details)


def _bfs_distance_until(cx, start, accept, cap):
    """Graph distance from start to the nearest vertex with accept(v) true.

    Explores the genuine complex (horizontal edges, the parent, the d
    children), so the value is exact; returns None past cap.
    """
    if accept(start):
        return 0
    seen = {start}
    frontier = [start]
    for dist in range(1, cap + 1):
        nxt = []
        for u in frontier:
            nbrs = set(cx.neighbor_set(u))
            if u:
                nbrs.add(u[1:])
            nbrs.update(ch + u for ch in cx.letters())
            for w in nbrs:
                if w in seen:
                    continue
                if accept(w):
                    return dist
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    return None


def _slice_bfs(cx, top):
    """Exact distances between all vertices of levels <= top, by flat BFS."""
    verts = [w for n in range(top + 1) for w in cx.vertices(n)]
    adj = {}
    for u in verts:
        nbrs = set(cx.neighbor_set(u))
        if u:
            nbrs.add(u[1:])
        if len(u) < top:
            nbrs.update(ch + u for ch in cx.letters())
        adj[u] = sorted(nbrs)
    dist = {}
    for src in verts:
        row = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in row:
                    row[w] = row[u] + 1
                    queue.append(w)
        dist[src] = row
    return verts, dist


def _sample_rays(cx, rng, count):
    letters = cx.letters()
    rays = [Ray(letters[0], letters[0]), Ray(letters[-1], letters[-1])]
    while len(rays) < count:
        pre = "".join(rng.choice(letters) for _ in range(rng.randrange(3)))
        per = "".join(rng.choice(letters)
                      for _ in range(rng.randrange(1, 3)))
        rays.append(Ray(pre, per))
    return rays[:count]


# ------------------------------------------------------------ check bodies

def _letters(act):
    return [letter_char(x) for x in range(act.recursion.d)]


def _check_nucleus_closure(act):
    nucleus = act.nucleus_ids()
    for sid in nucleus:
        for x in _letters(act):
            if act.restrict_id(sid, x) not in nucleus:
                return False, f"{act.name_of(sid)} escapes under |{x}"
    return True, f"{len(nucleus)} states closed under restriction"


def _check_nucleus_inverses(act):
    nucleus = act.nucleus_ids()
    for sid in nucleus:
        if act.inverse(sid) not in nucleus:
            return False, f"inverse of {act.name_of(sid)} escapes"
    if act.identity_id not in nucleus:
        return False, "identity missing"
    return True, "closed under inversion, contains e"


def _check_action_identities(act, rng):
    """(xw)^g = x^g w^{g|x} and the cocycle (gh)|_v = g|_v h|_{v^g}."""
    letters = _letters(act)
    gens = [act.element(g.name).id for g in act.recursion.generators]
    pool = gens + [act.inverse(g) for g in gens]
    for _ in range(40):
        g = act.product(rng.choice(pool), rng.choice(pool))
        h = rng.choice(pool)
        w = "".join(rng.choice(letters) for _ in range(rng.randrange(1, 6)))
        x = w[0]
        if act.act_id(g, w) != act.act_id(g, x) + act.act_id(
                act.restrict_id(g, x), w[1:]):
            return False, f"selfsimilarity fails at g={act.name_of(g)} w={w}"
        v = w[:-1] or x
        gh = act.product(g, h)
        lhs = act.restrict_id(gh, v)
        rhs = act.product(act.restrict_id(g, v),
                          act.restrict_id(h, act.act_id(g, v)))
        if lhs != rhs:
            return False, f"cocycle fails at v={v}"
        if act.act_id(act.inverse(g), act.act_id(g, w)) != w:
            return False, f"inverse fails to undo g at w={w}"
    return True, "40 seeded instances"


def _check_equality_semantics(act):
    """Distinct canonical states act differently on some short word."""
    nucleus = sorted(act.nucleus_ids())
    letters = _letters(act)
    words = ["".join(p) for k in range(1, 9)
             for p in itertools.product(letters, repeat=k)]
    for a, b in itertools.combinations(nucleus, 2):
        if all(act.act_id(a, w) == act.act_id(b, w) for w in words):
            return False, (f"{act.name_of(a)} vs {act.name_of(b)}"
                           " agree to depth 8 yet have distinct ids")
    return True, f"{len(nucleus)} nucleus states pairwise separated"


def _check_distance_oracle(cx):
    verts, dist = _slice_bfs(cx, 3)
    for u, v in itertools.combinations(verts, 2):
        if cx.graph_distance(u, v) != dist[u][v]:
            return False, f"mismatch at ({u!r},{v!r})"
    return True, f"all pairs through level 3 ({len(verts)} vertices)"


def _check_augmented_tree(cx, rng):
    """Horizontal adjacency survives pushing one level down."""
    for n in range(2, 7):
        verts = cx.vertices(n)
        for _ in range(30):
            u = rng.choice(verts)
            for _, v in cx.neighbors(u):
                pu, pv = push_down(u, 1), push_down(v, 1)
                if pu != pv and pv not in cx.neighbor_set(pu):
                    return False, f"{u}—{v} breaks at level {n - 1}"
    return True, "sampled horizontal edges, levels 2..6"


def _check_level_connectivity(cx):
    for n in range(1, 7):
        g = cx.level_graph(n)
        seen = {g.vertices[0]}
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in cx.neighbor_set(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(g.vertices):
            return False, f"level {n} splits"
    return True, "levels 1..6 connected"


def _check_products_comparable(cx, params, rng):
    half = params.hsigma / 2
    pool = [w for n in range(5) for w in cx.vertices(n)]
    for _ in range(250):
        u, v = rng.choice(pool), rng.choice(pool)
        level = level_product(cx, u, v)
        grom = gromov_product(cx, u, v)
        if not (level - half <= grom <= level):
            return False, f"({u!r},{v!r}): level {level} gromov {grom}"
    return True, "250 sampled pairs through level 4"


def _check_shadow_membership(cx, rng):
    for n in (2, 3):
        v = rng.choice(cx.vertices(n))
        V = ball_set(cx, v, 1)
        for m in (n, n + 1, n + 2):
            cut = shadow_slice(cx, V, m)
            brute = [u for u in cx.vertices(m) if shadow_contains(V, u)]
            if list(cut) != brute:
                return False, f"slice mismatch at level {m}"
    return True, "slices match the suffix predicate"


def _check_umbra_slices(cx, rng):
    hits = 0
    for n in (2, 3):
        v = rng.choice(cx.vertices(n))
        V = ball_set(cx, v, 1)
        for m in (n + 1, n + 2):
            for u in umbra_slice(cx, V, m):
                hits += 1
                if not all(shadow_contains(V, w)
                           for w in cx.neighbor_set(u)):
                    return False, f"{u} touches the complement"
    return True, f"{hits} umbra vertices checked"


def _check_shadow_quasiconvex(cx, params, rng):
    """Vertices of realizing normal-form geodesics stay near the shadow."""
    Q = max(1, -(-params.hsigma // 2)) + 1
    checked = 0
    for n in (3, 4):
        v = rng.choice(cx.vertices(n))
        V = ball_set(cx, v, 1)
        deep = shadow_slice(cx, V, n + 2)
        for _ in range(6):
            a, b = rng.choice(deep), rng.choice(deep)
            prof = cx.distance_profile(a, b)
            for level, _ in prof.realizing:
                path = [a[len(a) - m:] for m in range(len(a), level - 1, -1)]
                path += cx.horizontal_path(a[len(a) - level:],
                                           b[len(b) - level:])
                path += [b[len(b) - m:] for m in range(level, len(b) + 1)]
                for w in path:
                    d = _bfs_distance_until(
                        cx, w, lambda u: shadow_contains(V, u), Q)
                    checked += 1
                    if d is None:
                        return False, f"{w!r} sits {Q}+ away from S({v!r})"
    return True, f"{checked} geodesic vertices within Q={Q}"


def _check_unit_speed(cx, params, rng):
    """Depth inside an umbra forces distance from the shadow's complement."""
    m_magic = params.magic_hsigma
    for n in (2, 3):
        v = rng.choice(cx.vertices(n))
        V = ball_set(cx, v, 1)
        for u in umbra_slice(cx, V, n + 1)[:3]:
            for extra in (1, 2):
                w = u
                for _ in range(extra):
                    w = rng.choice(cx.letters()) + w
                need = len(w) - (len(u) + m_magic)
                if need <= 0:
                    continue
                d = _bfs_distance_until(
                    cx, w, lambda z: not shadow_contains(V, z), need + 2)
                if d is not None and d < need:
                    return False, f"{w!r} exits after {d} < {need}"
    return True, "sampled cone points over umbra vertices"


def _check_census_monotone(cx, params):
    census = enumerate_cone_types(cx, range(1, 6), params.hsigma)
    seen = 0
    for row in census.rows:
        seen += len(row.new)
        if row.cumulative != seen or row.count > row.cumulative:
            return False, f"bookkeeping breaks at level {row.level}"
    return True, f"{census.total} cone types through level 5"


def _check_canonical_invariance(cx, params, rng):
    v = cx.vertices(3)[0]
    h = hull(cx, ball_set(cx, v, 1), 2, params.hsigma, warn_diameter=False)
    n, arcs, colors, _ = hull_graph(cx, h)
    base = canonical_form(n, arcs, colors)
    perm = list(range(n))
    rng.shuffle(perm)
    parcs = [(perm[s], lab, perm[t]) for s, lab, t in arcs]
    pcolors = [None] * n
    for i, c in enumerate(colors):
        pcolors[perm[i]] = c
    if canonical_form(n, parcs, pcolors) != base:
        return False, "relabelling changed the form"
    marked = canonical_form(n, arcs + [(0, ("fresh",), n - 1)], colors)
    if marked == base:
        return False, "a fresh arc left the form unchanged"
    return True, f"stable under relabelling on {n} vertices"


def _check_balls_map_to_balls(cx):
    for n in (3, 4):
        for v in cx.vertices(n - 2):
            for vt in vertex_preimages(cx, v, n - len(v)):
                k = len(vt) - len(v)
                image = {shift(u, k) for u in cx.horizontal_ball(vt, 1)}
                if image != set(cx.horizontal_ball(v, 1)):
                    return False, f"F^{k} ball around {vt!r} misses"
    return True, "exhaustive at levels 3..4 over level 1..2 bases"


def _check_components_two_apart(cx, rng):
    for n in (3, 4):
        v = rng.choice(cx.vertices(n))
        for k in (1, 2):
            comps = pullback_components(cx, ball_set(cx, v, 1), k)
            for A, B in itertools.combinations(comps, 2):
                for a in A.vertices:
                    for b in B.vertices:
                        if cx.horizontal_distance(a, b, cap=2) is not None \
                                and a != b:
                            return False, f"{a!r} and {b!r} nearly touch"
    return True, "pairwise separation ≥ 2 on sampled pullbacks"


def _check_hull_naturality(cx, params, rng):
    for n in (3, 4):
        v = rng.choice(cx.vertices(n))
        V = ball_set(cx, v, 1)
        for k in (1, 2):
            for comp in pullback_components(cx, V, k):
                bad = hull_naturality_mismatches(
                    cx, comp.as_set(), V, k, 2, params.hsigma)
                if bad:
                    return False, f"layer mismatch over {v!r}, k={k}"
    return True, "F^k(hull) = hull layerwise on sampled pullbacks"


def _check_umbra_naturality(cx, rng):
    for n in (3,):
        v = rng.choice(cx.vertices(n))
        V = ball_set(cx, v, 1)
        for k in (1, 2):
            for comp in pullback_components(cx, V, k):
                bad = umbra_naturality_mismatches(cx, comp.as_set(), V, k,
                                                  (n + 1, n + 2))
                if bad:
                    return False, f"umbra slips over {v!r}, k={k}"
    return True, "F^k(Ũ) = U at sampled depths"


def _check_pullback_shadows(cx, rng):
    """F^{-k}(S(V)) equals the union of shadows over pullback components."""
    for n in (2, 3):
        v = rng.choice(cx.vertices(n))
        V = ball_set(cx, v, 1)
        for k in (1, 2):
            comps = pullback_components(cx, V, k)
            for j in (0, 1):
                m = n + k + j
                want = {u for u in cx.vertices(m)
                        if shadow_contains(V, shift(u, k))}
                got = set()
                for comp in comps:
                    got.update(shadow_slice(cx, comp.as_set(), m))
                if want != got:
                    return False, f"level {m} slice differs over {v!r}"
    return True, "slices agree at sampled depths"


def _check_bounded_degree_quick(cx):
    report = bounded_degree_stats(cx, 1, range(3, 6), range(0, 3))
    if report.violations:
        return False, f"{len(report.violations)} diameter violations"
    per_k = {}
    for cell in report.cells:
        if cell.k == 0:
            continue  # F^0 is the identity; its fibers are trivially 1
        if report.stable_from is not None and cell.level >= report.stable_from:
            per_k.setdefault(cell.k, set()).add(cell.max_base_pre)
    spread = {k: max(vals) for k, vals in per_k.items()}
    if len(set(spread.values())) > 1:
        return False, f"C drifts across k: {sorted(spread.items())}"
    return True, (f"C={report.C_observed} bound={report.bound} "
                  f"stable_from={report.stable_from}")


def _affordable_orbit_radius(act, budget=60_000):
    """Largest L whose hypothesis level m((N+1)L) stays under the budget.

    The hypothesis needs the ball of radius (N+1)L; exponential-growth
    groups price L=2 out (the Basilica ball of radius 16 is astronomical),
    so probe ball sizes incrementally instead of guessing.
    """
    N = len(act.nucleus_ids())
    best = 0
    for L in (1, 2):
        radius = (N + 1) * L
        size = 1
        for r in range(1, radius + 1):
            size = len(act.ball_ids(r))
            if size > budget:
                return best
        best = L
    return best


def _check_orbits_quick(cx, rng):
    tried = 0
    max_L = _affordable_orbit_radius(cx.action)
    for _ in range(60):
        L = rng.randrange(0, max_L + 1)
        n = rng.randrange(3, 6)
        v = rng.choice(cx.vertices(n))
        w = "".join(rng.choice(cx.letters())
                    for _ in range(rng.randrange(1, 4)))
        report = stabilizer_orbit(cx, v, L, w)
        if not report.hypothesis_ok:
            continue
        tried += 1
        if not report.within_bound:
            return False, (f"orbit {report.orbit_size} > {report.bound} "
                           f"at v={v!r} L={L} w={w!r}")
    return tried >= 10, f"{tried} qualifying samples of 60 drawn"


def _check_dynatlas_quick(cx, params):
    report = build_dynatlas(cx, 1, range(3, 5), range(0, 3),
                            min(params.hsigma, 5), D=6, sample_per_level=6)
    if not report.degree_check:
        return False, "component degrees fail to sum to d^k"
    if report.p > cx.d ** 2:
        return False, f"p={report.p} exceeds d^2"
    return True, f"{report.total} forms, p={report.p}, D={report.D}"


def _check_ray_equivalence_laws(cx, rng):
    rays = _sample_rays(cx, rng, 6)
    for r in rays:
        if not rays_equivalent(cx, r, r, 64).equivalent:
            return False, f"{r} not equivalent to itself"
    for a, b in itertools.combinations(rays, 2):
        va = rays_equivalent(cx, a, b, 512)
        vb = rays_equivalent(cx, b, a, 512)
        if not (va.decided and vb.decided):
            return False, f"undecided pair {a} vs {b}"
        if va.equivalent != vb.equivalent:
            return False, f"asymmetric verdict on {a} vs {b}"
        scan_close = all(
            cx.horizontal_distance(a.vertex(t), b.vertex(t), cap=1)
            is not None for t in range(1, 25))
        if va.equivalent != scan_close:
            return False, f"verdict disagrees with scan on {a} vs {b}"
    return True, "reflexive, symmetric, matches a depth-24 scan"


def _check_divergence_vs_level(cx, params, rng):
    rays = _sample_rays(cx, rng, 5)
    m_magic = params.magic_hsigma
    pairs = 0
    for a, b in itertools.combinations(rays, 2):
        div = divergence_product(cx, a, b, 512)
        if math.isinf(div):
            continue
        pairs += 1
        for T in (div + 1, div + 3):
            lv = level_product(cx, a.vertex(T), b.vertex(T))
            if not (div <= lv <= div + m_magic):
                return False, (f"{a} vs {b} at T={T}: "
                               f"div={div} level={lv}")
    return pairs > 0, f"{pairs} inequivalent pairs bracketed"


def _check_degree_sum(cx, params, rng):
    vp = visual_params(params, depth=14)
    rays = [Ray(cx.letters()[0], cx.letters()[0]),
            Ray("", cx.letters()[-1])]
    for r in rays:
        report = boundary_preimage_classes(cx, r, vp, range(2, 11))
        if not report.total_ok:
            return False, (f"degrees over {r} sum to "
                           f"{report.degree_total} ≠ {report.expected}")
        if not report.consistent:
            return False, f"class members over {r} disagree"
    return True, f"two rays, degree total {cx.d}"


def _check_umbra_contains_shadow(cx, params):
    c = params.magic_hsigma + 3
    r = Ray(cx.letters()[0], cx.letters()[0])
    for t in (3, 5):
        if not shadow_umbra_inclusion(cx, r, t, c, depths=1):
            return False, f"S(R,{t}+{c}) escapes U(R,{t})"
    return True, f"c = m+3 = {c} at t ∈ {{3, 5}}"


def _check_visual_quasi_ultrametric(cx, params, rng):
    vp = visual_params(params, depth=12)
    K = math.exp(vp.epsilon * (float(params.delta) + vp.c0))
    fill = cx.letters()[0]
    cut = cx.vertices(5)
    points = [Ray(u[::-1], fill) for u in rng.sample(cut, min(8, len(cut)))]
    for a, b, c in itertools.combinations(points, 3):
        ab = visual_distance(cx, a, b, vp)
        bc = visual_distance(cx, b, c, vp)
        ac = visual_distance(cx, a, c, vp)
        if ac > K * max(ab, bc) + 1e-12:
            return False, f"triple breaks K={K:.3g}"
        if abs(ab - visual_distance(cx, b, a, vp)) > 1e-12:
            return False, "asymmetric distance"
    zero = visual_distance(cx, points[0], points[0], vp)
    if zero != 0.0:
        return False, "nonzero self-distance"
    return True, f"{len(points)} boundary samples, K={K:.3g}"


def run_checks(cx, params, seed=0):
    """Run the whole battery; returns a tuple of CheckResult."""
    act = cx.action
    rng = random.Random(seed)

    def fork():
        return random.Random(rng.randrange(2 ** 63))

    battery = (
        ("nucleus-closed-under-restriction",
         lambda: _check_nucleus_closure(act)),
        ("nucleus-inverses-and-identity",
         lambda: _check_nucleus_inverses(act)),
        ("action-selfsimilarity-cocycle",
         lambda r=fork(): _check_action_identities(act, r)),
        ("state-equality-is-semantic",
         lambda: _check_equality_semantics(act)),
        ("distance-oracle-vs-bfs", lambda: _check_distance_oracle(cx)),
        ("augmented-tree-pushdown",
         lambda r=fork(): _check_augmented_tree(cx, r)),
        ("level-graphs-connected", lambda: _check_level_connectivity(cx)),
        ("products-comparable",
         lambda r=fork(): _check_products_comparable(cx, params, r)),
        ("shadow-slices-match-suffix-test",
         lambda r=fork(): _check_shadow_membership(cx, r)),
        ("umbra-interior", lambda r=fork(): _check_umbra_slices(cx, r)),
        ("shadows-quasiconvex",
         lambda r=fork(): _check_shadow_quasiconvex(cx, params, r)),
        ("unit-speed-penetration",
         lambda r=fork(): _check_unit_speed(cx, params, r)),
        ("cone-census-bookkeeping", lambda: _check_census_monotone(cx, params)),
        ("canonical-form-relabel-invariant",
         lambda r=fork(): _check_canonical_invariance(cx, params, r)),
        ("balls-map-to-balls", lambda: _check_balls_map_to_balls(cx)),
        ("pullback-components-two-apart",
         lambda r=fork(): _check_components_two_apart(cx, r)),
        ("hull-naturality",
         lambda r=fork(): _check_hull_naturality(cx, params, r)),
        ("umbra-naturality", lambda r=fork(): _check_umbra_naturality(cx, r)),
        ("pullback-shadow-identity",
         lambda r=fork(): _check_pullback_shadows(cx, r)),
        ("bounded-degree-quick", lambda: _check_bounded_degree_quick(cx)),
        ("stabilizer-orbit-bound",
         lambda r=fork(): _check_orbits_quick(cx, r)),
        ("dynatlas-degree-sums", lambda: _check_dynatlas_quick(cx, params)),
        ("ray-equivalence-laws",
         lambda r=fork(): _check_ray_equivalence_laws(cx, r)),
        ("divergence-brackets-level-product",
         lambda r=fork(): _check_divergence_vs_level(cx, params, r)),
        ("boundary-degree-sum",
         lambda r=fork(): _check_degree_sum(cx, params, r)),
        ("umbrae-contain-shadows",
         lambda: _check_umbra_contains_shadow(cx, params)),
        ("visual-quasi-ultrametric",
         lambda r=fork(): _check_visual_quasi_ultrametric(cx, params, r)),
    )
    return tuple(_result(name, fn) for name, fn in battery)
