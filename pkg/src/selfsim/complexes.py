"""The selfsimilarity complex of a contracting action and its coarse geometry.

Vertices are words over the alphabet (level = length).  Vertical edges join w
to xw (letter prepended, labelled x); horizontal edges join u to u^s for s in
the good symbol set.  The right shift F deletes the *last* letter, so
F-preimages append letters on the right while vertical push-down removes
prefixes; the two directions are deliberately distinct.

Distances never materialize a level: every geodesic normalizes to
down / horizontal / up, so the distance between u and v is

    min over drop levels l of (|u|-l) + d_hor(push-downs at l) + (|v|-l)

and each horizontal term comes from a capped bidirectional BFS (or a cached
all-pairs table on small levels).  distance_profile keeps every realizing
(drop level, horizontal length) pair; the hyperbolicity and horizontal-girth
estimators and the boundary products all read from it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .automaton import letter_char
from .errors import DifferentLevels, KTooLarge, LevelTooLarge

DEFAULT_VERTEX_BUDGET = 2_000_000
TABLE_MAX_VERTICES = 512


def push_down(w, k):
    """Remove the first k letters (descend k levels along vertical edges)."""
    if k < 0 or k > len(w):
        raise KTooLarge(f"cannot push {w!r} down {k} levels")
    return w[k:]


@dataclass(frozen=True)
class LevelGraph:
    """One horizontal level: sorted vertices and labelled arcs."""

    level: int
    vertices: tuple
    arcs: dict  # vertex -> tuple of (label index, target)


@dataclass(frozen=True)
class ComplexSlice:
    """Levels 0..n of the complex; vertical edges are implicit (w — x·w)."""

    graphs: tuple  # LevelGraph for each level, index = level

    @property
    def top(self):
        return len(self.graphs) - 1


@dataclass(frozen=True)
class DistanceProfile:
    """A distance together with all realizing (drop level, horizontal) pairs."""

    distance: int
    realizing: tuple  # (level, horizontal length), highest level first

    @property
    def max_level(self):
        return self.realizing[0][0]

    @property
    def min_horizontal(self):
        return min(h for _, h in self.realizing)

    @property
    def max_horizontal(self):
        return max(h for _, h in self.realizing)


@dataclass(frozen=True)
class HsigmaEstimate:
    """Horizontal-segment bound measured level by level."""

    value: int
    per_level: tuple  # (level, max realizing horizontal length)
    stabilized: bool
    sampled_levels: tuple  # levels where pairs were sampled, not exhaustive


class SelfSimilarityComplex:
    """Distance and adjacency queries for one action's complex."""

    def __init__(self, action, vertex_budget=DEFAULT_VERTEX_BUDGET):
        self.action = action
        self.d = action.d
        self.vertex_budget = vertex_budget
        self.syms = action.good_symbols()
        self.sym_names = action.good_names()
        self._sym_index = {s: i for i, s in enumerate(self.syms)}
        self.inverse_label = tuple(
            self._sym_index[action.inverse(s)] for s in self.syms)
        self._graphs = {}
        self._tables = {}

    # ------------------------------------------------------------ structure

    def letters(self):
        return [letter_char(x) for x in range(self.d)]

    def vertices(self, level):
        if self.d ** level > self.vertex_budget:
            raise LevelTooLarge(
                f"level {level} has {self.d}^{level} vertices; budget is "
                f"{self.vertex_budget}")
        letters = self.letters()
        words = [""]
        for _ in range(level):
            words = [ch + w for w in words for ch in letters]
        return sorted(words)

    def act_label(self, label, u):
        return self.action.act_id(self.syms[label], u)

    def neighbors(self, u):
        """All labelled horizontal arcs out of u (loops included)."""
        return tuple((i, self.action.act_id(s, u))
                     for i, s in enumerate(self.syms))

    def neighbor_set(self, u):
        return {self.action.act_id(s, u) for s in self.syms} - {u}

    def level_graph(self, level):
        if level in self._graphs:
            return self._graphs[level]
        verts = tuple(self.vertices(level))
        arcs = {u: self.neighbors(u) for u in verts}
        g = LevelGraph(level, verts, arcs)
        self._graphs[level] = g
        return g

    def complex_slice(self, top):
        return ComplexSlice(tuple(self.level_graph(n) for n in range(top + 1)))

    def horizontal_ball(self, v, radius):
        """Vertices within horizontal distance `radius` of v, sorted."""
        seen = {v}
        frontier = [v]
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for w in self.neighbor_set(u):
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return tuple(sorted(seen))

    # ------------------------------------------------------------- distances

    def _table(self, level):
        """All-pairs horizontal distances, or None when the level is too big."""
        if level in self._tables:
            return self._tables[level]
        if self.d ** level > TABLE_MAX_VERTICES:
            self._tables[level] = None
            return None
        graph = self.level_graph(level)
        table = {}
        for src in graph.vertices:
            dist = {src: 0}
            frontier = [src]
            d = 0
            while frontier:
                d += 1
                nxt = []
                for u in frontier:
                    for _, w in graph.arcs[u]:
                        if w not in dist:
                            dist[w] = d
                            nxt.append(w)
                frontier = nxt
            table[src] = dist
        self._tables[level] = table
        return table

    def horizontal_distance(self, u, v, cap=None):
        """Distance inside one level; None when it exceeds `cap`."""
        if len(u) != len(v):
            raise DifferentLevels(f"{u!r} and {v!r} sit on different levels")
        if u == v:
            return 0
        table = self._table(len(u))
        if table is not None:
            d = table[u].get(v)
            if d is None:
                return None  # disconnected level (non-transitive action)
            return d if cap is None or d <= cap else None
        if cap is not None and cap <= 0:
            return None
        left, right = {u: 0}, {v: 0}
        fl, fr = [u], [v]
        dl = dr = 0
        while fl and fr:
            if cap is not None and dl + dr >= cap:
                return None
            if len(fl) <= len(fr):
                fl, dl, meet = self._expand(fl, left, right, dl)
            else:
                fr, dr, meet = self._expand(fr, right, left, dr)
            if meet is not None:
                return meet if cap is None or meet <= cap else None
        return None

    def horizontal_path(self, u, v, cap=None):
        """One shortest horizontal path u..v as a vertex list, or None.

        Single-sided BFS with parent tracking; meant for small instances
        (geodesic materialization in checks), not bulk distance queries.
        """
        if len(u) != len(v):
            raise DifferentLevels(f"{u!r} and {v!r} sit on different levels")
        if u == v:
            return [u]
        parent = {u: None}
        frontier = [u]
        depth = 0
        while frontier:
            if cap is not None and depth >= cap:
                return None
            depth += 1
            nxt = []
            for x in frontier:
                for w in self.neighbor_set(x):
                    if w in parent:
                        continue
                    parent[w] = x
                    if w == v:
                        path = [w]
                        while path[-1] is not None:
                            path.append(parent[path[-1]])
                        return path[-2::-1]
                    nxt.append(w)
            frontier = nxt
        return None

    def _expand(self, frontier, side, other, depth):
        depth += 1
        nxt = []
        best = None
        for x in frontier:
            for w in self.neighbor_set(x):
                if w in side:
                    continue
                side[w] = depth
                nxt.append(w)
                if w in other:
                    total = depth + other[w]
                    if best is None or total < best:
                        best = total
        return nxt, depth, best

    def distance_profile(self, u, v):
        """Graph distance with every realizing normal-form decomposition."""
        nu, nv = len(u), len(v)
        best = nu + nv
        realizing = []
        for level in range(min(nu, nv), -1, -1):
            base = (nu - level) + (nv - level)
            if base > best:
                break
            pu, pv = u[nu - level:], v[nv - level:]
            h = self.horizontal_distance(pu, pv, cap=best - base)
            if h is None:
                continue
            total = base + h
            if total < best:
                best = total
                realizing = [(level, h)]
            elif total == best:
                realizing.append((level, h))
        return DistanceProfile(best, tuple(realizing))

    def graph_distance(self, u, v):
        return self.distance_profile(u, v).distance

    # ------------------------------------------------------------- estimates

    def estimate_hsigma(self, max_level, pair_budget=400_000, seed=0):
        """Bound the horizontal segments of distance-realizing geodesics.

        Scans same-level pairs (every realizing horizontal length of any pair
        shows up as a same-level pair's own realizing horizontal length) and
        takes the maximum over all realizing drop levels.  Levels whose pair
        count exceeds the budget are sampled with the seeded generator and
        reported as such.
        """
        per_level = []
        sampled = []
        overall = 0
        for n in range(1, max_level + 1):
            count = self.d ** n
            pairs = count * (count - 1) // 2
            verts = None
            if pairs > pair_budget or self._table(n) is None:
                rng = random.Random((seed, n))
                verts = self.vertices(n) if count <= self.vertex_budget else None
                if verts is None:
                    break
                chosen = [tuple(rng.sample(verts, 2)) for _ in range(pair_budget // 100)]
                sampled.append(n)
            else:
                vs = self.vertices(n)
                chosen = [(vs[i], vs[j]) for i in range(len(vs))
                          for j in range(i + 1, len(vs))]
            level_max = 0
            for a, b in chosen:
                prof = self.distance_profile(a, b)
                level_max = max(level_max, prof.max_horizontal)
            per_level.append((n, level_max))
            overall = max(overall, level_max)
        values = [h for _, h in per_level]
        stabilized = (len(values) > 3
                      and max(values[:-3], default=0) == overall)
        return HsigmaEstimate(overall, tuple(per_level), stabilized,
                              tuple(sampled))

    def estimate_delta(self, sample_count=2000, max_level=7, seed=0):
        """Empirical four-point hyperbolicity defect over sampled quadruples."""
        rng = random.Random(seed)
        pool = []
        for n in range(max_level + 1):
            if self.d ** n > TABLE_MAX_VERTICES:
                break
            pool.extend(self.vertices(n))
        worst = 0
        memo = {}

        def dist(a, b):
            key = (a, b) if a <= b else (b, a)
            if key not in memo:
                memo[key] = self.graph_distance(*key)
            return memo[key]

        for _ in range(sample_count):
            a, b, c, e = (rng.choice(pool) for _ in range(4))
            sums = sorted([dist(a, b) + dist(c, e),
                           dist(a, c) + dist(b, e),
                           dist(a, e) + dist(b, c)])
            worst = max(worst, sums[2] - sums[1])
        return Fraction(worst, 2)
