"""Shadows, umbrae, hulls, and their labelled-graph types.

The complex is infinite, so shadows and umbrae exist here as predicates over
explicit vertices together with finite slices at caller-chosen depths.  Hulls
are finite by construction and get materialized fully.  Classification works
by turning the induced labelled subgraphs into canonical form strings: equal
strings certify isomorphism of the labelled (marked) graphs, which is exactly
the notion of "same type" the finiteness statements are about.

Conventions: a vertex is a word string, letters prepend as one moves away
from the root, so the suffix of a word is the part nearest the root.  A
horizontal set lives at a single level; its shadow is everything whose suffix
lands in the set.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

from .canon import canonical_form, graph_hash
from .complexes import push_down
from .errors import DifferentLevels, InputError, LevelTooSmall


@dataclass(frozen=True)
class HorizontalSet:
    """A nonempty set of same-length words, with optional marked base points."""

    level: int
    words: frozenset
    base: tuple = ()

    @property
    def size(self):
        return len(self.words)

    def sorted_words(self):
        return tuple(sorted(self.words))


def horizontal_set(words, base=()):
    words = frozenset(words)
    if not words:
        raise InputError("horizontal set must be nonempty")
    levels = {len(w) for w in words}
    if len(levels) != 1:
        raise DifferentLevels(f"mixed word lengths {sorted(levels)}")
    base = tuple(sorted(set(base)))
    if not set(base) <= words:
        raise InputError("base points must belong to the set")
    return HorizontalSet(levels.pop(), words, base)


def ball_set(cx, v, r):
    """The horizontal r-ball around v, with v as its base point."""
    return HorizontalSet(len(v), frozenset(cx.horizontal_ball(v, r)), (v,))


def push_down_set(V, i):
    if i == 0:
        return V
    if i > V.level:
        raise LevelTooSmall(f"cannot push a level-{V.level} set down {i}")
    return HorizontalSet(V.level - i,
                         frozenset(push_down(w, i) for w in V.words),
                         tuple(sorted({push_down(b, i) for b in V.base})))


def set_diameter(cx, V, cap=None):
    """Horizontal diameter of V; None if some pair exceeds cap."""
    worst = 0
    ws = V.sorted_words()
    for i, a in enumerate(ws):
        for b in ws[i + 1:]:
            d = cx.horizontal_distance(a, b, cap=cap)
            if d is None:
                return None
            worst = max(worst, d)
    return worst


# ------------------------------------------------------------------ shadows

def shadow_contains(V, u):
    """Whether u lies in the shadow S(V): suffix test."""
    return len(u) >= V.level and (u[len(u) - V.level:] in V.words
                                  if V.level else True)


def shadow_slice(cx, V, m):
    """All shadow vertices at level m, sorted."""
    if m < V.level:
        return ()
    prefixes = ["".join(p) for p in
                itertools.product(cx.letters(), repeat=m - V.level)]
    return tuple(sorted(p + w for w in V.words for p in prefixes))


def umbra_contains(cx, V, u):
    """Whether u lies in the umbra U(V).

    u must sit strictly above level |V| (its down-neighbor escapes the shadow
    otherwise) and have its whole horizontal unit ball inside the shadow;
    up-neighbors of shadow vertices are in the shadow automatically.
    """
    if len(u) <= V.level or not shadow_contains(V, u):
        return False
    return all(shadow_contains(V, w) for w in cx.neighbor_set(u))


def umbra_slice(cx, V, m):
    return tuple(w for w in shadow_slice(cx, V, m)
                 if umbra_contains(cx, V, w))


# -------------------------------------------------------------------- hulls

@dataclass(frozen=True)
class Hull:
    """Layered vertex sets: HΣ-balls around the push-downs of the base set."""

    base: HorizontalSet
    D: int
    hsigma: int
    layers: tuple  # ((level, frozenset of words), ...) from the top level down

    def layer(self, level):
        for lvl, words in self.layers:
            if lvl == level:
                return words
        return frozenset()

    def levels(self):
        return tuple(lvl for lvl, _ in self.layers)

    def contains(self, u):
        return u in self.layer(len(u))

    @property
    def size(self):
        return sum(len(words) for _, words in self.layers)


def hull(cx, V, D, hsigma, warn_diameter=True):
    """The D-hull of V: balls of radius hsigma around V pushed down ⌈D/2⌉ levels."""
    depth = -(-D // 2)
    if V.level < depth:
        raise LevelTooSmall(
            f"a D={D} hull needs level ≥ {depth}, got {V.level}")
    if warn_diameter and V.size <= 16:
        diam = set_diameter(cx, V, cap=D + 1)
        if diam is None or diam > D:
            warnings.warn(f"hull parameter D={D} is below diam V", stacklevel=2)
    layers = []
    for i in range(depth + 1):
        pushed = {push_down(w, i) for w in V.words}
        layer = set()
        for p in sorted(pushed):
            layer.update(cx.horizontal_ball(p, hsigma))
        layers.append((V.level - i, frozenset(layer)))
    return Hull(V, D, hsigma, tuple(layers))


def hull_marks(h):
    """Default marking of a hull: base-set words 1, base points 2."""
    marks = {(h.base.level, w): 1 for w in h.base.words}
    for b in h.base.base:
        marks[(h.base.level, b)] = 2
    return marks


def hull_graph(cx, h, marked=None):
    """Encode a hull as (n, arcs, colors, index) for canonical_form.

    Vertices are (level, word) pairs. Horizontal arcs carry ('h', symbol
    index); vertical arcs run child→parent with ('v', letter) labels. Colors
    record the layer offset from the top and the vertex's mark value (0 when
    unmarked); loops (symbols fixing a vertex) are not edges of the complex
    and are dropped.
    """
    if marked is None:
        marked = hull_marks(h)
    elif not isinstance(marked, dict):
        marked = {key: 1 for key in marked}
    keys = []
    for lvl, words in sorted(h.layers, reverse=True):
        keys.extend((lvl, w) for w in sorted(words))
    index = {key: i for i, key in enumerate(keys)}
    top = h.base.level
    arcs = []
    for lvl, w in keys:
        src = index[(lvl, w)]
        for j, t in cx.neighbors(w):
            if t != w and (lvl, t) in index:
                arcs.append((src, ("h", j), index[(lvl, t)]))
        if lvl > top - (len(h.layers) - 1) and w:
            parent = (lvl - 1, w[1:])
            if parent in index:
                arcs.append((src, ("v", w[0]), index[parent]))
    colors = [(top - lvl, marked.get((lvl, w), 0)) for lvl, w in keys]
    return len(keys), arcs, colors, index


# -------------------------------------------------------------------- types

def cone_type(cx, v, hsigma):
    """Canonical form of the horizontal HΣ-ball around v, pointed at v."""
    ball = cx.horizontal_ball(v, hsigma)
    index = {w: i for i, w in enumerate(ball)}
    arcs = []
    for w in ball:
        for j, t in cx.neighbors(w):
            if t != w and t in index:
                arcs.append((index[w], ("h", j), index[t]))
    colors = [1 if w == v else 0 for w in ball]
    return canonical_form(len(ball), arcs, colors)


def shadow_type(cx, V, D, hsigma):
    """Canonical form of the D-hull of V with the vertices of V marked."""
    h = hull(cx, V, D, hsigma)
    n, arcs, colors, _ = hull_graph(cx, h)
    return canonical_form(n, arcs, colors)


@dataclass(frozen=True)
class TypeCensusRow:
    level: int
    count: int
    new: tuple       # hashes first seen at this level, sorted
    cumulative: int


@dataclass(frozen=True)
class TypeCensus:
    kind: str
    hsigma: int
    rows: tuple
    examples: dict = field(compare=False)  # hash -> (level, example vertex)

    @property
    def total(self):
        return self.rows[-1].cumulative if self.rows else 0

    def stabilized(self, tail=3):
        """No new types over the last `tail` computed levels."""
        if len(self.rows) <= tail:
            return False
        return all(not row.new for row in self.rows[-tail:])


def enumerate_cone_types(cx, levels, hsigma):
    """Distinct cone types per level with cumulative discovery counts."""
    return _census("cone", cx, levels, hsigma,
                   lambda v: cone_type(cx, v, hsigma))


def enumerate_shadow_types(cx, levels, r, D, hsigma):
    """Distinct shadow types of radius-r balls per level."""
    return _census(f"shadow(r={r},D={D})", cx, levels, hsigma,
                   lambda v: shadow_type(cx, ball_set(cx, v, r), D, hsigma))


def _census(kind, cx, levels, hsigma, type_of):
    seen = {}
    rows = []
    examples = {}
    for level in levels:
        here = set()
        for v in cx.vertices(level):
            form = type_of(v)
            h = graph_hash(form)
            here.add(h)
            if h not in seen:
                seen[h] = level
                examples[h] = (level, v)
        new = tuple(sorted(h for h in here if seen[h] == level))
        rows.append(TypeCensusRow(level, len(here), new, len(seen)))
    return TypeCensus(kind, hsigma, tuple(rows), examples)
