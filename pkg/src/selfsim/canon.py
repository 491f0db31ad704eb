"""Canonical forms of vertex-colored, edge-labelled directed graphs.

Color refinement (on initial colors, arc labels and both arc directions)
followed by individualization with full backtracking where refinement stalls.
Exact by construction: two graphs get the same form string iff they are
isomorphic respecting colors, labels and orientation.  Everything here runs
on graphs of at most a few thousand vertices, so clarity beats asymptotics.
"""

from __future__ import annotations

import hashlib


def canonical_form(n, arcs, colors=None):
    """Canonical string of a colored labelled digraph on vertices 0..n-1.

    arcs: iterable of (source, label, target); labels any hashable.
    colors: optional per-vertex hashables (marks, layers, ...).
    """
    arcs = list(arcs)
    if colors is None:
        colors = [0] * n
    labels = sorted({a[1] for a in arcs}, key=repr)
    label_rank = {lab: i for i, lab in enumerate(labels)}
    out_adj = [[] for _ in range(n)]
    in_adj = [[] for _ in range(n)]
    for u, lab, v in arcs:
        out_adj[u].append((label_rank[lab], v))
        in_adj[v].append((label_rank[lab], u))
    init = _rank([colors[v] for v in range(n)])
    label_names = [repr(lab) for lab in labels]
    body = _search(n, out_adj, in_adj, init, init)
    return "|".join([repr(sorted(repr(c) for c in set(colors))),
                     repr(label_names), body])


def graph_hash(form):
    """Short stable digest of a canonical form string."""
    return hashlib.sha256(form.encode()).hexdigest()[:16]


def _rank(values):
    order = {v: i for i, v in enumerate(sorted(set(map(repr, values))))}
    return [order[repr(v)] for v in values]


def _refine(n, out_adj, in_adj, colors):
    while True:
        sigs = []
        for v in range(n):
            sigs.append((colors[v],
                         tuple(sorted((lab, colors[w]) for lab, w in out_adj[v])),
                         tuple(sorted((lab, colors[w]) for lab, w in in_adj[v]))))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _search(n, out_adj, in_adj, init, colors):
    colors = _refine(n, out_adj, in_adj, colors)
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        return _encode(n, out_adj, init, colors)
    best = None
    for v in target:
        branched = [c * 2 for c in colors]
        branched[v] += 1
        enc = _search(n, out_adj, in_adj, init, branched)
        if best is None or enc < best:
            best = enc
    return best


def _encode(n, out_adj, init, colors):
    order = sorted(range(n), key=lambda v: colors[v])
    pos = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        rows.append((init[v], tuple(sorted((lab, pos[w]) for lab, w in out_adj[v]))))
    return repr(rows)
