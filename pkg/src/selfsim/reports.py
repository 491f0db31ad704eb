"""JSON report payloads and DOT graph exports.

Every JSON report carries the same `meta` block (tool version, group hash,
the HΣ and ε the run used, budgets, seed) so runs are comparable, and the
encoder sorts keys so equal payloads serialize to identical bytes.  DOT is
the only graph format: level graphs and slices draw horizontal edges solid
(labelled by generator name) and vertical edges dashed (labelled by letter);
hull exports fill the base-ball vertices.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from . import __version__
from .groups import normalized_json


def group_hash(recursion):
    return hashlib.sha256(normalized_json(recursion).encode()).hexdigest()


def run_meta(action, hsigma=None, epsilon=None, seed=None, budgets=None):
    rec = action.recursion
    return {
        "version": __version__,
        "group": {
            "hash": group_hash(rec),
            "alphabet": rec.d,
            "generators": [g.name for g in rec.generators],
        },
        "hsigma": hsigma,
        "epsilon": epsilon,
        "seed": seed,
        "budgets": dict(budgets or {}),
    }


def _plain(value):
    """Recursively coerce report values into JSON-encodable types."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def dumps(payload):
    return json.dumps(_plain(payload), sort_keys=True, indent=2) + "\n"


def write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(payload))


# ------------------------------------------------------------- payload shapes

def nucleus_payload(action, magic_rows):
    nuc = action.compute_nucleus()
    return {
        "size": nuc.size,
        "elements": [action.name_of(sid) for sid in nuc.ids],
        "good_symbols": list(action.good_names()),
        "magic_levels": [{"radius": r, "level": m} for r, m in magic_rows],
    }


def census_payload(census):
    return {
        "kind": census.kind,
        "hsigma": census.hsigma,
        "rows": [
            {
                "level": row.level,
                "count": row.count,
                "cumulative": row.cumulative,
                "new_type_hashes": list(row.new),
            }
            for row in census.rows
        ],
        "total": census.total,
        "stabilized": census.stabilized(),
    }


def bounded_degree_payload(report):
    return {
        "r": report.r,
        "levels": list(report.levels),
        "ks": list(report.ks),
        "cells": [
            {
                "level": c.level,
                "k": c.k,
                "components": c.components,
                "max_base_pre": c.max_base_pre,
                "max_base_diam": c.max_base_diam,
            }
            for c in report.cells
        ],
        "C_observed": report.C_observed,
        "D_observed": report.D_observed,
        "bound": report.bound,
        "violations": len(report.violations),
        "stable_from": report.stable_from,
        "detection_rule": report.detection_rule,
    }


def dynatlas_payload(report):
    return {
        "r": report.r,
        "hsigma": report.hsigma,
        "D": report.D,
        "levels": list(report.levels),
        "ks": list(report.ks),
        "forms": [
            {
                "hash": e.hash,
                "first_seen": [e.first_level, e.first_k],
                "degree": e.degree,
                "count": e.count,
            }
            for e in report.entries
        ],
        "p": report.p,
        "new_by_k": [list(pair) for pair in report.new_by_k],
        "C_observed": report.C_observed,
        "degree_check": report.degree_check,
        "stabilized": report.stabilized,
    }


def orbit_payload(rows):
    return {
        "rows": [
            {
                "v": r.v,
                "L": r.L,
                "w": r.w,
                "q": r.q,
                "orbit_size": r.orbit_size,
                "bound": r.bound,
                "hypothesis_level": r.hypothesis_level,
                "hypothesis_ok": r.hypothesis_ok,
                "within_bound": r.within_bound,
            }
            for r in rows
        ],
        "satisfying_hypothesis": sum(1 for r in rows if r.hypothesis_ok),
        "violations": sum(1 for r in rows
                          if r.hypothesis_ok and not r.within_bound),
    }


def degree_payload(preimage_report, degree_reports):
    return {
        "ray": str(preimage_report.ray),
        "classes": [
            {
                "rays": [str(r) for r in c.rays],
                "degree": c.degree,
                "member_degrees": list(c.member_degrees),
            }
            for c in preimage_report.classes
        ],
        "degree_total": preimage_report.degree_total,
        "expected": preimage_report.expected,
        "total_ok": preimage_report.total_ok,
        "consistent": preimage_report.consistent,
        "local_degrees": [
            {
                "ray": str(rep.ray),
                "rows": [{"n": row.n, "under": row.under, "over": row.over}
                         for row in rep.rows],
                "value": rep.value,
                "stabilized": rep.stabilized,
                "accepted_at": rep.accepted_at,
            }
            for rep in degree_reports
        ],
    }


def diameter_payload(report):
    lo, hi = report.band
    return {
        "ray": str(report.ray),
        "c": report.c,
        "rows": [
            {
                "t": row.t,
                "sample_size": row.sample_size,
                "diameter": row.diameter,
                "ratio": row.ratio,
                "umbra_inclusion": row.umbra_inclusion,
            }
            for row in report.rows
        ],
        "band": {"low": lo, "high": hi,
                 "spread": (hi / lo) if lo else None},
        "inclusions_ok": report.inclusions_ok,
    }


def checks_payload(results):
    return {
        "checks": [
            {"name": r.name, "passed": r.passed, "details": r.details}
            for r in results
        ],
        "passed": sum(1 for r in results if r.passed),
        "failed": sum(1 for r in results if not r.passed),
        "ok": all(r.passed for r in results),
    }


# ---------------------------------------------------------------- DOT export

def _nid(level, word):
    return f'"{level}:{word}"'


def _dot_horizontal(cx, words, lines):
    """Emit each undirected horizontal edge once, labelled by generator."""
    inside = set(words)
    inv = cx.inverse_label
    for u in sorted(inside):
        for i, v in cx.neighbors(u):
            if v not in inside:
                continue
            if (u, i) <= (v, inv[i]):
                lines.append(
                    f"  {_nid(len(u), u)} -- {_nid(len(v), v)}"
                    f' [label="{cx.sym_names[i]}"];')


def dot_level_graph(cx, graph):
    lines = [f"graph level_{graph.level} {{",
             '  node [shape=circle fontsize=10];']
    for w in graph.vertices:
        lines.append(f'  {_nid(graph.level, w)} [label="{w or "root"}"];')
    _dot_horizontal(cx, graph.vertices, lines)
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_slice(cx, graphs):
    """Levels drawn together; vertical (prepend-letter) edges dashed."""
    present = {g.level for g in graphs}
    lines = ["graph complex_slice {",
             '  node [shape=circle fontsize=10];']
    for g in graphs:
        for w in g.vertices:
            lines.append(f'  {_nid(g.level, w)} [label="{w or "root"}"];')
    for g in graphs:
        _dot_horizontal(cx, g.vertices, lines)
        if g.level - 1 in present:
            for w in g.vertices:
                lines.append(
                    f"  {_nid(g.level, w)} -- {_nid(g.level - 1, w[1:])}"
                    f' [style=dashed label="{w[0]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_hull(cx, h):
    """A hull with its layers; base-ball vertices drawn filled."""
    base = set(h.base.words)
    levels = dict(h.layers)
    lines = ["graph hull {",
             '  node [shape=circle fontsize=10];']
    for level, words in h.layers:
        for w in sorted(words):
            style = " style=filled fillcolor=lightgray" if w in base else ""
            lines.append(f'  {_nid(level, w)} [label="{w}"{style}];')
    for level, words in h.layers:
        _dot_horizontal(cx, sorted(words), lines)
        if level - 1 in levels:
            for w in sorted(words):
                if w[1:] in levels[level - 1]:
                    lines.append(
                        f"  {_nid(level, w)} -- {_nid(level - 1, w[1:])}"
                        f' [style=dashed label="{w[0]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
