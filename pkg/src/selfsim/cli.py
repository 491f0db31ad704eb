"""Command-line interface.

Every command builds one JSON report; ``--json PATH`` writes it to a file
and prints a short summary, otherwise the document goes to stdout verbatim.
Reports embed the tool version, a hash of the group presentation, and every
budget that shaped the run, so two invocations with the same flags and seed
emit byte-identical documents.

Exit codes: 0 success, 2 bad configuration or input, 3 a resource cap or
contraction budget tripped, 4 a verified property failed to hold.
"""

from __future__ import annotations

import argparse
import os
import sys

from .automaton import Action
from .boundary import (boundary_preimage_classes, diameter_report,
                       local_degree, parse_ray, visual_params)
from .checks import run_checks
from .complexes import SelfSimilarityComplex
from .dynamics import build_dynatlas, stabilizer_orbit
from .errors import (CapExceeded, InputError, NotStabilized,
                     UndecidedEquivalence)
from .geometry import (ball_set, enumerate_cone_types, enumerate_shadow_types,
                       hull)
from .groups import BUILTIN_NAMES, builtin_action, load_recursion
from .params import derive_params
from .reports import (bounded_degree_payload, census_payload, checks_payload,
                      degree_payload, diameter_payload, dot_hull, dot_slice,
                      dumps, dynatlas_payload, nucleus_payload, orbit_payload,
                      run_meta, write_json)


def _parse_span(text):
    """Parse "A..B" (inclusive) or a single "N" into a range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"bad range {text!r}; expected N or A..B") from None
    if lo < 0 or hi < lo:
        raise InputError(f"bad range {text!r}; need 0 <= A <= B")
    return range(lo, hi + 1)


def _load_action(args):
    if getattr(args, "group", None):
        return Action(load_recursion(args.group))
    return builtin_action(args.builtin)


def _hsigma(cx, args):
    """The --hsigma override, or the stabilized estimate."""
    if args.hsigma is not None:
        return args.hsigma
    level, est = 8, cx.estimate_hsigma(8)
    while not est.stabilized and level < 9:
        level += 1
        est = cx.estimate_hsigma(level)
    return est.value


def _figure_path(args, name):
    os.makedirs(args.figures, exist_ok=True)
    return os.path.join(args.figures, name)


# ------------------------------------------------------------------ commands

def cmd_nucleus(args):
    act = _load_action(args)
    radii = range(1, (args.depth or 5) + 1)
    rows = [(r, act.magic_level(r)) for r in radii]
    payload = nucleus_payload(act, rows)
    payload["meta"] = run_meta(act, seed=args.seed,
                               budgets={"magic_radii": list(radii)})
    if args.figures:
        from .figures import magic_figure
        magic_figure(rows, _figure_path(args, "magic.png"))
    summary = (f"nucleus size {payload['size']}: "
               f"{', '.join(payload['elements'])}")
    return payload, 0, summary


def cmd_graph(args):
    act = _load_action(args)
    cx = SelfSimilarityComplex(act)
    levels = _parse_span(args.levels or "0..3")
    sl = cx.complex_slice(levels[-1])
    graphs = [sl.graphs[n] for n in levels]
    inv = cx.inverse_label
    rows = []
    for g in graphs:
        edges = sum(1 for u in g.vertices for i, v in g.arcs[u]
                    if u != v and (u, i) <= (v, inv[i]))
        rows.append({"level": g.level, "vertices": len(g.vertices),
                     "horizontal_edges": edges})
    payload = {
        "levels": rows,
        "meta": run_meta(act, seed=args.seed,
                         budgets={"levels": [levels[0], levels[-1]]}),
    }
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot_slice(cx, graphs))
    summary = "; ".join(f"level {r['level']}: {r['vertices']}v"
                        f"/{r['horizontal_edges']}e" for r in rows)
    return payload, 0, summary


def cmd_cone_types(args):
    act = _load_action(args)
    cx = SelfSimilarityComplex(act)
    levels = _parse_span(args.levels or "1..6")
    hs = _hsigma(cx, args)
    census = enumerate_cone_types(cx, levels, hs)
    payload = census_payload(census)
    payload["meta"] = run_meta(act, hsigma=hs, seed=args.seed,
                               budgets={"levels": [levels[0], levels[-1]]})
    if args.figures:
        from .figures import census_figure
        census_figure(census, _figure_path(args, "cone_types.png"))
    summary = (f"{census.total} cone types through level {levels[-1]} "
               f"(stabilized: {census.stabilized()})")
    return payload, 0, summary


def cmd_shadow_types(args):
    act = _load_action(args)
    cx = SelfSimilarityComplex(act)
    levels = _parse_span(args.levels or "2..6")
    r = args.radius
    D = 2 * r
    hs = _hsigma(cx, args)
    census = enumerate_shadow_types(cx, levels, r, D, hs)
    payload = census_payload(census)
    payload["meta"] = run_meta(
        act, hsigma=hs, seed=args.seed,
        budgets={"levels": [levels[0], levels[-1]], "r": r, "D": D})
    if args.dot:
        top = levels[-1]
        V = ball_set(cx, cx.vertices(top)[0], r)
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot_hull(cx, hull(cx, V, D, hs, warn_diameter=False)))
    if args.figures:
        from .figures import census_figure
        census_figure(census, _figure_path(args, "shadow_types.png"))
    summary = (f"{census.total} shadow types of {r}-balls through level "
               f"{levels[-1]} (stabilized: {census.stabilized()})")
    return payload, 0, summary


def cmd_dynatlas(args):
    act = _load_action(args)
    cx = SelfSimilarityComplex(act)
    levels = _parse_span(args.levels or "3..5")
    ks = _parse_span(args.k or "0..3")
    hs = _hsigma(cx, args)
    report = build_dynatlas(cx, args.radius, levels, ks, hs,
                            sample_per_level=args.sample, seed=args.seed)
    payload = dynatlas_payload(report)
    payload["meta"] = run_meta(
        act, hsigma=hs, seed=args.seed,
        budgets={"levels": [levels[0], levels[-1]], "ks": [ks[0], ks[-1]],
                 "r": args.radius, "sample_per_level": args.sample})
    if args.figures:
        from .figures import dynatlas_figure
        dynatlas_figure(report, _figure_path(args, "dynatlas.png"))
    summary = (f"{report.total} model-map forms, p={report.p}, "
               f"new by k: {', '.join(str(n) for _, n in report.new_by_k)} "
               f"(stabilized: {report.stabilized})")
    return payload, 0 if report.degree_check else 4, summary


def cmd_orbits(args):
    import random

    from .checks import _affordable_orbit_radius

    act = _load_action(args)
    cx = SelfSimilarityComplex(act)
    levels = _parse_span(args.levels or "3..6")
    rng = random.Random(args.seed)
    letters = cx.letters()
    max_L = _affordable_orbit_radius(act)
    rows = []
    for _ in range(args.samples):
        L = rng.randrange(0, max_L + 1)
        v = rng.choice(cx.vertices(rng.choice(list(levels))))
        w = "".join(rng.choice(letters) for _ in range(rng.randrange(1, 5)))
        rows.append(stabilizer_orbit(cx, v, L, w))
    payload = orbit_payload(rows)
    payload["meta"] = run_meta(
        act, seed=args.seed,
        budgets={"samples": args.samples,
                 "levels": [levels[0], levels[-1]]})
    if args.figures:
        from .figures import orbit_figure
        orbit_figure(rows, _figure_path(args, "orbits.png"))
    summary = (f"{len(rows)} samples, {payload['satisfying_hypothesis']} "
               f"satisfy the depth hypothesis, "
               f"{payload['violations']} violations")
    return payload, 4 if payload["violations"] else 0, summary


def cmd_boundary(args):
    act = _load_action(args)
    cx = SelfSimilarityComplex(act)
    params = derive_params(cx, hsigma=args.hsigma, epsilon=args.epsilon,
                           seed=args.seed)
    vp = visual_params(params, depth=args.depth or 16)
    r = parse_ray(args.ray, cx.letters())
    meta = run_meta(act, hsigma=params.hsigma, epsilon=vp.epsilon,
                    seed=args.seed, budgets={"depth": vp.depth,
                                             "ray": str(r)})
    if args.mode == "degree":
        n_range = range(2, max(12, vp.depth - 3))
        preimages = boundary_preimage_classes(cx, r, vp, n_range)
        degrees = [local_degree(cx, cand, n_range)
                   for cls in preimages.classes for cand in cls.rays]
        payload = degree_payload(preimages, degrees)
        payload["meta"] = meta
        if args.figures:
            from .figures import degree_figure
            degree_figure(degrees, _figure_path(args, "local_degree.png"))
        summary = (f"{len(preimages.classes)} preimage classes over {r}; "
                   f"degrees sum to {preimages.degree_total} "
                   f"(expected {preimages.expected})")
        return payload, 0 if preimages.total_ok else 4, summary
    report = diameter_report(cx, r, range(3, 11), vp, params.magic_hsigma,
                             seed=args.seed)
    payload = diameter_payload(report)
    payload["meta"] = meta
    if args.figures:
        from .figures import diameter_figure
        diameter_figure(report, _figure_path(args, "diameters.png"))
    lo, hi = report.band
    summary = (f"diam·exp(εt) band [{lo:.3g}, {hi:.3g}] over t=3..10; "
               f"umbra inclusions {'hold' if report.inclusions_ok else 'FAIL'}")
    return payload, 0 if report.inclusions_ok else 4, summary


def cmd_verify(args):
    names = [args.builtin] if args.builtin else list(BUILTIN_NAMES)
    if getattr(args, "group", None):
        names = [args.group]
    groups = []
    ok = True
    for name in names:
        if name in BUILTIN_NAMES:
            act = builtin_action(name)
        else:
            act = Action(load_recursion(name))
        cx = SelfSimilarityComplex(act)
        params = derive_params(cx, seed=args.seed)
        results = run_checks(cx, params, seed=args.seed)
        block = checks_payload(results)
        block["group"] = name
        block["params"] = params.describe()
        block["meta"] = run_meta(act, hsigma=params.hsigma,
                                 epsilon=params.epsilon, seed=args.seed,
                                 budgets={"battery": len(results)})
        ok = ok and block["ok"]
        groups.append(block)
        if args.figures:
            from .figures import checks_figure
            checks_figure(results,
                          _figure_path(args, f"checks_{os.path.basename(name)}.png"))
    payload = {"groups": groups, "ok": ok, "seed": args.seed}
    lines = []
    for block in groups:
        lines.append(f"{block['group']}: {block['passed']} passed, "
                     f"{block['failed']} failed")
    return payload, 0 if ok else 4, "; ".join(lines)


# ---------------------------------------------------------------- dispatcher

def build_parser():
    top = argparse.ArgumentParser(
        prog="selfsim",
        description="Contracting selfsimilar groups: complexes, finiteness "
                    "reports, boundary dynamics.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, need_group=True):
        src = p.add_mutually_exclusive_group(required=need_group)
        src.add_argument("-g", "--group", help="path to a recursion JSON file")
        src.add_argument("--builtin", choices=BUILTIN_NAMES)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", metavar="PATH",
                       help="write the report here instead of stdout")
        p.add_argument("--figures", metavar="DIR",
                       help="also render matplotlib figures into DIR")

    p = sub.add_parser("nucleus", help="nucleus, good symbols, magic levels")
    common(p)
    p.add_argument("--depth", type=int, help="largest magic radius (default 5)")
    p.set_defaults(fn=cmd_nucleus)

    p = sub.add_parser("graph", help="level counts; DOT export of a slice")
    common(p)
    p.add_argument("--levels", metavar="A..B")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("cone-types", help="cone-type census per level")
    common(p)
    p.add_argument("--levels", metavar="A..B")
    p.add_argument("--hsigma", type=int)
    p.set_defaults(fn=cmd_cone_types)

    p = sub.add_parser("shadow-types", help="shadow-type census of r-balls")
    common(p)
    p.add_argument("--levels", metavar="A..B")
    p.add_argument("--hsigma", type=int)
    p.add_argument("--radius", type=int, default=1, help="ball radius r")
    p.add_argument("--dot", metavar="PATH", help="DOT of one example hull")
    p.set_defaults(fn=cmd_shadow_types)

    p = sub.add_parser("dynatlas", help="model maps of pulled-back balls")
    common(p)
    p.add_argument("--levels", metavar="A..B")
    p.add_argument("--k", metavar="A..B")
    p.add_argument("--hsigma", type=int)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--sample", type=int,
                   help="base vertices sampled per level (default: all)")
    p.set_defaults(fn=cmd_dynatlas)

    p = sub.add_parser("orbits", help="stabilizer-orbit bound sampling")
    common(p)
    p.add_argument("--levels", metavar="A..B")
    p.add_argument("--samples", type=int, default=60)
    p.set_defaults(fn=cmd_orbits)

    p = sub.add_parser("boundary", help="boundary dynamics reports")
    p.add_argument("mode", choices=("degree", "metric"))
    common(p)
    p.add_argument("--ray", default=";0", metavar="PRE;PER")
    p.add_argument("--hsigma", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--depth", type=int)
    p.set_defaults(fn=cmd_boundary)

    p = sub.add_parser("verify", help="run the whole property battery")
    common(p, need_group=False)
    p.set_defaults(fn=cmd_verify)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code, summary = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (NotStabilized, UndecidedEquivalence) as exc:
        print(f"property failure: {exc}", file=sys.stderr)
        return 4
    if args.json:
        write_json(args.json, payload)
        print(summary)
    else:
        sys.stdout.write(dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
