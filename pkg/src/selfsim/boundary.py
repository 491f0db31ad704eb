"""Boundary points as eventually periodic rays, and the induced dynamics.

A ray is a vertical geodesic from the root: at time t its vertex is
x_t x_{t-1} ... x_1 (new letters prepended).  Two rays land on the same
boundary point iff they stay within horizontal distance one forever, which
for eventually periodic rays is decidable by running a small transfer
machine over the symbol set and watching for an empty state or a cycle.

The shift deletes the last letter of every vertex, so on ray sequences it
drops the first element; preimage candidates prepend one letter to the
sequence.  Everything metric (visual distance, diameter proxies, local
degrees) happens at finite truncation depths carried in VisualParams.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (InputError, NotStabilized, UndecidedEquivalence,
                     ZeroInradius)
from .geometry import ball_set, shadow_slice, umbra_contains


@dataclass(frozen=True)
class Ray:
    """Eventually periodic letter sequence x_1 x_2 ... = pre + per·per·..."""

    pre: str
    per: str

    def letter(self, t):
        """The t-th letter of the sequence, 1-indexed."""
        i = t - 1
        if i < len(self.pre):
            return self.pre[i]
        return self.per[(i - len(self.pre)) % len(self.per)]

    def vertex(self, t):
        """R(t) = x_t x_{t-1} ... x_1."""
        return "".join(self.letter(i) for i in range(t, 0, -1))

    def phase(self, t):
        """Machine position after consuming t letters."""
        if t < len(self.pre):
            return t
        return len(self.pre) + (t - len(self.pre)) % len(self.per)

    def shift(self):
        """The image ray under the dynamics (drop the first letter)."""
        if self.pre:
            return Ray(self.pre[1:], self.per)
        return Ray("", self.per[1:] + self.per[0])

    def preimage_candidates(self, letters):
        return [Ray(y + self.pre, self.per) for y in letters]

    def __str__(self):
        return f"{self.pre};{self.per}"


def ray(pre, per):
    if not per:
        raise InputError("a ray needs a nonempty period")
    return Ray(pre, per)


def parse_ray(text, letters):
    """Parse the "pre;per" literal form, e.g. "1;0" or ";01"."""
    if ";" not in text:
        raise InputError(f"ray literal {text!r} lacks the ';' separator")
    pre, per = text.split(";", 1)
    for ch in pre + per:
        if ch not in letters:
            raise InputError(f"letter {ch!r} is not in the alphabet")
    return ray(pre, per)


# ------------------------------------------------------------- equivalence

@dataclass(frozen=True)
class EquivalenceVerdict:
    kind: str        # "equivalent" | "inequivalent" | "unknown"
    t: int = None    # first level with horizontal distance > 1

    @property
    def decided(self):
        return self.kind != "unknown"

    @property
    def equivalent(self):
        return self.kind == "equivalent"


def _transfer_steps(cx, r1, r2):
    """Yield (t, H_t): symbols carrying R1(t) to R2(t), t = 0, 1, 2, ..."""
    act = cx.action
    symbols = tuple(cx.syms) + (act.identity_id,)
    H = frozenset(symbols)
    t = 0
    while True:
        yield t, H
        x, y = r1.letter(t + 1), r2.letter(t + 1)
        # s carries R1(t+1) to R2(t+1) iff it sends the new letter right
        # and its restriction carries R1(t) to R2(t).  The candidates range
        # over the whole symbol set each step: witness sets are not nested.
        H = frozenset(s for s in symbols
                      if act.act_id(s, x) == y and
                      act.restrict_id(s, x) in H)
        t += 1


def rays_equivalent(cx, r1, r2, max_depth=512):
    """Exact decision for eventually periodic rays, by cycle detection."""
    seen = set()
    for t, H in _transfer_steps(cx, r1, r2):
        if not H:
            return EquivalenceVerdict("inequivalent", t)
        state = (r1.phase(t), r2.phase(t), H)
        if state in seen:
            return EquivalenceVerdict("equivalent")
        seen.add(state)
        if t >= max_depth:
            return EquivalenceVerdict("unknown")


def divergence_product(cx, r1, r2, max_depth=512):
    """Last level where the rays are within horizontal distance one."""
    verdict = rays_equivalent(cx, r1, r2, max_depth)
    if verdict.kind == "unknown":
        raise UndecidedEquivalence(
            f"no verdict for {r1} vs {r2} within depth {max_depth}")
    if verdict.equivalent:
        return math.inf
    return verdict.t - 1


# ----------------------------------------------------------------- products

def gromov_product(cx, u1, u2):
    d = cx.graph_distance(u1, u2)
    return Fraction(len(u1) + len(u2) - d, 2)


def level_product(cx, u1, u2):
    """Level of the horizontal segment of a realizing normal-form geodesic.

    Among all realizing drop levels the maximal one is reported; together
    with the horizontal bound this traps the Gromov product from both sides.
    """
    return cx.distance_profile(u1, u2).max_level


# ------------------------------------------------------------ visual metric

@dataclass(frozen=True)
class VisualParams:
    epsilon: float
    depth: int
    c0: float


def visual_params(params, depth=16, epsilon=None):
    return VisualParams(params.epsilon if epsilon is None else epsilon,
                        depth, params.c0)


def visual_distance(cx, r1, r2, vp):
    """exp(−ε·⟨R1|R2⟩) at the truncation depth; zero for equal points."""
    verdict = rays_equivalent(cx, r1, r2, max_depth=vp.depth)
    if not verdict.decided:
        raise UndecidedEquivalence(
            f"equivalence of {r1} and {r2} undecided at depth {vp.depth}")
    if verdict.equivalent:
        return 0.0
    T = vp.depth
    return math.exp(-vp.epsilon * level_product(cx, r1.vertex(T),
                                                r2.vertex(T)))


# ------------------------------------------------------------ local degrees

@dataclass(frozen=True)
class LocalDegreeRow:
    n: int
    under: int
    over: int


@dataclass(frozen=True)
class LocalDegreeReport:
    ray: Ray
    rows: tuple
    value: int          # None when unstabilized
    stabilized: bool
    accepted_at: int    # first n of the last agreeing window


def local_degree(cx, r, n_range):
    """Sandwich the local degree of the boundary shift at [r].

    The true level-n neighborhood of a boundary point is a union over all
    representative rays; the computable under/over versions use the radius-1
    and radius-2 balls around this representative.  A value is accepted when
    both sides agree and stay constant for three consecutive n.
    """
    image = r.shift()
    rows = []
    for n in n_range:
        rows.append(LocalDegreeRow(n,
                                   _degree_bound(cx, r, image, n, 1),
                                   _degree_bound(cx, r, image, n, 2)))
    value = None
    accepted = None
    for i in range(len(rows) - 2):
        window = rows[i:i + 3]
        vals = {row.under for row in window} | {row.over for row in window}
        if len(vals) == 1:
            value = vals.pop()
            accepted = window[0].n
    return LocalDegreeReport(r, tuple(rows), value, value is not None,
                             accepted)


def _degree_bound(cx, r, image, n, radius):
    down = cx.horizontal_ball(image.vertex(n), radius)
    up = set(cx.horizontal_ball(r.vertex(n + 1), radius))
    best = 0
    for v in down:
        best = max(best, sum(1 for ch in cx.letters() if v + ch in up))
    return best


def stabilized_local_degree(cx, r, n_range):
    report = local_degree(cx, r, n_range)
    if not report.stabilized:
        raise NotStabilized(
            f"local degree of {r} does not settle over {list(n_range)!r}")
    return report.value


# ------------------------------------------------------- preimage structure

@dataclass(frozen=True)
class PreimageClass:
    rays: tuple
    degree: int
    member_degrees: tuple


@dataclass(frozen=True)
class PreimageReport:
    ray: Ray
    classes: tuple
    degree_total: int
    expected: int
    consistent: bool    # members of each class report one degree

    @property
    def total_ok(self):
        return self.degree_total == self.expected


def boundary_preimage_classes(cx, r, vp, n_range=None):
    """Partition the d candidate preimage rays and sum their local degrees."""
    if n_range is None:
        n_range = range(2, vp.depth)
    candidates = r.preimage_candidates(cx.letters())
    labels = list(range(len(candidates)))
    for i, j in itertools.combinations(range(len(candidates)), 2):
        verdict = rays_equivalent(cx, candidates[i], candidates[j],
                                  max_depth=vp.depth)
        if not verdict.decided:
            raise UndecidedEquivalence(
                f"candidates {candidates[i]} and {candidates[j]} undecided")
        if verdict.equivalent:
            root = min(labels[i], labels[j])
            old = max(labels[i], labels[j])
            labels = [root if lab == old else lab for lab in labels]
    classes = []
    consistent = True
    for lab in sorted(set(labels)):
        members = tuple(candidates[i] for i in range(len(candidates))
                        if labels[i] == lab)
        degrees = tuple(stabilized_local_degree(cx, m, n_range)
                        for m in members)
        if len(set(degrees)) != 1:
            consistent = False
        classes.append(PreimageClass(members, degrees[0], degrees))
    total = sum(c.degree for c in classes)
    return PreimageReport(r, tuple(classes), total, cx.d, consistent)


# ------------------------------------------------------- diameter estimates

@dataclass(frozen=True)
class DiameterRow:
    t: int
    sample_size: int
    diameter: float
    ratio: float          # diameter · exp(εt)
    umbra_inclusion: bool  # S(R,t+c) ⊆ U(R,t) at the sampled depths


@dataclass(frozen=True)
class DiameterReport:
    ray: Ray
    c: int
    rows: tuple

    @property
    def band(self):
        ratios = [row.ratio for row in self.rows if row.diameter > 0]
        if not ratios:
            return (0.0, 0.0)
        return (min(ratios), max(ratios))

    @property
    def inclusions_ok(self):
        return all(row.umbra_inclusion for row in self.rows)


def shadow_umbra_inclusion(cx, r, t, c, depths=2):
    """Check S(R,t+c) ⊆ U(R,t) on slices through level t+c+depths."""
    inner = ball_set(cx, r.vertex(t + c), 1)
    outer = ball_set(cx, r.vertex(t), 1)
    for m in range(t + c, t + c + depths + 1):
        for u in shadow_slice(cx, inner, m):
            if not umbra_contains(cx, outer, u):
                return False
    return True


def diameter_report(cx, r, ts, vp, magic, samples_per_t=8, offset=4, seed=0):
    """Visual diameters of boundary shadows along a ray, with inclusions.

    Boundary points inside S(R,t) are sampled as constant extensions of the
    shadow's depth-cut vertices; their pairwise visual distance is a proxy
    for the diameter of the boundary shadow.
    """
    rng = random.Random(seed)
    c = magic + 3
    fill = cx.letters()[0]
    rows = []
    for t in ts:
        V = ball_set(cx, r.vertex(t), 1)
        cut = shadow_slice(cx, V, t + offset)
        if len(cut) > samples_per_t:
            cut = sorted(rng.sample(list(cut), samples_per_t))
        points = [Ray(u[::-1], fill) for u in cut]
        diam = 0.0
        for a, b in itertools.combinations(points, 2):
            diam = max(diam, visual_distance(cx, a, b, vp))
        rows.append(DiameterRow(t, len(points), diam,
                                diam * math.exp(vp.epsilon * t),
                                shadow_umbra_inclusion(cx, r, t, c)))
    return DiameterReport(r, c, tuple(rows))


# ---------------------------------------------------------------- roundness

def roundness(member_distances, nonmember_distances=()):
    """Outradius over inradius of a set around a center, at sample resolution.

    Callers supply distances from the center to sampled members and sampled
    non-members.  The inradius is clamped at the outradius, so a sample with
    no nearby outside points reports a perfectly round 1.
    """
    members = [d for d in member_distances]
    if not members:
        raise InputError("roundness needs at least one member distance")
    L = max(members)
    ell = min(nonmember_distances) if nonmember_distances else math.inf
    ell = min(ell, L)
    if ell <= 0:
        raise ZeroInradius("center is not interior at sample resolution")
    return L / ell
