"""Derived per-group constants shared by geometry, dynamics, and boundary.

Everything downstream of the complex depends on a handful of quantities: the
horizontal-geodesic bound HΣ, the magic level m(HΣ), a hyperbolicity
estimate, and the visual-metric defaults built from them.  They are bundled
here so every report can state exactly which values it ran with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Params:
    hsigma: int
    hsigma_stabilized: bool
    hsigma_levels: tuple     # (level, running max) pairs from the estimator
    magic_hsigma: int        # m(HΣ)
    delta: Fraction          # empirical four-point hyperbolicity defect
    nucleus_size: int
    epsilon: float
    c0: float                # 100·(δ + m(HΣ))

    def describe(self):
        return {
            "hsigma": self.hsigma,
            "hsigma_stabilized": self.hsigma_stabilized,
            "magic_hsigma": self.magic_hsigma,
            "delta": str(self.delta),
            "nucleus_size": self.nucleus_size,
            "epsilon": self.epsilon,
            "c0": self.c0,
        }


def derive_params(cx, max_level=8, extend_to=9, hsigma=None, epsilon=None,
                  delta_samples=2000, seed=0):
    """Measure a group's constants; extends the HΣ scan until it settles.

    An explicit hsigma skips the estimate (the override is recorded by the
    empty level table).  epsilon defaults to min(0.1, 1/(4(1+m))) so the
    quasi-metric's multiplicative slack stays small.
    """
    levels = ()
    stabilized = True
    if hsigma is None:
        level = max_level
        est = cx.estimate_hsigma(level)
        while not est.stabilized and level < extend_to:
            level += 1
            est = cx.estimate_hsigma(level)
        hsigma = est.value
        stabilized = est.stabilized
        levels = est.per_level
    magic = cx.action.magic_level(hsigma)
    delta = cx.estimate_delta(delta_samples, seed=seed)
    if epsilon is None:
        epsilon = min(0.1, 1.0 / (4 * (1 + magic)))
    c0 = 100.0 * (float(delta) + magic)
    return Params(hsigma, stabilized, levels, magic, delta,
                  len(cx.action.nucleus_ids()), epsilon, c0)
