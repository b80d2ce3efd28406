"""Initial-data presets: Riemann, N-wave, seeded random BV, smooth bumps.

All builders return StepData or SampledData in the convention of the
tracker: the phase label is implicit (left phase for x < 0), so the
specific volume must already encode the pressure profile on each side,
v = a(lam)^2 / p.
"""

from __future__ import annotations

import math

import numpy as np

from .eos import PhasePair
from .tracker import SampledData, StepData


def riemann_data(v_l: float, u_l: float, v_r: float, u_r: float) -> StepData:
    """A single jump at the interface."""
    return StepData((0.0,), (v_l, v_r), (u_l, u_r))


def from_pressure_steps(xs, ps, us, phases: PhasePair) -> StepData:
    """Build StepData from a pressure profile (keeps p continuous at x = 0)."""
    xs = tuple(float(x) for x in xs)
    if 0.0 not in xs:
        import bisect

        i = bisect.bisect_right(xs, 0.0)
        xs = xs[:i] + (0.0,) + xs[i:]
        ps = list(ps[: i + 1]) + [ps[i]] + list(ps[i + 1:])
        us = list(us[: i + 1]) + [us[i]] + list(us[i + 1:])
    vs = []
    for i, p in enumerate(ps):
        upper = xs[i] if i < len(xs) else math.inf
        a = phases.a_l if upper <= 0.0 else phases.a_r
        vs.append(a * a / float(p))
    return StepData(xs, tuple(vs), tuple(float(u) for u in us))


def nwave_data(phases: PhasePair, u_amp: float = 0.2, p_base: float = 1.0,
               x_half: float = 1.0, n_steps: int = 8) -> StepData:
    """Sawtooth velocity profile at constant pressure, sampled in steps."""
    xs = [x_half * (2.0 * i / n_steps - 1.0) for i in range(n_steps + 1)]
    us = [0.0]
    for x in xs:
        mid = x + x_half / n_steps
        us.append(-u_amp * mid / x_half if abs(mid) <= x_half else 0.0)
    us[-1] = 0.0
    ps = [p_base] * (len(xs) + 1)
    return from_pressure_steps(xs, ps, us, phases)


def random_bv_data(phases: PhasePair, tv_target: float, seed: int,
                   n_jumps: int = 8, x_span: float = 1.0,
                   p_base: float = 1.0) -> StepData:
    """Random step data with a prescribed combined variation.

    The budget TV(log p) + TV(u)/min(a) is split randomly between the two
    fields and the jump magnitudes are normalized to hit the target
    exactly (up to roundoff).
    """
    rng = np.random.default_rng(seed)
    xs = np.sort(rng.uniform(-x_span, x_span, size=n_jumps))
    xs = xs[np.abs(xs) > 1e-6]
    share = rng.uniform(0.3, 0.7)
    tv_p = share * tv_target
    tv_u = (1.0 - share) * tv_target * min(phases.a_l, phases.a_r)

    def steps(total: float, n: int) -> np.ndarray:
        raw = rng.uniform(-1.0, 1.0, size=n)
        scale = total / np.sum(np.abs(raw)) if np.sum(np.abs(raw)) > 0 else 0.0
        return raw * scale

    n = len(xs)
    logp = math.log(p_base) + np.concatenate(([0.0], np.cumsum(steps(tv_p, n))))
    u = np.concatenate(([0.0], np.cumsum(steps(tv_u, n))))
    return from_pressure_steps(xs, np.exp(logp), u, phases)


def smooth_data(phases: PhasePair, p_amp: float = 0.08, u_amp: float = 0.04,
                p_base: float = 1.0, x_span: float = 1.0) -> SampledData:
    """Smooth compactly-supported wiggles in pressure and velocity."""

    def bump(x: float) -> float:
        if abs(x) >= x_span:
            return 0.0
        return math.cos(0.5 * math.pi * x / x_span) ** 2

    def p_of(x: float) -> float:
        return p_base * math.exp(p_amp * bump(x) * math.sin(2.0 * math.pi * x / x_span))

    def v_fn(x: float) -> float:
        a = phases.a_l if x < 0.0 else phases.a_r
        return a * a / p_of(x)

    def u_fn(x: float) -> float:
        return u_amp * bump(x) * math.cos(3.0 * math.pi * x / x_span)

    return SampledData(v_fn, u_fn, -x_span, x_span)


def phases_for_interface(delta2: float, a_l: float = 1.0,
                         lam_l: float = 0.0, lam_r: float = 1.0) -> PhasePair:
    """Phase pair with a prescribed interface strength (a_r solved from it)."""
    if not -2.0 < delta2 < 2.0:
        raise ValueError(f"interface strength must lie in (-2, 2), got {delta2}")
    a_r = a_l * (2.0 + delta2) / (2.0 - delta2)
    return PhasePair.make(a_l, a_r, lam_l, lam_r)
