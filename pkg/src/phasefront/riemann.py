"""Riemann solvers: exact two-wave solver plus the two interface solvers.

solve_lax resolves an arbitrary jump into a 1-wave, a (possibly trivial)
stationary contact and a 3-wave.  solve_pseudo_accurate resolves the
collision of a physical wave with the composite interface front exactly,
leaving the composite strength unchanged; solve_pseudo_simplified instead
transmits the physical wave untouched and absorbs the interaction error
into the composite strength.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .eos import (
    PhasePair,
    PhaseSideError,
    State,
    apply_composite,
    apply_wave,
    dh,
    h,
    pressure,
)


class NonConvergenceError(RuntimeError):
    """Root finder failed; carries the final bracket for diagnosis."""

    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"{message} (bracket [{bracket[0]!r}, {bracket[1]!r}])")
        self.bracket = bracket


@dataclass(frozen=True, slots=True)
class RiemannFan:
    """Resolved wave fan.

    eps2 is the contact strength for solve_lax and the (unchanged)
    composite strength for the pseudo solvers.  mid_left sits between the
    1-wave and the contact, mid_right between the contact and the 3-wave.
    residuals reports the defect in the two scalar jump equations.
    """

    eps1: float
    eps2: float
    eps3: float
    mid_left: State
    mid_right: State
    residuals: tuple[float, float]


def _solve_strengths(du: float, delta: float, a_l: float, a_r: float) -> tuple[float, float]:
    """Solve 2(a_l h(e1) + a_r h(e1 + delta)) = du for e1.

    The map is strictly increasing and onto, so a sign-change bracket is
    grown geometrically and a Newton iteration safeguarded by bisection
    polishes the root to near machine precision.
    """

    def phi(e1: float) -> float:
        return 2.0 * (a_l * h(e1) + a_r * h(e1 + delta)) - du

    lo, hi = -1.0, 1.0
    for _ in range(80):
        if phi(lo) <= 0.0:
            break
        lo *= 2.0
    else:
        raise NonConvergenceError("no lower bracket for wave strengths", (lo, hi))
    for _ in range(80):
        if phi(hi) >= 0.0:
            break
        hi *= 2.0
    else:
        raise NonConvergenceError("no upper bracket for wave strengths", (lo, hi))

    scale = max(1.0, abs(du), a_l + a_r)
    x = 0.5 * (lo + hi)
    fx = phi(x)
    for _ in range(200):
        if fx > 0.0:
            hi = x
        elif fx < 0.0:
            lo = x
        else:
            return x, x + delta
        slope = 2.0 * (a_l * dh(x) + a_r * dh(x + delta))
        step = fx / slope
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if x_new == x:
            break
        x = x_new
        fx = phi(x)
        if abs(fx) <= 1e-15 * scale and hi - lo <= 1e-13 * max(1.0, abs(x)):
            break
    else:
        raise NonConvergenceError("wave-strength iteration did not converge", (lo, hi))
    return x, x + delta


def solve_lax(U_l: State, U_r: State, a_l: float, a_r: float) -> RiemannFan:
    """Exact resolution of the jump U_l -> U_r into simple waves.

    The strengths satisfy eps3 - eps1 = (1/2) log(p_r/p_l) and
    2(a_l h(eps1) + a_r h(eps3)) = u_r - u_l; the contact strength is
    eps2 = 2(a_r - a_l)/(a_r + a_l).
    """
    p_l = pressure(U_l.v, a_l)
    p_r = pressure(U_r.v, a_r)
    delta = 0.5 * math.log(p_r / p_l)
    eps1, eps3 = _solve_strengths(U_r.u - U_l.u, delta, a_l, a_r)

    mid_left = apply_wave(U_l, 1, eps1, a_l)
    if a_l == a_r and U_l.lam == U_r.lam:
        mid_right = mid_left
    else:
        ratio = a_r / a_l
        mid_right = State(mid_left.v * ratio * ratio, mid_left.u, U_r.lam)

    r1 = (eps3 - eps1) - delta
    r2 = 2.0 * (a_l * h(eps1) + a_r * h(eps3)) - (U_r.u - U_l.u)
    eps2 = 2.0 * (a_r - a_l) / (a_r + a_l)
    return RiemannFan(eps1, eps2, eps3, mid_left, mid_right, (r1, r2))


def solve_pseudo_accurate(U_l: State, U_r: State, d20: float, phases: PhasePair) -> RiemannFan:
    """Full resolution of a physical wave hitting the composite front.

    The left state is shifted by the composite strength and the shifted
    jump is handed to solve_lax; the outgoing composite strength equals
    the incoming one.  The returned strengths satisfy
    2(a_l h(eps1) + a_r h(eps3)) = u_r - u_l - d20.
    """
    if U_l.lam != phases.lam_l:
        raise PhaseSideError(f"left state lam={U_l.lam} is not on phase lam_l={phases.lam_l}")
    if U_r.lam != phases.lam_r:
        raise PhaseSideError(f"right state lam={U_r.lam} is not on phase lam_r={phases.lam_r}")
    shifted = State(U_l.v, U_l.u + d20, U_l.lam)
    fan = solve_lax(shifted, U_r, phases.a_l, phases.a_r)
    mid_left = apply_wave(U_l, 1, fan.eps1, phases.a_l)
    mid_right = apply_composite(mid_left, phases, d20)
    return RiemannFan(fan.eps1, d20, fan.eps3, mid_left, mid_right, fan.residuals)


def solve_pseudo_simplified(d20: float, family: int, delta: float, phases: PhasePair) -> float:
    """Updated composite strength when the physical wave passes unchanged.

    The transmitted wave keeps strength delta; the velocity bookkeeping
    error 2(a_r - a_l) h(delta) is added to (family 1) or subtracted from
    (family 3) the composite strength.
    """
    gain = 2.0 * (phases.a_r - phases.a_l) * h(delta)
    if family == 1:
        return d20 + gain
    if family == 3:
        return d20 - gain
    raise ValueError(f"family must be 1 or 3, got {family}")
