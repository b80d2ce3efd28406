"""Independent oracles for reflected-wave sizes, and verification sweeps.

The size of the wave reflected by a shock/rarefaction collision of one
acoustic family is the root of a transcendental equation.  This module
solves those equations by plain bracketed bisection, deliberately sharing
no code with the Newton iteration inside the Riemann solver, so the two
routes can be checked against each other.  The sweep harnesses at the
bottom drive those cross-checks over parameter grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import riemann
from .eos import DomainError, State, apply_wave, c_damp, h

_BISECT_TOL = 1e-13


def _bisect(f, lo: float, hi: float, tol: float = _BISECT_TOL) -> float:
    """Root of f on [lo, hi] assuming f(lo) <= 0 <= f(hi).

    Roots that sit on a bracket endpoint up to roundoff are returned as
    that endpoint (the window bounds are exact in theory only).
    """
    flo = f(lo)
    fhi = f(hi)
    scale = max(1.0, abs(flo), abs(fhi))
    if flo > 0.0:
        if flo <= 1e-12 * scale:
            return lo
        raise ValueError(f"invalid bracket: f({lo})={flo}, f({hi})={fhi}")
    if fhi < 0.0:
        if -fhi <= 1e-12 * scale:
            return hi
        raise ValueError(f"invalid bracket: f({lo})={flo}, f({hi})={fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def x_o(z: float) -> float:
    """Rarefaction size that exactly cancels a shock of magnitude z.

    Unique nonnegative root x of sinh(x - z) - sinh(z) + x = 0; for
    larger incident rarefactions the outgoing same-family wave is a
    rarefaction, for smaller ones a shock.
    """
    if z < 0.0:
        raise DomainError(f"shock magnitude must be nonnegative, got {z}")
    if z == 0.0:
        return 0.0
    return _bisect(lambda x: math.sinh(x - z) - math.sinh(z) + x, 0.0, 2.0 * z)


def y_pure(z: float) -> float:
    """Reflected shock size once the incident pair fully cancels.

    Unique root y >= 0 of sinh(y) + y = sinh(z) - z; bounded above by
    c_damp(z) * z.
    """
    if z < 0.0:
        raise DomainError(f"shock magnitude must be nonnegative, got {z}")
    if z == 0.0:
        return 0.0
    rhs = math.sinh(z) - z
    return _bisect(lambda y: math.sinh(y) + y - rhs, 0.0, z)


def y_mixed(x: float, z: float) -> float:
    """Reflected shock size while the outgoing same-family wave is a shock.

    Root of sinh(y) + sinh(y - x + z) - sinh(z) + x = 0 in the window
    (max(0, x - z), min(x, z)); only valid for 0 <= x <= x_o(z).
    """
    if z < 0.0 or x < 0.0:
        raise DomainError("sizes must be nonnegative")
    if x == 0.0:
        return 0.0
    if x > x_o(z) * (1.0 + 1e-12):
        raise DomainError(f"x={x} exceeds the cancellation threshold x_o({z})={x_o(z)}")
    lo = max(0.0, x - z)
    hi = min(x, z)
    return _bisect(lambda y: math.sinh(y) + math.sinh(y - x + z) - math.sinh(z) + x, lo, hi)


def reflected_size(alpha: float, beta: float) -> float:
    """Strength of the wave reflected by a mixed-sign same-family collision.

    alpha < 0 < beta; the branch switches from y_mixed to the constant
    y_pure at beta = x_o(|alpha|), where the two agree.
    """
    if not (alpha < 0.0 < beta):
        raise DomainError("need a shock alpha < 0 and a rarefaction beta > 0")
    z = -alpha
    if beta <= x_o(z):
        return y_mixed(beta, z)
    return y_pure(z)


@dataclass
class SweepReport:
    """Outcome of one verification sweep over a parameter grid."""

    name: str
    grid: str
    cases: int
    max_violation: float
    worst_case: dict = field(default_factory=dict)
    passed: bool = True

    def record(self, violation: float, **inputs):
        self.cases += 1
        if violation > self.max_violation:
            self.max_violation = violation
            self.worst_case = dict(inputs)

    def finish(self, tol: float) -> "SweepReport":
        self.passed = self.max_violation <= tol
        return self


def _grid(a: float, b: float, n: int) -> list[float]:
    """n points covering [a, b]: log-spaced near a small endpoint, else linear."""
    if a > 0.0 and b / a > 50.0:
        la, lb = math.log(a), math.log(b)
        return [math.exp(la + (lb - la) * i / (n - 1)) for i in range(n)]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def _resolve_same_family(family: int, s_left: float, s_right: float, a: float = 1.0):
    """Outgoing (reflected, same-family) strengths of a same-family collision."""
    U_l = State(1.0, 0.0, 0.0)
    U_m = apply_wave(U_l, family, s_left, a)
    U_r = apply_wave(U_m, family, s_right, a)
    fan = riemann.solve_lax(U_l, U_r, a, a)
    if family == 3:
        return fan.eps1, fan.eps3
    return fan.eps3, fan.eps1


def sweep_lemma53(n: int = 50, cap: float = 3.0, tol: float = 1e-10) -> list[SweepReport]:
    """Mixed-sign collisions: oracle vs solver, damping bound, plateau."""
    zs = _grid(cap / n, cap, n)
    xs = _grid(cap / n, cap, n)

    equiv = SweepReport("lemma53/oracle-vs-solver", f"{n}x{n} in [-{cap},0)x(0,{cap}]", 0, 0.0)
    bound = SweepReport("lemma53/damping-bound", f"{n}x{n} in [-{cap},0)x(0,{cap}]", 0, 0.0)
    for z in zs:
        for x in xs:
            refl, _ = _resolve_same_family(3, -z, x)
            oracle = reflected_size(-z, x)
            equiv.record(abs(abs(refl) - oracle), alpha=-z, beta=x)
            bound.record(abs(refl) - c_damp(z) * min(z, x), alpha=-z, beta=x)

    junction = SweepReport("lemma53/junction-continuity", "z in {0.5, 1, 3}", 0, 0.0)
    for z in (0.5, 1.0, 3.0):
        junction.record(abs(y_mixed(x_o(z), z) - y_pure(z)), z=z)

    plateau = SweepReport("lemma53/plateau", f"{n} z-points, beta > x_o(z)", 0, 0.0)
    for z in zs:
        base = reflected_size(-z, x_o(z) * 1.0001 + 1e-9)
        for fac in (1.5, 2.0, 4.0):
            val = reflected_size(-z, x_o(z) * fac + 1e-9)
            plateau.record(abs(val - base), z=z, factor=fac)

    shocks = SweepReport("lemma53/two-shock-growth", f"{n}x{n} shocks", 0, 0.0)
    for z in zs:
        for w in xs:
            refl, same = _resolve_same_family(3, -z, -w)
            shocks.record(max(z, w) - abs(same), alpha=-z, beta=-w)
            if refl < 0.0:
                shocks.record(-refl, alpha=-z, beta=-w)

    return [
        equiv.finish(tol),
        bound.finish(tol),
        junction.finish(tol),
        plateau.finish(tol),
        shocks.finish(tol),
    ]


def sweep_identities(n: int = 200, seed: int = 7, tol: float = 1e-11) -> list[SweepReport]:
    """Strength and velocity identities for composed two-fan collisions."""
    import numpy as np

    rng = np.random.default_rng(seed)
    rep_str = SweepReport("identities/strength", f"{n} random compositions", 0, 0.0)
    rep_vel = SweepReport("identities/velocity", f"{n} random compositions", 0, 0.0)
    for _ in range(n):
        a = float(rng.uniform(0.5, 3.0))
        al, a3, b1, b3 = (float(s) for s in rng.uniform(-1.5, 1.5, size=4))
        U_l = State(float(rng.uniform(0.3, 3.0)), float(rng.uniform(-2, 2)), 0.0)
        U_m = apply_wave(apply_wave(U_l, 1, al, a), 3, a3, a)
        U_r = apply_wave(apply_wave(U_m, 1, b1, a), 3, b3, a)
        fan = riemann.solve_lax(U_l, U_r, a, a)
        rep_str.record(abs((fan.eps3 - fan.eps1) - (a3 + b3 - al - b1)), a1=al, a3=a3, b1=b1, b3=b3)
        lhs = a * h(fan.eps1) + a * h(fan.eps3)
        rhs = a * h(al) + a * h(a3) + a * h(b1) + a * h(b3)
        rep_vel.record(abs(lhs - rhs), a1=al, a3=a3, b1=b1, b3=b3)

    crossing = SweepReport("identities/crossing", f"{n} cross-family pairs", 0, 0.0)
    for _ in range(n):
        a = float(rng.uniform(0.5, 3.0))
        d3, d1 = (float(s) for s in rng.uniform(-1.5, 1.5, size=2))
        U_l = State(1.0, 0.0, 0.0)
        U_m = apply_wave(U_l, 3, d3, a)
        U_r = apply_wave(U_m, 1, d1, a)
        fan = riemann.solve_lax(U_l, U_r, a, a)
        crossing.record(max(abs(fan.eps1 - d1), abs(fan.eps3 - d3)), d1=d1, d3=d3)

    return [rep_str.finish(tol), rep_vel.finish(tol), crossing.finish(1e-12)]


def sweep_pseudo_estimates(phases, m: float, n: int = 40, tol: float = 1e-11) -> list[SweepReport]:
    """Interface-interaction estimates for both pseudo solvers."""
    from .eos import apply_composite

    refl = SweepReport("pseudo/reflected-half-bound", f"|delta| <= {m}, {2 * n} per family", 0, 0.0)
    keep = SweepReport("pseudo/composite-unchanged", "same grid", 0, 0.0)
    d2 = abs(phases.delta2)
    for family in (1, 3):
        for s in _grid(m / n, m, n) + [-x for x in _grid(m / n, m, n)]:
            d20 = 0.1
            if family == 1:
                U_p = State(1.0, 0.0, phases.lam_l)
                U_q = apply_composite(U_p, phases, d20)
                U_r = apply_wave(U_q, 1, s, phases.a_r)
                fan = riemann.solve_pseudo_accurate(U_p, U_r, d20, phases)
                reflected = fan.eps3
                transmitted = fan.eps1
            else:
                U_l = State(1.0, 0.0, phases.lam_l)
                U_m = apply_wave(U_l, 3, s, phases.a_l)
                U_r = apply_composite(U_m, phases, d20)
                fan = riemann.solve_pseudo_accurate(U_l, U_r, d20, phases)
                reflected = fan.eps1
                transmitted = fan.eps3
            refl.record(abs(reflected) - 0.5 * d2 * abs(s), family=family, strength=s)
            refl.record(abs(abs(transmitted - s) - abs(reflected)), family=family, strength=s)
            keep.record(abs(fan.eps2 - d20), family=family, strength=s)

    simp = SweepReport("pseudo/simplified-growth", f"|delta| <= {m}", 0, 0.0)
    c_o = 2.0 * max(phases.a_l, phases.a_r) * math.sinh(m) / m
    for family in (1, 3):
        for s in _grid(m / n, m, n) + [-x for x in _grid(m / n, m, n)]:
            new = riemann.solve_pseudo_simplified(0.25, family, s, phases)
            simp.record(abs(new - 0.25) - c_o * d2 * abs(s), family=family, strength=s)

    return [refl.finish(tol), keep.finish(0.0), simp.finish(tol)]
