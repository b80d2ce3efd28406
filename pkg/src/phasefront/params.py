"""Scheme parameters: admissibility threshold, feasibility windows, stability.

Large initial data are admissible when the combined logarithmic-pressure
and velocity variation stays below an explicit, strictly decreasing
function of the interface strength.  This module evaluates that
threshold, certifies and selects the weight parameters (m, xi, K, K_np)
driving the decreasing interaction functional, and exposes the reflection
coefficients of the classical BV-stability (finiteness) condition for
shock/contact/shock patterns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .eos import DomainError, PhasePair, State, c_damp

M_BAR = math.acosh(2.0)  # log(2 + sqrt(3)); below it the interface window is empty


class InfeasibleError(ValueError):
    """Empty feasibility window; carries the offending interval."""

    def __init__(self, message: str, lo: float, hi: float):
        super().__init__(f"{message}: empty interval ({lo!r}, {hi!r})")
        self.interval = (lo, hi)


class DegenerateJumpError(ValueError):
    """A reflection quotient has a vanishing denominator (zero-strength shock)."""


def w_window(m: float) -> float:
    """Largest admissible interface strength for maximal wave size m: 2/(cosh m - 1)."""
    return 2.0 / (math.cosh(m) - 1.0)


def z_budget(m: float) -> float:
    """Largest admissible combined variation for maximal wave size m: 2 m c(m)^2."""
    c = c_damp(m)
    return 2.0 * m * c * c


def _inverse_increasing(f, target: float, lo: float, hi: float, tol: float = 1e-12) -> float:
    while f(hi) < target:
        lo, hi = hi, hi * 2.0
        if hi > 1e6:
            raise DomainError(f"target {target} out of reach for inversion")
    while hi - lo > tol * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def w_inverse(r: float) -> float:
    """m with w_window(m) = r (w is strictly decreasing)."""
    if not r > 0.0:
        raise DomainError(f"need r > 0, got {r}")
    return _inverse_increasing(lambda m: -w_window(m), -r, 1e-8, 4.0)


def z_inverse(budget: float) -> float:
    """m with z_budget(m) = budget (z is strictly increasing)."""
    if not budget > 0.0:
        raise DomainError(f"need a positive budget, got {budget}")
    return _inverse_increasing(z_budget, budget, 1e-8, 4.0)


def K_threshold(r: float) -> float:
    """Admissible combined-variation budget for interface magnitude r in (0, 2).

    Explicitly 2/(1+r)^2 * log(2/r + 1 + (2/r) sqrt(1+r)); strictly
    decreasing, divergent as r -> 0+ and tending to (2/9) log(2+sqrt(3))
    as r -> 2-.  Callers treat r = 0 as an infinite budget.
    """
    if not 0.0 < r < 2.0:
        raise DomainError(f"interface magnitude must lie in (0, 2), got {r}")
    return 2.0 / (1.0 + r) ** 2 * math.log(2.0 / r + 1.0 + (2.0 / r) * math.sqrt(1.0 + r))


@dataclass(frozen=True, slots=True)
class ParameterSet:
    """Scheme constants with their feasibility certificates.

    The certificate dict maps each constraint name to the slack actually
    measured when the set was built; every slack must be positive (or zero
    where the constraint is non-strict).
    """

    m: float
    xi: float
    K: float
    K_np: float
    C_o: float
    mu: float
    delta2: float
    feasible: dict = field(default_factory=dict)

    def certificates(self) -> dict:
        d2 = abs(self.delta2)
        certs = {
            "xi_above_contact": self.xi - (1.0 + d2),
            "xi_below_damping": 1.0 / c_damp(self.m) - self.xi,
            "K_above_floor": self.K - max((self.xi - 1.0) / 2.0, 1.0),
            "K_below_ceiling": ((self.xi - 1.0) / d2 - self.K) if d2 > 0.0 else math.inf,
            "K_np_positive": self.K_np,
            "K_np_below_ratio": self.K / self.C_o - self.K_np,
            "mu_below_one": 1.0 - self.mu,
        }
        return certs

    def all_feasible(self) -> bool:
        return all(v >= 0.0 for v in self.certificates().values())


def mu_of(xi: float, K: float, K_np: float, C_o: float, delta2: float) -> float:
    """Geometric decay factor of the per-generation functionals."""
    return max(
        1.0 / (2.0 * K - 1.0),
        xi / (2.0 * K + 1.0),
        (K * abs(delta2) + 1.0) / xi,
        K_np * C_o / K,
    )


def C_o_of(m: float, phases: PhasePair) -> float:
    """Simplified-solver growth constant 2 a sinh(m)/m with the larger coefficient."""
    return 2.0 * max(phases.a_l, phases.a_r) * math.sinh(m) / m


def choose_parameters(phases: PhasePair, tv_budget: float) -> ParameterSet:
    """Select certified scheme constants for the given variation budget.

    The maximal wave size m is the geometric midpoint of its feasibility
    interval, xi and K arithmetic midpoints of theirs, K_np half its
    ceiling; midpoints maximize slack uniformly and keep runs
    reproducible.  Every invariant is re-verified before returning.
    """
    d2 = abs(phases.delta2)
    lo = z_inverse(max(tv_budget, 1e-8))
    if d2 > 0.0:
        if tv_budget >= K_threshold(d2):
            raise InfeasibleError("variation budget exceeds the admissibility threshold",
                                  tv_budget, K_threshold(d2))
        hi = w_inverse(d2)
        if not lo < hi:
            raise InfeasibleError("empty window for the maximal wave size", lo, hi)
        m = math.sqrt(lo * hi)
    else:
        # Constant-coefficient branch: no interface cap on m, keep slack 4x.
        m = 2.0 * lo
    xi = 0.5 * ((1.0 + d2) + 1.0 / c_damp(m))
    k_lo = max((xi - 1.0) / 2.0, 1.0)
    K = 0.5 * (k_lo + (xi - 1.0) / d2) if d2 > 0.0 else k_lo + 0.5
    C_o = C_o_of(m, phases)
    K_np = K / (2.0 * C_o)
    mu = mu_of(xi, K, K_np, C_o, d2)
    ps = ParameterSet(m, xi, K, K_np, C_o, mu, phases.delta2)
    certs = ps.certificates()
    ps = ParameterSet(m, xi, K, K_np, C_o, mu, phases.delta2, certs)
    if not ps.all_feasible():
        bad = {k: v for k, v in certs.items() if v < 0.0}
        raise InfeasibleError(f"parameter certificates failed: {bad}", lo, m)
    return ps


def combined_variation(tv_log_p: float, tv_u: float, phases: PhasePair) -> float:
    """The admissibility functional TV(log p) + TV(u)/min(a_l, a_r)."""
    return tv_log_p + tv_u / min(phases.a_l, phases.a_r)


@dataclass(frozen=True, slots=True)
class AdmissibilityReport:
    tv_log_p: float
    tv_u: float
    combined: float
    delta2: float
    threshold: float          # K(|delta2|), or inf when delta2 == 0
    small_data_bound: float   # (2/9) log(2 + sqrt(3)), sufficient for any interface
    margin: float             # threshold - combined
    admissible: bool


def check_initial_data(tv_log_p: float, tv_u: float, phases: PhasePair) -> AdmissibilityReport:
    """Compare the data's combined variation against the interface threshold."""
    combined = combined_variation(tv_log_p, tv_u, phases)
    d2 = abs(phases.delta2)
    threshold = K_threshold(d2) if d2 > 0.0 else math.inf
    small = (2.0 / 9.0) * math.log(2.0 + math.sqrt(3.0))
    return AdmissibilityReport(
        tv_log_p=tv_log_p,
        tv_u=tv_u,
        combined=combined,
        delta2=phases.delta2,
        threshold=threshold,
        small_data_bound=small,
        margin=threshold - combined,
        admissible=combined < threshold,
    )


def schochet_reflection(U0: State, U1: State, U2: State, U3: State,
                        phases: PhasePair) -> tuple[float, float]:
    """Reflection coefficients A, B of a 1-shock / contact / 3-shock pattern.

    Computed from the eigen-projection quotients of the actual jumps, not
    from the shock strengths, so that the identity A = c(|eps1|),
    B = c(|eps3|) is a genuine cross-check.
    """
    a1 = phases.a_of(U1.lam)
    a2 = phases.a_of(U2.lam)
    c1 = a1 / U1.v
    c2 = a2 / U2.v
    s_minus = -a1 / math.sqrt(U1.v * U0.v)
    s_plus = a2 / math.sqrt(U2.v * U3.v)

    dv_m, du_m = U1.v - U0.v, U1.u - U0.u
    dv_p, du_p = U3.v - U2.v, U3.u - U2.u
    den_m = c1 * dv_m + du_m
    den_p = -c2 * dv_p + du_p
    if dv_m == 0.0 or dv_p == 0.0 or den_m == 0.0 or den_p == 0.0:
        raise DegenerateJumpError("zero-strength shock in the reflection pattern")

    A = abs((c1 + s_minus) / (c1 - s_minus) * (-c1 * dv_m + du_m) / den_m)
    B = abs((c2 - s_plus) / (c2 + s_plus) * (c2 * dv_p + du_p) / den_p)
    return A, B


def schochet_finiteness(eps1: float, eps2: float, eps3: float) -> tuple[bool, float]:
    """BV-stability quadratic for a two-shock pattern around the contact.

    Evaluates c1 c3 e2^2 - (c1 + c3)|e2| + 2(1 - c1 c3) with
    ci = c_damp(|epsi|); the pattern is stable when the value is positive.
    """
    if eps1 > 0.0 or eps3 > 0.0:
        raise DomainError("finiteness condition applies to two shocks (eps1, eps3 <= 0)")
    c1 = c_damp(-eps1)
    c3 = c_damp(-eps3)
    e2 = abs(eps2)
    margin = c1 * c3 * e2 * e2 - (c1 + c3) * e2 + 2.0 * (1.0 - c1 * c3)
    return margin > 0.0, margin


def sweep_schochet(n: int = 1000, seed: int = 11, tol: float = 1e-12):
    """Random shock/contact/shock patterns: A, B vs damping coefficient."""
    import numpy as np

    from .eos import apply_composite, apply_wave
    from .oracle import SweepReport

    rng = np.random.default_rng(seed)
    rep = SweepReport("schochet/reflection", f"{n} random patterns", 0, 0.0)
    for _ in range(n):
        a_l = float(rng.uniform(0.5, 3.0))
        a_r = float(rng.uniform(0.5, 3.0))
        if a_l == a_r:
            a_r *= 1.5
        phases = PhasePair.make(a_l, a_r)
        e1 = -float(rng.uniform(0.05, 3.0))
        e3 = -float(rng.uniform(0.05, 3.0))
        U0 = State(float(rng.uniform(0.3, 3.0)), float(rng.uniform(-2.0, 2.0)), phases.lam_l)
        U1 = apply_wave(U0, 1, e1, a_l)
        U2 = apply_composite(U1, phases, 0.0)
        U3 = apply_wave(U2, 3, e3, a_r)
        A, B = schochet_reflection(U0, U1, U2, U3, phases)
        rep.record(abs(A - c_damp(-e1)), eps1=e1, eps3=e3, which="A")
        rep.record(abs(B - c_damp(-e3)), eps1=e1, eps3=e3, which="B")

    degen = SweepReport("schochet/degenerate-reduction", f"{n} grid points", 0, 0.0)
    side = max(2, int(math.sqrt(n)))
    for i in range(side):
        e1 = -(0.05 + 2.95 * i / (side - 1))
        c1 = c_damp(-e1)
        for j in range(side):
            e2 = -2.0 + 4.0 * (j + 0.5) / side
            e3 = -_c_inverse(1.0 - 1e-9)
            _, margin = schochet_finiteness(e1, e2, e3)
            reduced = 1.0 / c1 - 1.0 - abs(e2)
            # Signs must agree except inside a small band around the root.
            if abs(reduced) > 1e-6 and margin * reduced < 0.0:
                degen.record(abs(margin), eps1=e1, eps2=e2)
            else:
                degen.record(0.0, eps1=e1, eps2=e2)
    return [rep.finish(tol), degen.finish(0.0)]


def _c_inverse(y: float) -> float:
    """z with c_damp(z) = y, for y in (0, 1)."""
    return math.acosh((1.0 + y) / (1.0 - y))


def sweep_k_threshold(n: int = 1000, tol: float = 1e-10):
    """Monotonicity, endpoint limits, and the window/budget factorization."""
    from .oracle import SweepReport

    comp = SweepReport("k-threshold/composition", f"{n} points in (0.01, 1.99)", 0, 0.0)
    mono = SweepReport("k-threshold/monotone", f"{n} points", 0, 0.0)
    prev = math.inf
    for i in range(n):
        r = 0.01 + (1.99 - 0.01) * (i + 0.5) / n
        k = K_threshold(r)
        comp.record(abs(k - z_budget(w_inverse(r))), r=r)
        if k >= prev:
            mono.record(k - prev, r=r)
        prev = k

    limits = SweepReport("k-threshold/limits", "r -> 0+, r -> 2-", 0, 0.0)
    target = (2.0 / 9.0) * math.log(2.0 + math.sqrt(3.0))
    limits.record(abs(K_threshold(2.0 - 1e-8) - target) - 1e-6, r=2.0 - 1e-8)
    if not K_threshold(1e-4) > K_threshold(1e-2) > K_threshold(1e-1):
        limits.record(1.0, r="divergence-order")
    return [comp.finish(tol), mono.finish(0.0), limits.finish(0.0)]
