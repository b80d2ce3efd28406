"""Event-driven front-tracking engine.

The approximate solution is a finite ordered list of fronts: moving jump
discontinuities plus one stationary composite front at x = 0 that carries
the phase interface together with all non-physical velocity bookkeeping.
Between events every front moves at constant speed; the engine advances
from collision to collision, resolving exactly two fronts at a time.
Physical pairs are resolved exactly; a physical front meeting the
composite is resolved exactly when its strength reaches the threshold rho
and by the strength-preserving simplified update below it.

Functional snapshots, per-generation bookkeeping and the monotonicity
monitors are evaluated after every event; a run aborts (in strict mode)
if the interaction functional ever increases beyond tolerance, since that
would falsify the parameter certificates or reveal a defect.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

from . import functionals
from .eos import (
    NULL_STRENGTH,
    DomainError,
    PhasePair,
    State,
    apply_composite,
    apply_wave,
    char_speed,
    shock_speed,
    strength_of_jump,
)
from .params import ParameterSet, choose_parameters, combined_variation
from .riemann import solve_lax, solve_pseudo_accurate, solve_pseudo_simplified

COMPOSITE_FAMILY = functionals.COMPOSITE_FAMILY


class EventBudgetError(RuntimeError):
    """The safety cap on the number of events was hit (likely livelock)."""


class MonitorViolation(RuntimeError):
    """A run-time invariant failed; carries the trailing event records."""

    def __init__(self, message: str, recent_events=()):
        super().__init__(message)
        self.recent_events = list(recent_events)


@dataclass(slots=True)
class Front:
    """One tracked discontinuity.

    family is 1 or 3 for acoustic waves and 2 for the composite interface
    front, whose strength is the accumulated non-physical velocity offset
    and whose position and speed are pinned to zero.
    """

    id: int
    family: int
    strength: float
    position: float
    speed: float
    left_state: State
    right_state: State
    order: int
    birth_t: float = 0.0
    birth_x: float = 0.0


@dataclass(frozen=True, slots=True)
class InteractionRecord:
    time: float
    x: float
    kind: str  # same_family | cross_family | composite_accurate | composite_simplified
    incoming: tuple  # ((id, family, strength, order), (id, family, strength, order))
    outgoing: tuple  # same shape, variable length
    classification: str  # "I{h}", "I{h}|T{h},{l}", "J{h}" or "cross"
    composite_increment: float = 0.0
    composite_order_after: int = 0


@dataclass(frozen=True, slots=True)
class TimelineRow:
    id: int
    family: int
    strength: float
    order: int
    birth_t: float
    birth_x: float
    death_t: float
    death_x: float
    speed: float


@dataclass(frozen=True, slots=True)
class Profile:
    """Piecewise-constant (v, u) profile at a fixed time."""

    t: float
    xs: tuple
    vs: tuple  # len(xs) + 1 segment values
    us: tuple

    def l1_distance(self, other: "Profile") -> float:
        """Integral of |dv| + |du| over the common line (both constant outside)."""
        cuts = sorted(set(self.xs) | set(other.xs))
        if not cuts:
            return 0.0
        total = 0.0
        for i in range(len(cuts) - 1):
            a, b = cuts[i], cuts[i + 1]
            mid = 0.5 * (a + b)
            va, ua = self._value(mid)
            vb, ub = other._value(mid)
            total += (abs(va - vb) + abs(ua - ub)) * (b - a)
        return total

    def _value(self, x: float) -> tuple[float, float]:
        import bisect

        i = bisect.bisect_right(self.xs, x)
        return self.vs[i], self.us[i]


# ---------------------------------------------------------------------------
# Initial data descriptions


@dataclass(frozen=True)
class StepData:
    """Piecewise-constant initial data: n breakpoints, n + 1 segment values."""

    xs: tuple
    vs: tuple
    us: tuple

    def __post_init__(self):
        if len(self.vs) != len(self.xs) + 1 or len(self.us) != len(self.xs) + 1:
            raise DomainError("need one more segment value than breakpoints")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        if any(v <= 0.0 for v in self.vs):
            raise DomainError("specific volume must stay positive")

    def with_interface(self) -> "StepData":
        """Ensure x = 0 is a breakpoint (the phase label jumps there)."""
        if 0.0 in self.xs:
            return self
        import bisect

        i = bisect.bisect_right(self.xs, 0.0)
        xs = self.xs[:i] + (0.0,) + self.xs[i:]
        vs = self.vs[: i + 1] + (self.vs[i],) + self.vs[i + 1:]
        us = self.us[: i + 1] + (self.us[i],) + self.us[i + 1:]
        return StepData(xs, vs, us)

    def segment_lam(self, i: int, phases: PhasePair) -> float:
        """Phase label of segment i (segments touching x <= 0 are left-phase)."""
        upper = self.xs[i] if i < len(self.xs) else math.inf
        return phases.lam_l if upper <= 0.0 else phases.lam_r

    def tv_log_p(self, phases: PhasePair) -> float:
        data = self.with_interface()
        logp = []
        for i in range(len(data.vs)):
            a = phases.a_of(data.segment_lam(i, phases))
            logp.append(math.log(a * a / data.vs[i]))
        return math.fsum(abs(b - a) for a, b in zip(logp, logp[1:]))

    def tv_u(self) -> float:
        return math.fsum(abs(b - a) for a, b in zip(self.us, self.us[1:]))

    def mirrored(self) -> "StepData":
        xs = tuple(-x for x in reversed(self.xs))
        vs = tuple(reversed(self.vs))
        us = tuple(-u for u in reversed(self.us))
        return StepData(xs, vs, us)


@dataclass(frozen=True)
class SampledData:
    """Initial data given by callables on a compact interval.

    v_fn and u_fn must be constant outside [x_lo, x_hi] and of bounded
    variation; they are reduced to a StepData by midpoint sampling on a
    grid refined until the L1 distance estimate drops below the target.
    """

    v_fn: object
    u_fn: object
    x_lo: float
    x_hi: float

    def sample(self, l1_target: float, n_start: int = 64, n_cap: int = 1 << 20) -> StepData:
        n = n_start
        while True:
            step = self._sample_n(n)
            if self._l1_estimate(step) <= l1_target or n >= n_cap:
                return step
            n *= 2

    def _sample_n(self, n: int) -> StepData:
        xs = [self.x_lo + (self.x_hi - self.x_lo) * i / n for i in range(n + 1)]
        if 0.0 not in xs and self.x_lo < 0.0 < self.x_hi:
            import bisect

            xs.insert(bisect.bisect_right(xs, 0.0), 0.0)
        vs = [float(self.v_fn(self.x_lo))]
        us = [float(self.u_fn(self.x_lo))]
        for a, b in zip(xs, xs[1:]):
            mid = 0.5 * (a + b)
            vs.append(float(self.v_fn(mid)))
            us.append(float(self.u_fn(mid)))
        vs.append(float(self.v_fn(self.x_hi)))
        us.append(float(self.u_fn(self.x_hi)))
        return StepData(tuple(xs), tuple(vs), tuple(us))

    def _l1_estimate(self, step: StepData, sub: int = 16) -> float:
        total = 0.0
        xs = (self.x_lo - 1.0,) + step.xs + (self.x_hi + 1.0,)
        for i in range(len(xs) - 1):
            a, b = xs[i], xs[i + 1]
            dq = (b - a) / sub
            for j in range(sub):
                q = a + (j + 0.5) * dq
                total += (abs(float(self.v_fn(q)) - step.vs[i])
                          + abs(float(self.u_fn(q)) - step.us[i])) * dq
        return total

    def mirrored(self) -> "SampledData":
        v_fn, u_fn = self.v_fn, self.u_fn
        return SampledData(lambda x: v_fn(-x), lambda x: -u_fn(-x), -self.x_hi, -self.x_lo)


@dataclass
class SimulationConfig:
    phases: PhasePair
    initial_data: object  # StepData | SampledData
    nu: int = 4
    t_max: float = 2.0
    params: ParameterSet | None = None  # chosen from the data when absent
    eta: float | None = None  # rarefaction quantum, default 0.5/nu
    rho: float | None = None  # simplified-solver threshold, default: recipe below
    speed_jitter: float = 1e-9
    event_budget: int = 10_000_000
    strict: bool = True
    adapt_rho: bool = True
    capture_times: tuple = ()
    dF_tol: float = 1e-10


@dataclass
class Trajectory:
    params: ParameterSet
    phases: PhasePair
    records: list
    fronts: list
    snapshots: list
    timeline: list
    profiles: dict
    check_failures: list
    violations: list
    tv_series: list
    event_count: int = 0
    t_end: float = 0.0
    max_composite_abs: float = 0.0
    max_strength: float = 0.0
    sup_tv: float = 0.0
    eta_used: float = 0.0
    rho_used: float = 0.0
    rho_attempts: int = 1
    ledger: object = None


def default_eta(nu: int) -> float:
    return 0.5 / nu


def default_rho(nu: int, params: ParameterSet, L0: float, n_fronts: int) -> float:
    """A-priori threshold so the simplified-solver error stays below 1/(2 nu).

    The generation tail falls below 1/(2 nu) after k orders; the number of
    fronts of lower order is estimated geometrically from the initial
    count, and rho is sized so their combined composite increments stay
    below the other half of the budget.  A post-run check with halving
    covers the slack in the front-count estimate.
    """
    d2 = abs(params.delta2)
    if d2 == 0.0 or L0 == 0.0:
        return 1e-3 / nu
    k = 1
    while params.mu ** (k - 1) * L0 * (1.0 + params.K * d2) > 0.5 / nu and k < 200:
        k += 1
    # The true front count of order < k is only observable post hoc; start
    # from a capped geometric estimate and let the halving loop in run()
    # enforce the composite bound on the realized trajectory.
    n_est = max(1, n_fronts) * min(2.0 ** k, 64.0)
    rho = (0.5 / nu) / (params.C_o * d2 * n_est)
    return min(rho, params.m)


# ---------------------------------------------------------------------------
# Elementary operations


def split_rarefaction(eps: float, eta: float, U_left: State, a: float, family: int,
                      order: int = 1, position: float = 0.0, t: float = 0.0,
                      ids=None) -> list[Front]:
    """Split a rarefaction into floor(eps/eta) + 1 equal fronts below eta.

    The chained states are computed at cumulative fractions of eps so the
    final state reproduces the unsplit wave curve exactly; every front
    moves at the characteristic speed of its right state.
    """
    if not eps > 0.0:
        raise DomainError(f"rarefaction strength must be positive, got {eps}")
    ids = ids if ids is not None else itertools.count()
    n = math.floor(eps / eta) + 1
    piece = eps / n
    fronts = []
    prev = U_left
    for j in range(1, n + 1):
        cur = apply_wave(U_left, family, eps * (j / n), a)
        sign = -1.0 if family == 1 else 1.0
        fronts.append(Front(next(ids), family, piece, position,
                            sign * char_speed(cur.v, a), prev, cur, order,
                            birth_t=t, birth_x=position))
        prev = cur
    return fronts


def _front_speed(front: Front, a: float) -> float:
    if front.strength > 0.0:
        sign = -1.0 if front.family == 1 else 1.0
        return sign * char_speed(front.right_state.v, a)
    return shock_speed(front.family, front.left_state.v, front.right_state.v, a)


def next_event(fronts: list[Front], t_now: float = 0.0):
    """Earliest collision among adjacent converging pairs.

    Returns (time, (left id, right id)) or None; ties resolve to the
    leftmost pair, which together with the zero-gap cascade makes
    simultaneous interactions effectively pairwise.
    """
    best = None
    for i in range(len(fronts) - 1):
        f, g = fronts[i], fronts[i + 1]
        if f.speed <= g.speed:
            continue
        dt = (g.position - f.position) / (f.speed - g.speed)
        t = t_now + max(dt, 0.0)
        if best is None or t < best[0]:
            best = (t, (f.id, g.id), i)
    if best is None:
        return None
    return best[0], best[1]


# ---------------------------------------------------------------------------
# Engine


class _Engine:
    def __init__(self, config: SimulationConfig, params: ParameterSet,
                 eta: float, rho: float):
        self.phases = config.phases
        self.config = config
        self.params = params
        self.eta = eta
        self.rho = rho
        self.ids = itertools.count()

    def a_of_state(self, U: State) -> float:
        return self.phases.a_of(U.lam)

    def physical_front(self, family: int, strength: float, left: State, right: State,
                       order: int, x: float, t: float) -> Front:
        a = self.a_of_state(right)
        f = Front(next(self.ids), family, strength, x, 0.0, left, right, order,
                  birth_t=t, birth_x=x)
        f.speed = _front_speed(f, a)
        return f

    def build_outgoing(self, U_l: State, U_r: State, eps1: float, eps3: float, *,
                       comp: Front | None, d20: float, order1: int, order3: int,
                       split1: bool, split3: bool, x: float, t: float) -> list[Front]:
        """Materialize a resolved fan as fronts, left to right.

        States are chained from U_l; the rightmost element is rebased onto
        the original U_r object so the profile stays exactly consistent,
        which parks the (residual-sized) closure error in the last wave's
        velocity relation.  Waves below NULL_STRENGTH are dropped.
        """
        a_l = self.phases.a_of(U_l.lam)
        a_r = self.phases.a_of(U_r.lam)
        out: list[Front] = []
        cur = U_l

        if abs(eps1) >= NULL_STRENGTH:
            if eps1 > 0.0 and split1:
                fan = split_rarefaction(eps1, self.eta, cur, a_l, 1, order1, x, t, self.ids)
                out.extend(fan)
                cur = fan[-1].right_state
            else:
                nxt = apply_wave(cur, 1, eps1, a_l)
                out.append(self.physical_front(1, eps1, cur, nxt, order1, x, t))
                cur = nxt

        if comp is not None:
            nxt = apply_composite(cur, self.phases, d20)
            comp.strength = d20
            comp.left_state = cur
            comp.right_state = nxt
            out.append(comp)
            cur = nxt

        if abs(eps3) >= NULL_STRENGTH:
            if eps3 > 0.0 and split3:
                fan = split_rarefaction(eps3, self.eta, cur, a_r, 3, order3, x, t, self.ids)
                out.extend(fan)
            else:
                nxt = apply_wave(cur, 3, eps3, a_r)
                out.append(self.physical_front(3, eps3, cur, nxt, order3, x, t))

        if out:
            last = out[-1]
            last.right_state = U_r
            if last.family != COMPOSITE_FAMILY:
                last.speed = _front_speed(last, a_r)
        return out

    def resolve(self, left: Front, right: Front, t: float,
                x: float | None = None) -> tuple[list[Front], InteractionRecord]:
        fams = (left.family, right.family)
        incoming = (_sig(left), _sig(right))
        if x is None:
            x = 0.0 if COMPOSITE_FAMILY in fams else left.position

        if fams in ((1, 1), (3, 3)):
            family = fams[0]
            h_ord = max(left.order, right.order)
            l_ord = min(left.order, right.order)
            fan = solve_lax(left.left_state, right.right_state,
                            self.a_of_state(left.left_state),
                            self.a_of_state(right.right_state))
            if family == 3:
                order1, order3, split1, split3 = h_ord + 1, l_ord, True, False
            else:
                order1, order3, split1, split3 = l_ord, h_ord + 1, False, True
            out = self.build_outgoing(left.left_state, right.right_state,
                                      fan.eps1, fan.eps3, comp=None, d20=0.0,
                                      order1=order1, order3=order3,
                                      split1=split1, split3=split3, x=x, t=t)
            cls = f"I{h_ord}" + (f"|T{h_ord},{l_ord}" if l_ord < h_ord else "")
            rec = InteractionRecord(t, x, "same_family", incoming,
                                    tuple(_sig(f) for f in out), cls)
            return out, rec

        if fams == (3, 1):
            fan = solve_lax(left.left_state, right.right_state,
                            self.a_of_state(left.left_state),
                            self.a_of_state(right.right_state))
            out = self.build_outgoing(left.left_state, right.right_state,
                                      fan.eps1, fan.eps3, comp=None, d20=0.0,
                                      order1=right.order, order3=left.order,
                                      split1=False, split3=False, x=x, t=t)
            rec = InteractionRecord(t, x, "cross_family", incoming,
                                    tuple(_sig(f) for f in out), "cross")
            return out, rec

        if fams == (2, 1) or fams == (3, 2):
            comp = left if fams[0] == 2 else right
            phys = right if fams[0] == 2 else left
            h_ord = phys.order
            d20 = comp.strength
            U_l = left.left_state
            U_r = right.right_state
            if abs(phys.strength) >= self.rho:
                fan = solve_pseudo_accurate(U_l, U_r, d20, self.phases)
                if phys.family == 1:
                    order1, order3, split1, split3 = h_ord, h_ord + 1, False, True
                else:
                    order1, order3, split1, split3 = h_ord + 1, h_ord, True, False
                out = self.build_outgoing(U_l, U_r, fan.eps1, fan.eps3, comp=comp,
                                          d20=d20, order1=order1, order3=order3,
                                          split1=split1, split3=split3, x=0.0, t=t)
                rec = InteractionRecord(t, 0.0, "composite_accurate", incoming,
                                        tuple(_sig(f) for f in out), f"J{h_ord}",
                                        composite_increment=0.0,
                                        composite_order_after=comp.order)
                return out, rec

            new_d20 = solve_pseudo_simplified(d20, phys.family, phys.strength, self.phases)
            comp.order = h_ord + 1
            if phys.family == 1:
                # Transmitted wave jumps to the left phase, then the composite.
                mid = apply_wave(U_l, 1, phys.strength, self.phases.a_l)
                moved = self.physical_front(1, phys.strength, U_l, mid, h_ord, 0.0, t)
                comp.strength = new_d20
                comp.left_state = mid
                comp.right_state = U_r
                out = [moved, comp]
            else:
                mid = apply_composite(U_l, self.phases, new_d20)
                comp.strength = new_d20
                comp.left_state = U_l
                comp.right_state = mid
                moved = self.physical_front(3, phys.strength, mid, U_r, h_ord, 0.0, t)
                out = [comp, moved]
            rec = InteractionRecord(t, 0.0, "composite_simplified", incoming,
                                    tuple(_sig(f) for f in out), f"J{h_ord}",
                                    composite_increment=new_d20 - d20,
                                    composite_order_after=comp.order)
            return out, rec

        raise DomainError(f"non-colliding pair of families {fams}")


def _sig(front: Front) -> tuple:
    return (front.id, front.family, front.strength, front.order)


def resolve_event(left: Front, right: Front, config: SimulationConfig,
                  t: float = 0.0, x: float | None = None):
    """Resolve one adjacent colliding pair; returns (outgoing fronts, record)."""
    eng = _Engine(config, config.params,
                  config.eta if config.eta is not None else default_eta(config.nu),
                  config.rho if config.rho is not None else 1e-3)
    eng.ids = itertools.count(max(left.id, right.id) + 1)
    return eng.resolve(left, right, t, x)


# ---------------------------------------------------------------------------
# Initial data


def approximate_initial_data(initial_data, phases: PhasePair, nu: int,
                             eta: float | None = None, engine: _Engine | None = None,
                             v_floor: float = 0.0) -> list[Front]:
    """Piecewise-constant approximation of the data, resolved into fronts.

    Sampled data are reduced to exact point samples on a grid refined
    until the L1 error estimate is below 1/nu (so the variation bounds
    hold automatically); every jump is then resolved exactly, with
    rarefactions split below eta, and the composite front is created at
    x = 0 with order 1 and zero non-physical strength.
    """
    if engine is None:
        cfg = SimulationConfig(phases, initial_data, nu=nu)
        params = choose_parameters(phases, max(
            _combined_tv(initial_data, phases) * 1.001, 1e-6))
        engine = _Engine(cfg, params, eta or default_eta(nu), 1e-3)
    step = initial_data.sample(1.0 / nu) if isinstance(initial_data, SampledData) \
        else initial_data
    step = step.with_interface()
    if any(v < v_floor for v in step.vs):
        raise DomainError(f"initial volume drops below the floor {v_floor}")

    fronts: list[Front] = []
    left_lam = step.segment_lam(0, phases)
    prev = State(step.vs[0], step.us[0], left_lam)
    for i, x in enumerate(step.xs):
        lam = step.segment_lam(i + 1, phases)
        nxt = State(step.vs[i + 1], step.us[i + 1], lam)
        if x == 0.0:
            comp = Front(next(engine.ids), COMPOSITE_FAMILY, 0.0, 0.0, 0.0,
                         prev, nxt, 1)
            fan = solve_pseudo_accurate(prev, nxt, 0.0, phases)
            fronts.extend(engine.build_outgoing(prev, nxt, fan.eps1, fan.eps3,
                                                comp=comp, d20=0.0, order1=1,
                                                order3=1, split1=True, split3=True,
                                                x=0.0, t=0.0))
        elif nxt != prev:
            a = phases.a_of(lam)
            fan = solve_lax(prev, nxt, a, a)
            fronts.extend(engine.build_outgoing(prev, nxt, fan.eps1, fan.eps3,
                                                comp=None, d20=0.0, order1=1,
                                                order3=1, split1=True, split3=True,
                                                x=x, t=0.0))
        prev = nxt
    return fronts


def _combined_tv(initial_data, phases: PhasePair) -> float:
    step = initial_data.sample(1e-3) if isinstance(initial_data, SampledData) else initial_data
    return combined_variation(step.tv_log_p(phases), step.tv_u(), phases)


# ---------------------------------------------------------------------------
# The run loop


def run(config: SimulationConfig) -> Trajectory:
    """Advance event by event until t_max, monitoring the functionals.

    Negative-interface problems are run through the spatial mirror (which
    swaps the acoustic families and the phase sides) and mirrored back,
    so the functional machinery always sees a nonnegative interface
    strength.  When adapt_rho is set, the simplified-solver threshold is
    halved and the run repeated until the composite strength stays below
    1/nu.
    """
    if config.phases.delta2 < 0.0:
        mirrored = replace(config,
                           phases=config.phases.mirrored(),
                           initial_data=config.initial_data.mirrored(),
                           params=_mirror_params(config.params))
        return _mirror_trajectory(run(mirrored))

    params = config.params or choose_parameters(
        config.phases, max(_combined_tv(config.initial_data, config.phases) * 1.000001, 1e-6))
    eta = config.eta if config.eta is not None else default_eta(config.nu)
    if not eta > 0.0:
        raise DomainError("eta must be positive")

    seed_engine = _Engine(config, params, eta, 0.0)
    first_fronts = approximate_initial_data(config.initial_data, config.phases,
                                            config.nu, eta, seed_engine)
    L0 = functionals.snapshot(first_fronts, params).L
    rho = config.rho if config.rho is not None else default_rho(
        config.nu, params, L0, len(first_fronts))
    if not rho > 0.0:
        raise DomainError("rho must be positive")

    attempts = 0
    while True:
        attempts += 1
        traj = _run_once(config, params, eta, rho)
        traj.rho_attempts = attempts
        bound = 1.0 / config.nu
        if (not config.adapt_rho or config.rho is not None
                or params.delta2 == 0.0
                or traj.max_composite_abs <= bound or attempts >= 60):
            return traj
        rho *= 0.5


def _run_once(config: SimulationConfig, params: ParameterSet, eta: float,
              rho: float) -> Trajectory:
    engine = _Engine(config, params, eta, rho)
    fronts = approximate_initial_data(config.initial_data, config.phases,
                                      config.nu, eta, engine)
    t = 0.0
    ledger = functionals.GenerationLedger(params)
    snap = ledger.begin(fronts, 0.0)

    traj = Trajectory(params=params, phases=config.phases, records=[], fronts=fronts,
                      snapshots=[snap], timeline=[], profiles={}, check_failures=[],
                      violations=[], tv_series=[(0.0, functionals.tv_vu(fronts))],
                      eta_used=eta, rho_used=rho, ledger=ledger)
    traj.max_strength = max((abs(f.strength) for f in fronts
                             if f.family != COMPOSITE_FAMILY), default=0.0)
    traj.sup_tv = traj.tv_series[0][1]
    births: dict[int, Front] = {f.id: f for f in fronts}
    pending_captures = sorted(tau for tau in config.capture_times if tau <= config.t_max)

    def capture_until(limit: float):
        nonlocal pending_captures
        while pending_captures and pending_captures[0] <= limit:
            tau = pending_captures.pop(0)
            traj.profiles[tau] = _profile_at(fronts, t, tau)

    while True:
        ev = next_event(fronts, t)
        if ev is None or ev[0] > config.t_max:
            capture_until(config.t_max)
            _advance(fronts, config.t_max - t)
            t = config.t_max
            break
        if traj.event_count >= config.event_budget:
            raise EventBudgetError(
                f"event budget {config.event_budget} exhausted at t={t}")

        t_event, (id_l, id_r) = ev
        capture_until(min(t_event, config.t_max))
        i = next(k for k in range(len(fronts) - 1)
                 if fronts[k].id == id_l and fronts[k + 1].id == id_r)
        left, right = fronts[i], fronts[i + 1]
        dt = t_event - t
        x_star = 0.0 if COMPOSITE_FAMILY in (left.family, right.family) \
            else left.position + left.speed * dt
        _advance(fronts, dt)
        t = t_event

        out, rec = engine.resolve(left, right, t, x_star)
        for f in (left, right):
            if f.family != COMPOSITE_FAMILY:
                traj.timeline.append(_close_row(f, t, x_star))
                births.pop(f.id, None)
        for f in out:
            f.position = f.position if f.family == COMPOSITE_FAMILY else x_star
            if f.id not in births:
                births[f.id] = f
        fronts[i:i + 2] = out
        _break_ties(fronts, {f.id for f in out}, t, config.speed_jitter)

        traj.records.append(rec)
        traj.event_count += 1
        snap = ledger.observe(fronts, rec, t)
        traj.snapshots.append(snap)

        dF = ledger.last_dF
        if dF > config.dF_tol:
            msg = f"functional increased by {dF:.3e} at t={t} ({rec.kind})"
            if config.strict:
                raise MonitorViolation(msg, traj.records[-10:])
            traj.violations.append(msg)
        for res in functionals.check_generation_laws(ledger, rec, params):
            if not res.passed:
                traj.check_failures.append((t, res))
        tail = functionals.check_tail_decay(ledger, t)
        if not tail.passed:
            traj.check_failures.append((t, tail))

        traj.max_composite_abs = max(traj.max_composite_abs, snap.composite_abs)
        traj.max_strength = max(traj.max_strength,
                                max((abs(f.strength) for f in fronts
                                     if f.family != COMPOSITE_FAMILY), default=0.0))
        tv = functionals.tv_vu(fronts)
        traj.tv_series.append((t, tv))
        traj.sup_tv = max(traj.sup_tv, tv)

    for f in fronts:
        traj.timeline.append(_close_row(f, t, f.position))
    traj.fronts = fronts
    traj.t_end = t
    return traj


def _advance(fronts: list[Front], dt: float):
    if dt <= 0.0:
        return
    for f in fronts:
        f.position += f.speed * dt


def _profile_at(fronts: list[Front], t_now: float, tau: float) -> Profile:
    xs = tuple(f.position + f.speed * (tau - t_now) for f in fronts)
    if not fronts:
        raise DomainError("cannot capture a profile with no fronts")
    vs = (fronts[0].left_state.v,) + tuple(f.right_state.v for f in fronts)
    us = (fronts[0].left_state.u,) + tuple(f.right_state.u for f in fronts)
    return Profile(tau, xs, vs, us)


def _close_row(front: Front, t: float, x: float) -> TimelineRow:
    return TimelineRow(front.id, front.family, front.strength, front.order,
                       front.birth_t, front.birth_x, t, x, front.speed)


def _break_ties(fronts: list[Front], new_ids: set, t: float, jitter: float):
    """Nudge a freshly created front whose next collision ties another pair's.

    The spatial step only guarantees pairwise interactions if exact ties
    are broken; slowing the new front by a relative epsilon pushes its
    event strictly later while preserving determinism.
    """
    if jitter <= 0.0 or len(fronts) < 3:
        return
    times = []
    for i in range(len(fronts) - 1):
        f, g = fronts[i], fronts[i + 1]
        if f.speed <= g.speed:
            continue
        dt = max((g.position - f.position) / (f.speed - g.speed), 0.0)
        times.append((t + dt, i))
    if len(times) < 2:
        return
    times.sort()
    t0, i0 = times[0]
    for t1, i1 in times[1:]:
        if t1 - t0 > 1e-12 or i1 == i0:
            break
        for f in (fronts[i1], fronts[i1 + 1]):
            if f.id in new_ids and f.family != COMPOSITE_FAMILY and f.position != 0.0:
                f.speed *= (1.0 - jitter)
                return


def _mirror_params(params: ParameterSet | None) -> ParameterSet | None:
    if params is None:
        return None
    return replace(params, delta2=-params.delta2)


def _mirror_state(U: State) -> State:
    return State(U.v, -U.u, U.lam)


def _mirror_front(front: Front) -> Front:
    family = {1: 3, 3: 1, COMPOSITE_FAMILY: COMPOSITE_FAMILY}[front.family]
    strength = -front.strength if front.family == COMPOSITE_FAMILY else front.strength
    return Front(front.id, family, strength, -front.position, -front.speed,
                 _mirror_state(front.right_state), _mirror_state(front.left_state),
                 front.order, front.birth_t, -front.birth_x)


def _mirror_sig(sig: tuple) -> tuple:
    fid, family, strength, order = sig
    if family == COMPOSITE_FAMILY:
        return (fid, family, -strength, order)
    return (fid, {1: 3, 3: 1}[family], strength, order)


def _mirror_trajectory(traj: Trajectory) -> Trajectory:
    traj.phases = traj.phases.mirrored()
    traj.params = replace(traj.params, delta2=-traj.params.delta2)
    traj.fronts = [_mirror_front(f) for f in reversed(traj.fronts)]
    traj.records = [replace(r, x=-r.x,
                            incoming=tuple(_mirror_sig(s) for s in reversed(r.incoming)),
                            outgoing=tuple(_mirror_sig(s) for s in reversed(r.outgoing)),
                            composite_increment=-r.composite_increment)
                    for r in traj.records]
    traj.timeline = [replace(row,
                             family={1: 3, 3: 1, COMPOSITE_FAMILY: COMPOSITE_FAMILY}[row.family],
                             strength=(-row.strength if row.family == COMPOSITE_FAMILY
                                       else row.strength),
                             birth_x=-row.birth_x, death_x=-row.death_x,
                             speed=-row.speed)
                    for row in traj.timeline]
    traj.profiles = {tau: Profile(p.t, tuple(-x for x in reversed(p.xs)),
                                  tuple(reversed(p.vs)),
                                  tuple(-u for u in reversed(p.us)))
                     for tau, p in traj.profiles.items()}
    return traj
