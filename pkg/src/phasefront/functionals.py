"""Weighted interaction functionals and the per-generation-order ledger.

The total functional F = L + K Q combines the weighted wave strengths L
(rarefactions weight 1, shocks weight xi, composite strength weight K_np)
with the interaction potential Q between the interface and the waves still
approaching it.  F never increases across an event for feasible
parameters; splitting it by generation order shows the reflected cascade
decays geometrically, which is what bounds the composite strength.

Sums use math.fsum so that permutation-invariant front lists produce
bit-identical functional values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

COMPOSITE_FAMILY = 2


@dataclass(frozen=True, slots=True)
class OrderSlice:
    """Functional restricted to waves of one generation order."""

    L: float = 0.0
    V: float = 0.0
    Q: float = 0.0
    F: float = 0.0


@dataclass(frozen=True, slots=True)
class FunctionalSnapshot:
    """Functional values between two events, plus their per-order split."""

    t: float
    L: float
    V: float
    Q: float
    F: float
    Lbar: float
    composite_abs: float
    orders: dict = field(default_factory=dict)

    def tail(self, k: int) -> float:
        """Sum of per-order functionals over orders >= k."""
        return math.fsum(s.F for order, s in self.orders.items() if order >= k)

    def max_order(self) -> int:
        return max(self.orders, default=0)


def is_approaching(fronts, index: int) -> bool:
    """Whether the physical front at this list index still heads for the interface.

    1-waves to the right of the composite front and 3-waves to its left
    approach it; list order is used so that fronts parked exactly at x = 0
    mid-cascade keep their logical side.  Without a composite front the
    position sign decides.
    """
    f = fronts[index]
    ci = next((i for i, g in enumerate(fronts) if g.family == COMPOSITE_FAMILY), None)
    if ci is None:
        return (f.family == 1 and f.position > 0.0) or (f.family == 3 and f.position < 0.0)
    return (f.family == 1 and index > ci) or (f.family == 3 and index < ci)


def snapshot(fronts, params, t: float = 0.0, L0: dict | None = None) -> FunctionalSnapshot:
    """Functional values of an ordered front list.

    L0 maps generation order to the accumulated non-physical production
    booked there; it contributes K_np * L0[k] to the order-k slice (the
    total L instead carries the net composite strength).
    """
    L0 = L0 or {}
    d2 = abs(params.delta2)
    ci = next((i for i, g in enumerate(fronts) if g.family == COMPOSITE_FAMILY), None)

    L_terms, V_terms, Lbar_terms = [], [], []
    by_order: dict[int, dict[str, list[float]]] = {}
    composite_abs = 0.0
    for i, f in enumerate(fronts):
        if f.family == COMPOSITE_FAMILY:
            composite_abs = abs(f.strength)
            continue
        weight = 1.0 if f.strength > 0.0 else params.xi
        term = weight * abs(f.strength)
        L_terms.append(term)
        Lbar_terms.append(abs(f.strength))
        if ci is None:
            approaching = (f.family == 1 and f.position > 0.0) or (
                f.family == 3 and f.position < 0.0)
        else:
            approaching = (f.family == 1 and i > ci) or (f.family == 3 and i < ci)
        slot = by_order.setdefault(f.order, {"L": [], "V": []})
        slot["L"].append(term)
        if approaching:
            V_terms.append(term)
            slot["V"].append(term)

    L = math.fsum(L_terms) + params.K_np * composite_abs
    V = math.fsum(V_terms)
    Q = d2 * V
    F = L + params.K * Q

    orders: dict[int, OrderSlice] = {}
    for k in sorted(set(by_order) | set(L0)):
        slot = by_order.get(k, {"L": [], "V": []})
        Lk = math.fsum(slot["L"]) + params.K_np * L0.get(k, 0.0)
        Vk = math.fsum(slot["V"])
        Qk = d2 * Vk
        orders[k] = OrderSlice(Lk, Vk, Qk, Lk + params.K * Qk)

    return FunctionalSnapshot(t, L, V, Q, F, math.fsum(Lbar_terms), composite_abs, orders)


def delta_F(before: FunctionalSnapshot, after: FunctionalSnapshot) -> tuple[float, dict]:
    """Change of F across one event, total and per generation order."""
    ks = set(before.orders) | set(after.orders)
    zero = OrderSlice()
    per_order = {k: after.orders.get(k, zero).F - before.orders.get(k, zero).F for k in ks}
    return after.F - before.F, per_order


def tv_vu(fronts) -> float:
    """Total variation of (v, u) carried by the jumps of the front list."""
    return math.fsum(abs(f.right_state.v - f.left_state.v) for f in fronts) + math.fsum(
        abs(f.right_state.u - f.left_state.u) for f in fronts)


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    passed: bool
    violation: float
    context: dict = field(default_factory=dict)


class GenerationLedger:
    """Per-order functional bookkeeping along one run.

    Tracks the cumulative non-physical production per order, the
    positive-part accumulators of the per-order increments, and the most
    recent snapshot, against which each new event is differenced.
    """

    def __init__(self, params):
        self.params = params
        self.L0: dict[int, float] = {}
        self.alpha: dict[int, float] = {}
        self.F1_0: float | None = None
        self.last: FunctionalSnapshot | None = None
        self.last_event = None
        self.last_deltas: dict = {}
        self.last_dF: float = 0.0

    def begin(self, fronts, t: float) -> FunctionalSnapshot:
        """Capture the state just after the initial data were resolved."""
        snap = snapshot(fronts, self.params, t, self.L0)
        self.F1_0 = snap.orders.get(1, OrderSlice()).F
        self.last = snap
        return snap

    def interacting_order(self, event) -> int | None:
        """The order h with event in T_h, or None for pure crossings."""
        if event.kind == "cross_family":
            return None
        return max(order for (_, fam, _, order) in event.incoming if fam != COMPOSITE_FAMILY)

    def observe(self, fronts_after, event, t: float) -> FunctionalSnapshot:
        """Difference the new front list against the previous snapshot."""
        if event.kind == "composite_simplified":
            k = event.composite_order_after
            self.L0[k] = self.L0.get(k, 0.0) + abs(event.composite_increment)
        after = snapshot(fronts_after, self.params, t, self.L0)
        self.last_dF, self.last_deltas = delta_F(self.last, after)
        self.last_event = event
        h = self.interacting_order(event)
        if h is not None:
            self.alpha[h + 1] = self.alpha.get(h + 1, 0.0) + max(
                self.last_deltas.get(h + 1, 0.0), 0.0)
        self.last = after
        return after


def check_generation_laws(ledger: GenerationLedger, event, params,
                          tol: float = 1e-10) -> list[CheckResult]:
    """Per-event order-resolved laws for the most recently observed event.

    For an event interacting at order h: orders >= h+2 are untouched; the
    order-h slice decreases and order h+1 increases whenever a reflected
    wave was produced; the increase is bounded by mu times the decrease
    plus the lower-order corrections; and the total decrease dominates
    (1 - mu) times the order-h loss.
    """
    assert ledger.last_event is event, "observe() must run before the checks"
    d = ledger.last_deltas
    results = []
    h = ledger.interacting_order(event)
    if h is None:
        worst = max((abs(v) for v in d.values()), default=0.0)
        results.append(CheckResult("crossing-leaves-orders", worst <= tol, worst))
        return results

    upper = max((abs(v) for k, v in d.items() if k >= h + 2), default=0.0)
    results.append(CheckResult("untouched-above-h+1", upper <= tol, upper, {"h": h}))

    reflected = any(order == h + 1 for (_, fam, _, order) in event.outgoing
                    if fam != COMPOSITE_FAMILY)
    if event.kind == "composite_simplified" and abs(event.composite_increment) > 0.0:
        reflected = True
    if reflected:
        dh_ = d.get(h, 0.0)
        dh1 = d.get(h + 1, 0.0)
        results.append(CheckResult("order-h-decreases", dh_ <= tol, dh_, {"h": h}))
        results.append(CheckResult("order-h+1-increases", dh1 >= -tol, -dh1, {"h": h}))

    gain = max(d.get(h + 1, 0.0), 0.0)
    loss = max(-d.get(h, 0.0), 0.0)
    lower = math.fsum(v for k, v in d.items() if k < h)
    bound = params.mu * (loss - lower)
    results.append(CheckResult("cascade-bound", gain <= bound + tol, gain - bound, {"h": h}))

    strengthened = ledger.last_dF + (1.0 - params.mu) * loss
    results.append(CheckResult("strengthened-decrease", strengthened <= tol,
                               strengthened, {"h": h}))
    return results


def check_tail_decay(ledger: GenerationLedger, t: float, tol: float = 1e-10) -> CheckResult:
    """Geometric decay of the order tails against the initial order-1 mass."""
    snap = ledger.last
    worst = -math.inf
    worst_k = None
    for k in range(2, snap.max_order() + 1):
        excess = snap.tail(k) - ledger.params.mu ** (k - 1) * ledger.F1_0
        if excess > worst:
            worst = excess
            worst_k = k
    if worst_k is None:
        return CheckResult("tail-decay", True, 0.0, {"t": t})
    return CheckResult("tail-decay", worst <= tol, worst, {"t": t, "k": worst_k})
