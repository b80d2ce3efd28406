"""Thermodynamic core for the isothermal two-phase p-system.

State variables are (v, u, lam): specific volume, velocity and vapor mass
fraction.  The pressure law is p = a(lam)^2 / v with a piecewise-constant
sound coefficient taking the two values a_l, a_r of the fixed phase pair.
This module holds the pressure law, characteristic and shock speeds, the
shock/rarefaction wave-curve parameterizations and the two scalar helpers
used everywhere else: the velocity-jump function h and the reflection
damping coefficient c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Jumps smaller than this are treated as null waves and dropped.
NULL_STRENGTH = 1e-14


class DomainError(ValueError):
    """Raised when an argument leaves the admissible phase space."""


class PhaseSideError(ValueError):
    """Raised when a state sits on the wrong side of the phase interface."""


@dataclass(frozen=True, slots=True)
class State:
    """A point (v, u, lam) of the phase space: v > 0, 0 <= lam <= 1."""

    v: float
    u: float
    lam: float = 0.0

    def __post_init__(self):
        if not self.v > 0.0:
            raise DomainError(f"specific volume must be positive, got v={self.v}")
        if not 0.0 <= self.lam <= 1.0:
            raise DomainError(f"vapor fraction must lie in [0, 1], got lam={self.lam}")


@dataclass(frozen=True, slots=True)
class PhasePair:
    """Fixed data of the one-interface problem.

    delta2 = 2 (a_r - a_l) / (a_r + a_l) measures the strength of the
    stationary contact separating the two phases; it is stored rather than
    recomputed so that every consumer sees the identical float.
    """

    lam_l: float
    lam_r: float
    a_l: float
    a_r: float
    delta2: float

    def __post_init__(self):
        if not (self.a_l > 0.0 and self.a_r > 0.0):
            raise DomainError("sound coefficients must be positive")
        if not (0.0 <= self.lam_l <= 1.0 and 0.0 <= self.lam_r <= 1.0):
            raise DomainError("vapor fractions must lie in [0, 1]")
        if self.lam_l == self.lam_r:
            raise DomainError("the two phases must carry distinct lam values")
        if self.delta2 != 2.0 * (self.a_r - self.a_l) / (self.a_r + self.a_l):
            raise DomainError("delta2 inconsistent with a_l, a_r")

    @classmethod
    def make(cls, a_l: float, a_r: float, lam_l: float = 0.0, lam_r: float = 1.0) -> "PhasePair":
        return cls(lam_l, lam_r, a_l, a_r, 2.0 * (a_r - a_l) / (a_r + a_l))

    def a_of(self, lam: float) -> float:
        """Sound coefficient for a state's phase label."""
        if lam == self.lam_l:
            return self.a_l
        if lam == self.lam_r:
            return self.a_r
        raise PhaseSideError(f"lam={lam} matches neither phase ({self.lam_l}, {self.lam_r})")

    def mirrored(self) -> "PhasePair":
        """The pair seen through x -> -x (phases and families swapped)."""
        return PhasePair.make(self.a_r, self.a_l, self.lam_r, self.lam_l)


def pressure(v: float, a: float) -> float:
    """Pressure a^2 / v of the isothermal law."""
    if not v > 0.0:
        raise DomainError(f"v must be positive, got {v}")
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a}")
    return a * a / v


def char_speed(v: float, a: float) -> float:
    """Magnitude a/v of the acoustic characteristic speeds.

    The 1-eigenvalue is -a/v, the 3-eigenvalue +a/v; the phase interface
    is linearly degenerate with speed 0.
    """
    if not v > 0.0:
        raise DomainError(f"v must be positive, got {v}")
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a}")
    return a / v


def shock_speed(family: int, v_left: float, v_right: float, a: float) -> float:
    """Propagation speed -a/sqrt(v_l v_r) (family 1) or +a/sqrt(v_l v_r) (family 3).

    The caller guarantees the jump is an entropic shock of the stated
    family; the returned speed then satisfies both Rankine-Hugoniot
    relations for the side states produced by apply_wave.
    """
    if not (v_left > 0.0 and v_right > 0.0):
        raise DomainError("shock side volumes must be positive")
    if not a > 0.0:
        raise DomainError(f"a must be positive, got {a}")
    s = a / math.sqrt(v_left * v_right)
    return -s if family == 1 else s


def h(eps: float) -> float:
    """Velocity-jump scaling along the wave curves.

    Identity on the rarefaction branch (eps >= 0), sinh on the shock
    branch (eps < 0); continuous and strictly increasing.
    """
    return eps if eps >= 0.0 else math.sinh(eps)


def dh(eps: float) -> float:
    """Derivative of h: 1 on [0, inf), cosh on (-inf, 0)."""
    return 1.0 if eps >= 0.0 else math.cosh(eps)


def c_damp(z: float) -> float:
    """Reflection damping coefficient (cosh z - 1)/(cosh z + 1) = tanh^2(z/2).

    Computed in the tanh form, which is cancellation-free near z = 0.
    """
    if z < 0.0:
        raise DomainError(f"shock magnitude must be nonnegative, got {z}")
    t = math.tanh(0.5 * z)
    return t * t


def strength_of_jump(family: int, v_from: float, v_to: float) -> float:
    """Signed strength of an acoustic jump from its side volumes.

    Positive for rarefactions, negative for shocks: (1/2) log(v_to/v_from)
    for family 1 and (1/2) log(v_from/v_to) for family 3.
    """
    if not (v_from > 0.0 and v_to > 0.0):
        raise DomainError("volumes must be positive")
    if family == 1:
        return 0.5 * math.log(v_to / v_from)
    if family == 3:
        return 0.5 * math.log(v_from / v_to)
    raise DomainError(f"family must be 1 or 3, got {family}")


def apply_wave(U: State, family: int, eps: float, a: float) -> State:
    """State on the i-wave curve through U at parameter eps.

    v scales by exp(+-2 eps) (sign by family), u shifts by 2 a h(eps),
    lam is unchanged.  strength_of_jump inverts the volume map exactly.
    """
    if family == 1:
        v = U.v * math.exp(2.0 * eps)
    elif family == 3:
        v = U.v * math.exp(-2.0 * eps)
    else:
        raise DomainError(f"family must be 1 or 3, got {family}")
    return State(v, U.u + 2.0 * a * h(eps), U.lam)


def apply_composite(U: State, phases: PhasePair, d20: float) -> State:
    """State across the composite interface wave of strength d20.

    The volume is rescaled by (a_r/a_l)^2, which keeps the pressure
    continuous; the velocity shifts by the accumulated non-physical
    strength d20; lam flips to the right phase.
    """
    if U.lam != phases.lam_l:
        raise PhaseSideError("composite wave must be applied to a left-phase state")
    ratio = phases.a_r / phases.a_l
    return State(U.v * ratio * ratio, U.u + d20, phases.lam_r)
