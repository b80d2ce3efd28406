"""Front tracking for 1D inviscid two-phase flow with one phase interface.

The package is organized as a small numerical library:

- eos: pressure law, wave curves, speeds and the scalar helpers h, c.
- riemann: the exact solver and the two interface (pseudo) solvers.
- tracker: the event-driven front-tracking engine and initial data.
- functionals: weighted interaction functionals and generation ledger.
- params: admissibility threshold, parameter selection, BV stability.
- oracle: independent root-finding oracles and verification sweeps.
- presets: ready-made initial data.
- cli: the phasefront command (check | run | converge | verify).
"""

from .eos import PhasePair, State
from .params import ParameterSet, K_threshold, check_initial_data, choose_parameters
from .riemann import RiemannFan, solve_lax, solve_pseudo_accurate, solve_pseudo_simplified
from .tracker import (
    Front,
    SimulationConfig,
    StepData,
    SampledData,
    Trajectory,
    approximate_initial_data,
    next_event,
    resolve_event,
    run,
    split_rarefaction,
)

__version__ = "0.1.0"

__all__ = [
    "PhasePair",
    "State",
    "ParameterSet",
    "K_threshold",
    "check_initial_data",
    "choose_parameters",
    "RiemannFan",
    "solve_lax",
    "solve_pseudo_accurate",
    "solve_pseudo_simplified",
    "Front",
    "SimulationConfig",
    "StepData",
    "SampledData",
    "Trajectory",
    "approximate_initial_data",
    "next_event",
    "resolve_event",
    "run",
    "split_rarefaction",
    "__version__",
]
