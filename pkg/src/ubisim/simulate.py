"""Population initialization, the period loop, and run summarization.

Reproducibility contract: a run is a pure function of (params, seed).  The
per-agent disutility scales are derived from a counter-based generator
(Philox) keyed by the seed, with the raw 64-bit words mapped to [0, 1) by an
explicit bit transform — so the alpha of agent i depends only on (seed, i),
not on how many agents are drawn or in what order, and not on any library's
distribution-sampling internals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .economy import PeriodLedger, PeriodMetrics, step_period
from .model import ModelParams, Population

__all__ = [
    "PeriodMetrics",
    "SimulationRun",
    "SweepCellSummary",
    "init_population",
    "run_simulation",
    "summarize",
]


@dataclass(frozen=True, slots=True)
class SweepCellSummary:
    """The four per-cell metrics, with across-replicate standard deviations.

    For a single run the std fields are zero.  Extremes (min_rho_E,
    max_share_0) are taken over the full horizon; averages are taken over the
    post-burn-in window.  Standard deviations are population-style (ddof=0,
    zero for one replicate).
    """

    min_rho_E: float
    max_share_0: float
    avg_share_0: float
    avg_unmet: float
    min_rho_E_std: float = 0.0
    max_share_0_std: float = 0.0
    avg_share_0_std: float = 0.0
    avg_unmet_std: float = 0.0

    def __post_init__(self) -> None:
        for name in ("min_rho_E", "max_share_0", "avg_share_0", "avg_unmet"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1] (got {v!r})")
        for name in ("min_rho_E_std", "max_share_0_std", "avg_share_0_std", "avg_unmet_std"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class SimulationRun:
    """One complete run: parameter snapshot, seed, per-period metrics, final state."""

    params: ModelParams
    seed: int
    metrics: list[PeriodMetrics]
    ledgers: list[PeriodLedger]
    final_population: Population

    def series(self, name: str) -> np.ndarray:
        """Time series of one PeriodMetrics field as a float array."""
        return np.array([getattr(m, name) for m in self.metrics])


def init_population(params: ModelParams, seed: int) -> Population:
    """Create the starting population: heterogeneous alphas, zero balances.

    alpha_i is uniform on [alpha_min, alpha_max), computed as
    alpha_min + (alpha_max - alpha_min) * u_i with u_i = (raw_i >> 11) * 2^-53
    from the Philox counter stream keyed by `seed`.
    """
    n = params.population_size
    raw = np.random.Philox(key=int(seed) & (2**64 - 1)).random_raw(n)
    u = (raw >> np.uint64(11)) * 2.0**-53
    alpha = params.alpha_min + (params.alpha_max - params.alpha_min) * u
    zeros = np.zeros(n)
    return Population(alpha=alpha, d_balance=zeros, y_balance=zeros.copy())


def run_simulation(params: ModelParams, seed: int) -> SimulationRun:
    """Run the period loop for the full horizon from a fresh population."""
    pop = init_population(params, seed)
    metrics: list[PeriodMetrics] = []
    ledgers: list[PeriodLedger] = []
    for _ in range(params.horizon):
        pop, m, led = step_period(pop, params)
        metrics.append(m)
        ledgers.append(led)
    return SimulationRun(
        params=params, seed=int(seed), metrics=metrics, ledgers=ledgers,
        final_population=pop,
    )


def summarize(run: SimulationRun, burn_in: int | None = None) -> SweepCellSummary:
    """Collapse a run's metric series into the four cell metrics.

    Extremes use every period; averages use periods >= burn_in (default: the
    run's own burn_in parameter).
    """
    if burn_in is None:
        burn_in = run.params.burn_in
    horizon = len(run.metrics)
    if not 0 <= burn_in < horizon:
        raise ValueError(
            f"burn_in must leave a non-empty window (got burn_in={burn_in!r}, horizon={horizon!r})"
        )
    rho = run.series("rho_E")
    s0 = run.series("share_0")
    unmet = run.series("unmet_fraction")
    return SweepCellSummary(
        min_rho_E=float(rho.min()),
        max_share_0=float(s0.max()),
        avg_share_0=float(s0[burn_in:].mean()),
        avg_unmet=float(unmet[burn_in:].mean()),
    )
