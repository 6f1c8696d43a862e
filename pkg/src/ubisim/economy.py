"""Monetary mechanics of one simulated period.

The period sequence is fixed: (1) every agent receives the benefit grant in
the decaying currency D; (2) every agent picks an action and the chosen wage
is credited in Y; (3) necessities are settled against both balances; (4) the
D carried out of the period shrinks by the decay rate.  Decay hits only what
is carried over — benefit money spent within the period is spent at face
value.

There is deliberately no channel that converts one currency into the other:
D-spending never touches a Y balance and vice versa, which is what makes the
per-period conservation identities testable to float precision.

`step_period` accepts either a plain list of AgentState or the array-backed
Population container; the vectorized internals are arithmetic twins of the
scalar contract functions in `model`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .model import (
    Action,
    AgentState,
    ModelParams,
    Population,
    _settle_amounts,
    action_tableau,
    decide,
)

__all__ = [
    "SettlementResult",
    "PeriodLedger",
    "PeriodMetrics",
    "distribute_ubi",
    "settle_necessities",
    "apply_decay",
    "step_period",
]


@dataclass(frozen=True, slots=True)
class SettlementResult:
    """How one agent's necessity bill was paid (or not) this period."""

    satisfied_necessities: float
    d_spent: float
    y_spent: float
    unmet: bool
    post_d: float
    post_y: float


@dataclass(frozen=True, slots=True)
class PeriodLedger:
    """Period totals for the money flows; supports conservation checks."""

    ubi_issued: float
    wages_paid: float
    d_decayed: float
    d_spent: float
    y_spent: float


@dataclass(frozen=True, slots=True)
class PeriodMetrics:
    """Population shares for one period.

    Shares are counts over the fixed population, so the three action shares
    partition 1 exactly in counts (the float sum can be one ulp off for
    awkward population sizes; 0.0 and 1.0 extremes are always exact).
    """

    rho_E: float
    share_N: float
    share_0: float
    unmet_fraction: float


# =====================================================================
# Scalar contract operations
# =====================================================================

def distribute_ubi(agent: AgentState, params: ModelParams) -> AgentState:
    """Credit the per-period grant to the agent's D balance; Y untouched."""
    return replace(agent, d_balance=agent.d_balance + params.ubi_amount)


def settle_necessities(d_balance: float, y_balance: float, params: ModelParams) -> SettlementResult:
    """Pay for this period's necessities from the two balances.

    The D-acceptable portion (acceptance_ratio * necessity_total) is paid with
    D first; Y covers any remainder of the total bill.  All clamps are
    min/max, so no balance can go negative, and D is never accepted beyond
    the D-acceptable portion.
    """
    if d_balance < 0 or y_balance < 0:
        raise ValueError(f"balances must be >= 0 (got d={d_balance!r}, y={y_balance!r})")
    d_spent, y_spent, satisfied, unmet = _settle_amounts(d_balance, y_balance, params)
    return SettlementResult(
        satisfied_necessities=satisfied,
        d_spent=d_spent,
        y_spent=y_spent,
        unmet=unmet,
        post_d=d_balance - d_spent,
        post_y=y_balance - y_spent,
    )


def apply_decay(agent: AgentState, params: ModelParams) -> AgentState:
    """Shrink the carried D balance by the decay rate; Y never decays."""
    return replace(agent, d_balance=agent.d_balance * (1.0 - params.decay_rate))


# =====================================================================
# Period engine
# =====================================================================

def _ration_essential(choice: np.ndarray, utility: np.ndarray, capacity: int) -> np.ndarray:
    """Enforce a cap on essential-labor slots.

    Agents who picked essential work are ranked by their utility margin over
    the best alternative, descending; ties keep ascending agent order (stable
    sort).  Agents beyond the cap take their best non-essential action, with
    non-essential work winning a tie against non-work.
    """
    e_idx = np.nonzero(choice == int(Action.ESSENTIAL))[0]
    if e_idx.size <= capacity:
        return choice
    margin = utility[0, e_idx] - np.maximum(utility[1, e_idx], utility[2, e_idx])
    order = np.argsort(-margin, kind="stable")
    demoted = e_idx[order[capacity:]]
    fallback = np.where(
        utility[1, demoted] >= utility[2, demoted],
        int(Action.NONESSENTIAL),
        int(Action.NONWORK),
    )
    adjusted = choice.copy()
    adjusted[demoted] = fallback
    return adjusted


def step_period(population, params: ModelParams):
    """Advance every agent through one full period.

    Returns (new population, PeriodMetrics, PeriodLedger).  The population
    comes back in the same representation it was passed in (list of
    AgentState, or Population).  Deterministic and side-effect free: the
    input population is never mutated.
    """
    want_list = not isinstance(population, Population)
    pop = Population.from_agents(population) if want_list else population
    n = len(pop)
    if n == 0:
        raise ValueError("population must be non-empty")

    # (1) benefit grant, (2) decision + wage credit, (3) settlement
    d_pre = pop.d_balance + params.ubi_amount
    utility, y_avail, d_spent, y_spent, _satisfied, unmet = action_tableau(
        pop.alpha, d_pre, pop.y_balance, params
    )
    choice = decide(utility)
    if params.essential_capacity is not None:
        choice = _ration_essential(choice, utility, params.essential_capacity)

    cols = np.arange(n)
    ds = d_spent[choice, cols]
    ys = y_spent[choice, cols]
    ya = y_avail[choice, cols]
    um = unmet[choice, cols]

    # (4) decay of the carried D
    d_after = (d_pre - ds) * (1.0 - params.decay_rate)
    y_after = ya - ys
    new_pop = Population(pop.alpha, d_after, y_after)

    counts = np.bincount(choice, minlength=3)
    # Plain-int counts so the share fields are native floats, not numpy
    # scalars; repr() of these values is what lands in exported CSVs.
    metrics = PeriodMetrics(
        rho_E=int(counts[int(Action.ESSENTIAL)]) / n,
        share_N=int(counts[int(Action.NONESSENTIAL)]) / n,
        share_0=int(counts[int(Action.NONWORK)]) / n,
        unmet_fraction=int(um.sum()) / n,
    )

    wage_table = np.array([params.wage_essential, params.wage_nonessential, 0.0])
    ledger = PeriodLedger(
        ubi_issued=params.ubi_amount * n,
        wages_paid=float(wage_table[choice].sum()),
        d_decayed=float((d_pre - ds).sum() * params.decay_rate),
        d_spent=float(ds.sum()),
        y_spent=float(ys.sum()),
    )

    out_pop = new_pop.to_agents() if want_list else new_pop
    return out_pop, metrics, ledger
