"""Decision core for a two-currency benefit economy.

Agents hold two kinds of money: a decaying benefit currency D that is handed
out each period as an unconditional grant, and a standard currency Y that
wages are paid in and savings are kept in.  Each period every agent picks one
of three actions -- essential work, non-essential work, or no work -- by
maximizing a single-period utility

    u(satisfied) + savings_weight * u(residual_y)
        - alpha * disutility(action) - penalty_if_unmet

where u is the square root, `satisfied` is the amount of necessities the agent
manages to pay for this period, and `residual_y` is the Y balance left after
paying for them.  Necessities are split by the acceptance ratio: that fraction
of the total can be paid with either currency (D is spent first), the rest
requires Y.

This module holds the scalar, per-agent contract functions plus their
vectorized twins used by the period engine.  The two paths are kept in exact
arithmetic lockstep (same operations in the same order), which is asserted by
the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, Optional

import numpy as np

# Absolute money tolerance for the "necessities fully covered" test during
# settlement.  Far above accumulated float noise (~1e-12 over a long run) and
# far below any meaningful money amount, so an agent who can exactly afford
# its necessities is never flagged unmet by a last-ulp rounding artifact.
MONEY_EPS = 1e-9


class Action(IntEnum):
    """The three per-period labor choices, in tie-breaking priority order."""

    ESSENTIAL = 0
    NONESSENTIAL = 1
    NONWORK = 2


# =====================================================================
# Parameters and agent state
# =====================================================================

@dataclass(frozen=True)
class ModelParams:
    """All exogenous policy and behavioral parameters.

    Defaults are the calibrated desk-scale economy: the essential wage covers
    the Y-only share of necessities only when the acceptance ratio reaches
    0.3, which is what produces the sharp participation boundary in the
    default sweep.
    """

    ubi_amount: float = 10.0           # benefit currency granted per period
    acceptance_ratio: float = 0.5      # fraction of necessities payable in D
    decay_rate: float = 0.1            # per-period shrink factor for held D
    savings_weight: float = 0.5        # weight on utility from retained Y
    unmet_penalty: float = 5.0         # utility loss when necessities unmet
    wage_essential: float = 7.0
    wage_nonessential: float = 4.0
    labor_disutility_essential: float = 0.5
    labor_disutility_nonessential: float = 0.15
    labor_disutility_nonwork: float = 0.0
    necessity_total: float = 10.0      # necessities per period, price-normalized to 1
    alpha_min: float = 0.5
    alpha_max: float = 1.5
    population_size: int = 1000
    horizon: int = 240
    burn_in: int = 0
    essential_capacity: Optional[int] = None   # None = unlimited slots

    def __post_init__(self) -> None:
        problems = self.violations()
        if problems:
            raise ValueError("; ".join(problems))

    def violations(self) -> list[str]:
        """Return every constraint violation as a key-naming message."""
        out: list[str] = []
        if not 0.0 <= self.acceptance_ratio <= 1.0:
            out.append(f"acceptance_ratio must lie in [0, 1] (got {self.acceptance_ratio!r})")
        if not 0.0 <= self.decay_rate <= 1.0:
            out.append(f"decay_rate must lie in [0, 1] (got {self.decay_rate!r})")
        if self.ubi_amount < 0:
            out.append(f"ubi_amount must be >= 0 (got {self.ubi_amount!r})")
        if self.savings_weight < 0:
            out.append(f"savings_weight must be >= 0 (got {self.savings_weight!r})")
        if self.unmet_penalty < 0:
            out.append(f"unmet_penalty must be >= 0 (got {self.unmet_penalty!r})")
        if self.wage_essential < 0 or self.wage_nonessential < 0:
            out.append(
                "wage_essential and wage_nonessential must be >= 0 "
                f"(got {self.wage_essential!r}, {self.wage_nonessential!r})"
            )
        if self.wage_essential < self.wage_nonessential:
            out.append(
                "wage_essential must be >= wage_nonessential "
                f"(got {self.wage_essential!r} < {self.wage_nonessential!r})"
            )
        if not (self.labor_disutility_essential > self.labor_disutility_nonessential
                > self.labor_disutility_nonwork):
            out.append(
                "labor disutilities must be ordered labor_disutility_essential > "
                "labor_disutility_nonessential > labor_disutility_nonwork "
                f"(got {self.labor_disutility_essential!r}, "
                f"{self.labor_disutility_nonessential!r}, {self.labor_disutility_nonwork!r})"
            )
        if self.labor_disutility_nonwork != 0.0:
            out.append(
                f"labor_disutility_nonwork must be exactly 0 (got {self.labor_disutility_nonwork!r})"
            )
        if self.necessity_total <= 0:
            out.append(f"necessity_total must be > 0 (got {self.necessity_total!r})")
        if not 0 < self.alpha_min <= self.alpha_max:
            out.append(
                "alpha bounds must satisfy 0 < alpha_min <= alpha_max "
                f"(got {self.alpha_min!r}, {self.alpha_max!r})"
            )
        if self.population_size < 1:
            out.append(f"population_size must be >= 1 (got {self.population_size!r})")
        if self.horizon < 1:
            out.append(f"horizon must be >= 1 (got {self.horizon!r})")
        if not 0 <= self.burn_in < self.horizon:
            out.append(
                f"burn_in must be >= 0 and < horizon (got burn_in={self.burn_in!r}, "
                f"horizon={self.horizon!r})"
            )
        if self.essential_capacity is not None and self.essential_capacity < 0:
            out.append(f"essential_capacity must be >= 0 or absent (got {self.essential_capacity!r})")
        return out

    def wage(self, action: Action) -> float:
        if action == Action.ESSENTIAL:
            return self.wage_essential
        if action == Action.NONESSENTIAL:
            return self.wage_nonessential
        return 0.0

    def disutility(self, action: Action) -> float:
        if action == Action.ESSENTIAL:
            return self.labor_disutility_essential
        if action == Action.NONESSENTIAL:
            return self.labor_disutility_nonessential
        return self.labor_disutility_nonwork


@dataclass(frozen=True, slots=True)
class AgentState:
    """One agent: its disutility scale and the two currency balances."""

    alpha: float
    d_balance: float = 0.0
    y_balance: float = 0.0

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0 (got {self.alpha!r})")
        if self.d_balance < 0:
            raise ValueError(f"d_balance must be >= 0 (got {self.d_balance!r})")
        if self.y_balance < 0:
            raise ValueError(f"y_balance must be >= 0 (got {self.y_balance!r})")


@dataclass(frozen=True, slots=True)
class ActionEvaluation:
    """Outcome of hypothetically playing one action for one period."""

    action: Action
    satisfied_necessities: float
    residual_y: float
    unmet: bool
    utility: float


# =====================================================================
# Scalar contract functions
# =====================================================================

def concave_value(x: float) -> float:
    """Square-root value of consumption or savings; monotone and concave."""
    if x < 0:
        raise ValueError(f"concave_value requires x >= 0 (got {x!r})")
    return math.sqrt(x)


def _settle_amounts(d_balance: float, y_avail: float, params: ModelParams):
    """Shared settlement arithmetic: how much D and Y go to necessities.

    D pays the D-acceptable portion first (capped at acceptance_ratio *
    necessity_total); Y covers whatever of the total is left.  Computing the
    Y requirement as `necessity_total - d_spent` keeps the sum of portions
    exact, so agents who can exactly afford their necessities are never
    misflagged by rounding.  Returns (d_spent, y_spent, satisfied, unmet).
    """
    d_portion = params.acceptance_ratio * params.necessity_total
    d_spent = min(d_balance, d_portion)
    y_needed = params.necessity_total - d_spent
    y_spent = min(y_avail, y_needed)
    shortfall = y_needed - y_spent
    unmet = shortfall > MONEY_EPS
    satisfied = d_spent + y_spent if unmet else params.necessity_total
    return d_spent, y_spent, satisfied, unmet


def evaluate_action(agent: AgentState, action: Action, params: ModelParams) -> ActionEvaluation:
    """Hypothetically play `action` for one period and score it.

    The wage for the action is credited to Y first, then necessities are
    settled, then the utility formula is applied to what remains.  Pure: the
    agent passed in is never modified.
    """
    y_avail = agent.y_balance + params.wage(action)
    d_spent, y_spent, satisfied, unmet = _settle_amounts(agent.d_balance, y_avail, params)
    residual_y = y_avail - y_spent
    utility = concave_value(satisfied) + params.savings_weight * concave_value(residual_y)
    utility = utility - agent.alpha * params.disutility(action)
    utility = utility - (params.unmet_penalty if unmet else 0.0)
    return ActionEvaluation(
        action=action,
        satisfied_necessities=satisfied,
        residual_y=residual_y,
        unmet=unmet,
        utility=utility,
    )


def choose_action(agent: AgentState, params: ModelParams) -> tuple[Action, ActionEvaluation]:
    """Pick the utility-maximizing action with the fixed tie order E, N, 0.

    The branch order makes ties deterministic: essential work wins any tie it
    participates in, and non-essential work wins a tie with non-work.
    """
    ev_e = evaluate_action(agent, Action.ESSENTIAL, params)
    ev_n = evaluate_action(agent, Action.NONESSENTIAL, params)
    ev_0 = evaluate_action(agent, Action.NONWORK, params)
    if ev_e.utility >= max(ev_n.utility, ev_0.utility):
        return Action.ESSENTIAL, ev_e
    if ev_n.utility >= ev_0.utility:
        return Action.NONESSENTIAL, ev_n
    return Action.NONWORK, ev_0


# =====================================================================
# Array-backed population and vectorized twins
# =====================================================================

class Population:
    """A population stored as parallel arrays (alpha, d_balance, y_balance).

    Behaves like a sequence of AgentState for interoperability: len(),
    indexing, and iteration all yield per-agent views.  The array layout is
    what lets one period of 1000 agents run in microseconds instead of
    milliseconds.
    """

    __slots__ = ("alpha", "d_balance", "y_balance")

    def __init__(self, alpha, d_balance, y_balance) -> None:
        self.alpha = np.asarray(alpha, dtype=np.float64)
        self.d_balance = np.asarray(d_balance, dtype=np.float64)
        self.y_balance = np.asarray(y_balance, dtype=np.float64)
        n = self.alpha.shape
        if self.alpha.ndim != 1 or self.d_balance.shape != n or self.y_balance.shape != n:
            raise ValueError("alpha, d_balance, y_balance must be equal-length 1-D arrays")
        if self.alpha.size and self.alpha.min() <= 0:
            raise ValueError("every alpha must be > 0")
        if (self.d_balance < 0).any() or (self.y_balance < 0).any():
            raise ValueError("balances must be >= 0")

    @classmethod
    def from_agents(cls, agents) -> "Population":
        agents = list(agents)
        return cls(
            alpha=[a.alpha for a in agents],
            d_balance=[a.d_balance for a in agents],
            y_balance=[a.y_balance for a in agents],
        )

    def to_agents(self) -> list[AgentState]:
        return [self[i] for i in range(len(self))]

    def copy(self) -> "Population":
        return Population(self.alpha.copy(), self.d_balance.copy(), self.y_balance.copy())

    def __len__(self) -> int:
        return self.alpha.size

    def __getitem__(self, i: int) -> AgentState:
        return AgentState(
            alpha=float(self.alpha[i]),
            d_balance=float(self.d_balance[i]),
            y_balance=float(self.y_balance[i]),
        )

    def __iter__(self) -> Iterator[AgentState]:
        for i in range(len(self)):
            yield self[i]


def settle_arrays(d_balance: np.ndarray, y_avail: np.ndarray, params: ModelParams):
    """Vectorized twin of _settle_amounts; identical operation order."""
    d_portion = params.acceptance_ratio * params.necessity_total
    d_spent = np.minimum(d_balance, d_portion)
    y_needed = params.necessity_total - d_spent
    y_spent = np.minimum(y_avail, y_needed)
    shortfall = y_needed - y_spent
    unmet = shortfall > MONEY_EPS
    satisfied = np.where(unmet, d_spent + y_spent, params.necessity_total)
    return d_spent, y_spent, satisfied, unmet


def action_tableau(alpha: np.ndarray, d_balance: np.ndarray, y_balance: np.ndarray,
                   params: ModelParams):
    """Evaluate all three actions for every agent at once.

    Returns (utility, y_avail, d_spent, y_spent, satisfied, unmet), each an
    array of shape (3, n) indexed by Action value.  Arithmetic mirrors
    evaluate_action exactly.
    """
    n = alpha.size
    utility = np.empty((3, n))
    y_avail = np.empty((3, n))
    d_spent = np.empty((3, n))
    y_spent = np.empty((3, n))
    satisfied = np.empty((3, n))
    unmet = np.empty((3, n), dtype=bool)
    for act in Action:
        ya = y_balance + params.wage(act)
        ds, ys, sat, um = settle_arrays(d_balance, ya, params)
        resid = ya - ys
        util = np.sqrt(sat) + params.savings_weight * np.sqrt(resid)
        util = util - alpha * params.disutility(act)
        util = util - np.where(um, params.unmet_penalty, 0.0)
        k = int(act)
        utility[k] = util
        y_avail[k] = ya
        d_spent[k] = ds
        y_spent[k] = ys
        satisfied[k] = sat
        unmet[k] = um
    return utility, y_avail, d_spent, y_spent, satisfied, unmet


def decide(utility: np.ndarray) -> np.ndarray:
    """Vectorized twin of choose_action's branch order over a (3, n) tableau."""
    u_e, u_n, u_0 = utility[0], utility[1], utility[2]
    pick_e = u_e >= np.maximum(u_n, u_0)
    pick_n = ~pick_e & (u_n >= u_0)
    return np.where(pick_e, int(Action.ESSENTIAL),
                    np.where(pick_n, int(Action.NONESSENTIAL), int(Action.NONWORK)))
