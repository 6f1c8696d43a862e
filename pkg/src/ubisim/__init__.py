"""Deterministic agent-based model of a two-currency basic-income economy.

A population of heterogeneous agents receives a time-decaying benefit
currency each period, chooses among essential work, other work, and
non-work by myopic utility comparison, and settles a fixed necessity bill
with a mix of the decaying currency and ordinary money.  The package sweeps
the benefit amount against the share of the bill payable in the decaying
currency and summarizes each grid cell with phase-diagram metrics.

Core modules (`model`, `economy`, `simulate`, `sweep`) never touch the
filesystem; `config`, `export`, and `cli` layer file formats and the
command-line interface on top.
"""

__version__ = "0.1.0"

from .model import (
    MONEY_EPS,
    Action,
    ActionEvaluation,
    AgentState,
    ModelParams,
    Population,
    choose_action,
    concave_value,
    evaluate_action,
)
from .economy import (
    PeriodLedger,
    PeriodMetrics,
    SettlementResult,
    apply_decay,
    distribute_ubi,
    settle_necessities,
    step_period,
)
from .simulate import (
    SimulationRun,
    SweepCellSummary,
    init_population,
    run_simulation,
    summarize,
)
from .sweep import (
    SweepGrid,
    SweepSpec,
    cell_seed,
    detect_phase_boundary,
    run_sweep,
)
from .config import ConfigError, load_config
from .export import export_grid, import_grid, write_periods_csv

__all__ = [
    "__version__",
    "MONEY_EPS",
    "Action",
    "ActionEvaluation",
    "AgentState",
    "ModelParams",
    "Population",
    "choose_action",
    "concave_value",
    "evaluate_action",
    "PeriodLedger",
    "PeriodMetrics",
    "SettlementResult",
    "apply_decay",
    "distribute_ubi",
    "settle_necessities",
    "step_period",
    "SimulationRun",
    "SweepCellSummary",
    "init_population",
    "run_simulation",
    "summarize",
    "SweepGrid",
    "SweepSpec",
    "cell_seed",
    "detect_phase_boundary",
    "run_sweep",
    "ConfigError",
    "load_config",
    "export_grid",
    "import_grid",
    "write_periods_csv",
]
