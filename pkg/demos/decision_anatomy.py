"""Dissect a single agent's choice as the acceptance ratio moves.

For one mid-heterogeneity agent with a small savings cushion, tabulate the
utility of all three actions at each acceptance ratio and mark the winner.
This makes the mechanism behind the phase boundary visible without any
simulation: once enough of the bill accepts the benefit currency, the wage
premium of the essential job stops paying for its extra discomfort.

Run:  python3 demos/decision_anatomy.py
"""

import dataclasses

from ubisim import Action, AgentState, ModelParams, choose_action, evaluate_action

AGENT = AgentState(alpha=1.0, d_balance=10.0, y_balance=6.0)

LABEL = {
    Action.ESSENTIAL: "essential",
    Action.NONESSENTIAL: "other",
    Action.NONWORK: "idle",
}


def row(params):
    evals = {a: evaluate_action(AGENT, a, params) for a in Action}
    winner, _ = choose_action(AGENT, params)
    cells = "  ".join(
        f"{evals[a].utility:7.3f}{'*' if a is winner else ' '}" for a in Action
    )
    unmet_flags = "".join("u" if evals[a].unmet else "." for a in Action)
    return f"{params.acceptance_ratio:4.1f}   {cells}   {unmet_flags}   {LABEL[winner]}"


if __name__ == "__main__":
    base = ModelParams()
    print(f"agent: alpha={AGENT.alpha}, benefit balance={AGENT.d_balance}, "
          f"savings={AGENT.y_balance}")
    print(f"bill={base.necessity_total}, wages={base.wage_essential}/"
          f"{base.wage_nonessential}, penalty={base.unmet_penalty}\n")
    print(" phi   essential   other       idle       unmet  chosen")
    for k in range(11):
        print(row(dataclasses.replace(base, acceptance_ratio=k / 10)))
    print("\n(u = that action leaves necessities unmet; * = the chosen action;")
    print(" ties go essential > other > idle, so equal utilities favor work)")
