#!/usr/bin/env python3
"""Show how operation ordering changes what sequential revision can reach.

Runs both sequential phase orders under (turn=max, emph=max) on a plan
where inserting a clarification creates a brand-new aggregation
candidate, then contrasts them with exhaustive generate-and-test.

Example:
    python3 scripts/pathology_demo.py fixtures/pathology.rrl.xml
"""

from __future__ import annotations

import argparse

from dialogue_revision.arbitration import (
    PhaseOrder,
    nash_select,
    normalize,
    raw_scores,
    sequential_revise_with_steps,
)
from dialogue_revision.plan_model import ConstraintSetting, Extremum
from dialogue_revision.rrl_io import load_plan
from dialogue_revision.search import canonical_form, canonical_key, enumerate_closure


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="plan file (.rrl.xml)")
    args = parser.parse_args()

    setting = ConstraintSetting(turn=Extremum.MAX, emph=Extremum.MAX)
    start = load_plan(args.input)

    results = {}
    for order in PhaseOrder:
        plan, steps = sequential_revise_with_steps(start, setting, order)
        aggrs = sum(1 for op, _ in steps if op == "aggr")
        inserts = sum(1 for op, _ in steps if op == "insert")
        results[order] = plan
        print(f"{order.value:<14} steps={steps} (inserts={inserts}, aggregations={aggrs})")
        print(f"{'':<14} result key={canonical_key(canonical_form(plan))}")

    space = enumerate_closure(start)
    members = space.ordered_members()
    scored = normalize([raw_scores(p) for _, p in members], setting)
    selection = nash_select(scored)
    winner_form = members[selection.first][0]
    print(f"{'generate+test':<14} winner key={canonical_key(winner_form)} "
          f"raw={scored[selection.first].raw_turns},{scored[selection.first].raw_emph}")
    for order, plan in results.items():
        match = canonical_form(plan) == winner_form
        print(f"    {order.value} matches the generate-and-test winner: {match}")


if __name__ == "__main__":
    main()
