#!/usr/bin/env python3
"""Run all four constraint settings on a plan and tabulate the winners.

Example:
    python3 scripts/run_matrix.py fixtures/eshowroom.rrl.xml
"""

from __future__ import annotations

import argparse

from dialogue_revision.arbitration import nash_select, normalize, pareto_indices, raw_scores
from dialogue_revision.plan_model import ConstraintSetting, Extremum
from dialogue_revision.rrl_io import load_plan
from dialogue_revision.search import canonical_key, enumerate_closure


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", help="plan file (.rrl.xml)")
    parser.add_argument("--ceiling", type=int, default=100_000)
    args = parser.parse_args()

    start = load_plan(args.input)
    space = enumerate_closure(start, member_ceiling=args.ceiling)
    members = space.ordered_members()
    raws = [raw_scores(plan) for _, plan in members]
    print(f"plan space: {len(members)} members, max depth {space.max_depth()}")
    print()
    print(f"{'setting':<22} {'winner':<18} {'turns':>5} {'ins':>4} {'s_t':>7} {'s_e':>7} {'ties':>5}")
    for turn in Extremum:
        for emph in Extremum:
            setting = ConstraintSetting(turn=turn, emph=emph)
            scored = normalize(raws, setting)
            selection = nash_select(scored)
            winner = scored[selection.first]
            key = canonical_key(members[selection.first][0])
            assert set(selection.winners) <= set(pareto_indices(scored))
            print(
                f"turn={turn.value:<4} emph={emph.value:<4}   {key:<18} "
                f"{winner.raw_turns:>5} {winner.raw_emph:>4} "
                f"{winner.s_t:>7.2f} {winner.s_e:>7.2f} {len(selection.winners):>5}"
            )


if __name__ == "__main__":
    main()
