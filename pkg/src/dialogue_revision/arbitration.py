"""Scoring and winner selection over the revision space.

Every candidate plan gets a raw (turns, insertions) pair, oriented by
the constraint setting and min-max normalized to [0, 100] per axis, so
100 means no alternative in the space does better. Winners come from
the Nash product, the plain sum, the Pareto front, or the sequential
one-operation-at-a-time baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .plan_model import ConstraintSetting, DialoguePlan, Extremum, turn_count
from .revision import apply_aggr, apply_insert, aggr_sites, insert_sites


class ArbitrationPlan(Enum):
    NASH = "nash"
    SUM = "sum"
    PARETO_ALL = "pareto_all"
    SEQUENTIAL_INSERT_FIRST = "sequential_insert_first"
    SEQUENTIAL_AGGR_FIRST = "sequential_aggr_first"


class PhaseOrder(Enum):
    INSERT_FIRST = "insert_first"
    AGGR_FIRST = "aggr_first"


@dataclass(frozen=True)
class ScoreTuple:
    """Oriented, normalized scores with the raw counts they came from."""

    s_t: float
    s_e: float
    raw_turns: int
    raw_emph: int


@dataclass(frozen=True)
class Selection:
    """Winner indices in canonical (input) order; first is the reported one."""

    winners: tuple[int, ...]

    @property
    def first(self) -> int:
        return self.winners[0]


def raw_scores(plan: DialoguePlan) -> tuple[int, int]:
    """(number of turns, number of clarification subdialogues present)."""
    return turn_count(plan), plan.inserted_count


def _normalize_axis(values: Sequence[int], goal: Extremum) -> list[float]:
    oriented = [v if goal is Extremum.MAX else -v for v in values]
    best, worst = max(oriented), min(oriented)
    if best == worst:
        # No alternative does better, so every member fully satisfies
        # the constraint.
        return [100.0] * len(values)
    span = best - worst
    return [100.0 * (v - worst) / span for v in oriented]


def normalize(space: Sequence[tuple[int, int]], setting: ConstraintSetting) -> list[ScoreTuple]:
    """Min-max normalize raw (turns, insertions) pairs onto [0, 100]."""
    if not space:
        raise ValueError("cannot normalize an empty score space")
    s_t = _normalize_axis([r[0] for r in space], setting.turn)
    s_e = _normalize_axis([r[1] for r in space], setting.emph)
    return [
        ScoreTuple(s_t=t, s_e=e, raw_turns=raw[0], raw_emph=raw[1])
        for t, e, raw in zip(s_t, s_e, space)
    ]


def _dominates(other: ScoreTuple, this: ScoreTuple) -> bool:
    # The three dominance clauses, literally: equal-and-greater,
    # greater-and-equal, greater-and-greater. Ties never dominate.
    return (
        (other.s_t == this.s_t and other.s_e > this.s_e)
        or (other.s_e == this.s_e and other.s_t > this.s_t)
        or (other.s_t > this.s_t and other.s_e > this.s_e)
    )


def pareto_indices(scored: Sequence[ScoreTuple]) -> tuple[int, ...]:
    return tuple(
        i
        for i, this in enumerate(scored)
        if not any(_dominates(other, this) for other in scored)
    )


def pareto_front(scored: Sequence[ScoreTuple]) -> list[ScoreTuple]:
    """Members no other member dominates, in stable input order."""
    return [scored[i] for i in pareto_indices(scored)]


def nash_select(scored: Sequence[ScoreTuple]) -> Selection:
    """Maximize the product of the two scores.

    When every product is zero the product cannot discriminate, so the
    fallback restricts to the Pareto front, maximizes the sum there,
    and lets canonical (input) order pick the reported first winner.
    """
    if not scored:
        raise ValueError("cannot select from an empty score space")
    products = [s.s_t * s.s_e for s in scored]
    best = max(products)
    if best > 0:
        return Selection(tuple(i for i, p in enumerate(products) if p == best))
    front = pareto_indices(scored)
    sums = {i: scored[i].s_t + scored[i].s_e for i in front}
    top = max(sums.values())
    return Selection(tuple(i for i in front if sums[i] == top))


def sum_select(scored: Sequence[ScoreTuple]) -> Selection:
    """Maximize the sum of the two scores; input order breaks ties."""
    if not scored:
        raise ValueError("cannot select from an empty score space")
    sums = [s.s_t + s.s_e for s in scored]
    best = max(sums)
    return Selection(tuple(i for i, v in enumerate(sums) if v == best))


def sequential_revise_with_steps(
    start: DialoguePlan, setting: ConstraintSetting, order: PhaseOrder
) -> tuple[DialoguePlan, list[tuple[str, str]]]:
    """Sequential baseline, returning the result plus the applied steps.

    One operation is run to exhaustion, then the other. Insertion runs
    only when the emphasis constraint is max, aggregation only when the
    turn constraint is max; min disables the phase entirely. Within a
    phase the first applicable site (canonical order) is applied until
    none remain.
    """
    steps: list[tuple[str, str]] = []
    plan = start
    phases = ("insert", "aggr") if order is PhaseOrder.INSERT_FIRST else ("aggr", "insert")
    for phase in phases:
        if phase == "insert":
            if setting.emph is not Extremum.MAX:
                continue
            while True:
                sites = insert_sites(plan)
                if not sites:
                    break
                site = sites[0]
                plan = apply_insert(plan, site)
                steps.append(("insert", f"{site.pair}@{site.trigger_act}"))
        else:
            if setting.turn is not Extremum.MAX:
                continue
            while True:
                sites = aggr_sites(plan)
                if not sites:
                    break
                site = sites[0]
                plan = apply_aggr(plan, site)
                steps.append(("aggr", f"{site.pair_a}+{site.pair_b}"))
    return plan, steps


def sequential_revise(
    start: DialoguePlan, setting: ConstraintSetting, order: PhaseOrder
) -> DialoguePlan:
    plan, _ = sequential_revise_with_steps(start, setting, order)
    return plan


def format_score_report(
    *,
    setting: ConstraintSetting,
    plan_label: str,
    keys: Sequence[str],
    scored: Sequence[ScoreTuple],
    winners: Sequence[int],
    first: int | None,
) -> str:
    """Stable, diffable text report: one record per member.

    Columns: key, raw_turns, raw_emph, s_t, s_e, product, sum, pareto,
    winner, first. Rows follow canonical member order.
    """
    front = set(pareto_indices(scored))
    winner_set = set(winners)
    lines = [
        "# revision score report",
        f"# setting: turn={setting.turn.value} emph={setting.emph.value}",
        f"# plan: {plan_label}",
        f"# members: {len(scored)}",
        "key\traw_turns\traw_emph\ts_t\ts_e\tproduct\tsum\tpareto\twinner\tfirst",
    ]
    for i, (key, s) in enumerate(zip(keys, scored)):
        lines.append(
            "\t".join(
                [
                    key,
                    str(s.raw_turns),
                    str(s.raw_emph),
                    f"{s.s_t:.4f}",
                    f"{s.s_e:.4f}",
                    f"{s.s_t * s.s_e:.4f}",
                    f"{s.s_t + s.s_e:.4f}",
                    "1" if i in front else "0",
                    "1" if i in winner_set else "0",
                    "1" if i == first else "0",
                ]
            )
        )
    return "\n".join(lines) + "\n"
