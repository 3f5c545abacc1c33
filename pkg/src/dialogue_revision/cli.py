"""Command line pipeline: parse, enumerate, score, arbitrate, emit.

Exit codes: 0 success, 1 invalid flags, 2 input parse failure,
3 member ceiling exceeded, 4 lexicon gap.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .arbitration import (
    ArbitrationPlan,
    PhaseOrder,
    Selection,
    format_score_report,
    nash_select,
    normalize,
    pareto_indices,
    raw_scores,
    sequential_revise,
    sum_select,
)
from .plan_model import ConstraintSetting, Extremum, InvalidPlanError
from .realizer import LexiconGapError, load_lexicon, realize
from .rrl_io import RrlParseError, load_plan, serialize
from .search import MemberCeilingExceeded, canonical_form, canonical_key, dump_space, enumerate_closure

_PLAN_FLAGS = {
    "nash": ArbitrationPlan.NASH,
    "sum": ArbitrationPlan.SUM,
    "pareto": ArbitrationPlan.PARETO_ALL,
    "seq-insert-first": ArbitrationPlan.SEQUENTIAL_INSERT_FIRST,
    "seq-aggr-first": ArbitrationPlan.SEQUENTIAL_AGGR_FIRST,
}


@dataclass
class RunConfig:
    input_path: str
    setting: ConstraintSetting
    plan: ArbitrationPlan = ArbitrationPlan.NASH
    output_plan_path: str | None = None
    report_path: str | None = None
    transcript_path: str | None = None
    lexicon_path: str | None = None
    member_ceiling: int = 100_000
    dump_space: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on bad flags, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dialogue-revise",
        description="Revise a scripted dialogue plan against global turn/emphasis constraints.",
    )
    parser.add_argument("input", help="input plan (.rrl.xml)")
    parser.add_argument("--turn", choices=["max", "min"], required=True, help="turn constraint polarity")
    parser.add_argument("--emph", choices=["max", "min"], required=True, help="emphasis constraint polarity")
    parser.add_argument("--plan", choices=sorted(_PLAN_FLAGS), default="nash", help="arbitration plan")
    parser.add_argument("--out", help="write the winning plan here (pareto: one file per front member)")
    parser.add_argument("--report", help="write the score report here")
    parser.add_argument("--transcript", help="write the winner's transcript here (needs --lexicon)")
    parser.add_argument("--lexicon", help="lexicon file for transcript rendering")
    parser.add_argument("--ceiling", type=int, default=100_000, help="abort if the plan space exceeds this many members")
    parser.add_argument("--dump-space", action="store_true", help="print the plan space edge graph to stdout")
    return parser


def parse_args(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    if args.ceiling <= 0:
        build_parser().error("--ceiling must be positive")
    return RunConfig(
        input_path=args.input,
        setting=ConstraintSetting(turn=Extremum(args.turn), emph=Extremum(args.emph)),
        plan=_PLAN_FLAGS[args.plan],
        output_plan_path=args.out,
        report_path=args.report,
        transcript_path=args.transcript,
        lexicon_path=args.lexicon,
        member_ceiling=args.ceiling,
        dump_space=args.dump_space,
    )


def _indexed_path(path: str, index: int) -> str:
    stem, dot, suffix = path.partition(".")
    return f"{stem}.{index}.{suffix}" if dot else f"{path}.{index}"


def run(config: RunConfig) -> int:
    try:
        start = load_plan(config.input_path)
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 2
    except (RrlParseError, InvalidPlanError) as exc:
        print(f"input parse failure: {exc}", file=sys.stderr)
        return 2

    try:
        space = enumerate_closure(start, member_ceiling=config.member_ceiling)
    except MemberCeilingExceeded as exc:
        print(str(exc), file=sys.stderr)
        return 3

    members = space.ordered_members()
    keys = [canonical_key(form) for form, _ in members]
    raws = [raw_scores(plan) for _, plan in members]
    scored = normalize(raws, config.setting)

    if config.plan is ArbitrationPlan.NASH:
        selection = nash_select(scored)
    elif config.plan is ArbitrationPlan.SUM:
        selection = sum_select(scored)
    elif config.plan is ArbitrationPlan.PARETO_ALL:
        selection = Selection(pareto_indices(scored))
    else:
        order = (
            PhaseOrder.INSERT_FIRST
            if config.plan is ArbitrationPlan.SEQUENTIAL_INSERT_FIRST
            else PhaseOrder.AGGR_FIRST
        )
        result = sequential_revise(start, config.setting, order)
        form = canonical_form(result)
        index = next(i for i, (f, _) in enumerate(members) if f == form)
        selection = Selection((index,))

    emitted = selection.winners if config.plan is ArbitrationPlan.PARETO_ALL else (selection.first,)
    label = "front" if config.plan is ArbitrationPlan.PARETO_ALL else "winner"
    for i in emitted:
        s = scored[i]
        print(
            f"{label} key={keys[i]} raw_turns={s.raw_turns} raw_emph={s.raw_emph} "
            f"s_t={s.s_t:.4f} s_e={s.s_e:.4f}"
        )

    if config.report_path:
        report = format_score_report(
            setting=config.setting,
            plan_label=config.plan.value,
            keys=keys,
            scored=scored,
            winners=selection.winners,
            first=selection.first,
        )
        with open(config.report_path, "w", encoding="utf-8") as handle:
            handle.write(report)

    if config.output_plan_path:
        if config.plan is ArbitrationPlan.PARETO_ALL:
            for n, i in enumerate(emitted):
                with open(_indexed_path(config.output_plan_path, n), "wb") as handle:
                    handle.write(serialize(members[i][1]))
        else:
            with open(config.output_plan_path, "wb") as handle:
                handle.write(serialize(members[selection.first][1]))

    if config.transcript_path:
        if not config.lexicon_path:
            print("--transcript requires --lexicon", file=sys.stderr)
            return 1
        try:
            lexicon = load_lexicon(config.lexicon_path)
            transcript = realize(members[selection.first][1], lexicon)
        except LexiconGapError as exc:
            print(f"lexicon gap: {exc.token}", file=sys.stderr)
            return 4
        with open(config.transcript_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(transcript)

    if config.dump_space:
        sys.stdout.write(dump_space(space))
    return 0


def main(argv=None) -> int:
    config = parse_args(argv if argv is not None else sys.argv[1:])
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
