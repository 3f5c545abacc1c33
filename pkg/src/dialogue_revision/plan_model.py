"""Core data model for abstract dialogue plans.

A plan is an immutable value: participants, dialogue acts, adjacency
pairs and a flat temporal ordering. Acts that metacommunicate
(clarification requests and their confirmations) live on track 2; acts
that carry the dialogue forward live on track 1. All queries here are
pure, so plans can be shared freely across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping


class Role(Enum):
    SELLER = "seller"
    CUSTOMER = "customer"


class ActType(Enum):
    GREET = "greet"
    QUESTION = "question"
    INFORM = "inform"
    ACKNOWLEDGE = "acknowledge"
    CLARIFY_REQUEST = "clarify_request"
    CONFIRM = "confirm"


class Track(Enum):
    TRACK1 = "track1"
    TRACK2 = "track2"


class PairOrigin(Enum):
    PLANNER = "planner"
    INSERTED = "inserted"
    AGGREGATED = "aggregated"


class Extremum(Enum):
    MAX = "max"
    MIN = "min"


# Act types that are metacommunication and therefore always track 2.
TRACK2_TYPES = frozenset({ActType.CLARIFY_REQUEST, ActType.CONFIRM})

# Act types allowed to stand outside any adjacency pair (openers/closers).
UNPAIRED_TYPES = frozenset({ActType.GREET, ActType.ACKNOWLEDGE})


@dataclass(frozen=True)
class Participant:
    """One interlocutor. Traits are an opaque payload, never interpreted."""

    id: str
    name: str
    role: Role
    traits: Mapping[str, float] = field(default_factory=dict)
    extra: Mapping[str, str] = field(default_factory=dict)
    opaque_children: tuple[str, ...] = ()


@dataclass(frozen=True)
class Condition:
    predicate: str
    args: tuple[str, ...]
    polarity: bool = True
    extra: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class SemanticContent:
    """Flat condition list standing in for a full discourse representation."""

    drs_id: str
    conditions: tuple[Condition, ...]
    extra: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))


@dataclass(frozen=True)
class DialogueAct:
    id: str
    act_type: ActType
    speaker: str
    addressee: str
    content: SemanticContent | None = None
    track: Track = Track.TRACK1
    reaction_to: str | None = None
    emphasis: bool = False
    extra: Mapping[str, str] = field(default_factory=dict)
    opaque_children: tuple[str, ...] = ()


@dataclass(frozen=True)
class AdjacencyPair:
    """Ordered (first-part, second-part) act pair on one value dimension."""

    id: str
    first: str
    second: str
    value_dimension: str
    origin: PairOrigin = PairOrigin.PLANNER
    extra: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ConstraintSetting:
    """Polarity of the two global constraints: turn count and emphasis."""

    turn: Extremum
    emph: Extremum


@dataclass(frozen=True)
class DialoguePlan:
    """A whole abstract dialogue script.

    Construction normalizes act and pair order to temporal order, so two
    plans with the same content compare equal regardless of how their
    sequences were assembled. ``inserted_count`` defaults to the number
    of pairs with origin ``inserted``.
    """

    participants: tuple[Participant, ...]
    acts: tuple[DialogueAct, ...]
    pairs: tuple[AdjacencyPair, ...]
    ordering: tuple[str, ...]
    common_ground: str = ""
    inserted_count: int | None = None

    def __post_init__(self):
        ordering = tuple(self.ordering)
        pos = {aid: i for i, aid in enumerate(ordering)}
        sentinel = len(pos)
        acts = tuple(
            sorted(self.acts, key=lambda a: (pos.get(a.id, sentinel), a.id))
        )
        pairs = tuple(
            sorted(self.pairs, key=lambda p: (pos.get(p.first, sentinel), p.id))
        )
        object.__setattr__(self, "participants", tuple(self.participants))
        object.__setattr__(self, "acts", acts)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "ordering", ordering)
        if self.inserted_count is None:
            count = sum(p.origin is PairOrigin.INSERTED for p in pairs)
            object.__setattr__(self, "inserted_count", count)
        object.__setattr__(self, "_act_index", {a.id: a for a in acts})
        object.__setattr__(self, "_position", pos)

    def act(self, act_id: str) -> DialogueAct:
        return self._act_index[act_id]

    def has_act(self, act_id: str) -> bool:
        return act_id in self._act_index

    def position(self, act_id: str) -> int:
        return self._position[act_id]

    def pair(self, pair_id: str) -> AdjacencyPair:
        for p in self.pairs:
            if p.id == pair_id:
                return p
        raise KeyError(pair_id)

    def pair_of_act(self, act_id: str) -> AdjacencyPair | None:
        for p in self.pairs:
            if act_id in (p.first, p.second):
                return p
        return None

    def acts_in_order(self) -> list[DialogueAct]:
        return [self._act_index[aid] for aid in self.ordering]


@dataclass(frozen=True)
class Violation:
    """One broken invariant, named, with the ids involved."""

    code: str
    message: str
    ids: tuple[str, ...] = ()

    def __str__(self) -> str:
        where = f" [{', '.join(self.ids)}]" if self.ids else ""
        return f"{self.code}: {self.message}{where}"


class EmptyPlanError(ValueError):
    """Raised by queries that are undefined on a plan with no acts."""


class InvalidPlanError(ValueError):
    """Raised when an operation refuses a plan that fails validation."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        report = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid plan: {report}")


def validate(plan: DialoguePlan) -> list[Violation]:
    """Check every structural invariant; violations are data, not failures.

    Position-dependent checks (reaction links pointing backwards, pair
    part adjacency) are skipped when the ordering is not a permutation
    of the act ids, since positions are meaningless then.
    """
    out: list[Violation] = []

    seen_pids: set[str] = set()
    for p in plan.participants:
        if p.id in seen_pids:
            out.append(Violation("duplicate_participant", "participant id declared twice", (p.id,)))
        seen_pids.add(p.id)

    act_ids: set[str] = set()
    for a in plan.acts:
        if a.id in act_ids:
            out.append(Violation("duplicate_act", "act id declared twice", (a.id,)))
        act_ids.add(a.id)

    ordering_ok = _check_permutation(plan, act_ids, out)

    for a in plan.acts:
        if a.speaker == a.addressee:
            out.append(Violation("self_addressed", "speaker equals addressee", (a.id,)))
        for pid in (a.speaker, a.addressee):
            if pid not in seen_pids:
                out.append(Violation("unknown_participant", "act refers to an undeclared participant", (a.id, pid)))
        if a.act_type in TRACK2_TYPES and a.track is not Track.TRACK2:
            out.append(Violation("track_mismatch", f"{a.act_type.value} acts must be on track2", (a.id,)))
        if a.emphasis and (a.content is None or not a.content.conditions):
            out.append(Violation("emphasis_without_content", "emphasis mark on an act without content", (a.id,)))
        if a.act_type in (ActType.INFORM, ActType.QUESTION):
            if a.content is None or not a.content.conditions:
                out.append(Violation("missing_content", f"{a.act_type.value} act carries no conditions", (a.id,)))
        if a.content is not None:
            for c in a.content.conditions:
                if len(c.args) < 1:
                    out.append(Violation("empty_condition", "condition has no arguments", (a.id, c.predicate)))
        if a.reaction_to is not None:
            if a.reaction_to not in act_ids:
                out.append(Violation("dangling_reaction", "reaction link names an unknown act", (a.id, a.reaction_to)))
            elif ordering_ok and plan.position(a.reaction_to) >= plan.position(a.id):
                out.append(Violation("forward_reaction", "reaction link must name an earlier act", (a.id, a.reaction_to)))

    pair_ids: set[str] = set()
    membership: dict[str, str] = {}
    for p in plan.pairs:
        if p.id in pair_ids:
            out.append(Violation("duplicate_pair", "pair id declared twice", (p.id,)))
        pair_ids.add(p.id)
        missing = [aid for aid in (p.first, p.second) if aid not in act_ids]
        if missing:
            out.append(Violation("dangling_pair_part", "pair names an unknown act", (p.id, *missing)))
            continue
        if p.first == p.second:
            out.append(Violation("degenerate_pair", "pair parts must be two distinct acts", (p.id,)))
            continue
        for aid in (p.first, p.second):
            if aid in membership:
                out.append(Violation("shared_act", "act belongs to more than one pair", (aid, membership[aid], p.id)))
            membership[aid] = p.id
        first, second = plan.act(p.first), plan.act(p.second)
        if second.reaction_to != p.first:
            out.append(Violation("broken_pair_link", "second part does not react to the first part", (p.id,)))
        if ordering_ok:
            fp, sp = plan.position(p.first), plan.position(p.second)
            if fp >= sp:
                out.append(Violation("inverted_pair", "first part does not precede the second", (p.id,)))
            elif sp != fp + 1:
                out.append(Violation("split_pair", "pair parts are not adjacent in the ordering", (p.id,)))
        if p.origin is PairOrigin.INSERTED:
            if first.track is not Track.TRACK2 or second.track is not Track.TRACK2:
                out.append(Violation("inserted_track", "inserted pair has a track1 act", (p.id,)))
        if p.origin is PairOrigin.PLANNER:
            if first.track is not Track.TRACK1 or second.track is not Track.TRACK1:
                out.append(Violation("planner_track", "planner pair has a track2 act", (p.id,)))

    for a in plan.acts:
        if a.id not in membership and a.act_type not in UNPAIRED_TYPES:
            out.append(Violation("unpaired_act", "only openers/closers may stand outside a pair", (a.id,)))

    inserted = sum(p.origin is PairOrigin.INSERTED for p in plan.pairs)
    if plan.inserted_count != inserted:
        out.append(
            Violation(
                "inserted_count_mismatch",
                f"inserted_count is {plan.inserted_count} but {inserted} pairs have origin inserted",
            )
        )
    return out


def _check_permutation(plan: DialoguePlan, act_ids: set[str], out: list[Violation]) -> bool:
    ordering = plan.ordering
    if len(set(ordering)) != len(ordering) or set(ordering) != act_ids:
        missing = sorted(act_ids - set(ordering))
        unknown = sorted(set(ordering) - act_ids)
        dupes = sorted({aid for aid in ordering if ordering.count(aid) > 1})
        out.append(
            Violation(
                "ordering_not_permutation",
                "ordering is not a permutation of the declared act ids",
                tuple(missing + unknown + dupes),
            )
        )
        return False
    return True


def require_valid(plan: DialoguePlan) -> None:
    violations = validate(plan)
    if violations:
        raise InvalidPlanError(violations)


def turn_count(plan: DialoguePlan) -> int:
    """Number of maximal runs of consecutive same-speaker acts."""
    if not plan.ordering:
        raise EmptyPlanError("turn count is undefined for an empty plan")
    turns = 0
    previous = None
    for act in plan.acts_in_order():
        if act.speaker != previous:
            turns += 1
            previous = act.speaker
    return turns


def emphasis_marks(plan: DialoguePlan) -> set[str]:
    """Ids of acts still marked for emphasis (the remaining insert triggers)."""
    return {a.id for a in plan.acts if a.emphasis}
