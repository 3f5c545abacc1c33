"""The two plan revision operators: pair aggregation and clarification insertion.

Both operators are pure plan-to-plan transformations. A plan plus a site
fully determines the output, and both map valid plans to valid plans.
Every application strictly shrinks the potential (emphasis marks, pair
count) under lexicographic order, so revision always terminates:
insertion consumes a mark (and never creates one), aggregation removes
a pair.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .plan_model import (
    ActType,
    AdjacencyPair,
    DialogueAct,
    DialoguePlan,
    PairOrigin,
    SemanticContent,
    Track,
)


class PreconditionError(ValueError):
    """Raised when an operator is applied to a site it does not license."""


@dataclass(frozen=True)
class AggrSite:
    """Two distinct pairs on the same value dimension, part-compatible."""

    pair_a: str
    pair_b: str


@dataclass(frozen=True)
class InsertSite:
    """An emphasis-marked act inside a pair, triggering a clarification."""

    pair: str
    trigger_act: str


def _parts_compatible(a: DialogueAct, b: DialogueAct) -> bool:
    # Merging is only realizable as one utterance when both parts share
    # speaker, addressee and act type.
    return (
        a.speaker == b.speaker
        and a.addressee == b.addressee
        and a.act_type is b.act_type
    )


def aggr_sites(plan: DialoguePlan) -> list[AggrSite]:
    """All aggregation sites, in temporal order of (pair_a, pair_b)."""
    sites = []
    pairs = plan.pairs  # already sorted by temporal position
    for i, pa in enumerate(pairs):
        for pb in pairs[i + 1 :]:
            if pa.value_dimension != pb.value_dimension:
                continue
            if not _parts_compatible(plan.act(pa.first), plan.act(pb.first)):
                continue
            if not _parts_compatible(plan.act(pa.second), plan.act(pb.second)):
                continue
            sites.append(AggrSite(pair_a=pa.id, pair_b=pb.id))
    return sites


def insert_sites(plan: DialoguePlan) -> list[InsertSite]:
    """One site per emphasis-marked act inside a pair, in temporal order."""
    sites = []
    for act in plan.acts_in_order():
        if not act.emphasis:
            continue
        pair = plan.pair_of_act(act.id)
        if pair is not None:
            sites.append(InsertSite(pair=pair.id, trigger_act=act.id))
    return sites


def _merge_content(a: SemanticContent | None, b: SemanticContent | None) -> SemanticContent | None:
    if a is None and b is None:
        return None
    if a is None:
        return b
    if b is None:
        return a
    return SemanticContent(drs_id=a.drs_id, conditions=a.conditions + b.conditions, extra=a.extra)


def apply_aggr(plan: DialoguePlan, site: AggrSite) -> DialoguePlan:
    """Merge pair_b into pair_a at pair_a's temporal position.

    The merged first part concatenates both first parts' conditions (a
    then b), likewise for the second parts; merged acts keep pair_a's
    speaker, addressee and type; emphasis marks survive by disjunction.
    Reaction links into the removed acts are redirected to their merged
    counterparts.
    """
    if site not in aggr_sites(plan):
        raise PreconditionError(f"aggregation site {site.pair_a}+{site.pair_b} is not applicable")
    pa = plan.pair(site.pair_a)
    pb = plan.pair(site.pair_b)
    a1, a2 = plan.act(pa.first), plan.act(pa.second)
    b1, b2 = plan.act(pb.first), plan.act(pb.second)

    merged_first = replace(
        a1,
        content=_merge_content(a1.content, b1.content),
        emphasis=a1.emphasis or b1.emphasis,
    )
    merged_second = replace(
        a2,
        content=_merge_content(a2.content, b2.content),
        emphasis=a2.emphasis or b2.emphasis,
    )

    removed = {b1.id: a1.id, b2.id: a2.id}
    new_acts = []
    for act in plan.acts:
        if act.id in removed:
            continue
        if act.id == a1.id:
            act = merged_first
        elif act.id == a2.id:
            act = merged_second
        if act.reaction_to in removed:
            act = replace(act, reaction_to=removed[act.reaction_to])
        new_acts.append(act)

    new_pairs = [
        replace(p, origin=PairOrigin.AGGREGATED) if p.id == pa.id else p
        for p in plan.pairs
        if p.id != pb.id
    ]
    new_ordering = tuple(aid for aid in plan.ordering if aid not in removed)
    return DialoguePlan(
        participants=plan.participants,
        acts=tuple(new_acts),
        pairs=tuple(new_pairs),
        ordering=new_ordering,
        common_ground=plan.common_ground,
    )


def _fresh_id(base: str, taken: set[str]) -> str:
    candidate = base
    n = 1
    while candidate in taken:
        candidate = f"{base}{n}"
        n += 1
    return candidate


def apply_insert(plan: DialoguePlan, site: InsertSite) -> DialoguePlan:
    """Insert a clarification subdialogue right after the trigger's pair.

    The new pair is (clarify_request, confirm) on track 2: the hearer of
    the original exchange echoes the trigger's conditions, the original
    speaker confirms them. The trigger's emphasis mark is consumed, and
    the created acts are never marked, so insertion cannot feed itself.
    """
    if site not in insert_sites(plan):
        raise PreconditionError(f"insert site {site.pair}@{site.trigger_act} is not applicable")
    pair = plan.pair(site.pair)
    trigger = plan.act(site.trigger_act)
    second = plan.act(pair.second)

    act_ids = {a.id for a in plan.acts}
    q_id = _fresh_id(f"{trigger.id}_cq", act_ids)
    act_ids.add(q_id)
    f_id = _fresh_id(f"{trigger.id}_cf", act_ids)
    pair_id = _fresh_id(f"{trigger.id}_cp", {p.id for p in plan.pairs})

    echoed = tuple(trigger.content.conditions)
    confirmed = tuple(replace(c, polarity=True) for c in echoed)
    clarify = DialogueAct(
        id=q_id,
        act_type=ActType.CLARIFY_REQUEST,
        speaker=second.addressee,
        addressee=second.speaker,
        content=SemanticContent(drs_id=f"{q_id}_d", conditions=echoed),
        track=Track.TRACK2,
        reaction_to=trigger.id,
    )
    confirm = DialogueAct(
        id=f_id,
        act_type=ActType.CONFIRM,
        speaker=second.speaker,
        addressee=second.addressee,
        content=SemanticContent(drs_id=f"{f_id}_d", conditions=confirmed),
        track=Track.TRACK2,
        reaction_to=q_id,
    )

    new_acts = [
        replace(a, emphasis=False) if a.id == trigger.id else a for a in plan.acts
    ]
    new_acts.extend([clarify, confirm])

    after = plan.position(pair.second) + 1
    new_ordering = plan.ordering[:after] + (q_id, f_id) + plan.ordering[after:]
    new_pair = AdjacencyPair(
        id=pair_id,
        first=q_id,
        second=f_id,
        value_dimension=pair.value_dimension,
        origin=PairOrigin.INSERTED,
    )
    return DialoguePlan(
        participants=plan.participants,
        acts=tuple(new_acts),
        pairs=plan.pairs + (new_pair,),
        ordering=new_ordering,
        common_ground=plan.common_ground,
    )
