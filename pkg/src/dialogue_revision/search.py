"""Exhaustive enumeration of the plan space reachable by revision.

Plans are deduplicated by a canonical form that renumbers act and pair
ids by temporal position, so plans differing only in their labels (or
reached by the same operator applications in a different order)
collapse into one member. ``oracle_closure`` is an independent check:
a naive recursive walk over operator application sequences.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .plan_model import DialogueAct, DialoguePlan, SemanticContent
from .revision import aggr_sites, apply_aggr, apply_insert, insert_sites


class MemberCeilingExceeded(RuntimeError):
    """The member set outgrew the configured ceiling; enumeration aborted."""


def _content_encoding(content: SemanticContent | None):
    # drs ids are referential plumbing, not content: they are not part
    # of the canonical form.
    if content is None:
        return None
    return tuple(
        (c.predicate, c.args, c.polarity, tuple(sorted(c.extra.items())))
        for c in content.conditions
    )


def _act_encoding(act: DialogueAct, names: dict[str, str]):
    return (
        names[act.id],
        act.act_type.value,
        act.speaker,
        act.addressee,
        _content_encoding(act.content),
        act.track.value,
        names.get(act.reaction_to) if act.reaction_to else None,
        act.emphasis,
        tuple(sorted(act.extra.items())),
        act.opaque_children,
    )


def canonical_form(plan: DialoguePlan) -> bytes:
    """Deterministic encoding, invariant under act and pair id renaming.

    Act ids are renumbered by temporal position and pair ids by the
    position of their first part, so two plans have equal canonical
    forms exactly when one is an id-relabelling of the other.
    """
    names = {aid: f"a{i}" for i, aid in enumerate(plan.ordering)}
    people = tuple(
        (
            p.id,
            p.name,
            p.role.value,
            tuple(sorted(p.traits.items())),
            tuple(sorted(p.extra.items())),
            p.opaque_children,
        )
        for p in sorted(plan.participants, key=lambda p: p.id)
    )
    acts = tuple(_act_encoding(plan.act(aid), names) for aid in plan.ordering)
    pairs = tuple(
        (
            f"p{i}",
            names[p.first],
            names[p.second],
            p.value_dimension,
            p.origin.value,
            tuple(sorted(p.extra.items())),
        )
        for i, p in enumerate(plan.pairs)
    )
    data = (people, acts, pairs, plan.common_ground, plan.inserted_count)
    return repr(data).encode("utf-8")


def canonical_key(form: bytes) -> str:
    """Short display digest of a canonical form."""
    return hashlib.sha256(form).hexdigest()[:16]


def expansions(plan: DialoguePlan) -> Iterator[tuple[str, str, DialoguePlan]]:
    """All single operator applications, as (op tag, site label, result)."""
    for site in aggr_sites(plan):
        yield "aggr", f"{site.pair_a}+{site.pair_b}", apply_aggr(plan, site)
    for site in insert_sites(plan):
        yield "insert", f"{site.pair}@{site.trigger_act}", apply_insert(plan, site)


@dataclass
class PlanSpace:
    """The closure of a start plan under both operators."""

    start: DialoguePlan
    members: dict[bytes, DialoguePlan]
    edges: frozenset[tuple[str, str, str, str]]
    depths: dict[bytes, int]

    def ordered_members(self) -> list[tuple[bytes, DialoguePlan]]:
        """Members in canonical order (lexicographic over canonical forms)."""
        return sorted(self.members.items(), key=lambda kv: kv[0])

    def max_depth(self) -> int:
        return max(self.depths.values())


def enumerate_closure(start: DialoguePlan, member_ceiling: int = 100_000) -> PlanSpace:
    """Breadth-first worklist expansion of the revision closure.

    Termination is guaranteed: insertion strictly reduces the remaining
    mark count and aggregation the pair count. Output is independent of
    expansion scheduling because members are keyed and later sorted by
    canonical form.
    """
    start_form = canonical_form(start)
    members: dict[bytes, DialoguePlan] = {start_form: start}
    depths: dict[bytes, int] = {start_form: 0}
    edges: set[tuple[str, str, str, str]] = set()
    frontier: deque[bytes] = deque([start_form])
    while frontier:
        form = frontier.popleft()
        plan = members[form]
        src = canonical_key(form)
        for op, site, child in expansions(plan):
            child_form = canonical_form(child)
            edges.add((src, op, site, canonical_key(child_form)))
            if child_form not in members:
                members[child_form] = child
                depths[child_form] = depths[form] + 1
                frontier.append(child_form)
                if len(members) > member_ceiling:
                    raise MemberCeilingExceeded(
                        f"plan space exceeded the member ceiling of {member_ceiling}"
                    )
    return PlanSpace(start=start, members=members, edges=frozenset(edges), depths=depths)


def oracle_closure(start: DialoguePlan) -> set[bytes]:
    """Naive recursive enumeration of operator application sequences.

    Exponential blowup is only avoided by skipping plans whose canonical
    form was already reached; intended for small instances.
    """
    seen: set[bytes] = set()

    def walk(plan: DialoguePlan) -> None:
        form = canonical_form(plan)
        if form in seen:
            return
        seen.add(form)
        for site in aggr_sites(plan):
            walk(apply_aggr(plan, site))
        for site in insert_sites(plan):
            walk(apply_insert(plan, site))

    walk(start)
    return seen


def dump_space(space: PlanSpace) -> str:
    """Line-oriented edge dump: key, op, site, key (tab separated, sorted)."""
    lines = sorted("\t".join(edge) for edge in space.edges)
    return "\n".join(lines) + ("\n" if lines else "")
