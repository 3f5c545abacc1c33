"""Seeded random dialogue plans for property tests and oracle runs.

Plans are always valid by construction and deliberately collide on value
dimensions and speaker orientations, so aggregation sites, multi-mark
pairs and pre-existing clarification pairs all occur with useful
frequency.
"""

from __future__ import annotations

import random
from dataclasses import replace

from .plan_model import (
    ActType,
    AdjacencyPair,
    Condition,
    DialogueAct,
    DialoguePlan,
    PairOrigin,
    Participant,
    Role,
    SemanticContent,
    Track,
    validate,
)

_DIMENSIONS = ("security", "comfort", "economy")
_TOKENS = tuple(f"feat{i}" for i in range(8))

SELLER = Participant(id="s1", name="Sam", role=Role.SELLER)
CUSTOMER = Participant(id="c1", name="Kim", role=Role.CUSTOMER)


def _content(drs: str, *conditions: Condition) -> SemanticContent:
    return SemanticContent(drs_id=drs, conditions=tuple(conditions))


def random_plan(seed: int, max_pairs: int = 6, max_marks: int = 4) -> DialoguePlan:
    """A valid plan with up to max_pairs pairs and max_marks emphasis marks."""
    rng = random.Random(seed)
    acts: list[DialogueAct] = []
    pairs: list[AdjacencyPair] = []
    ordering: list[str] = []
    counter = 0

    def next_id(prefix: str) -> str:
        nonlocal counter
        counter += 1
        return f"{prefix}{counter}"

    if rng.random() < 0.3:
        gid = next_id("v")
        acts.append(DialogueAct(id=gid, act_type=ActType.GREET, speaker="s1", addressee="c1"))
        ordering.append(gid)

    n_pairs = rng.randint(1, max_pairs)
    for _ in range(n_pairs):
        dim = rng.choice(_DIMENSIONS)
        asker, answerer = ("c1", "s1") if rng.random() < 0.7 else ("s1", "c1")
        token = rng.choice(_TOKENS)
        first_id, second_id, pair_id = next_id("v"), next_id("v"), next_id("p")

        if rng.random() < 0.12:
            # A clarification subdialogue already present in the input.
            first = DialogueAct(
                id=first_id, act_type=ActType.CLARIFY_REQUEST, speaker=asker,
                addressee=answerer, track=Track.TRACK2,
                content=_content(f"d{first_id}", Condition("attribute", ("x_1", token))),
            )
            second = DialogueAct(
                id=second_id, act_type=ActType.CONFIRM, speaker=answerer,
                addressee=asker, track=Track.TRACK2, reaction_to=first_id,
                content=_content(f"d{second_id}", Condition("attribute", ("x_1", token))),
            )
            origin = PairOrigin.INSERTED
        else:
            first_type = ActType.QUESTION if rng.random() < 0.8 else ActType.INFORM
            first = DialogueAct(
                id=first_id, act_type=first_type, speaker=asker, addressee=answerer,
                content=_content(f"d{first_id}", Condition("attribute", ("x_1", token))),
            )
            answer_token = token if rng.random() < 0.6 else rng.choice(_TOKENS)
            second = DialogueAct(
                id=second_id, act_type=ActType.INFORM, speaker=answerer,
                addressee=asker, reaction_to=first_id,
                content=_content(f"d{second_id}", Condition("attribute", ("x_1", answer_token, "true"))),
            )
            origin = PairOrigin.PLANNER

        acts.extend([first, second])
        ordering.extend([first_id, second_id])
        pairs.append(AdjacencyPair(id=pair_id, first=first_id, second=second_id,
                                   value_dimension=dim, origin=origin))

        if rng.random() < 0.15:
            aid = next_id("v")
            speaker = rng.choice(("s1", "c1"))
            other = "c1" if speaker == "s1" else "s1"
            acts.append(DialogueAct(id=aid, act_type=ActType.ACKNOWLEDGE,
                                    speaker=speaker, addressee=other))
            ordering.append(aid)

    markable = [
        a.id for a in acts
        if a.track is Track.TRACK1 and a.content is not None
        and any(a.id in (p.first, p.second) for p in pairs)
    ]
    rng.shuffle(markable)
    marked = set(markable[: rng.randint(0, max_marks)])
    acts = [replace(a, emphasis=True) if a.id in marked else a for a in acts]

    plan = DialoguePlan(
        participants=(SELLER, CUSTOMER),
        acts=tuple(acts),
        pairs=tuple(pairs),
        ordering=tuple(ordering),
    )
    assert validate(plan) == [], f"generator produced an invalid plan for seed {seed}"
    return plan


def relabel_plan(plan: DialoguePlan, suffix: str) -> DialoguePlan:
    """Isomorphic copy with every act and pair id renamed."""
    mapping = {a.id: f"{a.id}_{suffix}" for a in plan.acts}

    def remap(aid):
        return mapping[aid] if aid is not None else None

    acts = tuple(
        replace(a, id=mapping[a.id], reaction_to=remap(a.reaction_to)) for a in plan.acts
    )
    pairs = tuple(
        replace(p, id=f"{p.id}_{suffix}", first=mapping[p.first], second=mapping[p.second])
        for p in plan.pairs
    )
    return DialoguePlan(
        participants=plan.participants,
        acts=acts,
        pairs=pairs,
        ordering=tuple(mapping[aid] for aid in plan.ordering),
        common_ground=plan.common_ground,
    )


def random_score_set(seed: int, min_size: int = 2, max_size: int = 50) -> list[tuple[float, float]]:
    """Random (s_t, s_e) values in [0, 100]; grid draws make exact ties common."""
    rng = random.Random(seed)
    n = rng.randint(min_size, max_size)
    out = []
    for _ in range(n):
        if rng.random() < 0.5:
            out.append((float(rng.randrange(0, 101, 10)), float(rng.randrange(0, 101, 10))))
        else:
            out.append((round(rng.uniform(0, 100), 3), round(rng.uniform(0, 100), 3)))
    return out
