"""Programmatic builders for the bundled fixture plans.

The .rrl.xml files under fixtures/ are the serialized forms of these
plans; tests cross-check that parsing the files yields exactly these
values.
"""

from __future__ import annotations

from dataclasses import replace

from dialogue_revision.plan_model import (
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
)

RITCHIE = Participant(
    id="ritchie",
    name="Ritchie",
    role=Role.SELLER,
    traits={"agreeableness": 0.8, "extraversion": 0.8, "neuroticism": 0.2},
    extra={
        "realname.title": "Mr",
        "personality.politeness": "polite",
        "domain.x-position": "70",
        "domain.y-position": "200",
    },
    opaque_children=('<gender type="male"/>',),
)
TINA = Participant(id="tina", name="Tina", role=Role.CUSTOMER)


def _attr(*args: str, polarity: bool = True, extra=None) -> Condition:
    return Condition(predicate="attribute", args=args, polarity=polarity, extra=extra or {})


def _utt(token: str) -> SemanticContent:
    return SemanticContent(drs_id="", conditions=(Condition(predicate="utterance", args=(token,)),))


def intro_transcript_plan() -> DialoguePlan:
    """The showroom opening: seven acts, six turns, three pairs."""
    acts = (
        DialogueAct(id="v_1", act_type=ActType.GREET, speaker="ritchie", addressee="tina",
                    content=_utt("greet_open")),
        DialogueAct(id="v_2", act_type=ActType.QUESTION, speaker="tina", addressee="ritchie",
                    content=_utt("tell_about"), reaction_to="v_1"),
        DialogueAct(id="v_3", act_type=ActType.INFORM, speaker="ritchie", addressee="tina",
                    content=SemanticContent(drs_id="d_2", conditions=(_attr("x_1", "comfortable", "true"),)),
                    reaction_to="v_2"),
        DialogueAct(id="v_4", act_type=ActType.INFORM, speaker="ritchie", addressee="tina",
                    content=SemanticContent(
                        drs_id="d_3",
                        conditions=(_attr("x_1", "leather_seats", "true", extra={"id": "c_4"}),),
                        extra={"id": "d_4"},
                    ),
                    reaction_to="v_3"),
        DialogueAct(id="v_5", act_type=ActType.QUESTION, speaker="tina", addressee="ritchie",
                    content=SemanticContent(drs_id="d_5", conditions=(_attr("x_1", "consumption"),))),
        DialogueAct(id="v_6", act_type=ActType.INFORM, speaker="ritchie", addressee="tina",
                    content=SemanticContent(drs_id="d_6", conditions=(_attr("x_1", "consumption_8l", "true"),)),
                    reaction_to="v_5"),
        DialogueAct(id="v_7", act_type=ActType.ACKNOWLEDGE, speaker="tina", addressee="ritchie",
                    content=_utt("ack_seen"), reaction_to="v_6"),
    )
    pairs = (
        AdjacencyPair(id="p_1", first="v_1", second="v_2", value_dimension="general"),
        AdjacencyPair(id="p_2", first="v_3", second="v_4", value_dimension="comfort"),
        AdjacencyPair(id="p_3", first="v_5", second="v_6", value_dimension="economy"),
    )
    return DialoguePlan(
        participants=(RITCHIE, TINA),
        acts=acts,
        pairs=pairs,
        ordering=tuple(f"v_{i}" for i in range(1, 8)),
        common_ground='<drs id="cg_1"/>',
    )


def _qa_pair(qid, aid, pid, token, dimension, *, emphasis=False):
    question = DialogueAct(
        id=qid, act_type=ActType.QUESTION, speaker="tina", addressee="ritchie",
        content=SemanticContent(drs_id=f"d_{qid}", conditions=(_attr("x_1", token, "true"),)),
    )
    answer = DialogueAct(
        id=aid, act_type=ActType.INFORM, speaker="ritchie", addressee="tina",
        content=SemanticContent(drs_id=f"d_{aid}", conditions=(_attr("x_1", token, "true"),)),
        reaction_to=qid, emphasis=emphasis,
    )
    return (question, answer), AdjacencyPair(id=pid, first=qid, second=aid, value_dimension=dimension)


def eshowroom_plan() -> DialoguePlan:
    """Main demo plan: the opening plus two security questions.

    The leather-seats answer is marked for emphasis, and the airbags/ABS
    pairs share the security dimension, so both operators apply.
    """
    base = intro_transcript_plan()
    acts = {a.id: a for a in base.acts}
    acts["v_4"] = replace(acts["v_4"], emphasis=True)
    (q_air, a_air), p_air = _qa_pair("v_8", "v_9", "p_4", "airbags", "security")
    (q_abs, a_abs), p_abs = _qa_pair("v_10", "v_11", "p_5", "abs", "security")
    ordering = ("v_1", "v_2", "v_3", "v_4", "v_5", "v_6", "v_8", "v_9", "v_10", "v_11", "v_7")
    return DialoguePlan(
        participants=base.participants,
        acts=tuple(acts.values()) + (q_air, a_air, q_abs, a_abs),
        pairs=base.pairs + (p_air, p_abs),
        ordering=ordering,
        common_ground=base.common_ground,
    )


def aggregation_pair_plan() -> DialoguePlan:
    """Two same-dimension question/answer pairs, ready to aggregate."""
    (q_air, a_air), p_air = _qa_pair("v_1", "v_2", "p_1", "airbags", "security")
    (q_abs, a_abs), p_abs = _qa_pair("v_3", "v_4", "p_2", "abs", "security")
    return DialoguePlan(
        participants=(RITCHIE, TINA),
        acts=(q_air, a_air, q_abs, a_abs),
        pairs=(p_air, p_abs),
        ordering=("v_1", "v_2", "v_3", "v_4"),
    )


def leather_insert_plan() -> DialoguePlan:
    """One pair whose answer is marked for emphasis."""
    (q, a), p = _qa_pair("v_1", "v_2", "p_1", "leather_seats", "comfort", emphasis=True)
    return DialoguePlan(
        participants=(RITCHIE, TINA),
        acts=(q, a),
        pairs=(p,),
        ordering=("v_1", "v_2"),
    )


def pathology_plan() -> DialoguePlan:
    """One mark whose insertion creates a fresh aggregation candidate.

    The input already carries a clarification pair on the security
    dimension; inserting from the marked answer adds a second one that
    is part-compatible with it, which no aggregation pass that ran
    before the insertion could have seen.
    """
    (q, a), p1 = _qa_pair("v_1", "v_2", "p_1", "alarm", "security", emphasis=True)
    clarify = DialogueAct(
        id="v_3", act_type=ActType.CLARIFY_REQUEST, speaker="tina", addressee="ritchie",
        content=SemanticContent(drs_id="d_v3", conditions=(_attr("x_1", "airbags", "true"),)),
        track=Track.TRACK2,
    )
    confirm = DialogueAct(
        id="v_4", act_type=ActType.CONFIRM, speaker="ritchie", addressee="tina",
        content=SemanticContent(drs_id="d_v4", conditions=(_attr("x_1", "airbags", "true"),)),
        track=Track.TRACK2, reaction_to="v_3",
    )
    p2 = AdjacencyPair(id="p_2", first="v_3", second="v_4", value_dimension="security",
                       origin=PairOrigin.INSERTED)
    return DialoguePlan(
        participants=(RITCHIE, TINA),
        acts=(q, a, clarify, confirm),
        pairs=(p1, p2),
        ordering=("v_1", "v_2", "v_3", "v_4"),
    )


def minimal_plan() -> DialoguePlan:
    """Smallest non-empty plan: a single unpaired greeting."""
    return DialoguePlan(
        participants=(RITCHIE, TINA),
        acts=(DialogueAct(id="v_1", act_type=ActType.GREET, speaker="ritchie", addressee="tina"),),
        pairs=(),
        ordering=("v_1",),
    )


LEXICON_TEXT = """\
# Display labels
speaker:ritchie\tSeller
speaker:tina\tBuyer
# Verbatim utterances
greet_open\tv|Hello! How can I help?
tell_about\tv|Can you tell me something about this car?
consumption\tv|How much does it consume?
consumption_8l\tv|It consumes 8 liters per 60 miles.
ack_seen\tv|I see.
# Feature phrases
comfortable\tis|very comfortable
leather_seats\tleather seats
leather_seats:clarify\tReal leather?
leather_seats:confirm\tYes, genuine leather seats.
airbags\tairbags
abs\tABS
alarm\tan alarm system
alarm:clarify\tDoes it really have an alarm?
alarm:confirm\tYes, a full alarm system.
"""
