from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dialogue_revision.plan_model import (
    ActType,
    DialogueAct,
    DialoguePlan,
    EmptyPlanError,
    Participant,
    Role,
    emphasis_marks,
    turn_count,
    validate,
)
from dialogue_revision.random_plans import CUSTOMER, SELLER, random_plan, relabel_plan
from dialogue_revision.revision import apply_insert, insert_sites

from plan_builders import eshowroom_plan, intro_transcript_plan, leather_insert_plan


def test_validate_well_formed_plan():
    assert validate(intro_transcript_plan()) == []
    assert validate(eshowroom_plan()) == []


def test_validate_missing_reaction_link():
    plan = leather_insert_plan()
    broken_acts = tuple(
        replace(a, reaction_to=None) if a.id == "v_2" else a for a in plan.acts
    )
    broken = replace(plan, acts=broken_acts)
    violations = validate(broken)
    assert len(violations) == 1
    assert violations[0].code == "broken_pair_link"
    assert "p_1" in violations[0].ids


def test_validate_ordering_not_permutation():
    plan = leather_insert_plan()
    broken = replace(plan, ordering=("v_1",))
    violations = validate(broken)
    assert len(violations) == 1
    assert violations[0].code == "ordering_not_permutation"
    assert "v_2" in violations[0].ids


def test_validate_speaker_equals_addressee():
    plan = leather_insert_plan()
    acts = tuple(replace(a, addressee=a.speaker) if a.id == "v_1" else a for a in plan.acts)
    codes = {v.code for v in validate(replace(plan, acts=acts))}
    assert "self_addressed" in codes


def test_validate_track_rules():
    plan = leather_insert_plan()
    acts = tuple(replace(a, act_type=ActType.CONFIRM) if a.id == "v_2" else a for a in plan.acts)
    codes = {v.code for v in validate(replace(plan, acts=acts))}
    assert "track_mismatch" in codes


def test_turn_count_intro_transcript():
    # Seller, Buyer, Seller, Seller, Buyer, Seller, Buyer: the two
    # consecutive seller acts form one turn.
    assert turn_count(intro_transcript_plan()) == 6


def test_turn_count_single_act():
    plan = DialoguePlan(
        participants=(SELLER, CUSTOMER),
        acts=(DialogueAct(id="g", act_type=ActType.GREET, speaker="s1", addressee="c1"),),
        pairs=(),
        ordering=("g",),
    )
    assert turn_count(plan) == 1


def test_turn_count_strict_alternation():
    plan = leather_insert_plan()
    assert turn_count(plan) == len(plan.acts) == 2


def test_turn_count_empty_plan_raises():
    empty = DialoguePlan(participants=(), acts=(), pairs=(), ordering=())
    with pytest.raises(EmptyPlanError):
        turn_count(empty)


def test_emphasis_marks_singleton():
    assert emphasis_marks(leather_insert_plan()) == {"v_2"}


def test_emphasis_marks_consumed_by_insertion():
    plan = leather_insert_plan()
    revised = apply_insert(plan, insert_sites(plan)[0])
    assert emphasis_marks(revised) == set()


@given(st.integers(min_value=0, max_value=2000))
@settings(max_examples=60, deadline=None)
def test_emphasis_marks_counts_fresh_marks(seed):
    plan = random_plan(seed)
    assert emphasis_marks(plan) == {a.id for a in plan.acts if a.emphasis}


@given(st.integers(min_value=0, max_value=2000))
@settings(max_examples=60, deadline=None)
def test_turn_count_invariant_under_renaming(seed):
    plan = random_plan(seed)
    assert turn_count(plan) == turn_count(relabel_plan(plan, "x"))


@given(st.integers(min_value=0, max_value=2000))
@settings(max_examples=60, deadline=None)
def test_turn_count_bounds(seed):
    plan = random_plan(seed)
    assert 1 <= turn_count(plan) <= len(plan.acts)


def test_participant_role_enum_is_closed():
    with pytest.raises(ValueError):
        Role("dealer")
    assert {r.value for r in Role} == {"seller", "customer"}


def test_duplicate_participant_flagged():
    plan = leather_insert_plan()
    doubled = replace(plan, participants=plan.participants + (Participant(id="ritchie", name="R", role=Role.SELLER),))
    codes = {v.code for v in validate(doubled)}
    assert "duplicate_participant" in codes
