from __future__ import annotations

from dataclasses import replace

import pytest

from dialogue_revision.plan_model import DialoguePlan, InvalidPlanError, PairOrigin, Track
from dialogue_revision.realizer import Lexicon, LexiconGapError, load_lexicon, realize
from dialogue_revision.revision import apply_insert, insert_sites

from plan_builders import (
    eshowroom_plan,
    intro_transcript_plan,
    leather_insert_plan,
    minimal_plan,
)


def test_intro_transcript_lines(lexicon, golden_dir):
    text = realize(intro_transcript_plan(), lexicon)
    assert text == (golden_dir / "intro_transcript.txt").read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "Seller: Hello! How can I help?"
    assert lines[3] == "Seller: It has leather seats."
    assert lines[6] == "Buyer: I see."


def test_line_count_and_labels_follow_ordering(lexicon):
    plan = eshowroom_plan()
    lines = realize(plan, lexicon).strip().split("\n")
    assert len(lines) == len(plan.acts)
    labels = [line.split(":", 1)[0] for line in lines]
    expected = ["Seller" if plan.act(a).speaker == "ritchie" else "Buyer" for a in plan.ordering]
    assert labels == expected


def test_realization_is_pure(lexicon):
    plan = eshowroom_plan()
    assert realize(plan, lexicon) == realize(plan, lexicon)


def test_lexicon_gap_names_the_token(lexicon):
    stripped = Lexicon(
        entries={k: v for k, v in lexicon.entries.items() if k != "airbags"},
        speaker_labels=lexicon.speaker_labels,
    )
    with pytest.raises(LexiconGapError) as err:
        realize(eshowroom_plan(), stripped)
    assert err.value.token == "airbags"


def test_missing_speaker_label_is_a_gap(lexicon):
    unlabelled = Lexicon(entries=lexicon.entries, speaker_labels={"ritchie": "Seller"})
    with pytest.raises(LexiconGapError) as err:
        realize(intro_transcript_plan(), unlabelled)
    assert err.value.token == "speaker:tina"


def test_invalid_plan_refused(lexicon):
    plan = minimal_plan()
    broken = DialoguePlan(
        participants=plan.participants, acts=plan.acts, pairs=plan.pairs,
        ordering=("v_1", "ghost"),
    )
    with pytest.raises(InvalidPlanError):
        realize(broken, lexicon)


def test_track2_lines_are_pure_decoration(lexicon):
    # dropping every track-2 line equals realizing the plan with its
    # inserted pairs removed
    plan = leather_insert_plan()
    revised = apply_insert(plan, insert_sites(plan)[0])
    full = realize(revised, lexicon).strip().split("\n")

    track2 = {a.id for a in revised.acts if a.track is Track.TRACK2}
    kept = [
        line
        for line, aid in zip(full, revised.ordering)
        if aid not in track2
    ]

    inserted = {p.id for p in revised.pairs if p.origin is PairOrigin.INSERTED}
    removed_acts = {aid for p in revised.pairs if p.id in inserted for aid in (p.first, p.second)}
    stripped = DialoguePlan(
        participants=revised.participants,
        acts=tuple(a for a in revised.acts if a.id not in removed_acts),
        pairs=tuple(p for p in revised.pairs if p.id not in inserted),
        ordering=tuple(aid for aid in revised.ordering if aid not in removed_acts),
        common_ground=revised.common_ground,
    )
    assert kept == realize(stripped, lexicon).strip().split("\n")


def test_clarification_wording_overrides(lexicon):
    plan = leather_insert_plan()
    revised = apply_insert(plan, insert_sites(plan)[0])
    lines = realize(revised, lexicon).strip().split("\n")
    assert lines[2] == "Buyer: Real leather?"
    assert lines[3] == "Seller: Yes, genuine leather seats."


def test_default_echo_templates():
    # without overrides the clarification echoes the trigger phrase
    plan = leather_insert_plan()
    revised = apply_insert(plan, insert_sites(plan)[0])
    bare = Lexicon(
        entries={"leather_seats": "leather seats"},
        speaker_labels={"ritchie": "Seller", "tina": "Buyer"},
    )
    lines = realize(revised, bare).strip().split("\n")
    assert lines[2] == "Buyer: Real leather seats?"
    assert lines[3] == "Seller: Yes, leather seats."


def test_load_lexicon_round_trip(fixtures_dir, lexicon):
    again = load_lexicon(fixtures_dir / "lexicon.tsv")
    assert again == lexicon
    assert lexicon.speaker_labels == {"ritchie": "Seller", "tina": "Buyer"}


def test_acts_without_content_use_type_fallbacks(lexicon):
    plan = minimal_plan()  # a single greet with no content
    assert realize(plan, lexicon) == "Seller: Hello.\n"
