"""Template-based rendering of a plan as a performable transcript.

One line per act, ``LABEL: sentence``, in temporal order. Sentences come
from deterministic act-type templates filled with lexicon phrases, so
identical (plan, lexicon) inputs always yield byte-identical text. This
is a stand-in for a full language generator: no morphology, agreement
or referring expressions.

Lexicon file format (UTF-8, line oriented, ``token<TAB>phrase``):

* ``speaker:<participant id>`` entries give display labels.
* Ordinary entries map a condition's surface token (its second argument,
  or its only argument) to a phrase. A phrase may carry a kind prefix:
  ``has|`` (default) slots into "It has X." / "Does it have X?",
  ``is|`` into "It is X." / "Is it X?", and ``v|`` is used verbatim as
  the whole sentence.
* ``<token>:clarify`` and ``<token>:confirm`` entries override the echo
  templates for clarification subdialogues about that token.

An inform that reacts to a question restating exactly the question's
conditions renders as the polar answer "Yes." (or "No." when every
condition is negated) rather than repeating the phrase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .plan_model import (
    ActType,
    Condition,
    DialogueAct,
    DialoguePlan,
    InvalidPlanError,
    validate,
)

_KINDS = ("has", "is", "v")


class LexiconGapError(KeyError):
    """A token occurring in the plan has no lexicon entry."""

    def __init__(self, token: str):
        self.token = token
        super().__init__(f"lexicon has no entry for {token!r}")


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, str] = field(default_factory=dict)
    speaker_labels: Mapping[str, str] = field(default_factory=dict)


def load_lexicon(path) -> Lexicon:
    entries: dict[str, str] = {}
    labels: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            token, _, phrase = line.partition("\t")
            if not _:
                raise ValueError(f"lexicon line has no tab separator: {line!r}")
            if token.startswith("speaker:"):
                labels[token[len("speaker:"):]] = phrase
            else:
                entries[token] = phrase
    return Lexicon(entries=entries, speaker_labels=labels)


def surface_token(condition: Condition) -> str:
    """The argument a condition is rendered from."""
    return condition.args[1] if len(condition.args) >= 2 else condition.args[0]


def _entry(lexicon: Lexicon, token: str) -> tuple[str, str]:
    phrase = lexicon.entries.get(token)
    if phrase is None:
        raise LexiconGapError(token)
    for kind in _KINDS:
        prefix = kind + "|"
        if phrase.startswith(prefix):
            return kind, phrase[len(prefix):]
    return "has", phrase


def _join(phrases: list[str]) -> str:
    joined = phrases[0]
    for phrase in phrases[1:]:
        joined += " and " + phrase
    return joined


def _is_polar_answer(plan: DialoguePlan, act: DialogueAct) -> bool:
    if act.act_type is not ActType.INFORM or act.reaction_to is None:
        return False
    if not plan.has_act(act.reaction_to):
        return False
    question = plan.act(act.reaction_to)
    if question.act_type is not ActType.QUESTION or question.content is None:
        return False
    asked = sorted((c.predicate, c.args) for c in question.content.conditions)
    stated = sorted((c.predicate, c.args) for c in act.content.conditions)
    return asked == stated


def _render(plan: DialoguePlan, act: DialogueAct, lexicon: Lexicon) -> str:
    conditions = act.content.conditions if act.content else ()
    if not conditions:
        fallbacks = {
            ActType.GREET: "Hello.",
            ActType.ACKNOWLEDGE: "I see.",
            ActType.CLARIFY_REQUEST: "Really?",
            ActType.CONFIRM: "Yes.",
        }
        return fallbacks[act.act_type]

    if _is_polar_answer(plan, act):
        return "No." if all(not c.polarity for c in conditions) else "Yes."

    kinds_phrases = [_entry(lexicon, surface_token(c)) for c in conditions]
    kind = kinds_phrases[0][0]
    phrases = [p for _, p in kinds_phrases]
    joined = _join(phrases)

    if act.act_type in (ActType.CLARIFY_REQUEST, ActType.CONFIRM):
        suffix = "clarify" if act.act_type is ActType.CLARIFY_REQUEST else "confirm"
        if len(conditions) == 1:
            override = lexicon.entries.get(f"{surface_token(conditions[0])}:{suffix}")
            if override is not None:
                return override
        if act.act_type is ActType.CLARIFY_REQUEST:
            if kind == "v":
                return joined
            return f"Really {joined}?" if kind == "is" else f"Real {joined}?"
        return joined if kind == "v" else f"Yes, {joined}."

    if kind == "v":
        return joined
    if act.act_type is ActType.QUESTION:
        return f"Is it {joined}?" if kind == "is" else f"Does it have {joined}?"
    # inform, greet and acknowledge all state the content
    return f"It is {joined}." if kind == "is" else f"It has {joined}."


def realize(plan: DialoguePlan, lexicon: Lexicon) -> str:
    """Render the whole plan, one labelled line per act, LF endings."""
    violations = validate(plan)
    if violations:
        raise InvalidPlanError(violations)

    # Check coverage up front so gaps surface as one named error.
    for act in plan.acts_in_order():
        if act.speaker not in lexicon.speaker_labels:
            raise LexiconGapError(f"speaker:{act.speaker}")
        for condition in act.content.conditions if act.content else ():
            _entry(lexicon, surface_token(condition))

    lines = []
    for act in plan.acts_in_order():
        label = lexicon.speaker_labels[act.speaker]
        lines.append(f"{label}: {_render(plan, act, lexicon)}")
    return "\n".join(lines) + ("\n" if lines else "")
