"""Parse and serialize the dialogue-script interchange format (.rrl.xml).

A script document has four sections in fixed order: common ground
(carried opaquely), participants, dialogue acts, temporal ordering.
Adjacency pairs, act emphasis and act track are carried by extension
markup inside the acts section; see docs/rrl-subset.md for the grammar.

Serialization is canonical: UTF-8, two-space indentation, alphabetical
attribute order, acts in temporal order, defaulted attributes omitted.
Unknown attributes inside known elements and unknown children of person
and act elements are preserved as opaque payload, re-emitted in a
canonical single-line form, so serialize(parse(x)) is a fixpoint of
parse-then-serialize.
"""

from __future__ import annotations

import re
from xml.etree import ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from .plan_model import (
    ActType,
    AdjacencyPair,
    Condition,
    DialogueAct,
    DialoguePlan,
    InvalidPlanError,
    PairOrigin,
    Participant,
    Role,
    SemanticContent,
    Track,
    validate,
)

_ID_RE = re.compile(r"^[A-Za-z0-9_]+$")
_SECTIONS = ("commonGround", "participants", "dialogueActs", "temporalOrdering")
_ARG_ATTRS = ("argOne", "argTwo", "argThree")
_COND_TAGS = {"unaryCond": 1, "binaryCond": 2, "ternaryCond": 3}


class RrlParseError(ValueError):
    """Malformed or invalid script document."""


def _compact(elem: ET.Element) -> str:
    """Canonical single-line rendering of an opaque subtree."""
    attrs = "".join(f" {k}={quoteattr(v)}" for k, v in sorted(elem.attrib.items()))
    inner = ""
    if elem.text and elem.text.strip():
        inner += escape(elem.text.strip())
    for child in elem:
        inner += _compact(child)
        if child.tail and child.tail.strip():
            inner += escape(child.tail.strip())
    if inner:
        return f"<{elem.tag}{attrs}>{inner}</{elem.tag}>"
    return f"<{elem.tag}{attrs}/>"


def _check_id(token: str, what: str) -> str:
    if not _ID_RE.match(token):
        raise RrlParseError(f"{what} id {token!r} is not a token of [A-Za-z0-9_]+")
    return token


def _required(elem: ET.Element, attr: str, what: str) -> str:
    value = elem.get(attr)
    if value is None:
        raise RrlParseError(f"{what} element is missing its {attr!r} attribute")
    return value


def _parse_person(elem: ET.Element) -> Participant:
    pid = _check_id(_required(elem, "id", "person"), "person")
    extra: dict[str, str] = {}
    for k, v in elem.attrib.items():
        if k != "id":
            extra[f"person.{k}"] = v
    name = ""
    role: Role | None = None
    traits: dict[str, float] = {}
    opaque: list[str] = []
    for child in elem:
        if child.tag == "realname":
            name = child.get("firstname", "")
            for k, v in child.attrib.items():
                if k != "firstname":
                    extra[f"realname.{k}"] = v
        elif child.tag == "personality":
            for k, v in child.attrib.items():
                try:
                    traits[k] = float(v)
                except ValueError:
                    extra[f"personality.{k}"] = v
        elif child.tag == "domainSpecificAttr":
            for k, v in child.attrib.items():
                if k == "role":
                    try:
                        role = Role(v)
                    except ValueError:
                        raise RrlParseError(f"person {pid}: unknown role {v!r}") from None
                else:
                    extra[f"domain.{k}"] = v
        else:
            opaque.append(_compact(child))
    if role is None:
        raise RrlParseError(f"person {pid}: no role declared")
    return Participant(
        id=pid, name=name, role=role, traits=traits, extra=extra,
        opaque_children=tuple(opaque),
    )


def _parse_condition(elem: ET.Element) -> Condition:
    arity = _COND_TAGS[elem.tag]
    args = []
    for attr in _ARG_ATTRS[:arity]:
        args.append(_required(elem, attr, elem.tag))
    polarity = True
    extra: dict[str, str] = {}
    for k, v in elem.attrib.items():
        if k in _ARG_ATTRS or k == "pred":
            continue
        if k == "polarity":
            polarity = v != "false"
        else:
            extra[k] = v
    return Condition(
        predicate=_required(elem, "pred", elem.tag),
        args=tuple(args),
        polarity=polarity,
        extra=extra,
    )


def _parse_content(elem: ET.Element) -> SemanticContent:
    extra: dict[str, str] = {}
    if elem.get("id"):
        extra["id"] = elem.get("id")
    drs = elem.find("drs")
    if drs is None:
        raise RrlParseError("semanticContent element has no drs child")
    conditions = []
    for child in drs:
        if child.tag not in _COND_TAGS:
            raise RrlParseError(f"unknown condition element {child.tag!r} inside drs")
        conditions.append(_parse_condition(child))
    return SemanticContent(drs_id=drs.get("id", ""), conditions=tuple(conditions), extra=extra)


def _parse_act(elem: ET.Element) -> DialogueAct:
    aid = _check_id(_required(elem, "id", "dialogueAct"), "dialogueAct")
    emphasis = False
    track = Track.TRACK1
    extra: dict[str, str] = {}
    for k, v in elem.attrib.items():
        if k == "id":
            continue
        if k == "emphasis":
            emphasis = v == "true"
        elif k == "track":
            try:
                track = Track(v)
            except ValueError:
                raise RrlParseError(f"act {aid}: unknown track {v!r}") from None
        else:
            extra[f"act.{k}"] = v

    act_type: ActType | None = None
    speaker = addressee = None
    content: SemanticContent | None = None
    reaction_to: str | None = None
    opaque: list[str] = []
    for child in elem:
        if child.tag == "domainSpecificAttr":
            for k, v in child.attrib.items():
                if k == "type":
                    try:
                        act_type = ActType(v)
                    except ValueError:
                        raise RrlParseError(f"act {aid}: unknown act type {v!r}") from None
                else:
                    extra[f"domain.{k}"] = v
        elif child.tag == "speaker":
            speaker = _required(child, "id", "speaker")
        elif child.tag == "addressee":
            addressee = _required(child, "id", "addressee")
        elif child.tag == "semanticContent":
            content = _parse_content(child)
        elif child.tag == "reactionTo":
            reaction_to = _required(child, "id", "reactionTo")
        else:
            opaque.append(_compact(child))
    if act_type is None:
        raise RrlParseError(f"act {aid}: no type declared")
    if speaker is None or addressee is None:
        raise RrlParseError(f"act {aid}: speaker and addressee are both required")
    return DialogueAct(
        id=aid, act_type=act_type, speaker=speaker, addressee=addressee,
        content=content, track=track, reaction_to=reaction_to, emphasis=emphasis,
        extra=extra, opaque_children=tuple(opaque),
    )


def _parse_pair(elem: ET.Element) -> AdjacencyPair:
    pid = _check_id(_required(elem, "id", "adjacencyPair"), "adjacencyPair")
    origin = PairOrigin.PLANNER
    extra: dict[str, str] = {}
    for k, v in elem.attrib.items():
        if k in ("id", "first", "second", "dimension"):
            continue
        if k == "origin":
            try:
                origin = PairOrigin(v)
            except ValueError:
                raise RrlParseError(f"pair {pid}: unknown origin {v!r}") from None
        else:
            extra[f"pair.{k}"] = v
    return AdjacencyPair(
        id=pid,
        first=_required(elem, "first", "adjacencyPair"),
        second=_required(elem, "second", "adjacencyPair"),
        value_dimension=_required(elem, "dimension", "adjacencyPair"),
        origin=origin,
        extra=extra,
    )


def parse(data: bytes | str) -> DialoguePlan:
    """Parse a script document into a validated plan.

    Raises RrlParseError on malformed markup (with line and column),
    unknown top-level elements, dangling or duplicate ids, and any
    document whose plan fails validation.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, col = exc.position
        raise RrlParseError(f"malformed markup at line {line}, column {col}: {exc.msg}") from None
    if root.tag != "dialogueScript":
        raise RrlParseError(f"root element must be dialogueScript, got {root.tag!r}")
    tags = [child.tag for child in root]
    for tag in tags:
        if tag not in _SECTIONS:
            raise RrlParseError(f"unknown top-level element {tag!r}")
    if tags != list(_SECTIONS):
        raise RrlParseError(
            "the four sections must appear exactly once, in order: " + ", ".join(_SECTIONS)
        )
    ground_elem, people_elem, acts_elem, ordering_elem = list(root)

    common_ground = ""
    if ground_elem.text and ground_elem.text.strip():
        common_ground += escape(ground_elem.text.strip())
    for child in ground_elem:
        common_ground += _compact(child)

    participants = []
    for child in people_elem:
        if child.tag != "person":
            raise RrlParseError(f"unknown element {child.tag!r} in participants section")
        participants.append(_parse_person(child))
    seen = set()
    for p in participants:
        if p.id in seen:
            raise RrlParseError(f"duplicate person id {p.id!r}")
        seen.add(p.id)

    acts: list[DialogueAct] = []
    pairs: list[AdjacencyPair] = []
    for child in acts_elem:
        if child.tag == "dialogueAct":
            acts.append(_parse_act(child))
        elif child.tag == "adjacencyPair":
            pairs.append(_parse_pair(child))
        else:
            raise RrlParseError(f"unknown element {child.tag!r} in dialogueActs section")
    act_ids = set()
    for a in acts:
        if a.id in act_ids:
            raise RrlParseError(f"duplicate act id {a.id!r}")
        act_ids.add(a.id)
    pair_ids = set()
    for p in pairs:
        if p.id in pair_ids:
            raise RrlParseError(f"duplicate pair id {p.id!r}")
        pair_ids.add(p.id)

    sequence = ordering_elem.find("sequence")
    if sequence is None:
        raise RrlParseError("temporalOrdering has no sequence element")
    ordering = []
    for child in sequence:
        if child.tag != "act":
            raise RrlParseError(f"unknown element {child.tag!r} in temporal ordering")
        ordering.append(_required(child, "id", "act reference"))

    for aid in ordering:
        if aid not in act_ids:
            raise RrlParseError(f"ordering references undeclared act: sequence -> {aid}")
    for a in acts:
        for pid in (a.speaker, a.addressee):
            if pid not in seen:
                raise RrlParseError(f"dangling participant reference: {a.id} -> {pid}")
        if a.reaction_to is not None and a.reaction_to not in act_ids:
            raise RrlParseError(f"dangling reaction reference: {a.id} -> {a.reaction_to}")
    for p in pairs:
        for aid in (p.first, p.second):
            if aid not in act_ids:
                raise RrlParseError(f"dangling pair reference: {p.id} -> {aid}")

    plan = DialoguePlan(
        participants=tuple(participants),
        acts=tuple(acts),
        pairs=tuple(pairs),
        ordering=tuple(ordering),
        common_ground=common_ground,
    )
    violations = validate(plan)
    if violations:
        raise RrlParseError(
            "document violates plan invariants: " + "; ".join(str(v) for v in violations)
        )
    return plan


def _attr_line(tag: str, attrs: dict[str, str], indent: int, close: bool = True) -> str:
    rendered = "".join(f" {k}={quoteattr(v)}" for k, v in sorted(attrs.items()))
    end = "/>" if close else ">"
    return f"{'  ' * indent}<{tag}{rendered}{end}"


def _split_extra(extra, prefix: str) -> dict[str, str]:
    skip = len(prefix) + 1
    return {k[skip:]: v for k, v in extra.items() if k.startswith(prefix + ".")}


def _format_trait(value: float) -> str:
    return repr(value)


def _emit_person(p: Participant, lines: list[str]) -> None:
    attrs = {"id": p.id}
    attrs.update(_split_extra(p.extra, "person"))
    lines.append(_attr_line("person", attrs, 2, close=False))
    realname = _split_extra(p.extra, "realname")
    if p.name or realname:
        lines.append(_attr_line("realname", {"firstname": p.name, **realname}, 3))
    personality = {k: _format_trait(v) for k, v in p.traits.items()}
    personality.update(_split_extra(p.extra, "personality"))
    if personality:
        lines.append(_attr_line("personality", personality, 3))
    lines.append(_attr_line("domainSpecificAttr", {"role": p.role.value, **_split_extra(p.extra, "domain")}, 3))
    for block in p.opaque_children:
        lines.append("      " + block)
    lines.append("    </person>")


def _emit_condition(c: Condition, lines: list[str]) -> None:
    tag = {1: "unaryCond", 2: "binaryCond", 3: "ternaryCond"}[len(c.args)]
    attrs = dict(zip(_ARG_ATTRS, c.args))
    attrs["pred"] = c.predicate
    if not c.polarity:
        attrs["polarity"] = "false"
    attrs.update(c.extra)
    lines.append(_attr_line(tag, attrs, 5))


def _emit_act(a: DialogueAct, lines: list[str]) -> None:
    attrs = {"id": a.id}
    if a.emphasis:
        attrs["emphasis"] = "true"
    if a.track is Track.TRACK2:
        attrs["track"] = a.track.value
    attrs.update(_split_extra(a.extra, "act"))
    lines.append(_attr_line("dialogueAct", attrs, 2, close=False))
    lines.append(_attr_line("domainSpecificAttr", {"type": a.act_type.value, **_split_extra(a.extra, "domain")}, 3))
    lines.append(_attr_line("speaker", {"id": a.speaker}, 3))
    lines.append(_attr_line("addressee", {"id": a.addressee}, 3))
    if a.content is not None:
        content_attrs = {}
        if a.content.extra.get("id"):
            content_attrs["id"] = a.content.extra["id"]
        lines.append(_attr_line("semanticContent", content_attrs, 3, close=False))
        drs_attrs = {"id": a.content.drs_id} if a.content.drs_id else {}
        lines.append(_attr_line("drs", drs_attrs, 4, close=False))
        for c in a.content.conditions:
            _emit_condition(c, lines)
        lines.append("        </drs>")
        lines.append("      </semanticContent>")
    if a.reaction_to is not None:
        lines.append(_attr_line("reactionTo", {"id": a.reaction_to}, 3))
    for block in a.opaque_children:
        lines.append("      " + block)
    lines.append("    </dialogueAct>")


def serialize(plan: DialoguePlan) -> bytes:
    """Emit the canonical document for a valid plan.

    Refuses invalid plans with their full validation report. Output is
    deterministic: equal plans serialize to byte-identical documents.
    """
    violations = validate(plan)
    if violations:
        raise InvalidPlanError(violations)
    for a in plan.acts:
        if a.content is not None and any(len(c.args) > 3 for c in a.content.conditions):
            raise ValueError(
                f"act {a.id}: conditions with more than three arguments are not representable"
            )

    lines = ['<?xml version="1.0" encoding="UTF-8"?>', "<dialogueScript>"]
    if plan.common_ground:
        lines.append(f"  <commonGround>{plan.common_ground}</commonGround>")
    else:
        lines.append("  <commonGround/>")

    if plan.participants:
        lines.append("  <participants>")
        for p in plan.participants:
            _emit_person(p, lines)
        lines.append("  </participants>")
    else:
        lines.append("  <participants/>")

    if plan.acts or plan.pairs:
        lines.append("  <dialogueActs>")
        for act in plan.acts_in_order():
            _emit_act(act, lines)
        for pair in plan.pairs:
            attrs = {
                "id": pair.id,
                "first": pair.first,
                "second": pair.second,
                "dimension": pair.value_dimension,
            }
            if pair.origin is not PairOrigin.PLANNER:
                attrs["origin"] = pair.origin.value
            attrs.update(_split_extra(pair.extra, "pair"))
            lines.append(_attr_line("adjacencyPair", attrs, 2))
        lines.append("  </dialogueActs>")
    else:
        lines.append("  <dialogueActs/>")

    lines.append("  <temporalOrdering>")
    if plan.ordering:
        lines.append("    <sequence>")
        for aid in plan.ordering:
            lines.append(_attr_line("act", {"id": aid}, 3))
        lines.append("    </sequence>")
    else:
        lines.append("    <sequence/>")
    lines.append("  </temporalOrdering>")
    lines.append("</dialogueScript>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_plan(path) -> DialoguePlan:
    with open(path, "rb") as handle:
        return parse(handle.read())


def save_plan(plan: DialoguePlan, path) -> None:
    with open(path, "wb") as handle:
        handle.write(serialize(plan))
