"""Loading and compiling dialogue-knowledge XML files.

A knowledge set is one declarations file plus any number of knowledge
files. The declarations file declares slot classes and dialogue act
types::

    <declarations>
      <slotclasses>
        <slotclass name="food-drink" description="food and drink names"/>
      </slotclasses>
      <acttypes>
        <supertype name="ask-yes-no-question"/>
        <type name="ask-if-system-ate" supertype="ask-yes-no-question">
          <slot class="time-event"/>
          <slot class="food-drink"/>
        </type>
      </acttypes>
    </declarations>

Knowledge files have a ``<knowledge>`` root holding any number of
``<dictionary>``, ``<responses>``, ``<network>`` and ``<topics>`` sections;
sections from several files are merged in file order. System action
descriptions appear as ``<action>`` elements::

    <action label="like-pizza">
      <condition>isPizza(food-drink1)</condition>
      <utterance>*food-drink1* is great.</utterance>
      <set var="topic">*food-drink1*</set>
      <activate expert="network1" state="ask-favorite-pizza"/>
    </action>

Cross-references to undeclared slot classes, types, or supertypes fail the
load; structural problems inside an otherwise well-formed knowledge base
(dangling transitions, unreachable states, unregistered functions) are left
to ``validate`` so defective knowledge can still be loaded and linted.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Optional, Union

from ..errors import KnowledgeParseError, KnowledgeReferenceError
from .templates import TemplateSyntaxError, UtteranceTemplate, parse_call
from .types import (
    ActionDescription,
    ActTypeDecl,
    DictEntry,
    Dictionary,
    ExampleResponse,
    ExpertActivation,
    KnowledgeBase,
    Network,
    NetworkState,
    RelatedResponse,
    ResponseKnowledge,
    SessionTopic,
    SlotClassDecl,
    SourceLocation,
    SupertypeIs,
    Transition,
    TypeDecl,
    TypeIs,
)

PathLike = Union[str, Path]


def _text(elem: ET.Element) -> str:
    return (elem.text or "").strip()


def _attr(elem: ET.Element, name: str, loc: SourceLocation) -> str:
    value = elem.get(name)
    if value is None or not value.strip():
        raise KnowledgeParseError(f"<{elem.tag}> requires attribute {name!r} at {loc}", loc.file)
    return value.strip()


class _FileParser:
    """Parses one XML file, tracking element paths for diagnostics."""

    def __init__(self, file: str, declarations: "_Declarations"):
        self.file = file
        self.decl = declarations

    def loc(self, path: str) -> SourceLocation:
        return SourceLocation(self.file, path)

    def fail(self, message: str, path: str) -> KnowledgeParseError:
        return KnowledgeParseError(f"{message} at {self.loc(path)}", self.file)

    def ref_fail(self, message: str, path: str) -> KnowledgeReferenceError:
        return KnowledgeReferenceError(f"{message} at {self.loc(path)}")

    # -- templates -----------------------------------------------------

    def _template(self, text: str, path: str) -> UtteranceTemplate:
        try:
            return UtteranceTemplate.parse(text)
        except TemplateSyntaxError as exc:
            raise self.fail(f"bad template: {exc}", path) from None

    def parse_action(self, elem: ET.Element, path: str) -> ActionDescription:
        label = elem.get("label")
        condition = None
        utterances: list[UtteranceTemplate] = []
        settings: list[tuple[str, UtteranceTemplate]] = []
        activation: Optional[ExpertActivation] = None
        for child in elem:
            if child.tag == "condition":
                if condition is not None:
                    raise self.fail("at most one <condition> per action", path)
                try:
                    condition = parse_call(_text(child))
                except TemplateSyntaxError as exc:
                    raise self.fail(f"bad condition: {exc}", path) from None
            elif child.tag == "utterance":
                utterances.append(self._template(_text(child), path))
            elif child.tag == "set":
                var = _attr(child, "var", self.loc(path))
                settings.append((var, self._template(_text(child), path)))
            elif child.tag == "activate":
                if activation is not None:
                    raise self.fail("at most one <activate> per action", path)
                args = {}
                for arg in child:
                    if arg.tag != "arg":
                        raise self.fail(f"unexpected <{arg.tag}> inside <activate>", path)
                    args[_attr(arg, "name", self.loc(path))] = self._template(_text(arg), path)
                activation = ExpertActivation(
                    expert_id=_attr(child, "expert", self.loc(path)),
                    initial_state=_attr(child, "state", self.loc(path)),
                    args=args,
                )
            else:
                raise self.fail(f"unexpected <{child.tag}> inside <action>", path)
        return ActionDescription(
            label=label,
            condition=condition,
            utterances=tuple(utterances),
            variable_settings=tuple(settings),
            expert_activation=activation,
            loc=self.loc(path),
        )

    def _actions(self, parent: ET.Element, path: str, skip: tuple[str, ...] = ()) -> list[ActionDescription]:
        actions = []
        n = 0
        for child in parent:
            if child.tag in skip:
                continue
            if child.tag != "action":
                raise self.fail(f"unexpected <{child.tag}> inside <{parent.tag}>", path)
            n += 1
            actions.append(self.parse_action(child, f"{path}/action[{n}]"))
        if not actions:
            raise self.fail(f"<{parent.tag}> requires at least one <action>", path)
        return actions

    # -- sections ------------------------------------------------------

    def parse_dictionary(self, elem: ET.Element, builder: "_Builder") -> None:
        for i, child in enumerate(elem, 1):
            if child.tag != "entry":
                raise self.fail(f"unexpected <{child.tag}> inside <dictionary>", "dictionary")
            canonical = _attr(child, "canonical", self.loc(f"dictionary/entry[{i}]"))
            path = f"dictionary/entry[{canonical}]"
            slot_class = _attr(child, "class", self.loc(path))
            if slot_class not in self.decl.slot_classes:
                raise self.ref_fail(f"undeclared slot class {slot_class!r}", path)
            alts: list[str] = []
            attrs: dict[str, str] = {}
            for sub in child:
                if sub.tag == "alt":
                    alts.append(_text(sub))
                elif sub.tag == "attr":
                    attrs[_attr(sub, "name", self.loc(path))] = _text(sub)
                else:
                    raise self.fail(f"unexpected <{sub.tag}> inside <entry>", path)
            builder.add_dict_entry(
                DictEntry(canonical, slot_class, tuple(alts), attrs, loc=self.loc(path)), self
            )

    def parse_responses(self, elem: ET.Element, builder: "_Builder") -> None:
        for child in elem:
            if child.tag == "pair":
                act_type = _attr(child, "type", self.loc("responses/pair"))
                path = f"responses/pair[{act_type}]"
                if act_type not in self.decl.types:
                    raise self.ref_fail(f"undeclared type {act_type!r}", path)
                builder.pairs.setdefault(act_type, []).extend(self._actions(child, path))
            elif child.tag == "default":
                supertype = _attr(child, "supertype", self.loc("responses/default"))
                path = f"responses/default[{supertype}]"
                if supertype not in self.decl.supertypes:
                    raise self.ref_fail(f"undeclared supertype {supertype!r}", path)
                builder.defaults.setdefault(supertype, []).extend(self._actions(child, path))
            elif child.tag == "example":
                idx = len(builder.examples) + 1
                path = f"responses/example[{idx}]"
                text_elem = child.find("text")
                if text_elem is None or not _text(text_elem):
                    raise self.fail("<example> requires a non-empty <text>", path)
                actions = self._actions(child, path, skip=("text",))
                if len(actions) != 1:
                    raise self.fail("<example> takes exactly one <action>", path)
                builder.examples.append(ExampleResponse(_text(text_elem), actions[0]))
            elif child.tag == "related":
                topic_word = _attr(child, "topic", self.loc("responses/related"))
                path = f"responses/related[{topic_word}]"
                actions = self._actions(child, path)
                if len(actions) != 1:
                    raise self.fail("<related> takes exactly one <action>", path)
                builder.related.append(RelatedResponse(topic_word, actions[0]))
            elif child.tag == "nonresponse":
                idx = len(builder.non_responses) + 1
                path = f"responses/nonresponse[{idx}]"
                builder.non_responses.extend(self._actions(child, path))
            else:
                raise self.fail(f"unexpected <{child.tag}> inside <responses>", "responses")

    def _parse_transition(self, elem: ET.Element, path: str) -> Transition:
        destination = _attr(elem, "to", self.loc(path))
        conditions = []
        for child in elem:
            if child.tag != "if":
                raise self.fail(f"unexpected <{child.tag}> inside <transition>", path)
            supertype = child.get("supertype")
            act_type = child.get("type")
            call = child.get("call")
            given = [v for v in (supertype, act_type, call) if v]
            if len(given) != 1:
                raise self.fail("<if> takes exactly one of supertype=, type=, call=", path)
            if supertype:
                if supertype not in self.decl.supertypes:
                    raise self.ref_fail(f"undeclared supertype {supertype!r}", path)
                conditions.append(SupertypeIs(supertype))
            elif act_type:
                if act_type not in self.decl.types:
                    raise self.ref_fail(f"undeclared type {act_type!r}", path)
                conditions.append(TypeIs(act_type))
            else:
                try:
                    conditions.append(parse_call(call))
                except TemplateSyntaxError as exc:
                    raise self.fail(f"bad condition call: {exc}", path) from None
        return Transition(tuple(conditions), destination, loc=self.loc(path))

    def parse_network(self, elem: ET.Element, builder: "_Builder") -> None:
        network_id = _attr(elem, "id", self.loc("network"))
        net_path = f"network[{network_id}]"
        if network_id in builder.networks:
            raise self.fail(f"duplicate network id {network_id!r}", net_path)
        states: dict[str, NetworkState] = {}
        for child in elem:
            if child.tag != "state":
                raise self.fail(f"unexpected <{child.tag}> inside <network>", net_path)
            state_id = _attr(child, "id", self.loc(net_path))
            path = f"{net_path}/state[{state_id}]"
            if state_id in states:
                raise self.fail(f"duplicate state id {state_id!r}", path)
            actions: list[ActionDescription] = []
            transitions: list[Transition] = []
            a = t = 0
            for sub in child:
                if sub.tag == "action":
                    a += 1
                    actions.append(self.parse_action(sub, f"{path}/action[{a}]"))
                elif sub.tag == "transition":
                    t += 1
                    transitions.append(self._parse_transition(sub, f"{path}/transition[{t}]"))
                else:
                    raise self.fail(f"unexpected <{sub.tag}> inside <state>", path)
            if not actions:
                raise self.fail("a state requires at least one <action>", path)
            states[state_id] = NetworkState(
                state_id, tuple(actions), tuple(transitions), loc=self.loc(path)
            )
        builder.networks[network_id] = Network(network_id, states, loc=self.loc(net_path))

    def parse_topics(self, elem: ET.Element, builder: "_Builder") -> None:
        for child in elem:
            if child.tag != "topic":
                raise self.fail(f"unexpected <{child.tag}> inside <topics>", "topics")
            name = _attr(child, "name", self.loc("topics/topic"))
            path = f"topics/topic[{name}]"
            if any(t.name == name for t in builder.topics):
                raise self.fail(f"duplicate topic {name!r}", path)
            entries: list[str] = []
            action: Optional[ActionDescription] = None
            for sub in child:
                if sub.tag == "action":
                    if action is not None:
                        raise self.fail("a topic takes exactly one initial <action>", path)
                    action = self.parse_action(sub, f"{path}/action")
                elif sub.tag == "entry":
                    entries.append(_attr(sub, "state", self.loc(path)))
                else:
                    raise self.fail(f"unexpected <{sub.tag}> inside <topic>", path)
            if action is None:
                raise self.fail("a topic requires an initial <action>", path)
            builder.topics.append(
                SessionTopic(name, action, tuple(entries), loc=self.loc(path))
            )


class _Declarations:
    def __init__(self):
        self.slot_classes: dict[str, SlotClassDecl] = {}
        self.supertypes: dict[str, None] = {}
        self.types: dict[str, TypeDecl] = {}


class _Builder:
    def __init__(self):
        self.dict_entries: list[DictEntry] = []
        self._names_by_class: dict[str, dict[str, str]] = {}
        self.pairs: dict[str, list[ActionDescription]] = {}
        self.defaults: dict[str, list[ActionDescription]] = {}
        self.examples: list[ExampleResponse] = []
        self.related: list[RelatedResponse] = []
        self.non_responses: list[ActionDescription] = []
        self.networks: dict[str, Network] = {}
        self.topics: list[SessionTopic] = []
        self.labels_by_file: dict[str, set[str]] = {}

    def add_dict_entry(self, entry: DictEntry, parser: _FileParser) -> None:
        from ..nlu.tokenizer import normalize_name

        seen = self._names_by_class.setdefault(entry.slot_class, {})
        for name in (entry.canonical, *entry.alternative_names):
            key = normalize_name(name)
            if key in seen:
                raise KnowledgeParseError(
                    f"name {name!r} already used by entry {seen[key]!r} "
                    f"in slot class {entry.slot_class!r}",
                    parser.file,
                )
            seen[key] = entry.canonical
        self.dict_entries.append(entry)


def _check_duplicate_labels(builder: _Builder) -> None:
    # labels must be unambiguous within one knowledge file
    def walk(action: ActionDescription):
        if action.label and action.loc:
            seen = builder.labels_by_file.setdefault(action.loc.file, set())
            if action.label in seen:
                raise KnowledgeParseError(
                    f"duplicate action label {action.label!r}", action.loc.file
                )
            seen.add(action.label)

    for actions in builder.pairs.values():
        for a in actions:
            walk(a)
    for actions in builder.defaults.values():
        for a in actions:
            walk(a)
    for ex in builder.examples:
        walk(ex.action)
    for rel in builder.related:
        walk(rel.action)
    for a in builder.non_responses:
        walk(a)
    for net in builder.networks.values():
        for state in net.states.values():
            for a in state.actions:
                walk(a)
    for topic in builder.topics:
        walk(topic.initial_action)


def _parse_xml(path: PathLike) -> ET.Element:
    try:
        return ET.parse(str(path)).getroot()
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise KnowledgeParseError(f"malformed XML: {exc.msg}", str(path), line) from None
    except OSError as exc:
        raise KnowledgeParseError(f"cannot read file: {exc}", str(path)) from None


def load_declarations(path: PathLike) -> _Declarations:
    root = _parse_xml(path)
    file = str(path)
    if root.tag != "declarations":
        raise KnowledgeParseError(f"expected <declarations> root, got <{root.tag}>", file)
    decl = _Declarations()
    for section in root:
        if section.tag == "slotclasses":
            for child in section:
                if child.tag != "slotclass":
                    raise KnowledgeParseError(f"unexpected <{child.tag}> in <slotclasses>", file)
                name = child.get("name", "").strip()
                if not name:
                    raise KnowledgeParseError("<slotclass> requires name=", file)
                if name in decl.slot_classes:
                    raise KnowledgeParseError(f"duplicate slot class {name!r}", file)
                decl.slot_classes[name] = SlotClassDecl(name, child.get("description", ""))
        elif section.tag == "acttypes":
            for child in section:
                if child.tag == "supertype":
                    name = child.get("name", "").strip()
                    if not name:
                        raise KnowledgeParseError("<supertype> requires name=", file)
                    if name in decl.supertypes:
                        raise KnowledgeParseError(f"duplicate supertype {name!r}", file)
                    decl.supertypes[name] = None
                elif child.tag == "type":
                    name = child.get("name", "").strip()
                    supertype = child.get("supertype", "").strip()
                    if not name or not supertype:
                        raise KnowledgeParseError("<type> requires name= and supertype=", file)
                    if name in decl.types:
                        raise KnowledgeParseError(f"duplicate type {name!r}", file)
                    if supertype not in decl.supertypes:
                        raise KnowledgeReferenceError(
                            f"type {name!r} names undeclared supertype {supertype!r} in {file}"
                        )
                    signature = []
                    for slot in child:
                        if slot.tag != "slot":
                            raise KnowledgeParseError(f"unexpected <{slot.tag}> in <type>", file)
                        slot_class = slot.get("class", "").strip()
                        if slot_class not in decl.slot_classes:
                            raise KnowledgeReferenceError(
                                f"type {name!r} names undeclared slot class {slot_class!r} in {file}"
                            )
                        signature.append(slot_class)
                    decl.types[name] = TypeDecl(name, supertype, tuple(signature))
                else:
                    raise KnowledgeParseError(f"unexpected <{child.tag}> in <acttypes>", file)
        else:
            raise KnowledgeParseError(f"unexpected <{section.tag}> in <declarations>", file)
    return decl


def load_knowledge(files: Iterable[PathLike], declarations: PathLike) -> KnowledgeBase:
    """Parse and compile knowledge files into an immutable KnowledgeBase.

    Order of actions, transitions, and knowledge items follows file order;
    files are merged in the given order.
    """
    decl = load_declarations(declarations)
    builder = _Builder()
    for path in files:
        root = _parse_xml(path)
        parser = _FileParser(str(path), decl)
        if root.tag != "knowledge":
            raise parser.fail(f"expected <knowledge> root, got <{root.tag}>", "/")
        for section in root:
            if section.tag == "dictionary":
                parser.parse_dictionary(section, builder)
            elif section.tag == "responses":
                parser.parse_responses(section, builder)
            elif section.tag == "network":
                parser.parse_network(section, builder)
            elif section.tag == "topics":
                parser.parse_topics(section, builder)
            else:
                raise parser.fail(f"unexpected <{section.tag}> in <knowledge>", "/")
    _check_duplicate_labels(builder)
    return KnowledgeBase(
        slot_classes=dict(decl.slot_classes),
        act_types=ActTypeDecl(frozenset(decl.supertypes), dict(decl.types)),
        dictionary=Dictionary(builder.dict_entries),
        response_knowledge=ResponseKnowledge(
            response_pairs={k: tuple(v) for k, v in builder.pairs.items()},
            default_responses={k: tuple(v) for k, v in builder.defaults.items()},
            example_responses=tuple(builder.examples),
            related_responses=tuple(builder.related),
            non_responses=tuple(builder.non_responses),
        ),
        networks=dict(builder.networks),
        session_topics=tuple(builder.topics),
    )
