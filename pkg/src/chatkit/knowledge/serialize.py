"""Serialization back to XML, plus the CSV dictionary converter.

``serialize_knowledge`` writes a loaded KnowledgeBase back out as two XML
documents (declarations + knowledge); re-loading them yields a
structurally equal KnowledgeBase.
"""

from __future__ import annotations

import csv
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Union

from .types import ActionDescription, KnowledgeBase


def _action_element(action: ActionDescription) -> ET.Element:
    elem = ET.Element("action")
    if action.label:
        elem.set("label", action.label)
    if action.condition is not None:
        sub = ET.SubElement(elem, "condition")
        sub.text = action.condition.source()
    for template in action.utterances:
        sub = ET.SubElement(elem, "utterance")
        sub.text = template.source()
    for var, value in action.variable_settings:
        sub = ET.SubElement(elem, "set", var=var)
        sub.text = value.source()
    if action.expert_activation is not None:
        act = action.expert_activation
        sub = ET.SubElement(elem, "activate", expert=act.expert_id, state=act.initial_state)
        for name, value in act.args.items():
            arg = ET.SubElement(sub, "arg", name=name)
            arg.text = value.source()
    return elem


def declarations_to_xml(kb: KnowledgeBase) -> str:
    root = ET.Element("declarations")
    classes = ET.SubElement(root, "slotclasses")
    for decl in kb.slot_classes.values():
        elem = ET.SubElement(classes, "slotclass", name=decl.name)
        if decl.description:
            elem.set("description", decl.description)
    acttypes = ET.SubElement(root, "acttypes")
    for supertype in sorted(kb.act_types.supertypes):
        ET.SubElement(acttypes, "supertype", name=supertype)
    for type_decl in kb.act_types.types.values():
        elem = ET.SubElement(acttypes, "type", name=type_decl.name, supertype=type_decl.supertype)
        for slot_class in type_decl.slot_signature:
            ET.SubElement(elem, "slot", **{"class": slot_class})
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=False)


def knowledge_to_xml(kb: KnowledgeBase) -> str:
    root = ET.Element("knowledge")

    if len(kb.dictionary):
        dictionary = ET.SubElement(root, "dictionary")
        for entry in kb.dictionary.entries:
            elem = ET.SubElement(
                dictionary, "entry", canonical=entry.canonical, **{"class": entry.slot_class}
            )
            for alt in entry.alternative_names:
                sub = ET.SubElement(elem, "alt")
                sub.text = alt
            for name, value in entry.attributes.items():
                sub = ET.SubElement(elem, "attr", name=name)
                sub.text = value

    rk = kb.response_knowledge
    if rk.response_pairs or rk.default_responses or rk.example_responses \
            or rk.related_responses or rk.non_responses:
        responses = ET.SubElement(root, "responses")
        for act_type, actions in rk.response_pairs.items():
            pair = ET.SubElement(responses, "pair", type=act_type)
            for action in actions:
                pair.append(_action_element(action))
        for supertype, actions in rk.default_responses.items():
            default = ET.SubElement(responses, "default", supertype=supertype)
            for action in actions:
                default.append(_action_element(action))
        for example in rk.example_responses:
            elem = ET.SubElement(responses, "example")
            text = ET.SubElement(elem, "text")
            text.text = example.text
            elem.append(_action_element(example.action))
        for related in rk.related_responses:
            elem = ET.SubElement(responses, "related", topic=related.topic_word)
            elem.append(_action_element(related.action))
        for action in rk.non_responses:
            elem = ET.SubElement(responses, "nonresponse")
            elem.append(_action_element(action))

    for network in kb.networks.values():
        net = ET.SubElement(root, "network", id=network.id)
        for state in network.states.values():
            selem = ET.SubElement(net, "state", id=state.id)
            for action in state.actions:
                selem.append(_action_element(action))
            for transition in state.transitions:
                telem = ET.SubElement(selem, "transition", to=transition.destination)
                for cond in transition.conditions:
                    from .templates import FunctionCall
                    from .types import SupertypeIs, TypeIs

                    if isinstance(cond, SupertypeIs):
                        ET.SubElement(telem, "if", supertype=cond.name)
                    elif isinstance(cond, TypeIs):
                        ET.SubElement(telem, "if", type=cond.name)
                    elif isinstance(cond, FunctionCall):
                        ET.SubElement(telem, "if", call=cond.source())

    if kb.session_topics:
        topics = ET.SubElement(root, "topics")
        for topic in kb.session_topics:
            elem = ET.SubElement(topics, "topic", name=topic.name)
            elem.append(_action_element(topic.initial_action))
            for state_id in topic.entry_states:
                ET.SubElement(elem, "entry", state=state_id)

    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=False)


def serialize_knowledge(kb: KnowledgeBase) -> dict[str, str]:
    """KnowledgeBase as XML documents keyed by suggested file name."""
    return {
        "declarations.xml": declarations_to_xml(kb),
        "knowledge.xml": knowledge_to_xml(kb),
    }


def convert_dictionary_csv(csv_path: Union[str, Path]) -> str:
    """Convert a dictionary CSV into a ``<knowledge>`` XML document.

    Expected columns: canonical, class, alternatives, attributes.
    Alternatives are separated by ``|``; attributes are ``key=value`` pairs
    separated by ``|``.
    """
    root = ET.Element("knowledge")
    dictionary = ET.SubElement(root, "dictionary")
    with open(csv_path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            elem = ET.SubElement(
                dictionary,
                "entry",
                canonical=row["canonical"].strip(),
                **{"class": row["class"].strip()},
            )
            for alt in (row.get("alternatives") or "").split("|"):
                if alt.strip():
                    sub = ET.SubElement(elem, "alt")
                    sub.text = alt.strip()
            for pair in (row.get("attributes") or "").split("|"):
                if "=" in pair:
                    key, _, value = pair.partition("=")
                    sub = ET.SubElement(elem, "attr", name=key.strip())
                    sub.text = value.strip()
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=False)
