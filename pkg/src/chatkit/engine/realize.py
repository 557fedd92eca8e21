"""System action realization.

An action description realizes when its condition (if any) holds and every
variable and function reference in its templates resolves. Anything
unresolvable fails the whole action silently; the caller moves on to the
next candidate description.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from ..knowledge.templates import FunctionCall, Literal, UtteranceTemplate, VarRef
from ..knowledge.types import ActionDescription
from ..nlu.pipeline import SemanticFrame
from .registry import FunctionRegistry
from .state import DialogueState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ActionSource:
    expert: str
    kind: str
    label: Optional[str] = None

    def to_json(self) -> dict:
        return {"expert": self.expert, "kind": self.kind, "label": self.label}


@dataclass(frozen=True)
class ResolvedActivation:
    expert_id: str
    initial_state: str
    args: dict[str, str]


@dataclass(frozen=True)
class RealizedAction:
    utterance_texts: tuple[str, ...]
    variable_settings: tuple[tuple[str, str], ...]
    expert_activation: Optional[ResolvedActivation]
    source: ActionSource


def _resolve_args(args, variables: dict[str, str]) -> Optional[list[str]]:
    resolved = []
    for arg in args:
        if isinstance(arg, Literal):
            resolved.append(arg.text)
        else:
            value = variables.get(arg.name)
            if value is None:
                return None
            resolved.append(value)
    return resolved


def evaluate_condition(
    call: FunctionCall, variables: dict[str, str], registry: FunctionRegistry
) -> bool:
    """A condition holds when its function is registered, all its arguments
    resolve, and the call returns truth. Anything else is false."""
    fn = registry.boolean_fns.get(call.name)
    if fn is None:
        logger.warning("condition function %r is not registered", call.name)
        return False
    args = _resolve_args(call.args, variables)
    if args is None:
        return False
    try:
        return bool(fn(*args))
    except Exception:
        logger.warning("condition function %r raised", call.name, exc_info=True)
        return False


def resolve_template(
    template: UtteranceTemplate, variables: dict[str, str], registry: FunctionRegistry
) -> Optional[str]:
    """Template to concrete text; None when any reference is unresolvable."""
    parts: list[str] = []
    for segment in template.segments:
        if isinstance(segment, Literal):
            parts.append(segment.text)
        elif isinstance(segment, VarRef):
            value = variables.get(segment.name)
            if value is None:
                return None
            parts.append(value)
        else:
            fn = registry.string_fns.get(segment.name)
            if fn is None:
                logger.warning("template function %r is not registered", segment.name)
                return None
            args = _resolve_args(segment.args, variables)
            if args is None:
                return None
            try:
                result = fn(*args)
            except Exception:
                logger.warning("template function %r raised", segment.name, exc_info=True)
                return None
            if result is None:
                return None
            parts.append(str(result))
    return "".join(parts)


def realize(
    desc: ActionDescription,
    state: DialogueState,
    registry: FunctionRegistry,
    source: ActionSource,
) -> Optional[RealizedAction]:
    """Realize one action description against the current variables."""
    variables = state.variables
    if desc.condition is not None and not evaluate_condition(desc.condition, variables, registry):
        return None

    texts: list[str] = []
    for template in desc.utterances:
        text = resolve_template(template, variables, registry)
        if text is None:
            logger.debug("utterance %r did not realize", template.source())
            return None
        texts.append(text)

    settings: list[tuple[str, str]] = []
    for var, value_template in desc.variable_settings:
        value = resolve_template(value_template, variables, registry)
        if value is None:
            return None
        settings.append((var, value))

    activation: Optional[ResolvedActivation] = None
    if desc.expert_activation is not None:
        args: dict[str, str] = {}
        for name, value_template in desc.expert_activation.args.items():
            value = resolve_template(value_template, variables, registry)
            if value is None:
                return None
            args[name] = value
        activation = ResolvedActivation(
            desc.expert_activation.expert_id, desc.expert_activation.initial_state, args
        )

    return RealizedAction(tuple(texts), tuple(settings), activation, source)


def apply_frame_variables(frame: SemanticFrame, state: DialogueState) -> DialogueState:
    """Store slot fills into their automatic variables (<class><n>)."""
    for fill in frame.slots:
        state.variables[f"{fill.slot_class}{fill.order_index}"] = fill.canonical
    return state
