"""The two expert implementations and the expert selector.

The response expert reacts to the last user utterance through five kinds
of knowledge. The network expert walks a state transition network. The
selector runs six ordered branches; per-branch score constants make the
same decision an argmax over expert scores would.
"""

from __future__ import annotations

import logging
from typing import Optional

from ..errors import EngineInternalError
from ..knowledge.templates import FunctionCall
from ..knowledge.types import KnowledgeBase, Network, SupertypeIs, TypeIs
from ..nlu.pipeline import SemanticFrame
from ..retrieval import TfIdfIndex, most_similar
from .config import EngineConfig
from .realize import ActionSource, RealizedAction, evaluate_condition, realize
from .registry import FunctionRegistry
from .state import DialogueState

logger = logging.getLogger(__name__)

RESPONSE_EXPERT = "response"

Candidate = tuple[RealizedAction, str]


def _condition_holds(condition, frame: SemanticFrame, state: DialogueState,
                     registry: FunctionRegistry) -> bool:
    if isinstance(condition, SupertypeIs):
        return frame.supertype == condition.name
    if isinstance(condition, TypeIs):
        return frame.type == condition.name
    if isinstance(condition, FunctionCall):
        return evaluate_condition(condition, state.variables, registry)
    raise EngineInternalError(f"unknown transition condition {condition!r}")


def transition_matches(transition, frame, state, registry) -> bool:
    return all(_condition_holds(c, frame, state, registry) for c in transition.conditions)


def network_step(
    network: Network,
    state_id: str,
    frame: SemanticFrame,
    state: DialogueState,
    registry: FunctionRegistry,
) -> Optional[str]:
    """Destination of the first transition whose conditions all hold, in
    file order; None when nothing matches (the expert deactivates)."""
    current = network.states.get(state_id)
    if current is None:
        return None
    for transition in current.transitions:
        if transition_matches(transition, frame, state, registry):
            if transition.destination in network.states:
                return transition.destination
            logger.warning(
                "transition to unknown state %r in network %r",
                transition.destination, network.id,
            )
            return None
    return None


def response_candidates(
    frame: SemanticFrame,
    kb: KnowledgeBase,
    state: DialogueState,
    registry: FunctionRegistry,
    index: Optional[TfIdfIndex],
    retrieval_threshold: float = 0.55,
) -> list[Candidate]:
    """Realized system action candidates from the five knowledge kinds."""
    rk = kb.response_knowledge
    candidates: list[Candidate] = []

    for desc in rk.response_pairs.get(frame.type, ()):
        action = realize(desc, state, registry, ActionSource(RESPONSE_EXPERT, "response-pair", desc.label))
        if action:
            candidates.append((action, "response-pair"))

    for desc in rk.default_responses.get(frame.supertype, ()):
        action = realize(desc, state, registry, ActionSource(RESPONSE_EXPERT, "default-response", desc.label))
        if action:
            candidates.append((action, "default-response"))

    if index is not None and frame.tokens:
        hit = most_similar(index, frame.tokens, retrieval_threshold)
        if hit is not None:
            example = kb.response_knowledge.example_responses[int(hit[0])]
            action = realize(
                example.action, state, registry,
                ActionSource(RESPONSE_EXPERT, "example-response", example.action.label),
            )
            if action:
                candidates.append((action, "example-response"))

    slot_values = {fill.canonical.lower() for fill in frame.slots}
    for related in rk.related_responses:
        if related.topic_word.lower() in slot_values:
            action = realize(
                related.action, state, registry,
                ActionSource(RESPONSE_EXPERT, "related-response", related.action.label),
            )
            if action:
                candidates.append((action, "related-response"))

    for desc in rk.non_responses:
        action = realize(desc, state, registry, ActionSource(RESPONSE_EXPERT, "non-response", desc.label))
        if action:
            candidates.append((action, "non-response"))

    return candidates


def select_response_action(
    candidates: list[Candidate], state: DialogueState, registry: FunctionRegistry
) -> Candidate:
    if not candidates:
        raise EngineInternalError("action selection over an empty candidate list")
    return registry.action_selector(candidates, state)


def select_expert(
    state: DialogueState,
    frame: SemanticFrame,
    kb: KnowledgeBase,
    registry: FunctionRegistry,
    index: Optional[TfIdfIndex],
    config: Optional[EngineConfig] = None,
) -> tuple[str, int, dict[str, float]]:
    """(expert id, branch, expert scores) for this user input.

    Branches, in order: (1) network just activated; (2) response
    obligation; (3) active network with a satisfied conditioned
    transition; (4) a realized response-pair or example-response
    candidate; (5) active network with an unconditional transition;
    (6) response fallback.
    """
    config = config or EngineConfig()
    active = state.active_network
    network = kb.networks.get(active.network_id) if active else None
    current = network.states.get(active.state_id) if network and active else None

    b1 = active is not None and active.just_activated
    b2 = (
        frame.supertype in config.obligation_supertypes
        and frame.supertype_score > config.obligation_threshold
    )
    b3 = current is not None and any(
        t.conditions and transition_matches(t, frame, state, registry)
        for t in current.transitions
    )
    candidates = response_candidates(
        frame, kb, state, registry, index, config.retrieval_threshold
    )
    b4 = any(kind in ("response-pair", "example-response") for _, kind in candidates)
    b5 = current is not None and any(t.unconditional for t in current.transitions)

    if b1:
        branch = 1
    elif b2:
        branch = 2
    elif b3:
        branch = 3
    elif b4:
        branch = 4
    elif b5:
        branch = 5
    else:
        branch = 6

    network_score = (
        config.network_scores.get(1, 1.0) if b1
        else config.network_scores.get(3, 0.6) if b3
        else config.network_scores.get(5, 0.4) if b5
        else 0.0
    )
    response_score = (
        config.response_scores.get(2, 0.8) if b2
        else config.response_scores.get(4, 0.5) if b4
        else config.response_scores.get(6, 0.1)
    )
    scores = {"network": network_score, "response": response_score}

    if branch in (1, 3, 5):
        return active.network_id, branch, scores
    return RESPONSE_EXPERT, branch, scores
