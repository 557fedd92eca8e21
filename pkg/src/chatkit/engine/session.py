"""Session lifecycle and the per-turn processing pipeline."""

from __future__ import annotations

import logging
import random
from typing import Optional, Sequence

from ..errors import EmptyInputError, ModelMissingError, TopicError
from ..knowledge.types import KnowledgeBase, NetworkState, SessionTopic
from ..nlu.model import NLUModel
from ..nlu.pipeline import SemanticFrame, empty_frame, understand
from ..retrieval import TfIdfIndex, build_index
from ..nlu.tokenizer import tokenize
from .config import EngineConfig
from .experts import (
    RESPONSE_EXPERT,
    network_step,
    response_candidates,
    select_expert,
    select_response_action,
)
from .realize import (
    ActionSource,
    RealizedAction,
    ResolvedActivation,
    apply_frame_variables,
    realize,
)
from .registry import FunctionRegistry
from .state import ActiveNetwork, DialogueState, ExpertTrace, HistoryEntry, SystemTurn

logger = logging.getLogger(__name__)

OPENING_BRANCH = 0  # the session opener precedes any user input


def build_example_index(kb: KnowledgeBase) -> Optional[TfIdfIndex]:
    """tf-idf index over the example-response utterances; ids are
    zero-padded list positions so ties resolve to knowledge-base order."""
    examples = kb.response_knowledge.example_responses
    if not examples:
        return None
    docs = []
    for i, example in enumerate(examples):
        docs.append((f"{i:06d}", [t.lower for t in tokenize(example.text)]))
    return build_index(docs)


class Engine:
    """Shared, read-only machinery for all sessions over one knowledge base."""

    def __init__(
        self,
        kb: KnowledgeBase,
        model: NLUModel,
        registry: FunctionRegistry,
        config: Optional[EngineConfig] = None,
    ):
        if model is None:
            raise ModelMissingError("the engine requires a trained model")
        self.kb = kb
        self.model = model
        self.registry = registry
        self.config = config or EngineConfig()
        self.index = build_example_index(kb)
        self.rng = random.Random(self.config.seed)

    def start_session(
        self, topic: Optional[str] = None, exclude: Sequence[str] = ()
    ) -> "Session":
        """New session on the given topic, or on a randomly chosen topic
        not in ``exclude``."""
        if not self.kb.session_topics:
            raise TopicError("the knowledge base declares no session topics")
        if topic is not None:
            chosen = self.kb.topic(topic)
            if chosen is None:
                raise TopicError(f"unknown session topic {topic!r}")
        else:
            available = [t for t in self.kb.session_topics if t.name not in exclude]
            if not available:
                raise TopicError("every session topic has been excluded")
            chosen = self.rng.choice(available)
        return Session(self, chosen)


class Session:
    def __init__(self, engine: Engine, topic: SessionTopic):
        self.engine = engine
        self.state = DialogueState(
            session_topic=topic.name,
            pending_subnetworks=list(topic.entry_states),
        )
        self.opening = self._open(topic)

    @property
    def history(self) -> list[HistoryEntry]:
        return self.state.history

    @property
    def topic(self) -> str:
        return self.state.session_topic

    def _open(self, topic: SessionTopic) -> SystemTurn:
        action = realize(
            topic.initial_action,
            self.state,
            self.engine.registry,
            ActionSource("initial", "initial", topic.initial_action.label),
        )
        if action is None:
            logger.warning("initial action of topic %r did not realize", topic.name)
            action = RealizedAction((), (), None, ActionSource("initial", "initial", None))
        actions, activated = self._execute(action)
        trace = ExpertTrace(
            frame={},
            scores={},
            branch=OPENING_BRANCH,
            chosen_expert="initial",
            knowledge_kind="initial",
            label=action.source.label,
            actions=tuple(self._action_record(a) for a in actions),
            activated=activated,
        )
        turn = SystemTurn(tuple(t for a in actions for t in a.utterance_texts), trace)
        self.state.history.append(HistoryEntry(None, turn))
        return turn

    @staticmethod
    def _action_record(action: RealizedAction) -> dict:
        record = action.source.to_json()
        record["utterances"] = list(action.utterance_texts)
        return record

    def _first_realizable(self, net_state: NetworkState, network_id: str) -> Optional[RealizedAction]:
        for desc in net_state.actions:
            action = realize(
                desc,
                self.state,
                self.engine.registry,
                ActionSource(network_id, "network", desc.label),
            )
            if action is not None:
                return action
        return None

    def _execute(self, action: RealizedAction) -> tuple[list[RealizedAction], Optional[dict]]:
        """Apply an action's variable settings and expert activation.

        Returns the executed action list (the action itself plus the
        activated expert's action, when one realized) and a JSON-ready
        description of the activation."""
        state = self.state
        for var, value in action.variable_settings:
            state.variables[var] = value
        actions = [action]
        activated: Optional[dict] = None
        act = action.expert_activation
        if act is not None:
            follow_up = self._activate(act)
            if follow_up is not None:
                actions.append(follow_up)
                activated = {
                    "expert": act.expert_id,
                    "initial_state": act.initial_state,
                    "args": dict(act.args),
                }
        return actions, activated

    def _activate(self, act: ResolvedActivation) -> Optional[RealizedAction]:
        """Activate a network expert; one level deep per turn."""
        state = self.state
        network = self.engine.kb.networks.get(act.expert_id)
        if network is None or act.initial_state not in network.states:
            logger.warning(
                "activation target %s/%s does not exist", act.expert_id, act.initial_state
            )
            return None
        # arguments are handed to the activated expert as variables
        for name, value in act.args.items():
            state.variables[name] = value
        follow_up = self._first_realizable(network.states[act.initial_state], act.expert_id)
        if follow_up is None:
            logger.warning(
                "activation target %s/%s has no realizable action; activation dropped",
                act.expert_id, act.initial_state,
            )
            return None
        if follow_up.expert_activation is not None:
            logger.warning(
                "action at %s/%s would chain another activation; ignored",
                act.expert_id, act.initial_state,
            )
        state.active_network = ActiveNetwork(act.expert_id, act.initial_state, just_activated=True)
        if act.initial_state in state.pending_subnetworks:
            state.pending_subnetworks.remove(act.initial_state)
        for var, value in follow_up.variable_settings:
            state.variables[var] = value
        return follow_up

    def process_turn(self, user_text: str) -> SystemTurn:
        """Understand the input, pick an expert, realize and execute its
        action. Never raises on bad input: an ununderstandable utterance
        becomes the all-UNKNOWN frame, which non-responses still cover."""
        engine = self.engine
        state = self.state

        try:
            frame = understand(user_text, engine.kb, engine.model)
        except EmptyInputError:
            frame = empty_frame()

        if engine.registry.post_understanding:
            engine.registry.post_understanding(state, frame, None)

        apply_frame_variables(frame, state)

        expert_id, branch, scores = select_expert(
            state, frame, engine.kb, engine.registry, engine.index, engine.config
        )
        if state.active_network is not None:
            state.active_network.just_activated = False

        network_deactivated: Optional[str] = None
        primary: Optional[RealizedAction] = None
        chosen_expert = expert_id

        if expert_id != RESPONSE_EXPERT:
            network = engine.kb.networks[expert_id]
            destination = network_step(
                network, state.active_network.state_id, frame, state, engine.registry
            )
            if destination is not None:
                state.active_network.state_id = destination
                primary = self._first_realizable(network.states[destination], expert_id)
            if primary is None:
                # no transition matched (or nothing realized): the network
                # deactivates and the response expert takes over
                network_deactivated = expert_id
                state.active_network = None
                chosen_expert = RESPONSE_EXPERT

        if primary is None:
            candidates = response_candidates(
                frame, engine.kb, state, engine.registry, engine.index,
                engine.config.retrieval_threshold,
            )
            if candidates:
                primary, _ = select_response_action(candidates, state, engine.registry)
            else:
                logger.warning("no candidate realized; emitting the configured fallback")
                primary = RealizedAction(
                    (engine.config.fallback_utterance,), (), None,
                    ActionSource(RESPONSE_EXPERT, "fallback", None),
                )

        actions, activated = self._execute(primary)

        if engine.registry.post_selection:
            engine.registry.post_selection(state, frame, primary)

        state.clear_slot_variables(engine.kb.slot_classes)

        trace = ExpertTrace(
            frame=frame.summary(),
            scores=scores,
            branch=branch,
            chosen_expert=chosen_expert,
            knowledge_kind=primary.source.kind,
            label=primary.source.label,
            actions=tuple(self._action_record(a) for a in actions),
            activated=activated,
            network_deactivated=network_deactivated,
        )
        turn = SystemTurn(tuple(t for a in actions for t in a.utterance_texts), trace)
        state.history.append(HistoryEntry(user_text, turn))
        return turn


def turn_log_record(session_id: str, entry: HistoryEntry, elapsed_ms: float) -> dict:
    """One JSON-ready object per turn for the transcript/trace log."""
    trace = entry.system.trace
    return {
        "session_id": session_id,
        "user_text": entry.user_text,
        "frame": trace.frame,
        "branch": trace.branch,
        "expert": trace.chosen_expert,
        "kind": trace.knowledge_kind,
        "utterances": list(entry.system.utterances),
        "elapsed_ms": round(elapsed_ms, 3),
    }
