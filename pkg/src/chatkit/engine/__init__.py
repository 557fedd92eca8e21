"""Multi-expert dialogue management."""

from .config import (
    DEFAULT_NETWORK_SCORES,
    DEFAULT_OBLIGATION_SUPERTYPES,
    DEFAULT_RESPONSE_SCORES,
    EngineConfig,
)
from .experts import (
    RESPONSE_EXPERT,
    network_step,
    response_candidates,
    select_expert,
    select_response_action,
    transition_matches,
)
from .realize import (
    ActionSource,
    RealizedAction,
    ResolvedActivation,
    apply_frame_variables,
    evaluate_condition,
    realize,
    resolve_template,
)
from .registry import KIND_PRIORITY, FunctionRegistry, default_action_selector
from .session import Engine, Session, build_example_index, turn_log_record
from .state import ActiveNetwork, DialogueState, ExpertTrace, HistoryEntry, SystemTurn

__all__ = [
    "ActionSource",
    "ActiveNetwork",
    "DEFAULT_NETWORK_SCORES",
    "DEFAULT_OBLIGATION_SUPERTYPES",
    "DEFAULT_RESPONSE_SCORES",
    "DialogueState",
    "Engine",
    "EngineConfig",
    "ExpertTrace",
    "FunctionRegistry",
    "HistoryEntry",
    "KIND_PRIORITY",
    "RESPONSE_EXPERT",
    "RealizedAction",
    "ResolvedActivation",
    "Session",
    "SystemTurn",
    "apply_frame_variables",
    "build_example_index",
    "default_action_selector",
    "evaluate_condition",
    "network_step",
    "realize",
    "resolve_template",
    "response_candidates",
    "select_expert",
    "select_response_action",
    "transition_matches",
    "turn_log_record",
]
