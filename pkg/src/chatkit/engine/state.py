"""Per-session dialogue state."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class ActiveNetwork:
    network_id: str
    state_id: str
    just_activated: bool = True


@dataclass(frozen=True)
class ExpertTrace:
    """Per-turn record of what the dialogue manager decided and why."""

    frame: dict
    scores: dict[str, float]
    branch: int  # 1..6; 0 for the session-opening turn
    chosen_expert: str
    knowledge_kind: str
    label: Optional[str] = None
    # every utterance is attributable: one entry per executed action
    actions: tuple[dict, ...] = ()
    activated: Optional[dict] = None
    network_deactivated: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "frame": self.frame,
            "scores": self.scores,
            "branch": self.branch,
            "expert": self.chosen_expert,
            "kind": self.knowledge_kind,
            "label": self.label,
            "actions": list(self.actions),
        }
        if self.activated:
            out["activated"] = self.activated
        if self.network_deactivated:
            out["network_deactivated"] = self.network_deactivated
        return out


@dataclass(frozen=True)
class SystemTurn:
    """What the system says in one turn: the primary expert's utterances
    followed by the activated expert's, when an activation occurred."""

    utterances: tuple[str, ...]
    trace: ExpertTrace


@dataclass(frozen=True)
class HistoryEntry:
    user_text: Optional[str]  # None for the session-opening turn
    system: SystemTurn


@dataclass
class DialogueState:
    session_topic: str
    variables: dict[str, str] = field(default_factory=dict)
    active_network: Optional[ActiveNetwork] = None
    history: list[HistoryEntry] = field(default_factory=list)
    pending_subnetworks: list[str] = field(default_factory=list)

    def clear_slot_variables(self, slot_classes) -> None:
        """Drop automatic slot variables (<class><n>); persistent variables
        survive until explicitly cleared."""
        if not slot_classes:
            return
        pattern = re.compile(
            "^(" + "|".join(re.escape(c) for c in slot_classes) + r")\d+$"
        )
        for name in [v for v in self.variables if pattern.match(v)]:
            del self.variables[name]
