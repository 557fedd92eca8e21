"""Domain types for compiled dialogue knowledge.

Everything here is immutable after load; a KnowledgeBase can be shared
freely across concurrent sessions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .templates import FunctionCall, UtteranceTemplate


@dataclass(frozen=True)
class SourceLocation:
    """Where a knowledge item came from: file plus an element path."""

    file: str
    path: str
    line: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.file}:{self.path}"


@dataclass(frozen=True)
class SlotClassDecl:
    name: str
    description: str = ""


@dataclass(frozen=True)
class TypeDecl:
    name: str
    supertype: str
    # slot classes a user utterance of this type carries, as a multiset
    slot_signature: tuple[str, ...] = ()


@dataclass(frozen=True)
class ActTypeDecl:
    supertypes: frozenset[str]
    types: dict[str, TypeDecl]


@dataclass(frozen=True)
class DictEntry:
    canonical: str
    slot_class: str
    alternative_names: tuple[str, ...] = ()
    attributes: dict[str, str] = field(default_factory=dict)
    loc: Optional[SourceLocation] = field(default=None, compare=False)


@dataclass(frozen=True)
class ExpertActivation:
    expert_id: str
    initial_state: str
    args: dict[str, UtteranceTemplate] = field(default_factory=dict)


@dataclass(frozen=True)
class ActionDescription:
    label: Optional[str] = None
    condition: Optional[FunctionCall] = None
    utterances: tuple[UtteranceTemplate, ...] = ()
    variable_settings: tuple[tuple[str, UtteranceTemplate], ...] = ()
    expert_activation: Optional[ExpertActivation] = None
    loc: Optional[SourceLocation] = field(default=None, compare=False)


@dataclass(frozen=True)
class SupertypeIs:
    name: str


@dataclass(frozen=True)
class TypeIs:
    name: str


TransitionCondition = Union[SupertypeIs, TypeIs, FunctionCall]


@dataclass(frozen=True)
class Transition:
    conditions: tuple[TransitionCondition, ...]
    destination: str
    loc: Optional[SourceLocation] = field(default=None, compare=False)

    @property
    def unconditional(self) -> bool:
        return not self.conditions


@dataclass(frozen=True)
class NetworkState:
    id: str
    actions: tuple[ActionDescription, ...]
    transitions: tuple[Transition, ...]
    loc: Optional[SourceLocation] = field(default=None, compare=False)


@dataclass(frozen=True)
class Network:
    id: str
    states: dict[str, NetworkState]
    loc: Optional[SourceLocation] = field(default=None, compare=False)


@dataclass(frozen=True)
class ExampleResponse:
    text: str
    action: ActionDescription


@dataclass(frozen=True)
class RelatedResponse:
    topic_word: str
    action: ActionDescription


@dataclass(frozen=True)
class ResponseKnowledge:
    response_pairs: dict[str, tuple[ActionDescription, ...]]
    default_responses: dict[str, tuple[ActionDescription, ...]]
    example_responses: tuple[ExampleResponse, ...]
    related_responses: tuple[RelatedResponse, ...]
    non_responses: tuple[ActionDescription, ...]

    @staticmethod
    def empty() -> "ResponseKnowledge":
        return ResponseKnowledge({}, {}, (), (), ())


@dataclass(frozen=True)
class SessionTopic:
    name: str
    initial_action: ActionDescription
    entry_states: tuple[str, ...] = ()
    loc: Optional[SourceLocation] = field(default=None, compare=False)


class Dictionary:
    """Slot dictionary with a case-insensitive lookup over canonical and
    alternative names. Names are normalized with the tokenizer so multi-word
    entries match token n-grams exactly.
    """

    def __init__(self, entries: list[DictEntry]):
        from ..nlu.tokenizer import normalize_name

        self.entries: tuple[DictEntry, ...] = tuple(entries)
        self._index: dict[str, DictEntry] = {}
        for entry in self.entries:
            for name in (entry.canonical, *entry.alternative_names):
                key = normalize_name(name)
                # first entry wins when the same name is used by two classes
                self._index.setdefault(key, entry)

    def lookup(self, surface: str) -> Optional[DictEntry]:
        from ..nlu.tokenizer import normalize_name

        return self._index.get(normalize_name(surface))

    def entries_of_class(self, slot_class: str) -> list[DictEntry]:
        return [e for e in self.entries if e.slot_class == slot_class]

    def max_name_tokens(self) -> int:
        return max((len(k.split(" ")) for k in self._index), default=0)

    def normalized_names(self) -> dict[str, DictEntry]:
        return dict(self._index)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Dictionary) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"Dictionary({len(self.entries)} entries)"


@dataclass(frozen=True)
class KnowledgeBase:
    slot_classes: dict[str, SlotClassDecl]
    act_types: ActTypeDecl
    dictionary: Dictionary
    response_knowledge: ResponseKnowledge
    networks: dict[str, Network]
    session_topics: tuple[SessionTopic, ...]

    def topic(self, name: str) -> Optional[SessionTopic]:
        for t in self.session_topics:
            if t.name == name:
                return t
        return None

    def state_owner(self, state_id: str) -> Optional[str]:
        """Network owning a state id, or None when absent or ambiguous."""
        owners = [nid for nid, net in self.networks.items() if state_id in net.states]
        return owners[0] if len(owners) == 1 else None


def dictionary_lookup(surface: str, dictionary: Dictionary) -> Optional[DictEntry]:
    """Case-insensitive exact match against canonical and alternative names."""
    return dictionary.lookup(surface)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str
    location: Optional[SourceLocation] = None

    def to_json(self) -> dict:
        out = {"severity": self.severity, "code": self.code, "message": self.message}
        if self.location is not None:
            out["file"] = self.location.file
            out["path"] = self.location.path
        return out
