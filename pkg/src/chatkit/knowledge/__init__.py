"""Dialogue knowledge: parsing, validation, and the compiled KnowledgeBase."""

from .parser import load_knowledge
from .serialize import (
    convert_dictionary_csv,
    declarations_to_xml,
    knowledge_to_xml,
    serialize_knowledge,
)
from .templates import (
    FunctionCall,
    Literal,
    TemplateSyntaxError,
    UtteranceTemplate,
    VarRef,
    parse_call,
)
from .types import (
    ActionDescription,
    ActTypeDecl,
    Diagnostic,
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
    dictionary_lookup,
)
from .validate import DEFAULT_MAX_NETWORK_DEPTH, diagnostics_to_jsonl, validate

__all__ = [
    "ActionDescription",
    "ActTypeDecl",
    "DEFAULT_MAX_NETWORK_DEPTH",
    "Diagnostic",
    "DictEntry",
    "Dictionary",
    "ExampleResponse",
    "ExpertActivation",
    "FunctionCall",
    "KnowledgeBase",
    "Literal",
    "Network",
    "NetworkState",
    "RelatedResponse",
    "ResponseKnowledge",
    "SessionTopic",
    "SlotClassDecl",
    "SourceLocation",
    "SupertypeIs",
    "TemplateSyntaxError",
    "Transition",
    "TypeDecl",
    "TypeIs",
    "UtteranceTemplate",
    "VarRef",
    "convert_dictionary_csv",
    "declarations_to_xml",
    "diagnostics_to_jsonl",
    "dictionary_lookup",
    "knowledge_to_xml",
    "load_knowledge",
    "parse_call",
    "serialize_knowledge",
    "validate",
]
