"""From user text to a semantic frame.

Slot extraction tries the dictionary first: a greedy longest match of
token n-grams. When it finds anything, that is the result; otherwise the
statistical IOB labeler runs. Supertype and type are predicted
independently; the type additionally has to be consistent with the
extracted slot classes, checked over the 5-best predictions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import ModelMissingError
from ..knowledge.types import Dictionary, KnowledgeBase
from .features import (
    classifier_features,
    dictionary_class_flags,
    greedy_dictionary_spans,
    labeler_features,
)
from .model import UNKNOWN, NLUModel
from .tokenizer import Token, tokenize

TYPE_NBEST = 5


@dataclass(frozen=True)
class SlotFill:
    slot_class: str
    surface: str
    canonical: str
    order_index: int  # 1-based, left to right among fills of the same class
    start: int = field(default=0, compare=False)  # token span, for evaluation
    end: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SemanticFrame:
    supertype: str
    supertype_score: float
    type: str
    type_score: float
    slots: tuple[SlotFill, ...]
    tokens: tuple[str, ...] = ()  # lowercase token stream, consumed by retrieval

    def summary(self) -> dict:
        return {
            "supertype": self.supertype,
            "supertype_score": round(self.supertype_score, 4),
            "type": self.type,
            "type_score": round(self.type_score, 4),
            "slots": [
                {"class": s.slot_class, "value": s.canonical, "index": s.order_index}
                for s in self.slots
            ],
        }


def empty_frame() -> SemanticFrame:
    """The all-UNKNOWN frame the engine uses when understanding fails."""
    return SemanticFrame(UNKNOWN, 0.0, UNKNOWN, 0.0, (), ())


def _fills_from_spans(
    spans: list[tuple[int, int, Optional[str]]],
    tokens: list[Token],
    dictionary: Optional[Dictionary],
) -> list[SlotFill]:
    """Build ordered SlotFills from (start, end, slot_class) spans."""
    fills: list[SlotFill] = []
    per_class: dict[str, int] = {}
    for start, end, slot_class in spans:
        surface = " ".join(t.surface for t in tokens[start:end])
        canonical = surface
        if dictionary is not None:
            entry = dictionary.lookup(surface)
            if entry is not None:
                canonical = entry.canonical
        order = per_class.get(slot_class, 0) + 1
        per_class[slot_class] = order
        fills.append(SlotFill(slot_class, surface, canonical, order, start, end))
    return fills


def _decode_iob(tags: list[str]) -> list[tuple[int, int, str]]:
    """Spans from IOB tags, repairing I-tags that do not continue a span
    of the same class."""
    spans: list[tuple[int, int, str]] = []
    current: Optional[tuple[int, str]] = None
    for i, tag in enumerate(tags):
        if tag == "O":
            if current:
                spans.append((current[0], i, current[1]))
                current = None
            continue
        prefix, _, cls = tag.partition("-")
        if prefix == "I" and current and current[1] == cls:
            continue
        # B-, or an I- that cannot continue anything: starts a new span
        if current:
            spans.append((current[0], i, current[1]))
        current = (i, cls)
    if current:
        spans.append((current[0], len(tags), current[1]))
    return spans


def label_tokens(tokens: list[Token], dictionary: Optional[Dictionary], model: NLUModel) -> list[str]:
    flags = dictionary_class_flags(tokens, dictionary)
    return [
        model.slot_labeler.predict(labeler_features(tokens, i, flags))[0]
        for i in range(len(tokens))
    ]


def extract_slots(
    tokens: list[Token],
    dictionary: Optional[Dictionary],
    model: Optional[NLUModel] = None,
) -> list[SlotFill]:
    """Ordered slot fills for a tokenized utterance.

    Dictionary matching wins when it finds anything; the IOB labeler is
    the fallback. Canonicalization maps alternative names to the entry's
    canonical form.
    """
    if not tokens:
        return []
    matches = greedy_dictionary_spans(tokens, dictionary)
    if matches:
        spans = [(start, end, entry.slot_class) for start, end, entry in matches]
        return _fills_from_spans(spans, tokens, dictionary)
    if model is None:
        return []
    tags = label_tokens(tokens, dictionary, model)
    spans = [(s, e, cls) for s, e, cls in _decode_iob(tags)]
    return _fills_from_spans(spans, tokens, dictionary)


def predict_acts(
    tokens: list[Token],
    slots: list[SlotFill],
    model: Optional[NLUModel],
) -> tuple[str, float, str, float]:
    """(supertype, supertype score, type, type score) for an utterance.

    The supertype is the argmax class when its score clears the threshold,
    UNKNOWN otherwise. The type is the best of the 5-best predictions that
    clears the threshold and whose slot signature matches the extracted
    slot classes exactly; UNKNOWN when none qualifies.
    """
    if model is None:
        raise ModelMissingError("predict_acts requires a trained model")
    feats = classifier_features(tokens)

    supertype, s_score = model.supertype_clf.predict(feats)
    if s_score < model.theta_super:
        supertype = UNKNOWN

    extracted = sorted(s.slot_class for s in slots)
    candidates = model.type_clf.n_best(feats, TYPE_NBEST)
    act_type, t_score = UNKNOWN, candidates[0][1] if candidates else 0.0
    for name, score in candidates:
        if score < model.theta_type:
            break  # candidates are sorted; nothing below clears the bar
        if sorted(model.type_signatures.get(name, ())) == extracted:
            act_type, t_score = name, score
            break
    return supertype, s_score, act_type, t_score


def understand(text: str, kb: KnowledgeBase, model: Optional[NLUModel]) -> SemanticFrame:
    """tokenize -> extract_slots -> predict_acts, as one deterministic step."""
    if model is None:
        raise ModelMissingError("understand requires a trained model")
    tokens = tokenize(text)
    slots = extract_slots(tokens, kb.dictionary, model)
    supertype, s_score, act_type, t_score = predict_acts(tokens, slots, model)
    return SemanticFrame(
        supertype=supertype,
        supertype_score=s_score,
        type=act_type,
        type_score=t_score,
        slots=tuple(slots),
        tokens=tuple(t.lower for t in tokens),
    )
