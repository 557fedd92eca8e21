"""Model training from annotated example utterances.

Training files are JSON lines, one object per example::

    {"text": "did you have sushi yesterday?",
     "supertype": "ask-yes-no-question", "type": "ask-if-system-ate",
     "slots": [{"class": "food-drink", "start": 3, "end": 4},
               {"class": "time-event", "start": 4, "end": 5}]}

Slot spans are token indices over the tokenizer's output.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

from ..errors import TrainingDataError
from ..knowledge.types import Dictionary
from .features import classifier_features, dictionary_class_flags, labeler_features
from .linear import LinearClassifier, TrainSettings
from .model import FORMAT_VERSION, NLUModel
from .pipeline import extract_slots, predict_acts
from .tokenizer import Token, name_tokens, normalize_name, tokenize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlotSpan:
    slot_class: str
    start: int
    end: int


@dataclass(frozen=True)
class TrainingExample:
    text: str
    supertype: str
    type: str
    slot_spans: tuple[SlotSpan, ...] = ()


@dataclass
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 300
    l2: float = 1e-4
    seed: int = 0
    theta_super: float = 0.5
    theta_type: float = 0.5
    dictionary: Optional[Dictionary] = None
    # declared label inventories; when given, every label must be covered
    supertypes: Optional[Sequence[str]] = None
    type_signatures: Optional[dict[str, Sequence[str]]] = None
    augment_cap: int = 5

    def settings(self) -> TrainSettings:
        return TrainSettings(self.learning_rate, self.epochs, self.l2)


def load_training_jsonl(path: Union[str, Path]) -> list[TrainingExample]:
    examples = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            data = json.loads(line)
            spans = tuple(
                SlotSpan(s["class"], int(s["start"]), int(s["end"]))
                for s in data.get("slots", [])
            )
            examples.append(
                TrainingExample(data["text"], data["supertype"], data["type"], spans)
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise TrainingDataError(f"{path}:{lineno}: bad training example: {exc}") from None
    return examples


def save_training_jsonl(examples: Sequence[TrainingExample], path: Union[str, Path]) -> None:
    lines = []
    for ex in examples:
        lines.append(
            json.dumps(
                {
                    "text": ex.text,
                    "supertype": ex.supertype,
                    "type": ex.type,
                    "slots": [
                        {"class": s.slot_class, "start": s.start, "end": s.end}
                        for s in ex.slot_spans
                    ],
                },
                sort_keys=True,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _check_spans(example: TrainingExample, tokens: list[Token]) -> None:
    last_end = -1
    for span in sorted(example.slot_spans, key=lambda s: s.start):
        if not (0 <= span.start < span.end <= len(tokens)):
            raise TrainingDataError(
                f"span {span.start}..{span.end} out of bounds in {example.text!r}"
            )
        if span.start < last_end:
            raise TrainingDataError(f"overlapping slot spans in {example.text!r}")
        last_end = span.end


def _iob_tags(example: TrainingExample, tokens: list[Token]) -> list[str]:
    tags = ["O"] * len(tokens)
    for span in example.slot_spans:
        tags[span.start] = f"B-{span.slot_class}"
        for i in range(span.start + 1, span.end):
            tags[i] = f"I-{span.slot_class}"
    return tags


def train_nlu(examples: Sequence[TrainingExample], config: TrainConfig) -> NLUModel:
    """Train the slot labeler and the two act classifiers.

    Deterministic: weights start at zero and batch updates follow input
    order, so a rerun on the same data yields an identical model.
    """
    if not examples:
        raise TrainingDataError("no training examples")

    seen_supertypes = {ex.supertype for ex in examples}
    seen_types = {ex.type for ex in examples}
    if config.supertypes is not None:
        for label in config.supertypes:
            if label not in seen_supertypes:
                raise TrainingDataError(f"supertype {label!r} has zero training examples")
        for ex in examples:
            if ex.supertype not in config.supertypes:
                raise TrainingDataError(f"undeclared supertype {ex.supertype!r} in {ex.text!r}")
    if config.type_signatures is not None:
        for label in config.type_signatures:
            if label not in seen_types:
                raise TrainingDataError(f"type {label!r} has zero training examples")
        for ex in examples:
            if ex.type not in config.type_signatures:
                raise TrainingDataError(f"undeclared type {ex.type!r} in {ex.text!r}")

    tokenized = [tokenize(ex.text) for ex in examples]
    for ex, tokens in zip(examples, tokenized):
        _check_spans(ex, tokens)

    if config.type_signatures is not None:
        signatures = {k: tuple(sorted(v)) for k, v in config.type_signatures.items()}
    else:
        # fall back to the signature observed on each type's first example
        signatures = {}
        for ex in examples:
            signatures.setdefault(
                ex.type, tuple(sorted(s.slot_class for s in ex.slot_spans))
            )

    token_samples: list[dict[str, float]] = []
    token_labels: list[str] = []
    for ex, tokens in zip(examples, tokenized):
        flags = dictionary_class_flags(tokens, config.dictionary)
        tags = _iob_tags(ex, tokens)
        for i in range(len(tokens)):
            token_samples.append(labeler_features(tokens, i, flags))
            token_labels.append(tags[i])

    settings = config.settings()
    slot_labeler = LinearClassifier.train(token_samples, token_labels, settings)
    utterance_samples = [classifier_features(tokens) for tokens in tokenized]
    supertype_clf = LinearClassifier.train(
        utterance_samples, [ex.supertype for ex in examples], settings
    )
    type_clf = LinearClassifier.train(utterance_samples, [ex.type for ex in examples], settings)

    model = NLUModel(
        slot_labeler=slot_labeler,
        supertype_clf=supertype_clf,
        type_clf=type_clf,
        theta_super=config.theta_super,
        theta_type=config.theta_type,
        type_signatures=signatures,
        version=FORMAT_VERSION,
    )
    model.metadata["training"] = _training_accuracy(model, examples, tokenized)
    logger.info("trained language-understanding model: %s", model.metadata["training"])
    return model


def _training_accuracy(model: NLUModel, examples, tokenized) -> dict:
    sup_hits = sum(
        model.supertype_clf.predict(classifier_features(tokens))[0] == ex.supertype
        for ex, tokens in zip(examples, tokenized)
    )
    type_hits = sum(
        model.type_clf.predict(classifier_features(tokens))[0] == ex.type
        for ex, tokens in zip(examples, tokenized)
    )
    n = len(examples)
    return {
        "examples": n,
        "supertype_accuracy": round(sup_hits / n, 4),
        "type_accuracy": round(type_hits / n, 4),
    }


def augment_examples(
    examples: Sequence[TrainingExample],
    dictionary: Dictionary,
    cap_per_example: int = 5,
) -> list[TrainingExample]:
    """Variants of the examples with slot spans swapped for other
    dictionary entries of the same class. Returns only the new variants;
    labels are preserved and spans re-indexed.
    """
    variants: list[TrainingExample] = []
    for ex in examples:
        if not ex.slot_spans or cap_per_example <= 0:
            continue
        tokens = tokenize(ex.text)
        _check_spans(ex, tokens)
        produced = 0
        for span in ex.slot_spans:
            if produced >= cap_per_example:
                break
            span_text = " ".join(t.lower for t in tokens[span.start : span.end])
            for entry in dictionary.entries_of_class(span.slot_class):
                if produced >= cap_per_example:
                    break
                names = {normalize_name(entry.canonical)} | {
                    normalize_name(a) for a in entry.alternative_names
                }
                if normalize_name(span_text) in names:
                    continue  # same entry; not a new variant
                replacement = name_tokens(entry.canonical)
                delta = len(replacement) - (span.end - span.start)
                surfaces = (
                    [t.surface for t in tokens[: span.start]]
                    + replacement
                    + [t.surface for t in tokens[span.end :]]
                )
                new_spans = []
                for other in ex.slot_spans:
                    if other is span:
                        new_spans.append(
                            SlotSpan(other.slot_class, other.start, other.end + delta)
                        )
                    elif other.start >= span.end:
                        new_spans.append(
                            SlotSpan(other.slot_class, other.start + delta, other.end + delta)
                        )
                    else:
                        new_spans.append(other)
                variants.append(
                    TrainingExample(
                        " ".join(surfaces), ex.supertype, ex.type, tuple(new_spans)
                    )
                )
                produced += 1
    return variants


def evaluate_nlu(
    model: NLUModel,
    examples: Sequence[TrainingExample],
    dictionary: Optional[Dictionary],
) -> dict:
    """Supertype/type accuracy through the full prediction pipeline, and
    exact-span slot precision/recall/F1."""
    if not examples:
        raise TrainingDataError("no evaluation examples")
    sup_hits = type_hits = 0
    pred_total = gold_total = match_total = 0
    for ex in examples:
        tokens = tokenize(ex.text)
        fills = extract_slots(tokens, dictionary, model)
        supertype, _, act_type, _ = predict_acts(tokens, fills, model)
        sup_hits += supertype == ex.supertype
        type_hits += act_type == ex.type
        predicted = {(f.slot_class, f.start, f.end) for f in fills}
        gold = {(s.slot_class, s.start, s.end) for s in ex.slot_spans}
        pred_total += len(predicted)
        gold_total += len(gold)
        match_total += len(predicted & gold)
    precision = match_total / pred_total if pred_total else 0.0
    recall = match_total / gold_total if gold_total else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    n = len(examples)
    return {
        "examples": n,
        "supertype_accuracy": round(sup_hits / n, 4),
        "type_accuracy": round(type_hits / n, 4),
        "slot_precision": round(precision, 4),
        "slot_recall": round(recall, 4),
        "slot_f1": round(f1, 4),
    }


def split_examples(
    examples: Sequence[TrainingExample], holdout: float, seed: int
) -> tuple[list[TrainingExample], list[TrainingExample]]:
    """Deterministic train/holdout split, stratified by type so every
    label keeps at least one training example."""
    import random

    rng = random.Random(seed)
    by_type: dict[str, list[TrainingExample]] = {}
    for ex in examples:
        by_type.setdefault(ex.type, []).append(ex)
    train: list[TrainingExample] = []
    held: list[TrainingExample] = []
    for label in sorted(by_type):
        group = list(by_type[label])
        rng.shuffle(group)
        n_hold = int(len(group) * holdout)
        if n_hold >= len(group):
            n_hold = len(group) - 1
        held.extend(group[:n_hold])
        train.extend(group[n_hold:])
    return train, held
