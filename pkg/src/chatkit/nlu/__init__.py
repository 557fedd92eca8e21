"""Language understanding: tokenization, slot extraction, act prediction."""

from .linear import LinearClassifier, TrainSettings
from .model import UNKNOWN, NLUModel, load_model, save_model
from .pipeline import (
    SemanticFrame,
    SlotFill,
    empty_frame,
    extract_slots,
    predict_acts,
    understand,
)
from .tokenizer import Token, normalize_name, tokenize
from .train import (
    SlotSpan,
    TrainConfig,
    TrainingExample,
    augment_examples,
    evaluate_nlu,
    load_training_jsonl,
    save_training_jsonl,
    split_examples,
    train_nlu,
)

__all__ = [
    "LinearClassifier",
    "NLUModel",
    "SemanticFrame",
    "SlotFill",
    "SlotSpan",
    "Token",
    "TrainConfig",
    "TrainSettings",
    "TrainingExample",
    "UNKNOWN",
    "augment_examples",
    "empty_frame",
    "evaluate_nlu",
    "extract_slots",
    "load_model",
    "load_training_jsonl",
    "normalize_name",
    "predict_acts",
    "save_model",
    "save_training_jsonl",
    "split_examples",
    "tokenize",
    "train_nlu",
    "understand",
]
