"""Feature extraction shared between training and prediction."""

from __future__ import annotations

from typing import Optional

from ..knowledge.types import DictEntry, Dictionary
from .tokenizer import Token

MAX_NGRAM = 4  # dictionary patterns are short; longest match wins


def greedy_dictionary_spans(
    tokens: list[Token], dictionary: Optional[Dictionary]
) -> list[tuple[int, int, DictEntry]]:
    """Left-to-right greedy longest match of token n-grams against the
    dictionary. Returns (start, end, entry) with token-index spans."""
    if dictionary is None or not len(dictionary):
        return []
    index = dictionary.normalized_names()
    limit = min(MAX_NGRAM, dictionary.max_name_tokens())
    lowers = [t.lower for t in tokens]
    spans: list[tuple[int, int, DictEntry]] = []
    i = 0
    while i < len(lowers):
        for n in range(min(limit, len(lowers) - i), 0, -1):
            entry = index.get(" ".join(lowers[i : i + n]))
            if entry is not None:
                spans.append((i, i + n, entry))
                i += n
                break
        else:
            i += 1
    return spans


def classifier_features(tokens: list[Token]) -> dict[str, float]:
    """Bag of lowercase word forms plus question marks."""
    feats: dict[str, float] = {}
    for token in tokens:
        if token.lower == "?" or token.lower[0].isalnum():
            key = f"w={token.lower}"
            feats[key] = feats.get(key, 0.0) + 1.0
    return feats


def labeler_features(
    tokens: list[Token], index: int, dict_classes: list[Optional[str]]
) -> dict[str, float]:
    """Per-token features for IOB tagging: the word, its neighbours,
    surface bigrams, position flags, and a dictionary-hit flag."""
    lowers = [t.lower for t in tokens]
    cur = lowers[index]
    prev = lowers[index - 1] if index > 0 else "<s>"
    nxt = lowers[index + 1] if index + 1 < len(lowers) else "</s>"
    feats = {
        f"w={cur}": 1.0,
        f"prev={prev}": 1.0,
        f"next={nxt}": 1.0,
        f"bi_prev={prev}|{cur}": 1.0,
        f"bi_next={cur}|{nxt}": 1.0,
    }
    if index == 0:
        feats["first"] = 1.0
    if index == len(tokens) - 1:
        feats["last"] = 1.0
    if dict_classes[index] is not None:
        feats[f"dict={dict_classes[index]}"] = 1.0
    return feats


def dictionary_class_flags(
    tokens: list[Token], dictionary: Optional[Dictionary]
) -> list[Optional[str]]:
    flags: list[Optional[str]] = [None] * len(tokens)
    for start, end, entry in greedy_dictionary_spans(tokens, dictionary):
        for i in range(start, end):
            flags[i] = entry.slot_class
    return flags
