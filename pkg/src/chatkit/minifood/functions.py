"""Developer-implemented functions for the MiniFood domain.

Facts come from relations.csv (subject, relation, object). The action
selector keeps the system asking its questions in the order the session
topic prescribes: non-responses that launch the next pending sub-network
win over the generic ones.
"""

from __future__ import annotations

import csv
from functools import lru_cache

from ..nlu.tokenizer import normalize_name
from . import RELATIONS_FILE

CHARACTER = "sophia"


@lru_cache(maxsize=1)
def _relations() -> set[tuple[str, str, str]]:
    rows = set()
    with open(RELATIONS_FILE, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rows.add(
                (
                    normalize_name(row["subject"]),
                    row["relation"].strip(),
                    normalize_name(row["object"]),
                )
            )
    return rows


def like(value: str) -> bool:
    """Whether Sophia likes the given food or drink."""
    return (CHARACTER, "likes", normalize_name(value)) in _relations()


def get_similar_food(value: str):
    """A food similar to the given one, or None when no fact exists."""
    key = normalize_name(value)
    for subject, relation, obj in sorted(_relations()):
        if relation == "similar-to" and subject == key:
            return obj
    return None


ANSWER_KINDS = ("response-pair", "example-response", "related-response", "default-response")


def ordered_question_selector(candidates, state):
    """Default priority for real answers; among non-responses, prefer the
    one that launches the next pending sub-network so questions arrive in
    the predefined order."""
    for kind in ANSWER_KINDS:
        for candidate in candidates:
            if candidate[1] == kind:
                return candidate
    non_responses = [c for c in candidates if c[1] == "non-response"]
    if state.pending_subnetworks:
        head = state.pending_subnetworks[0]
        for candidate in non_responses:
            activation = candidate[0].expert_activation
            if activation is not None and activation.initial_state == head:
                return candidate
    for candidate in non_responses:
        if candidate[0].expert_activation is None:
            return candidate
    return candidates[0]


def remember_food(state, frame, chosen) -> None:
    """Post-understanding hook: keep the most recent food the user
    mentioned in a persistent variable."""
    for slot in frame.slots:
        if slot.slot_class == "food-drink":
            state.variables["recent-food"] = slot.canonical
            break


def register(registry) -> None:
    registry.register_boolean("like", like)
    registry.register_string("get_similar_food", get_similar_food)
    registry.action_selector = ordered_question_selector
    registry.post_understanding = remember_food
