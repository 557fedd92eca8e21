#!/usr/bin/env python3
"""Regenerate the MiniFood training fixture (training.jsonl).

Examples are assembled from patterns; slot spans are token indices
computed during assembly and re-checked against the tokenizer before
writing. Run from the repository root:

    python scripts/gen_training_data.py
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from chatkit.nlu.tokenizer import name_tokens, tokenize
from chatkit.nlu.train import SlotSpan, TrainingExample, save_training_jsonl

FOODS = [
    "sushi", "ramen", "udon", "soba", "tempura", "sukiyaki", "curry",
    "pizza", "pasta", "burger", "sandwich", "salad", "rice", "bread",
    "toast", "natto", "chocolate", "ice cream", "cake",
]
DRINKS = ["coffee", "tea", "green tea", "juice", "beer", "wine", "water", "milk"]
PLACES = [
    "Tully's", "Starbucks", "McDonald's", "New York", "Tokyo", "Osaka",
    "Kyoto", "Seattle", "Hawaii", "Japan", "Italy", "home",
    "convenience store",
]
TIMES = [
    "yesterday", "today", "this morning", "last night", "last weekend",
    "tomorrow", "in summer", "in winter",
]


def detok(tokens: list[str]) -> str:
    """Join tokens back into display text; punctuation attaches left."""
    out = ""
    for token in tokens:
        if out and (token[0].isalnum() or token[0] == "'"):
            out += " "
        out += token
    return out


def build(supertype: str, act_type: str, parts) -> TrainingExample:
    """parts: strings, or (slot_class, name) pairs that become spans."""
    tokens: list[str] = []
    spans: list[SlotSpan] = []
    for part in parts:
        if isinstance(part, tuple):
            slot_class, name = part
            words = name_tokens(name)
            spans.append(SlotSpan(slot_class, len(tokens), len(tokens) + len(words)))
            tokens.extend(words)
        else:
            tokens.extend(name_tokens(part))
    text = detok(tokens)
    got = [t.lower for t in tokenize(text)]
    assert got == [t.lower() for t in tokens], (text, got, tokens)
    return TrainingExample(text, supertype, act_type, tuple(spans))


def time_parts(phrase: str):
    """'this morning' / 'in summer' carry a lead-in word outside the span."""
    words = phrase.split(" ")
    if words[0] == "in":
        return ["in", ("time-event", " ".join(words[1:]))]
    return [("time-event", phrase)]


def main() -> None:
    examples: list[TrainingExample] = []
    food = itertools.cycle(FOODS)
    drink = itertools.cycle(DRINKS)
    place = itertools.cycle(PLACES)
    time = itertools.cycle(TIMES)

    for text in [
        "hello", "hi", "hey", "hi there", "hey there", "hello sophia",
        "hey sophia", "nice to meet you", "hi nice to meet you",
        "hello there", "hi sophia", "hello hello",
    ]:
        examples.append(build("greet", "greet-hello", [text]))

    for text in [
        "yes", "yeah", "yep", "sure", "of course", "right", "that's right",
        "i think so", "exactly", "definitely", "yes i do", "yes please",
        "indeed", "ok", "okay",
    ]:
        examples.append(build("acknowledge", "acknowledge-yes", [text + "."]))

    for text in [
        "no", "nope", "not really", "no i don't", "i don't think so",
        "never", "not at all", "no way", "i'm afraid not", "no thanks",
        "not much", "no no",
    ]:
        examples.append(build("deny", "deny-no", [text + "."]))

    for text in [
        "thanks", "thank you", "thanks a lot", "thank you so much",
        "thanks for the chat", "many thanks", "thank you very much",
        "cheers thanks",
    ]:
        examples.append(build("thank", "thank-you", [text + "."]))

    for text in [
        "bye", "goodbye", "see you", "see you later", "bye bye",
        "talk to you later", "i have to go now", "gotta go bye",
        "see you soon",
    ]:
        examples.append(build("bye", "bye-bye", [text + "."]))

    ate_verbs = ["did you have", "did you eat", "have you had"]
    for i in range(12):
        f = next(food) if i % 3 else next(drink)
        examples.append(
            build(
                "ask-yes-no-question", "ask-if-system-ate",
                [ate_verbs[i % 3], ("food-drink", f), *time_parts(next(time)), "?"],
            )
        )
    examples.append(
        build(
            "ask-yes-no-question", "ask-if-system-ate",
            ["did you drink", ("food-drink", next(drink)), *time_parts(next(time)), "?"],
        )
    )

    like_verbs = ["do you like", "do you love", "do you enjoy"]
    for i in range(13):
        f = next(food) if i % 4 else next(drink)
        examples.append(
            build(
                "ask-yes-no-question", "ask-if-system-likes-food",
                [like_verbs[i % 3], ("food-drink", f), "?"],
            )
        )

    go_verbs = ["do you go to", "do you often go to", "have you been to", "do you ever visit"]
    for i in range(11):
        examples.append(
            build(
                "ask-yes-no-question", "ask-if-system-goes",
                [go_verbs[i % 4], ("place", next(place)), "?"],
            )
        )

    for text in [
        "what food do you like", "what is your favorite food",
        "what do you like to eat", "tell me your favorite food",
        "what's your favorite dish", "which food do you like best",
        "what do you usually eat", "what do you want to eat",
        "what is your favorite meal", "what do you recommend",
    ]:
        examples.append(build("request-information", "ask-favorite-food", [text + "?"]))

    eat_in = [
        "what should i eat in", "what do people eat in",
        "what is good to eat in", "tell me what to eat in",
    ]
    for i in range(10):
        examples.append(
            build(
                "request-information", "ask-what-to-eat-in",
                [eat_in[i % 4], ("place", next(place)), "?"],
            )
        )

    tell_food = ["i like", "i love", "my favorite is", "i really like", "i often eat"]
    for i in range(11):
        f = next(food) if i % 2 else next(drink)
        examples.append(
            build("inform", "tell-liked-food", [tell_food[i % 5], ("food-drink", f), "."])
        )
    for i in range(3):
        examples.append(build("inform", "tell-liked-food", ["i drink", ("food-drink", next(drink)), "."]))
    for f in ["coffee", "green tea", "pizza"]:
        examples.append(build("inform", "tell-liked-food", [("food-drink", f), "."]))

    tell_place = ["i like", "i love", "i often go to", "my favorite place is", "i usually eat at"]
    for i in range(12):
        examples.append(
            build("inform", "tell-liked-place", [tell_place[i % 5], ("place", next(place)), "."])
        )

    out = Path(__file__).resolve().parent.parent / "src" / "chatkit" / "minifood" / "training.jsonl"
    save_training_jsonl(examples, out)
    print(f"wrote {len(examples)} examples to {out}")


if __name__ == "__main__":
    main()
