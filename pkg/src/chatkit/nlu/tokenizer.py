"""Rule-based tokenizer for space-delimited text.

Word tokens keep internal apostrophes ("tully's", "don't"); every other
non-space character becomes its own token, so "?" is always a separate
token. When the input holds several sentences, only the last one is kept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import EmptyInputError

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z0-9]+)*|[^\sA-Za-z0-9]")
_SENTENCE_RE = re.compile(r"[^.!?]*[.!?]+|[^.!?]+$")


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    position: int


def split_sentences(text: str) -> list[str]:
    return [s.strip() for s in _SENTENCE_RE.findall(text) if s.strip()]


def tokenize(text: str) -> list[Token]:
    """Tokenize the last sentence of ``text``.

    Raises EmptyInputError when the input is empty after trimming.
    """
    stripped = text.strip()
    if not stripped:
        raise EmptyInputError("empty user input")
    sentences = split_sentences(stripped)
    last = sentences[-1] if sentences else stripped
    return [
        Token(surface=m.group(0), lower=m.group(0).lower(), position=i)
        for i, m in enumerate(_TOKEN_RE.finditer(last))
    ]


def normalize_name(name: str) -> str:
    """Normalize a dictionary name to its lowercase token form.

    Matches how utterance tokens are joined during n-gram lookup, so
    "Tully's Coffee" and the token pair ("tully's", "coffee") map to the
    same key.
    """
    return " ".join(m.group(0).lower() for m in _TOKEN_RE.finditer(name))


def name_tokens(name: str) -> list[str]:
    """Token surfaces of a bare name, original case, no sentence handling."""
    return [m.group(0) for m in _TOKEN_RE.finditer(name)]
