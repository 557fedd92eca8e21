"""Utterance template grammar.

A template is plain text where ``*name*`` substitutes a variable and
``*fn(arg, ...)*`` substitutes the result of a registered function call.
Function arguments are variable names, or string literals written in
double quotes. The parsed form round-trips: ``parse(text).source() == text``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

_CALL_RE = re.compile(r"^([A-Za-z_][\w-]*)\((.*)\)$", re.DOTALL)
_NAME_RE = re.compile(r"^[A-Za-z_][\w-]*$")


class TemplateSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class VarRef:
    name: str


@dataclass(frozen=True)
class FunctionCall:
    name: str
    args: tuple[Union[VarRef, Literal], ...]
    # original spelling, kept so templates round-trip byte-exactly
    raw: Optional[str] = field(default=None, compare=False)

    def source(self) -> str:
        if self.raw is not None:
            return self.raw
        parts = []
        for a in self.args:
            parts.append(f'"{a.text}"' if isinstance(a, Literal) else a.name)
        return f"{self.name}({', '.join(parts)})"


Segment = Union[Literal, VarRef, FunctionCall]


def _parse_args(argtext: str) -> tuple[Union[VarRef, Literal], ...]:
    args: list[Union[VarRef, Literal]] = []
    pos = 0
    n = len(argtext)
    while pos < n:
        while pos < n and argtext[pos] in " \t":
            pos += 1
        if pos >= n:
            break
        if argtext[pos] == '"':
            end = argtext.find('"', pos + 1)
            if end == -1:
                raise TemplateSyntaxError(f"unterminated string literal in {argtext!r}")
            args.append(Literal(argtext[pos + 1 : end]))
            pos = end + 1
        else:
            end = pos
            while end < n and argtext[end] not in ",":
                end += 1
            name = argtext[pos:end].strip()
            if not _NAME_RE.match(name):
                raise TemplateSyntaxError(f"bad function argument: {name!r}")
            args.append(VarRef(name))
            pos = end
        while pos < n and argtext[pos] in " \t":
            pos += 1
        if pos < n:
            if argtext[pos] != ",":
                raise TemplateSyntaxError(f"expected ',' in arguments: {argtext!r}")
            pos += 1
    return tuple(args)


def parse_call(text: str) -> FunctionCall:
    """Parse a bare function call such as ``isPizza(food1)`` (used by conditions)."""
    m = _CALL_RE.match(text.strip())
    if not m:
        raise TemplateSyntaxError(f"not a function call: {text!r}")
    return FunctionCall(m.group(1), _parse_args(m.group(2)), raw=text.strip())


@dataclass(frozen=True)
class UtteranceTemplate:
    segments: tuple[Segment, ...]

    @classmethod
    def parse(cls, text: str) -> "UtteranceTemplate":
        segments: list[Segment] = []
        pos = 0
        while pos < len(text):
            star = text.find("*", pos)
            if star == -1:
                segments.append(Literal(text[pos:]))
                break
            if star > pos:
                segments.append(Literal(text[pos:star]))
            end = text.find("*", star + 1)
            if end == -1:
                raise TemplateSyntaxError(f"unterminated '*' reference in {text!r}")
            inner = text[star + 1 : end]
            if "(" in inner:
                segments.append(parse_call(inner))
            elif _NAME_RE.match(inner):
                segments.append(VarRef(inner))
            else:
                raise TemplateSyntaxError(f"bad reference {inner!r} in {text!r}")
            pos = end + 1
        return cls(tuple(segments))

    def source(self) -> str:
        out = []
        for seg in self.segments:
            if isinstance(seg, Literal):
                out.append(seg.text)
            elif isinstance(seg, VarRef):
                out.append(f"*{seg.name}*")
            else:
                out.append(f"*{seg.source()}*")
        return "".join(out)

    def references(self) -> tuple[set[str], set[str]]:
        """Variable names read and function names called by this template."""
        variables: set[str] = set()
        functions: set[str] = set()
        for seg in self.segments:
            if isinstance(seg, VarRef):
                variables.add(seg.name)
            elif isinstance(seg, FunctionCall):
                functions.add(seg.name)
                variables.update(a.name for a in seg.args if isinstance(a, VarRef))
        return variables, functions
