"""Registry of developer-implemented functions, action selection, and hooks.

Boolean functions back conditions; string functions back template calls.
Hooks run after understanding and after action selection; they may set
persistent variables but cannot change the chosen expert.
"""

from __future__ import annotations

from typing import Callable, Optional

from ..errors import EngineInternalError

# selection priority of the default action selector, strongest first
KIND_PRIORITY = (
    "response-pair",
    "example-response",
    "related-response",
    "default-response",
    "non-response",
)


def default_action_selector(candidates, state):
    """Pick by knowledge-kind priority; ties go to knowledge-base order."""
    for kind in KIND_PRIORITY:
        for candidate in candidates:
            if candidate[1] == kind:
                return candidate
    return candidates[0]


class FunctionRegistry:
    def __init__(self):
        self.boolean_fns: dict[str, Callable[..., bool]] = {}
        self.string_fns: dict[str, Callable[..., Optional[str]]] = {}
        self.action_selector = default_action_selector
        self.post_understanding: Optional[Callable] = None
        self.post_selection: Optional[Callable] = None
        # variables hooks may write; declared so knowledge lint knows them
        self.hook_variables: set[str] = set()

    def _check_free(self, name: str) -> None:
        if name in self.boolean_fns or name in self.string_fns:
            raise EngineInternalError(f"function name {name!r} already registered")

    def register_boolean(self, name: str, fn: Callable[..., bool]) -> None:
        self._check_free(name)
        self.boolean_fns[name] = fn

    def register_string(self, name: str, fn: Callable[..., Optional[str]]) -> None:
        self._check_free(name)
        self.string_fns[name] = fn

    def boolean(self, name: str):
        """Decorator form of register_boolean."""

        def wrap(fn):
            self.register_boolean(name, fn)
            return fn

        return wrap

    def string(self, name: str):
        """Decorator form of register_string."""

        def wrap(fn):
            self.register_string(name, fn)
            return fn

        return wrap
