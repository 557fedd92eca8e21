"""Structural lint for a loaded KnowledgeBase.

Findings are returned as diagnostics instead of raised, so defective
knowledge can be reported in full. Errors: dangling transition or entry
references, functions missing from the registry, activation chains.
Warnings: unreachable states, variable reads with no possible writer,
network paths beyond the depth limit.
"""

from __future__ import annotations

import re
from typing import Iterable, Optional

from .templates import FunctionCall, Literal, UtteranceTemplate, VarRef
from .types import (
    ActionDescription,
    Diagnostic,
    KnowledgeBase,
    Network,
    SourceLocation,
    SupertypeIs,
    TypeIs,
)

DEFAULT_MAX_NETWORK_DEPTH = 10


def _iter_actions(kb: KnowledgeBase):
    """Yield (action, owning network id or None) over the whole KB."""
    rk = kb.response_knowledge
    for actions in rk.response_pairs.values():
        for action in actions:
            yield action, None
    for actions in rk.default_responses.values():
        for action in actions:
            yield action, None
    for example in rk.example_responses:
        yield example.action, None
    for related in rk.related_responses:
        yield related.action, None
    for action in rk.non_responses:
        yield action, None
    for network in kb.networks.values():
        for state in network.states.values():
            for action in state.actions:
                yield action, network.id
    for topic in kb.session_topics:
        yield topic.initial_action, None


def _template_reads(template: UtteranceTemplate) -> tuple[set[str], set[str]]:
    return template.references()


def _action_reads(action: ActionDescription) -> tuple[set[str], set[str]]:
    """Variables read and string functions called by an action's templates."""
    variables: set[str] = set()
    functions: set[str] = set()
    for template in action.utterances:
        v, f = _template_reads(template)
        variables |= v
        functions |= f
    for _, value in action.variable_settings:
        v, f = _template_reads(value)
        variables |= v
        functions |= f
    if action.expert_activation:
        for value in action.expert_activation.args.values():
            v, f = _template_reads(value)
            variables |= v
            functions |= f
    if action.condition:
        variables |= {a.name for a in action.condition.args if isinstance(a, VarRef)}
    return variables, functions


def _resolve_entry(kb: KnowledgeBase, state_id: str) -> list[str]:
    return [nid for nid, net in kb.networks.items() if state_id in net.states]


def _reachable(network: Network, entries: Iterable[str]) -> set[str]:
    seen: set[str] = set()
    stack = [s for s in entries if s in network.states]
    while stack:
        state_id = stack.pop()
        if state_id in seen:
            continue
        seen.add(state_id)
        for transition in network.states[state_id].transitions:
            if transition.destination in network.states and transition.destination not in seen:
                stack.append(transition.destination)
    return seen


def _longest_simple_path(network: Network, entries: Iterable[str], limit: int) -> int:
    """Length (in states) of the longest simple path from the entries,
    capped at limit + 1 to keep the search bounded."""
    best = 0

    def dfs(state_id: str, visited: set[str]) -> None:
        nonlocal best
        depth = len(visited)
        best = max(best, depth)
        if depth > limit:
            return
        for transition in network.states[state_id].transitions:
            dest = transition.destination
            if dest in network.states and dest not in visited:
                visited.add(dest)
                dfs(dest, visited)
                visited.discard(dest)

    for entry in entries:
        if entry in network.states:
            dfs(entry, {entry})
    return best


def validate(kb: KnowledgeBase, registry, max_depth: int = DEFAULT_MAX_NETWORK_DEPTH) -> list[Diagnostic]:
    """Lint a KnowledgeBase against a function registry.

    The registry only needs ``boolean_fns`` and ``string_fns`` mappings.
    """
    diagnostics: list[Diagnostic] = []

    def error(code: str, message: str, loc: Optional[SourceLocation]) -> None:
        diagnostics.append(Diagnostic("error", code, message, loc))

    def warning(code: str, message: str, loc: Optional[SourceLocation]) -> None:
        diagnostics.append(Diagnostic("warning", code, message, loc))

    boolean_fns = getattr(registry, "boolean_fns", {})
    string_fns = getattr(registry, "string_fns", {})

    # dangling transition destinations
    for network in kb.networks.values():
        for state in network.states.values():
            for transition in state.transitions:
                if transition.destination not in network.states:
                    error(
                        "dangling-transition",
                        f"transition destination {transition.destination!r} is not a state "
                        f"of network {network.id!r}",
                        transition.loc,
                    )

    # activation targets and nested activations
    activation_targets: list[tuple[str, str]] = []
    for action, _ in _iter_actions(kb):
        act = action.expert_activation
        if act is None:
            continue
        net = kb.networks.get(act.expert_id)
        if net is None:
            error(
                "dangling-activation",
                f"activation names unknown network {act.expert_id!r}",
                action.loc,
            )
            continue
        if act.initial_state not in net.states:
            error(
                "dangling-activation",
                f"activation initial state {act.initial_state!r} is not a state "
                f"of network {act.expert_id!r}",
                action.loc,
            )
            continue
        activation_targets.append((act.expert_id, act.initial_state))
        for target_action in net.states[act.initial_state].actions:
            if target_action.expert_activation is not None:
                error(
                    "nested-activation",
                    f"state {act.initial_state!r} of network {act.expert_id!r} is an "
                    "activation target but its action activates another expert",
                    target_action.loc,
                )

    # topic entry states must resolve to exactly one network
    entry_networks: dict[str, str] = {}
    for topic in kb.session_topics:
        for state_id in topic.entry_states:
            owners = _resolve_entry(kb, state_id)
            if not owners:
                error(
                    "dangling-entry",
                    f"topic {topic.name!r} entry state {state_id!r} is not a state of any network",
                    topic.loc,
                )
            elif len(owners) > 1:
                error(
                    "dangling-entry",
                    f"topic {topic.name!r} entry state {state_id!r} is ambiguous "
                    f"(networks {', '.join(sorted(owners))})",
                    topic.loc,
                )
            else:
                entry_networks[state_id] = owners[0]

    # function coverage
    for action, _ in _iter_actions(kb):
        if action.condition and action.condition.name not in boolean_fns:
            error(
                "unknown-function",
                f"condition function {action.condition.name!r} is not registered "
                "as a boolean function",
                action.loc,
            )
        _, called = _action_reads(action)
        for name in sorted(called):
            if name not in string_fns:
                error(
                    "unknown-function",
                    f"template function {name!r} is not registered as a string function",
                    action.loc,
                )
    for network in kb.networks.values():
        for state in network.states.values():
            for transition in state.transitions:
                for cond in transition.conditions:
                    if isinstance(cond, FunctionCall) and cond.name not in boolean_fns:
                        error(
                            "unknown-function",
                            f"transition condition function {cond.name!r} is not registered "
                            "as a boolean function",
                            transition.loc,
                        )

    # reachability per network: from topic entries and activation targets
    entries_by_network: dict[str, set[str]] = {nid: set() for nid in kb.networks}
    for state_id, network_id in entry_networks.items():
        entries_by_network[network_id].add(state_id)
    for network_id, state_id in activation_targets:
        entries_by_network[network_id].add(state_id)
    for network in kb.networks.values():
        reachable = _reachable(network, entries_by_network[network.id])
        for state in network.states.values():
            if state.id not in reachable:
                warning(
                    "unreachable-state",
                    f"state {state.id!r} of network {network.id!r} is not reachable from "
                    "any topic entry or expert activation",
                    state.loc,
                )
        depth = _longest_simple_path(network, entries_by_network[network.id], max_depth)
        if depth > max_depth:
            warning(
                "long-network-path",
                f"network {network.id!r} allows a dialogue path of more than "
                f"{max_depth} states",
                network.loc,
            )

    # variable reads must have a possible writer
    slot_pattern = re.compile(
        "^(" + "|".join(re.escape(c) for c in kb.slot_classes) + r")\d+$"
    ) if kb.slot_classes else None
    writers: set[str] = set()
    for action, _ in _iter_actions(kb):
        writers.update(var for var, _ in action.variable_settings)
        if action.expert_activation:
            writers.update(action.expert_activation.args.keys())
    for action, _ in _iter_actions(kb):
        reads, _ = _action_reads(action)
        for name in sorted(reads):
            if name in writers:
                continue
            if slot_pattern and slot_pattern.match(name):
                continue
            warning(
                "unwritten-variable",
                f"variable {name!r} is read but never written by any action, "
                "and is not a slot variable",
                action.loc,
            )
    for network in kb.networks.values():
        for state in network.states.values():
            for transition in state.transitions:
                for cond in transition.conditions:
                    if not isinstance(cond, FunctionCall):
                        continue
                    for arg in cond.args:
                        if isinstance(arg, Literal):
                            continue
                        name = arg.name
                        if name in writers or (slot_pattern and slot_pattern.match(name)):
                            continue
                        warning(
                            "unwritten-variable",
                            f"variable {name!r} is read but never written by any action, "
                            "and is not a slot variable",
                            transition.loc,
                        )

    return diagnostics


def diagnostics_to_jsonl(diagnostics: list[Diagnostic]) -> str:
    import json

    return "\n".join(json.dumps(d.to_json(), sort_keys=True) for d in diagnostics)
