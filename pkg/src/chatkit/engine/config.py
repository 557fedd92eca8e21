"""Engine tuning knobs.

The per-branch score constants reproduce the expert-selection ordering;
they are configuration because they are tuned values, not derived ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

DEFAULT_OBLIGATION_SUPERTYPES = frozenset({"ask-yes-no-question", "request-information"})

# expert scores per selection branch; argmax of these reproduces the
# six-branch selection order
DEFAULT_NETWORK_SCORES = {1: 1.0, 3: 0.6, 5: 0.4}
DEFAULT_RESPONSE_SCORES = {2: 0.8, 4: 0.5, 6: 0.1}


@dataclass
class EngineConfig:
    obligation_supertypes: frozenset[str] = DEFAULT_OBLIGATION_SUPERTYPES
    obligation_threshold: float = 0.5
    retrieval_threshold: float = 0.55
    # emitted only when not even a non-response realizes
    fallback_utterance: str = "I see."
    network_scores: dict[int, float] = field(default_factory=lambda: dict(DEFAULT_NETWORK_SCORES))
    response_scores: dict[int, float] = field(default_factory=lambda: dict(DEFAULT_RESPONSE_SCORES))
    seed: Optional[int] = None
