"""Trained language-understanding model and its JSON persistence."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from ..errors import ModelMissingError
from .linear import LinearClassifier

FORMAT_NAME = "chatkit-nlu-model"
FORMAT_VERSION = 1

UNKNOWN = "UNKNOWN"


@dataclass
class NLUModel:
    slot_labeler: LinearClassifier
    supertype_clf: LinearClassifier
    type_clf: LinearClassifier
    theta_super: float = 0.5
    theta_type: float = 0.5
    # declared slot-class signature per type, stored sorted
    type_signatures: dict[str, tuple[str, ...]] = field(default_factory=dict)
    version: int = FORMAT_VERSION
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "format": FORMAT_NAME,
            "version": self.version,
            "thresholds": {"supertype": self.theta_super, "type": self.theta_type},
            "type_signatures": {k: list(v) for k, v in self.type_signatures.items()},
            "slot_labeler": self.slot_labeler.to_json(),
            "supertype_clf": self.supertype_clf.to_json(),
            "type_clf": self.type_clf.to_json(),
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: dict) -> "NLUModel":
        if data.get("format") != FORMAT_NAME:
            raise ModelMissingError("not a language-understanding model file")
        if data.get("version") != FORMAT_VERSION:
            raise ModelMissingError(
                f"unsupported model version {data.get('version')!r}, expected {FORMAT_VERSION}"
            )
        return cls(
            slot_labeler=LinearClassifier.from_json(data["slot_labeler"]),
            supertype_clf=LinearClassifier.from_json(data["supertype_clf"]),
            type_clf=LinearClassifier.from_json(data["type_clf"]),
            theta_super=float(data["thresholds"]["supertype"]),
            theta_type=float(data["thresholds"]["type"]),
            type_signatures={
                k: tuple(v) for k, v in data.get("type_signatures", {}).items()
            },
            version=int(data["version"]),
            metadata=data.get("metadata", {}),
        )


def save_model(model: NLUModel, path: Union[str, Path]) -> None:
    # sorted keys and fixed separators keep repeated runs byte-identical
    text = json.dumps(model.to_json(), sort_keys=True, separators=(",", ":"))
    Path(path).write_text(text, encoding="utf-8")


def load_model(path: Union[str, Path]) -> NLUModel:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelMissingError(f"cannot load model from {path}: {exc}") from None
    return NLUModel.from_json(data)
