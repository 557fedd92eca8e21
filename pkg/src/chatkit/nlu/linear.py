"""Self-contained multinomial logistic regression over sparse count features.

Batch gradient descent on the softmax cross-entropy loss with an L2 term.
Weights start at zero, so training is deterministic for a fixed input
order; no external ML dependency.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FeatureVector = dict[str, float]


@dataclass
class TrainSettings:
    learning_rate: float = 0.1
    epochs: int = 300
    l2: float = 1e-4


@dataclass
class LinearClassifier:
    labels: list[str]
    vocabulary: dict[str, int]
    weights: np.ndarray  # (n_features, n_labels)
    bias: np.ndarray  # (n_labels,)
    settings: TrainSettings = field(default_factory=TrainSettings)

    @classmethod
    def train(
        cls,
        samples: list[FeatureVector],
        labels: list[str],
        settings: TrainSettings | None = None,
    ) -> "LinearClassifier":
        if not samples or len(samples) != len(labels):
            raise ValueError("need one label per sample and at least one sample")
        settings = settings or TrainSettings()
        vocabulary: dict[str, int] = {}
        for sample in samples:
            for feature in sample:
                if feature not in vocabulary:
                    vocabulary[feature] = len(vocabulary)
        label_names: list[str] = []
        for label in labels:
            if label not in label_names:
                label_names.append(label)
        label_index = {name: i for i, name in enumerate(label_names)}

        n, d, k = len(samples), len(vocabulary), len(label_names)
        X = np.zeros((n, d))
        for row, sample in enumerate(samples):
            for feature, value in sample.items():
                X[row, vocabulary[feature]] = value
        Y = np.zeros((n, k))
        for row, label in enumerate(labels):
            Y[row, label_index[label]] = 1.0

        W = np.zeros((d, k))
        b = np.zeros(k)
        for _ in range(settings.epochs):
            P = _softmax(X @ W + b)
            err = (P - Y) / n
            W -= settings.learning_rate * (X.T @ err + settings.l2 * W)
            b -= settings.learning_rate * err.sum(axis=0)
        return cls(label_names, vocabulary, W, b, settings)

    def _vectorize(self, sample: FeatureVector) -> np.ndarray:
        x = np.zeros(len(self.vocabulary))
        for feature, value in sample.items():
            idx = self.vocabulary.get(feature)
            if idx is not None:
                x[idx] = value
        return x

    def predict_proba(self, sample: FeatureVector) -> dict[str, float]:
        scores = _softmax((self._vectorize(sample) @ self.weights + self.bias)[None, :])[0]
        return {label: float(p) for label, p in zip(self.labels, scores)}

    def predict(self, sample: FeatureVector) -> tuple[str, float]:
        proba = self.predict_proba(sample)
        label = max(proba, key=lambda name: (proba[name], name))
        return label, proba[label]

    def n_best(self, sample: FeatureVector, n: int) -> list[tuple[str, float]]:
        proba = self.predict_proba(sample)
        ranked = sorted(proba.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked[:n]

    def to_json(self) -> dict:
        return {
            "labels": self.labels,
            "vocabulary": self.vocabulary,
            "weights": [[float(v) for v in row] for row in self.weights],
            "bias": [float(v) for v in self.bias],
            "settings": {
                "learning_rate": self.settings.learning_rate,
                "epochs": self.settings.epochs,
                "l2": self.settings.l2,
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearClassifier":
        return cls(
            labels=list(data["labels"]),
            vocabulary={k: int(v) for k, v in data["vocabulary"].items()},
            weights=np.array(data["weights"], dtype=float).reshape(
                len(data["vocabulary"]), len(data["labels"])
            ),
            bias=np.array(data["bias"], dtype=float),
            settings=TrainSettings(**data.get("settings", {})),
        )


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)
