"""MiniFood: a small food-and-drink chat domain used by the tests, the
demos, and the default service configuration.

The character is Sophia, an American who recently moved to Japan and is
curious about food. Knowledge lives in XML files next to this package;
domain facts (what Sophia likes, which foods are similar) live in a flat
relations file.
"""

from __future__ import annotations

from pathlib import Path

PACKAGE_DIR = Path(__file__).parent
KNOWLEDGE_DIR = PACKAGE_DIR / "knowledge"

DECLARATIONS = KNOWLEDGE_DIR / "declarations.xml"
KNOWLEDGE_FILES = [
    KNOWLEDGE_DIR / "dictionary.xml",
    KNOWLEDGE_DIR / "responses.xml",
    KNOWLEDGE_DIR / "networks.xml",
    KNOWLEDGE_DIR / "topics.xml",
]
TRAINING_FILE = PACKAGE_DIR / "training.jsonl"
RELATIONS_FILE = PACKAGE_DIR / "relations.csv"
MODEL_FILE = PACKAGE_DIR / "model.json"
CONFIG_FILE = PACKAGE_DIR / "config.yaml"


def load_kb():
    from ..knowledge import load_knowledge

    return load_knowledge(KNOWLEDGE_FILES, DECLARATIONS)


def load_registry():
    from ..engine import FunctionRegistry
    from .functions import register

    registry = FunctionRegistry()
    register(registry)
    return registry
