"""chatkit: a framework for building closed-domain chat dialogue systems.

Combines reaction-based and state-transition-network-based dialogue
management under a multi-expert model, with domain-specific language
understanding trained from developer-written example utterances.
"""

__version__ = "0.1.0"
