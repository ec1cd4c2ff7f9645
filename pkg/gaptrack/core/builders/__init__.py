"""
Track Builders Package - The five track construction algorithms
"""

from .base import BaseTrackBuilder, alteration_probability, apply_alterations
from .factory import BuilderFactory, build, build_full_car, get_builder_factory
from .even import EvenSpacingBuilder, build_even
from .alterations import RandomAlterationsBuilder, build_random_alterations
from .conditional import ConditionalBuilder, DerandState, build_conditional, conditional_bound
from .lll import LLLFixitBuilder, LLLPrecondition, build_lll_fixit, lll_precondition
from .minhash import MinHashBuilder, MinHashState, build_minhash

__all__ = [
    "BaseTrackBuilder",
    "BuilderFactory",
    "get_builder_factory",
    "build",
    "build_full_car",
    "alteration_probability",
    "apply_alterations",
    # Builders
    "EvenSpacingBuilder",
    "RandomAlterationsBuilder",
    "ConditionalBuilder",
    "LLLFixitBuilder",
    "MinHashBuilder",
    # Entry points
    "build_even",
    "build_random_alterations",
    "build_conditional",
    "build_lll_fixit",
    "build_minhash",
    # Internals exposed for tests
    "DerandState",
    "MinHashState",
    "LLLPrecondition",
    "lll_precondition",
    "conditional_bound",
]
