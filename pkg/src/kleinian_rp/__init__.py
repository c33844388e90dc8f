"""Discreteness of RP groups generated by a primitive elliptic and a hyperbolic element."""
from __future__ import annotations

__version__ = "0.1.0"

from .algebra import MoebiusElement, ParameterTriple, axis_regime, classify_element, params_of_pair
from .classifier import FamilyMatch, Verdict, classify, enumerate_family
from .config import DEFAULT_CONFIG, Config, load_config
from .indices import INF, INF_BAR, ExtIndex, UPoint
from .presentations import generator_words, presentation_of
from .verify import certify_geometry, certify_presentation, realize, realize_match, sqrt_commutator

__all__ = [
    "Config", "DEFAULT_CONFIG", "ExtIndex", "FamilyMatch", "INF", "INF_BAR", "MoebiusElement",
    "ParameterTriple", "UPoint", "Verdict", "__version__", "axis_regime", "certify_geometry",
    "certify_presentation", "classify", "classify_element", "enumerate_family", "generator_words",
    "load_config", "params_of_pair", "presentation_of", "realize", "realize_match",
    "sqrt_commutator",
]
