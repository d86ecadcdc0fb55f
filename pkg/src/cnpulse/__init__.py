"""Composite novelty pulsation: NSGA-II with composite objectives and pulsed novelty selection."""
from .engine import GenerationRecord, RunConfig, RunResult, run
from .objectives import ObjectiveParams, composite_vector, single_fitness
from .sortnet import EvalResult, Network, evaluate, export_network, parse_network

__all__ = [
    "EvalResult", "GenerationRecord", "Network", "ObjectiveParams", "RunConfig", "RunResult",
    "composite_vector", "evaluate", "export_network", "parse_network", "run", "single_fitness",
]
__version__ = "0.1.0"
