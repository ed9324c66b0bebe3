"""Mod-k edge decompositions of uniform hypergraphs, with exact oracles."""

from .bmatch import BipartiteGraph, HallViolator, Matching, max_matching, min_vertex_cover, perfect_matching_or_violator
from .decomp import DecompConfig, Decomposition, decompose, degree_classes, verify_decomposition
from .errors import BudgetError, ConsistencyError, ConstructionError, ModkError, ParameterError, ParseError
from .factor import Factor, FactorConfig, find_k_factor, find_perfect_matching, verify_factor
from .harness import ExperimentConfig, TrialRecord, run_experiment
from .hypercore import Hypergraph, ModelParams, generate, load_hypergraph, read_hypergraph, save_hypergraph, write_hypergraph
from .oracle import binomial_mod_k, chi_exact, hypergraph_pm_exact

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph", "HallViolator", "Matching", "max_matching", "min_vertex_cover", "perfect_matching_or_violator",
    "DecompConfig", "Decomposition", "decompose", "degree_classes", "verify_decomposition",
    "BudgetError", "ConsistencyError", "ConstructionError", "ModkError", "ParameterError", "ParseError",
    "Factor", "FactorConfig", "find_k_factor", "find_perfect_matching", "verify_factor",
    "ExperimentConfig", "TrialRecord", "run_experiment",
    "Hypergraph", "ModelParams", "generate", "load_hypergraph", "read_hypergraph", "save_hypergraph", "write_hypergraph",
    "binomial_mod_k", "chi_exact", "hypergraph_pm_exact",
]
