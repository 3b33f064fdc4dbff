"""Finite-pool laboratory for Kripke-style and supervaluational theories of truth.

A pool is a finite, Goedel-coded set of sentences with a truth predicate.  On
top of it live the evaluation schemes, the jump operators, fixed-point search,
axiom checkers for the IT and PK theories and a bounded sequent prover.
"""

from .base_model import BaseModel, TruthSet
from .bundled import BUNDLED, load
from .consequence import ConsequenceMode, entails, provable_implication
from .fixedpoint import (FixpointClassification, NonIncreasing, PoolTooLarge, classify, enumerate_fixpoints,
                         iterate, maximal_intrinsic, minimal_fixpoint)
from .jumps import JumpConfig, JumpKind, WitnessPolicy, apply, config
from .schemes import Admissibility, SchemeError, classical_sat, sk_sat, xi_onestep, xi_star_onestep
from .syntax import PoolError, SentencePool, load_pool, parse_formula

__version__ = "0.1.0"

__all__ = [
    "Admissibility", "BUNDLED", "BaseModel", "ConsequenceMode", "FixpointClassification", "JumpConfig",
    "JumpKind", "NonIncreasing", "PoolError", "PoolTooLarge", "SchemeError", "SentencePool", "TruthSet",
    "WitnessPolicy", "apply", "classical_sat", "classify", "config", "entails", "enumerate_fixpoints",
    "iterate", "load", "load_pool", "maximal_intrinsic", "minimal_fixpoint", "parse_formula",
    "provable_implication", "sk_sat", "xi_onestep", "xi_star_onestep",
]
