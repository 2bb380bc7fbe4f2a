"""Data-driven propositional-logic proof tutor.

Core layers: formulas and inference rules, proof workspace graphs, the
interaction-network hint generator, hint delivery policies, the study-session
state machine, cohort simulation, and the analytics/clustering pipeline.
"""

from .formulas import Formula, MalformedFormula, parse, render
from .rules import Rule, Verdict, enumerate_one_step, verify_step
from .proofs import IncompleteProof, ProofGraph, needed_set, solution_summary
from .hintnet import (
    HintContent,
    InteractionNetwork,
    StateKey,
    ValueIterationParams,
    build_network,
    canonical_state,
    hint_lookup,
    node_color,
    value_iterate,
)
from .policy import Condition, HintKind
from .bank import Bank, BankIncomplete, Problem, load_bank, save_bank
from .session import Phase, Session, TutorEngine, replay_log

__all__ = [
    "Formula",
    "MalformedFormula",
    "parse",
    "render",
    "Rule",
    "Verdict",
    "verify_step",
    "enumerate_one_step",
    "ProofGraph",
    "IncompleteProof",
    "needed_set",
    "solution_summary",
    "StateKey",
    "HintContent",
    "InteractionNetwork",
    "ValueIterationParams",
    "canonical_state",
    "build_network",
    "value_iterate",
    "hint_lookup",
    "node_color",
    "Condition",
    "HintKind",
    "Bank",
    "BankIncomplete",
    "Problem",
    "load_bank",
    "save_bank",
    "Phase",
    "Session",
    "TutorEngine",
    "replay_log",
]
