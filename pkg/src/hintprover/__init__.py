"""Unit-equality theorem prover with hint lists and proof simplification.

A given-clause search over unit equations (paramodulation, demodulation,
subsumption) whose selection can be steered by hints taken from earlier
proofs, plus a driver that repeatedly re-proves a goal to find simpler
proofs.
"""

from .checker import CheckResult, check_proof
from .clauses import Clause, canonical_key, convert_goal_to_denial, subsumes
from .formats import parse_proof, read_hints, render_proof, write_hints
from .hints import HintList, extract_hints, match_hint
from .proof import Proof, ProofMetrics, compute_metrics, extract_proof, proofs_equivalent
from .saturation import (
    ConfigError, GivenLimit, Outcome, ProofFound, SearchConfig, Selection, SosEmpty, TimeLimit,
    saturate,
)
from .simplifier import CampaignConfig, CampaignReport, compare_simplicity, run_campaign
from .syntax import ParseError, Problem, format_problem, load_problem, parse_problem
from .terms import App, SymbolTable, Var

__version__ = "0.1.0"

__all__ = [
    "App", "CampaignConfig", "CampaignReport", "CheckResult", "Clause", "ConfigError",
    "GivenLimit", "HintList", "Outcome", "ParseError", "Problem", "Proof", "ProofFound",
    "ProofMetrics", "SearchConfig", "Selection", "SosEmpty", "SymbolTable", "TimeLimit", "Var",
    "canonical_key", "check_proof", "compare_simplicity", "compute_metrics",
    "convert_goal_to_denial", "extract_hints", "extract_proof", "format_problem",
    "load_problem", "match_hint", "parse_problem", "parse_proof", "proofs_equivalent",
    "read_hints", "render_proof", "run_campaign", "saturate", "subsumes", "write_hints",
]
