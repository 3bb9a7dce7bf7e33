"""Proof simplification campaigns.

Each iteration proves the goal using the previous proof as a hint list.
When proofs stop improving the maximum clause weight is squeezed below the
heaviest derived clause of the latest proof (with limits applied to hint
matchers too).  A squeeze that loses the proof is undone and that limit
becomes a floor.  The simplest proof seen anywhere is kept.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .formats import render_proof
from .hints import HintList, extract_hints, merge_hints
from .proof import METRIC_KEYS, Proof, ProofMetrics, compute_metrics, proofs_equivalent
from .saturation import ConfigError, SearchConfig, TimeLimit, saturate
from .terms import Order

log = logging.getLogger(__name__)

DEFAULT_ORDERING = "length,max_noninput_weight,level,rewrite_count"


# ---------------------------------------------------------------------------
# Simplicity orderings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicityOrdering:
    """Lexicographic comparison over components; each component is a
    weighted sum of metric keys, e.g. ``"length+0.5*level,max_weight"``."""

    components: Tuple[Tuple[Tuple[float, str], ...], ...]

    @classmethod
    def parse(cls, text: str) -> "SimplicityOrdering":
        comps = []
        for chunk in text.split(","):
            chunk = chunk.replace(" ", "")
            if not chunk:
                raise ConfigError("empty component in ordering %r" % text)
            terms = []
            for part in re.split(r"\+", chunk):
                coef, _, key = part.rpartition("*")
                if key not in METRIC_KEYS:
                    raise ConfigError("unknown metric %r in ordering (known: %s)"
                                      % (key, ", ".join(METRIC_KEYS)))
                try:
                    terms.append((float(coef) if coef else 1.0, key))
                except ValueError:
                    raise ConfigError("bad coefficient %r" % coef) from None
            comps.append(tuple(terms))
        return cls(tuple(comps))

    def key(self, m: ProofMetrics) -> Tuple[float, ...]:
        data = m.as_dict()
        return tuple(sum(c * data[k] for c, k in comp) for comp in self.components)

    def __str__(self):
        def fmt(comp):
            return "+".join(k if c == 1.0 else "%g*%s" % (c, k) for c, k in comp)
        return ",".join(fmt(comp) for comp in self.components)


def compare_simplicity(m1: ProofMetrics, m2: ProofMetrics,
                       ordering: Union[str, SimplicityOrdering] = DEFAULT_ORDERING) -> Order:
    """LESS means m1 describes the simpler proof."""
    if isinstance(ordering, str):
        ordering = SimplicityOrdering.parse(ordering)
    k1, k2 = ordering.key(m1), ordering.key(m2)
    if k1 < k2:
        return Order.LESS
    if k1 > k2:
        return Order.GREATER
    return Order.EQUAL


# ---------------------------------------------------------------------------
# Configuration and state
# ---------------------------------------------------------------------------

@dataclass
class CampaignConfig:
    max_iterations: int = 10
    search: SearchConfig = SearchConfig()
    squeeze: Union[str, Sequence[int]] = "auto"  # "auto", "none" or explicit max_weight schedule
    keep_previous_hints: bool = False
    vary_hint_order: bool = True
    squeeze_max_vars: Sequence[int] = ()
    ordering: Union[str, SimplicityOrdering] = DEFAULT_ORDERING
    per_run_time_limit: Optional[float] = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be at least 1")
        if isinstance(self.ordering, str):
            self.ordering = SimplicityOrdering.parse(self.ordering)
        if isinstance(self.squeeze, str) and self.squeeze not in ("auto", "none"):
            raise ConfigError("squeeze must be 'auto', 'none' or a list of limits")
        if self.per_run_time_limit is not None:
            self.search = replace(self.search, time_limit=self.per_run_time_limit)


@dataclass
class IterationRecord:
    iteration: int
    config_delta: Dict[str, object]
    outcome: str
    metrics: Optional[Dict[str, object]]
    given_count: int
    hints: int
    stable: bool = False
    note: str = ""
    seconds: float = 0.0

    def as_dict(self, timing: bool = True) -> Dict[str, object]:
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        if not timing:
            data.pop("seconds")
        return data


@dataclass
class CampaignState:
    config: CampaignConfig
    search: SearchConfig
    hints: HintList = field(default_factory=HintList)
    iteration: int = 0
    best: Optional[Tuple[Proof, ProofMetrics, int]] = None
    first: Optional[Tuple[Proof, ProofMetrics]] = None
    history: List[IterationRecord] = field(default_factory=list)
    stable: bool = False
    done: bool = False
    reason: str = ""
    # latest successful run
    last_proof: Optional[Proof] = None
    last_metrics: Optional[ProofMetrics] = None
    last_success: Optional[SearchConfig] = None
    last_success_hints: Optional[HintList] = None
    improved: bool = True
    last_found: bool = False
    # squeezing
    pending: Optional[str] = None
    floors: Dict[str, Optional[int]] = field(default_factory=dict)
    weight_schedule: List[int] = field(default_factory=list)
    vars_schedule: List[int] = field(default_factory=list)
    hint_order_phase: str = "unused"  # unused -> active -> done
    time_retried: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def best_metrics(self) -> Optional[ProofMetrics]:
        return self.best[1] if self.best else None


def start_campaign(config: CampaignConfig, hints: Optional[HintList] = None) -> CampaignState:
    squeeze = config.squeeze
    return CampaignState(
        config=config, search=config.search, hints=hints or HintList(),
        weight_schedule=list(squeeze) if not isinstance(squeeze, str) else [],
        vars_schedule=list(config.squeeze_max_vars))


def _delta(template: SearchConfig, current: SearchConfig) -> Dict[str, object]:
    out = {}
    for f in fields(SearchConfig):
        a, b = getattr(template, f.name), getattr(current, f.name)
        if a != b:
            out[f.name] = str(b) if f.name == "selection" else b
    return out


# ---------------------------------------------------------------------------
# Steps
# ---------------------------------------------------------------------------

def iterate_once(problem, state: CampaignState) -> CampaignState:
    """One prove run with the current hints and limits."""
    config = state.config
    run_config = state.search
    outcome = saturate(problem, run_config, state.hints)
    notes, state.notes = state.notes, []
    record = IterationRecord(
        iteration=state.iteration, config_delta=_delta(config.search, run_config),
        outcome=outcome.name, metrics=None, given_count=outcome.given_count,
        hints=len(state.hints), seconds=round(outcome.seconds, 3))
    state.last_found = outcome.found
    if outcome.found:
        proof = outcome.proof
        metrics = compute_metrics(proof)
        record.metrics = metrics.as_dict()
        if state.best is None or compare_simplicity(metrics, state.best[1], config.ordering) is Order.LESS:
            state.best = (proof, metrics, state.iteration)
        if state.first is None:
            state.first = (proof, metrics)
        state.improved = (state.last_metrics is None or
                          compare_simplicity(metrics, state.last_metrics, config.ordering) is Order.LESS)
        state.stable = state.last_proof is not None and proofs_equivalent(state.last_proof, proof)
        record.stable = state.stable
        new_hints = extract_hints(proof, origin="iteration %d" % state.iteration)
        if config.keep_previous_hints:
            new_hints = merge_hints(state.hints, new_hints)
        state.last_proof, state.last_metrics = proof, metrics
        state.last_success, state.last_success_hints = run_config, state.hints
        state.hints = new_hints
        state.pending = None
        if state.time_retried:
            state.search = replace(state.search, time_limit=config.search.time_limit)
            state.time_retried = False
    else:
        if state.last_success is None:
            state.done = True
            state.reason = "no proof at iteration %d: %s" % (state.iteration, outcome.name)
        else:
            fallback(state, timed_out=isinstance(outcome, TimeLimit))
    record.note = "; ".join(notes + state.notes)
    state.notes = []
    state.history.append(record)
    state.iteration += 1
    return state


def apply_squeeze(state: CampaignState) -> bool:
    """Tighten one limit for the next run; False when nothing is left."""
    config = state.config
    if config.squeeze != "none" and "max_weight" not in state.floors:
        target = None
        if config.squeeze == "auto":
            if state.last_metrics is not None:
                target = state.last_metrics.max_noninput_weight - 1
                if target < 1:
                    target = None
        elif state.weight_schedule:
            target = state.weight_schedule.pop(0)
        if target is not None:
            state.search = replace(state.search, max_weight=target,
                                   apply_limits_to_hint_matchers=True)
            state.pending = "max_weight"
            state.notes.append("squeeze max_weight=%d" % target)
            return True
        state.floors["max_weight"] = state.search.max_weight
    if state.vars_schedule and "max_vars" not in state.floors:
        target = state.vars_schedule.pop(0)
        state.search = replace(state.search, max_vars=target,
                               apply_limits_to_hint_matchers=True)
        state.pending = "max_vars"
        state.notes.append("squeeze max_vars=%d" % target)
        return True
    return False


def fallback(state: CampaignState, timed_out: bool = False) -> CampaignState:
    """Recover after a run without a proof."""
    if state.pending is not None:
        name = state.pending
        good = getattr(state.last_success, name)
        state.search = replace(state.search, **{name: good})
        if name == "max_weight" and good is None and state.search.max_vars == state.config.search.max_vars:
            state.search = replace(state.search, apply_limits_to_hint_matchers=
                                   state.config.search.apply_limits_to_hint_matchers)
        state.floors[name] = good
        state.pending = None
        state.notes.append("fallback: %s back to %s (floor)" % (name, good))
        return state
    if timed_out and not state.time_retried and state.search.time_limit is not None:
        state.time_retried = True
        state.search = replace(state.search, time_limit=state.search.time_limit * 2)
        state.notes.append("retry with time limit %g" % state.search.time_limit)
        return state
    # restore the hints that last worked
    if state.best is not None and state.last_success_hints is not None:
        restore = extract_hints(state.best[0], origin="best proof")
        if state.config.search.time_limit is not None:
            state.search = replace(state.search, time_limit=state.config.search.time_limit)
        if [h.clause for h in restore] and _same_hints(restore, state.hints):
            state.done = True
            state.reason = "no proof with the best proof's hints"
        state.hints = restore
        state.notes.append("fallback: hints from best proof")
    return state


def _same_hints(a: HintList, b: HintList) -> bool:
    from .clauses import canonical_key
    return [canonical_key(c) for c in a.clauses()] == [canonical_key(c) for c in b.clauses()]


def _plan_next(state: CampaignState) -> None:
    """Decide the limits of the next run after a successful one."""
    config = state.config
    if state.hint_order_phase == "active":
        state.search = replace(state.search, hint_order=config.search.hint_order)
        state.hint_order_phase = "done"
        state.notes.append("hint order back to %s" % config.search.hint_order)
    if state.stable or not state.improved:
        if apply_squeeze(state):
            return
        if state.stable:
            state.done = True
            state.reason = "stable proof and no limit left to squeeze"
            return
        if config.vary_hint_order and state.hint_order_phase == "unused":
            flipped = "age" if config.search.hint_order == "weight" else "weight"
            state.search = replace(state.search, hint_order=flipped)
            state.hint_order_phase = "active"
            state.notes.append("hint order %s for one run" % flipped)


# ---------------------------------------------------------------------------
# Driver and report
# ---------------------------------------------------------------------------

@dataclass
class CampaignReport:
    history: List[IterationRecord]
    best_proof: Optional[Proof]
    best_metrics: Optional[ProofMetrics]
    best_iteration: Optional[int]
    first_metrics: Optional[ProofMetrics]
    stable: bool
    reason: str

    @property
    def proofs(self) -> int:
        return sum(1 for r in self.history if r.metrics is not None)

    def best_proof_text(self) -> str:
        return render_proof(self.best_proof) if self.best_proof is not None else ""

    def as_dict(self, timing: bool = True) -> Dict[str, object]:
        return {
            "iterations": [r.as_dict(timing) for r in self.history],
            "best_iteration": self.best_iteration,
            "best_metrics": self.best_metrics.as_dict() if self.best_metrics else None,
            "first_metrics": self.first_metrics.as_dict() if self.first_metrics else None,
            "stable": self.stable,
            "reason": self.reason,
            "best_proof": self.best_proof_text(),
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=False) + "\n"


def run_campaign(problem, config: CampaignConfig = None,
                 hints: Optional[HintList] = None) -> CampaignReport:
    config = config or CampaignConfig()
    state = start_campaign(config, hints if hints is not None else _problem_hints(problem))
    while state.iteration < config.max_iterations and not state.done:
        iterate_once(problem, state)
        if state.done:
            break
        if state.last_found:
            _plan_next(state)
        log.info("iteration %d: %s", state.iteration - 1, state.history[-1].outcome)
    if not state.reason:
        state.reason = "iteration limit reached"
    best = state.best
    return CampaignReport(
        history=state.history,
        best_proof=best[0] if best else None,
        best_metrics=best[1] if best else None,
        best_iteration=best[2] if best else None,
        first_metrics=state.first[1] if state.first else None,
        stable=state.stable,
        reason=state.reason,
    )


def _problem_hints(problem) -> HintList:
    if getattr(problem, "hints", None):
        return HintList.from_clauses(problem.hints, "problem file")
    return HintList()
