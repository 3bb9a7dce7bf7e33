"""The given-clause main loop.

    while the SOS is not empty:
        select a given clause from the SOS and move it to usable
        infer paramodulants between the given clause and usable clauses
        process each new clause
        append the ones that pass the retention tests to the SOS
"""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from .clauses import (
    Clause, EmptyClause, Flip, convert_goal_to_denial,
    detect_contradiction, is_tautology, make_clause, subsumes,
)
from .hints import HintList, match_hint
from .indexing import DiscriminationTree
from .rewriting import DEFAULT_DEMOD_BOUND, Demodulators, demodulate, paramodulate
from .terms import Order, make_ordering

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Selection:
    """Given-clause strategy: ``breadth_first``, ``lightest_first`` or a
    ``ratio`` cycle of (oldest, lightest false, lightest true) picks."""

    kind: str = "ratio"
    counts: Tuple[int, int, int] = (1, 4, 4)

    def __post_init__(self):
        if self.kind not in ("ratio", "breadth_first", "lightest_first"):
            raise ConfigError("unknown selection %r" % self.kind)
        if self.kind == "ratio":
            if any(n < 0 for n in self.counts) or not any(self.counts):
                raise ConfigError("ratio components must be nonnegative, not all zero")

    def __str__(self):
        if self.kind == "ratio":
            return "ratio:%d,%d,%d" % self.counts
        return {"breadth_first": "age", "lightest_first": "weight"}[self.kind]


def parse_selection(text: str) -> Selection:
    text = text.strip()
    if text in ("age", "breadth_first"):
        return Selection("breadth_first")
    if text in ("weight", "lightest_first"):
        return Selection("lightest_first")
    if text.startswith("ratio"):
        _, _, rest = text.partition(":")
        try:
            counts = tuple(int(n) for n in rest.split(",")) if rest else (1, 4, 4)
        except ValueError:
            raise ConfigError("bad ratio %r" % text) from None
        if len(counts) != 3:
            raise ConfigError("ratio needs three counts: old,false,true")
        return Selection("ratio", counts)
    raise ConfigError("unknown selection %r" % text)


@dataclass(frozen=True)
class SearchConfig:
    selection: Selection = Selection()
    max_weight: Optional[int] = None
    max_vars: Optional[int] = None
    max_given: Optional[int] = None
    time_limit: Optional[float] = None
    hint_order: str = "weight"  # "weight" (lowest weight, then age) or "age"
    apply_limits_to_hint_matchers: bool = False
    demod_step_bound: int = DEFAULT_DEMOD_BOUND
    back_subsume: bool = False
    # take one non-matcher every N selections even when matchers are waiting
    non_matcher_every: Optional[int] = None
    ordering: str = "lpo"

    def __post_init__(self):
        if self.hint_order not in ("weight", "age"):
            raise ConfigError("hint_order must be 'weight' or 'age'")
        if self.non_matcher_every is not None and self.non_matcher_every < 1:
            raise ConfigError("non_matcher_every must be positive")


_OPTION_FIELDS = {
    "max_weight": "max_weight", "max_vars": "max_vars", "max_given": "max_given",
    "max_seconds": "time_limit", "hint_order": "hint_order", "order": "ordering",
    "demod_step_bound": "demod_step_bound", "back_subsume": "back_subsume",
    "limits_apply_to_hints": "apply_limits_to_hint_matchers",
}


def config_from_options(options: Dict[str, object], base: SearchConfig = SearchConfig()) -> SearchConfig:
    """Apply problem-file options (``assign``/``set``/``clear``) to ``base``."""
    changes = {}
    for name, value in options.items():
        if name == "function_order":
            continue
        if name == "selection":
            changes["selection"] = parse_selection(str(value))
        elif name in _OPTION_FIELDS:
            changes[_OPTION_FIELDS[name]] = value
        else:
            raise ConfigError("unknown option %r" % name)
    return replace(base, **changes)


# ---------------------------------------------------------------------------
# Outcomes
# ---------------------------------------------------------------------------

@dataclass
class Outcome:
    given_count: int = 0
    generated: int = 0
    kept: int = 0
    seconds: float = 0.0
    givens: List[int] = field(default_factory=list, repr=False)

    name = "?"
    found = False


@dataclass
class ProofFound(Outcome):
    proof: object = None

    name = "proof found"
    found = True


@dataclass
class SosEmpty(Outcome):
    name = "SOS empty"


@dataclass
class GivenLimit(Outcome):
    name = "given limit"


@dataclass
class TimeLimit(Outcome):
    name = "time limit"


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------

class ProverState:
    """SOS, usable list, demodulators and the arena of retained clauses."""

    def __init__(self, config: SearchConfig, hints: HintList, symbols):
        self.config = config
        self.hints = hints
        self.symbols = symbols
        self.ordering = make_ordering(symbols, config.ordering)
        self.demodulators = Demodulators(self.ordering, config.demod_step_bound)
        self.clauses: Dict[int, Clause] = {}
        self.sos: Dict[int, Clause] = {}
        self.usable: Dict[int, Clause] = {}  # insertion ordered
        self.by_age: List[Tuple] = []
        self.by_weight: List[Tuple] = []
        self.by_weight_class: Dict[str, List[Tuple]] = {"true": [], "false": []}
        self.matchers: List[Tuple] = []
        self.index = {True: DiscriminationTree(), False: DiscriminationTree()}
        self.cycle = self._build_cycle(config.selection)
        self.cycle_pos = 0
        self.given_count = 0
        self.generated = 0
        self.kept = 0
        self.next_id = 1
        self.givens: List[int] = []
        self.empty: Optional[EmptyClause] = None

    @staticmethod
    def _build_cycle(sel: Selection) -> List[str]:
        if sel.kind == "breadth_first":
            return ["old"]
        if sel.kind == "lightest_first":
            return ["light"]
        old, false_light, true_light = sel.counts
        return ["old"] * old + ["false"] * false_light + ["true"] * true_light

    # -- bookkeeping -------------------------------------------------------

    def _index_add(self, c: Clause) -> None:
        tree = self.index[c.positive]
        tree.insert(c.lhs, (c, 0))
        tree.insert(c.rhs, (c, 1))

    def _index_remove(self, c: Clause) -> None:
        tree = self.index[c.positive]
        tree.remove(c.lhs, (c, 0))
        tree.remove(c.rhs, (c, 1))

    def retained(self):
        return list(self.usable.values()) + list(self.sos.values())

    def add_to_sos(self, c: Clause) -> None:
        self.sos[c.id] = c
        self._index_add(c)
        heapq.heappush(self.by_age, (c.birth, c.id))
        entry = (c.weight, c.birth, c.id)
        heapq.heappush(self.by_weight, entry)
        heapq.heappush(self.by_weight_class["false" if c.is_false else "true"], entry)
        if c.hint_matched is not None:
            if self.config.hint_order == "age":
                heapq.heappush(self.matchers, (c.birth, c.id))
            else:
                heapq.heappush(self.matchers, entry)

    def _pop(self, heap: List[Tuple]) -> Optional[Clause]:
        while heap:
            cid = heapq.heappop(heap)[-1]
            if cid in self.sos:
                return self.sos[cid]
        return None

    def _peek_live(self, heap: List[Tuple]) -> bool:
        while heap and heap[0][-1] not in self.sos:
            heapq.heappop(heap)
        return bool(heap)

    def remove(self, c: Clause) -> None:
        """Drop a retained clause (back subsumption)."""
        self.sos.pop(c.id, None)
        if self.usable.pop(c.id, None) is not None:
            self.demodulators.remove(c.id)
        self._index_remove(c)

    # -- subsumption -------------------------------------------------------

    def subsumed(self, c: Clause) -> bool:
        # a subsumer has one side generalizing c.lhs and the other c.rhs
        tree = self.index[c.positive]
        right = {(d.id, side) for d, side in tree.generalizations(c.rhs)}
        if not right:
            return False
        tried = set()
        for other, side in tree.generalizations(c.lhs):
            if other.id in tried or (other.id, 1 - side) not in right:
                continue
            tried.add(other.id)
            if c.weight >= other.weight and subsumes(other, c):
                return True
        return False

    def back_subsume(self, c: Clause) -> int:
        victims = [d for d in self.retained() if d.id != c.id and subsumes(c, d)]
        for d in victims:
            self.remove(d)
        return len(victims)


# ---------------------------------------------------------------------------
# Selection
# ---------------------------------------------------------------------------

def select_given(state: ProverState, config: SearchConfig) -> Clause:
    """Pick the next given clause and move it from the SOS to usable."""
    if not state.sos:
        raise LookupError("SOS is empty")
    chosen = None
    forced = (config.non_matcher_every is not None
              and (state.given_count + 1) % config.non_matcher_every == 0
              and len(state.sos) > _live_matchers(state))
    if not forced and state._peek_live(state.matchers):
        chosen = state._pop(state.matchers)
    while chosen is None:
        # a full turn of the cycle always finds something: SOS is nonempty
        for _ in range(len(state.cycle)):
            slot = state.cycle[state.cycle_pos]
            state.cycle_pos = (state.cycle_pos + 1) % len(state.cycle)
            heap = {"old": state.by_age, "light": state.by_weight}.get(slot)
            if heap is None:
                heap = state.by_weight_class[slot]
            if forced:
                chosen = _pop_non_matcher(state, heap)
            else:
                chosen = state._pop(heap)
            if chosen is not None:
                break
        if chosen is None and forced:
            forced = False
            chosen = state._pop(state.matchers)
    del state.sos[chosen.id]
    state.usable[chosen.id] = chosen
    state.given_count += 1
    state.givens.append(chosen.id)
    return chosen


def _live_matchers(state: ProverState) -> int:
    return sum(1 for c in state.sos.values() if c.hint_matched is not None)


def _pop_non_matcher(state: ProverState, heap: List[Tuple]) -> Optional[Clause]:
    skipped = []
    found = None
    while heap:
        item = heapq.heappop(heap)
        c = state.sos.get(item[-1])
        if c is None:
            continue
        if c.hint_matched is None:
            found = c
            break
        skipped.append(item)
    for item in skipped:
        heapq.heappush(heap, item)
    return found


# ---------------------------------------------------------------------------
# Processing new clauses
# ---------------------------------------------------------------------------

KEPT = "kept"
PROOF = "proof"


def _orient(c: Clause, state: ProverState) -> Clause:
    if state.ordering.compare(c.lhs, c.rhs) is Order.LESS:
        return make_clause(c.rhs, c.lhs, c.positive,
                           justification=c.justification + (Flip(),),
                           polarity=c.polarity)
    return c


def process_new_clause(c: Clause, state: ProverState, config: SearchConfig) -> str:
    """Run the retention pipeline; returns ``kept``, ``proof`` or the reason
    the clause was discarded."""
    state.generated += 1
    initial = c.is_input
    if state.demodulators and not initial:
        c, _ = demodulate(c, state.demodulators)
    if is_tautology(c):
        return "tautology"
    if not initial:
        c = _orient(c, state)
    matched = match_hint(c, state.hints) is not None
    # limits first: they are far cheaper than the subsumption lookup
    if not initial and (not matched or config.apply_limits_to_hint_matchers):
        if config.max_weight is not None and c.weight > config.max_weight:
            return "weight"
        if config.max_vars is not None and c.var_count > config.max_vars:
            return "vars"
    if state.subsumed(c):
        return "subsumed"
    c.id = state.next_id
    c.birth = state.next_id
    state.next_id += 1
    state.clauses[c.id] = c
    state.kept += 1
    empty = detect_contradiction(c)
    if empty is not None:
        empty.id = state.next_id
        state.next_id += 1
        state.empty = empty
        return PROOF
    if config.back_subsume:
        state.back_subsume(c)
    state.add_to_sos(c)
    return KEPT


# ---------------------------------------------------------------------------
# Main loop
# ---------------------------------------------------------------------------

def initial_clauses(problem, symbols) -> List[Clause]:
    if not problem.assumptions:
        raise ConfigError("problem has no assumptions")
    if len(problem.goals) != 1:
        raise ConfigError("a prove run needs exactly one goal, found %d" % len(problem.goals))
    inputs = [replace(c) for c in problem.assumptions]
    denial = convert_goal_to_denial(problem.goals[0], symbols, 0)
    return inputs + [denial]


def saturate(problem, config: SearchConfig = SearchConfig(), hints: Optional[HintList] = None,
             state_out: Optional[list] = None) -> Outcome:
    """Search for a refutation of the problem's goal denial.

    Deterministic for fixed inputs unless the time limit fires.  If
    ``state_out`` is a list the final :class:`ProverState` is appended.
    """
    from .proof import extract_proof

    start = time.monotonic()
    symbols = problem.symbols.copy()
    state = ProverState(config, hints or HintList(), symbols)
    if state_out is not None:
        state_out.append(state)

    def finish(cls, **kw):
        return cls(given_count=state.given_count, generated=state.generated, kept=state.kept,
                   seconds=time.monotonic() - start, givens=list(state.givens), **kw)

    def found():
        proof = extract_proof(state, state.empty)
        return finish(ProofFound, proof=proof)

    for c in initial_clauses(problem, symbols):
        if process_new_clause(c, state, config) == PROOF:
            return found()

    deadline = None if config.time_limit is None else start + config.time_limit
    while state.sos:
        if config.max_given is not None and state.given_count >= config.max_given:
            return finish(GivenLimit)
        if deadline is not None and time.monotonic() > deadline:
            return finish(TimeLimit)
        given = select_given(state, config)
        state.demodulators.add(given)
        log.debug("given #%d: %r", state.given_count, given)
        for n, child in enumerate(_inferences(given, state)):
            if process_new_clause(child, state, config) == PROOF:
                return found()
            if deadline is not None and n % 200 == 199 and time.monotonic() > deadline:
                return finish(TimeLimit)
    return finish(SosEmpty)


def _inferences(given: Clause, state: ProverState):
    """Paramodulants with the given clause as one parent; usable partners
    are visited in the order they became usable."""
    ordering = state.ordering
    for other in list(state.usable.values()):
        if given.id not in state.usable:
            return
        if given.positive:
            yield from paramodulate(given, other, ordering)
        if other.positive and other is not given:
            yield from paramodulate(other, given, ordering)
