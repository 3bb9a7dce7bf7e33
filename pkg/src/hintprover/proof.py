"""Proof objects and the simplicity measures computed over them."""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from typing import Dict, List

from .clauses import Clause, EmptyClause, Paramod, canonical_key, rewrite_count


class ProofError(RuntimeError):
    """The clause arena does not contain a parent the proof refers to."""


@dataclass
class Proof:
    """Ancestor-closed steps in topological (id) order, then the conclusion."""

    steps: List[Clause]
    conclusion: EmptyClause
    given_count: int = 0

    def __post_init__(self):
        self.by_id = {c.id: c for c in self.steps}

    @property
    def witness(self) -> Clause:
        return self.by_id[self.conclusion.witness_id]

    def inputs(self) -> List[Clause]:
        return [c for c in self.steps if c.is_input]


def extract_proof(state, empty: EmptyClause) -> Proof:
    """Trace ``empty`` back through the arena of ``state`` (anything with a
    ``clauses`` mapping and ``given_count``; a plain dict also works)."""
    arena = state.clauses if hasattr(state, "clauses") else state
    needed: Dict[int, Clause] = {}
    stack = [empty.witness_id]
    while stack:
        cid = stack.pop()
        if cid in needed:
            continue
        c = arena.get(cid)
        if c is None:
            raise ProofError("clause %d is referenced but was never retained" % cid)
        needed[cid] = c
        stack.extend(c.parents())
    steps = [needed[k] for k in sorted(needed)]
    return Proof(steps, empty, getattr(state, "given_count", 0))


@dataclass
class ProofMetrics:
    length: int = 0
    level: int = 0
    max_weight: int = 0
    max_noninput_weight: int = 0
    avg_weight: float = 0.0
    rewrite_count: int = 0
    backward_steps: int = 0
    givens_used: int = 0
    axiom_out_paths: int = 0

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


METRIC_KEYS = tuple(ProofMetrics.__dataclass_fields__)


def clause_levels(steps: List[Clause]) -> Dict[int, int]:
    """Inputs are level 0; a derived clause is one more than its deepest
    parent, rewrite rules included."""
    by_id = {c.id: c for c in steps}
    levels: Dict[int, int] = {}

    def level(cid: int) -> int:
        if cid in levels:
            return levels[cid]
        # iterative post-order to survive deep proofs
        stack = [cid]
        while stack:
            top = stack[-1]
            c = by_id[top]
            pending = [p for p in c.parents() if p not in levels]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            if c.is_input:
                levels[top] = 0
            else:
                levels[top] = 1 + max((levels[p] for p in c.parents()), default=-1)
        return levels[cid]

    for c in steps:
        level(c.id)
    return levels


def compute_metrics(p: Proof) -> ProofMetrics:
    steps = p.steps
    levels = clause_levels(steps)
    weights = [c.weight for c in steps]
    noninput = [c.weight for c in steps if not c.is_input]
    input_ids = {c.id for c in steps if c.is_input}
    edges = set()
    for c in steps:
        for parent in c.parents():
            if parent in input_ids:
                edges.add((parent, c.id))
    if p.conclusion.witness_id in input_ids:
        edges.add((p.conclusion.witness_id, p.conclusion.id))
    return ProofMetrics(
        length=sum(1 for c in steps if isinstance(c.justification[0], Paramod)),
        level=levels[p.conclusion.witness_id],
        max_weight=max(weights),
        max_noninput_weight=max(noninput, default=0),
        avg_weight=round(sum(weights) / len(weights), 4),
        rewrite_count=sum(rewrite_count(c.justification) for c in steps),
        backward_steps=sum(1 for c in steps if c.is_false),
        givens_used=p.given_count,
        axiom_out_paths=len(edges),
    )


def _step_signature(c: Clause):
    return canonical_key(c), c.justification[0].kind


def proofs_equivalent(p1: Proof, p2: Proof) -> bool:
    """Same multiset of (clause up to renaming and orientation, primary
    inference kind)."""
    return (Counter(map(_step_signature, p1.steps)) == Counter(map(_step_signature, p2.steps)))


def to_dot(p: Proof) -> str:
    from .syntax import format_clause

    lines = ["digraph proof {"]
    for c in p.steps:
        label = format_clause(c).replace('"', '\\"')
        lines.append('  n%d [label="%d: %s"];' % (c.id, c.id, label))
        for parent in c.parents():
            lines.append("  n%d -> n%d;" % (parent, c.id))
    lines.append('  n%d [label="$F"];' % p.conclusion.id)
    lines.append("  n%d -> n%d;" % (p.conclusion.witness_id, p.conclusion.id))
    lines.append("}")
    return "\n".join(lines) + "\n"
