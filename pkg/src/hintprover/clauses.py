"""Unit equational clauses and their justifications."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple, Union

from .terms import (
    App, SymbolTable, Term, Var, apply_subst, match_into, renumber, shift_vars,
    subterms, term_weight, unify, variable_name,
)


# ---------------------------------------------------------------------------
# Justifications
#
# A clause's justification is a tuple: one primary step (Input, Denial or
# Paramod) followed by zero or more secondary steps (Rewrite, Flip) applied
# in order to the primary result.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Input:
    index: int = 0

    kind = "input"

    def parents(self):
        return ()


@dataclass(frozen=True)
class Denial:
    goal: int = 0

    kind = "deny"

    def parents(self):
        return ()


@dataclass(frozen=True)
class Paramod:
    from_id: int
    into_id: int
    position: Tuple[int, ...]  # side (0 = lhs, 1 = rhs) then argument path

    kind = "para"

    def parents(self):
        return (self.from_id, self.into_id)


@dataclass(frozen=True)
class Rewrite:
    rule_ids: Tuple[int, ...]

    kind = "rewrite"

    def parents(self):
        return self.rule_ids


@dataclass(frozen=True)
class Flip:
    kind = "flip"

    def parents(self):
        return ()


Step = Union[Input, Denial, Paramod, Rewrite, Flip]
Justification = Tuple[Step, ...]


def justification_parents(just: Justification) -> List[int]:
    """Distinct parent ids, primary parents first."""
    seen: Dict[int, None] = {}
    for step in just:
        for p in step.parents():
            seen.setdefault(p, None)
    return list(seen)


def rewrite_count(just: Justification) -> int:
    return sum(len(s.rule_ids) for s in just if isinstance(s, Rewrite))


# ---------------------------------------------------------------------------
# Clauses
# ---------------------------------------------------------------------------

TRUE_CLAUSE = "true"
FALSE_CLAUSE = "false"


@dataclass(eq=False)
class Clause:
    """A signed unit equation ``lhs = rhs`` or ``lhs != rhs``.

    ``is_input`` covers both assumptions and the goal denial: every clause
    read from the problem rather than inferred.
    """

    lhs: Term
    rhs: Term
    positive: bool = True
    justification: Justification = (Input(),)
    id: int = 0
    polarity: str = TRUE_CLAUSE
    hint_matched: Optional[int] = None
    birth: int = 0
    var_names: Tuple[str, ...] = ()
    weight: int = field(init=False)
    var_count: int = field(init=False)

    def __post_init__(self):
        self.weight = term_weight(self.lhs) + term_weight(self.rhs) + 1
        vs = set()
        for t in (self.lhs, self.rhs):
            for s in subterms(t):
                if type(s) is Var:
                    vs.add(s.index)
        self.var_count = len(vs)

    @property
    def is_input(self) -> bool:
        return isinstance(self.justification[0], (Input, Denial))

    @property
    def is_false(self) -> bool:
        return self.polarity == FALSE_CLAUSE

    @property
    def sign(self) -> str:
        return "=" if self.positive else "!="

    def parents(self) -> List[int]:
        return justification_parents(self.justification)

    def name_of(self, index: int) -> str:
        if index < len(self.var_names):
            return self.var_names[index]
        return variable_name(index)

    def __repr__(self):
        from .syntax import format_clause
        return "Clause(%d: %s)" % (self.id, format_clause(self))


def make_clause(lhs: Term, rhs: Term, positive: bool = True, **kw) -> Clause:
    """Build a clause with variables renumbered densely by first occurrence."""
    (lhs, rhs), _ = renumber([lhs, rhs])
    return Clause(lhs, rhs, positive, **kw)


def rename_apart(c1: Clause, c2: Clause) -> Tuple[Clause, Clause]:
    """Copy c2 with its variables shifted above those of c1."""
    offset = c1.var_count
    if offset == 0 or c2.var_count == 0:
        return c1, c2
    moved = replace(c2, lhs=shift_vars(c2.lhs, offset), rhs=shift_vars(c2.rhs, offset),
                    var_names=())
    return c1, moved


# ---------------------------------------------------------------------------
# Goals and denials
# ---------------------------------------------------------------------------

class GoalError(ValueError):
    pass


def convert_goal_to_denial(goal: Clause, symbols: SymbolTable, goal_index: int = 0) -> Clause:
    """Negate ``goal`` and replace its variables by fresh constants c1, c2, ...

    Constants are numbered in order of first variable occurrence.
    """
    if not goal.positive:
        raise GoalError("goal must be a positive equation")
    for t in (goal.lhs, goal.rhs):
        for s in subterms(t):
            if type(s) is App:
                entry = symbols.lookup(s.symbol, len(s.args))
                if entry is None:
                    raise GoalError("undeclared symbol %s/%d in goal" % (s.symbol, len(s.args)))
    vars_in_order: Dict[int, None] = {}
    for t in (goal.lhs, goal.rhs):
        for s in subterms(t):
            if type(s) is Var:
                vars_in_order.setdefault(s.index, None)
    sigma = {v: App(symbols.fresh_constant("c")) for v in vars_in_order}
    return Clause(apply_subst(goal.lhs, sigma), apply_subst(goal.rhs, sigma), False,
                  justification=(Denial(goal_index),), polarity=FALSE_CLAUSE)


# ---------------------------------------------------------------------------
# Retention tests
# ---------------------------------------------------------------------------

def subsumes(c1: Clause, c2: Clause) -> bool:
    """True iff an instance of c1 equals c2, reading both as unordered pairs."""
    if c1.positive != c2.positive:
        return False
    sigma: Dict[int, Term] = {}
    if match_into(c1.lhs, c2.lhs, sigma) and match_into(c1.rhs, c2.rhs, sigma):
        return True
    sigma = {}
    return match_into(c1.lhs, c2.rhs, sigma) and match_into(c1.rhs, c2.lhs, sigma)


def is_tautology(c: Clause) -> bool:
    return c.positive and c.lhs == c.rhs


@dataclass
class EmptyClause:
    """The contradiction: a negative clause whose two sides unify."""

    witness_id: int
    unifier: Dict[int, Term]
    id: int = 0

    def parents(self):
        return [self.witness_id]


def detect_contradiction(c: Clause) -> Optional[EmptyClause]:
    if c.positive:
        return None
    sigma = unify(c.lhs, c.rhs)
    if sigma is None:
        return None
    return EmptyClause(c.id, sigma)


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

def _canon_term(t: Term, names: Dict[int, int], out: List[str]) -> None:
    if type(t) is Var:
        if t.index not in names:
            names[t.index] = len(names)
        out.append("#%d" % names[t.index])
    else:
        out.append(t.symbol)
        if t.args:
            out.append("(")
            for a in t.args:
                _canon_term(a, names, out)
                out.append(",")
            out.append(")")


def _oriented_key(lhs: Term, rhs: Term) -> str:
    names: Dict[int, int] = {}
    out: List[str] = []
    _canon_term(lhs, names, out)
    out.append("=")
    _canon_term(rhs, names, out)
    return "".join(out)


def canonical_key(c: Clause) -> str:
    """A string identifying c up to variable renaming and side order."""
    a = _oriented_key(c.lhs, c.rhs)
    b = _oriented_key(c.rhs, c.lhs)
    return ("+" if c.positive else "-") + min(a, b)
