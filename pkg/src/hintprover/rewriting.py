"""Paramodulation (the primary inference) and demodulation (rewriting)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .indexing import DiscriminationTree
from .clauses import FALSE_CLAUSE, TRUE_CLAUSE, Clause, Paramod, Rewrite, make_clause
from .terms import (
    App, Order, Term, TermOrdering, Var, apply_subst, match_into, replace_at,
    shift_vars, solved, unify_into,
)

DEFAULT_DEMOD_BOUND = 1000


class DemodulationError(RuntimeError):
    """Raised when rewriting exceeds its step bound."""


def orientations(c: Clause, ordering: TermOrdering) -> List[Tuple[Term, Term]]:
    """The (from, to) readings of a positive equation usable for inference.

    The order-decreasing direction is never returned; incomparable equations
    give both directions.
    """
    result = ordering.compare(c.lhs, c.rhs)
    if result is Order.GREATER:
        return [(c.lhs, c.rhs)]
    if result is Order.LESS:
        return [(c.rhs, c.lhs)]
    if result is Order.INCOMPARABLE:
        return [(c.lhs, c.rhs), (c.rhs, c.lhs)]
    return []


def _app_positions(t: Term, prefix: Tuple[int, ...]):
    if type(t) is Var:
        return
    yield prefix, t
    for i, a in enumerate(t.args):
        yield from _app_positions(a, prefix + (i,))


def paramodulate(from_c: Clause, into_c: Clause, ordering: TermOrdering) -> List[Clause]:
    """All paramodulants of ``from_c`` into non-variable positions of ``into_c``.

    ``from_c`` must be positive.  The two clauses are renamed apart here, so
    callers may pass the same clause twice.
    """
    if not from_c.positive:
        return []
    offset = into_c.var_count
    children = []
    polarity = FALSE_CLAUSE if (from_c.is_false or into_c.is_false) else TRUE_CLAUSE
    sides = (into_c.lhs, into_c.rhs)
    for left, right in orientations(from_c, ordering):
        if offset:
            left, right = shift_vars(left, offset), shift_vars(right, offset)
        head = left.symbol if type(left) is App else None
        for side in (0, 1):
            target = sides[side]
            for path, sub in _app_positions(target, ()):
                if head is not None and (sub.symbol != head or len(sub.args) != len(left.args)):
                    continue
                bindings: Dict[int, Term] = {}
                if not unify_into(left, sub, bindings):
                    continue
                sigma = solved(bindings)
                new_side = apply_subst(replace_at(target, path, right), sigma)
                other = apply_subst(sides[1 - side], sigma)
                lhs, rhs = (new_side, other) if side == 0 else (other, new_side)
                children.append(make_clause(
                    lhs, rhs, into_c.positive,
                    justification=(Paramod(from_c.id, into_c.id, (side,) + path),),
                    polarity=polarity))
    return children


@dataclass(frozen=True)
class RewriteRule:
    id: int
    lhs: Term
    rhs: Term


class Demodulators:
    """Oriented positive units, retrieved through a discrimination tree on
    their left-hand sides.  When several rules apply at one position the
    earliest added wins."""

    def __init__(self, ordering: TermOrdering, bound: int = DEFAULT_DEMOD_BOUND):
        self.ordering = ordering
        self.bound = bound
        self.tree = DiscriminationTree()
        self.rules: Dict[int, RewriteRule] = {}
        self._seq: Dict[int, int] = {}
        self._cache: Dict[Term, Tuple[Term, Tuple[int, ...]]] = {}

    def __len__(self):
        return len(self.rules)

    def __contains__(self, clause_id: int):
        return clause_id in self.rules

    def add(self, c: Clause) -> Optional[RewriteRule]:
        """Register ``c`` if it is a positive unit with a strictly decreasing
        orientation; returns the rule or None."""
        if not c.positive:
            return None
        result = self.ordering.compare(c.lhs, c.rhs)
        if result is Order.GREATER:
            rule = RewriteRule(c.id, c.lhs, c.rhs)
        elif result is Order.LESS:
            rule = RewriteRule(c.id, c.rhs, c.lhs)
        else:
            return None
        self.tree.insert(rule.lhs, rule)
        self.rules[c.id] = rule
        self._seq[c.id] = len(self._seq)
        self._cache.clear()
        return rule

    def remove(self, clause_id: int) -> None:
        rule = self.rules.pop(clause_id, None)
        if rule is not None:
            self.tree.remove(rule.lhs, rule)
            self._cache.clear()

    def normalize(self, t: Term, trail: List[int]) -> Term:
        """Innermost-leftmost normal form of ``t``; applied rule ids are
        appended to ``trail``."""
        if type(t) is Var:
            return t
        cached = self._cache.get(t)
        if cached is not None:
            nf, steps = cached
            if steps:
                trail.extend(steps)
                self._check(trail)
            return nf
        start = len(trail)
        nf = self._normalize(t, trail)
        self._cache[t] = (nf, tuple(trail[start:]))
        return nf

    def _check(self, trail):
        if len(trail) > self.bound:
            raise DemodulationError(
                "more than %d rewrite steps; rule set may not terminate" % self.bound)

    def _normalize(self, t: App, trail: List[int]) -> Term:
        if t.args:
            args = tuple([self.normalize(a, trail) for a in t.args])
            if args != t.args:
                t = App(t.symbol, args)
        candidates = self.tree.generalizations(t)
        if len(candidates) > 1:
            candidates.sort(key=lambda r: self._seq[r.id])
        for rule in candidates:
            sigma: Dict[int, Term] = {}
            if match_into(rule.lhs, t, sigma):
                trail.append(rule.id)
                self._check(trail)
                return self.normalize(apply_subst(rule.rhs, sigma), trail)
        return t


def demodulate(c: Clause, rules) -> Tuple[Clause, List[int]]:
    """Rewrite both sides of ``c`` to normal form, lhs first.

    ``rules`` is a :class:`Demodulators` index.  Returns the input clause
    itself and an empty list if nothing applies.
    """
    trail: List[int] = []
    lhs = rules.normalize(c.lhs, trail)
    rhs = rules.normalize(c.rhs, trail)
    if not trail:
        return c, []
    new = make_clause(lhs, rhs, c.positive,
                      justification=c.justification + (Rewrite(tuple(trail)),),
                      polarity=c.polarity)
    return new, trail


def demodulate_with(c: Clause, equations: Iterable[Clause], ordering: TermOrdering,
                    bound: int = DEFAULT_DEMOD_BOUND) -> Tuple[Clause, List[int]]:
    """Convenience wrapper: orient ``equations`` and demodulate ``c`` by them."""
    index = Demodulators(ordering, bound)
    for e in equations:
        index.add(e)
    return demodulate(c, index)
