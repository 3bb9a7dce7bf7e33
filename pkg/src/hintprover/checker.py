"""Independent proof checker.

Every step is re-derived from its stated parents with a separate, minimal
implementation of unification, matching and rewriting.  Nothing here calls
into the prover's inference code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .clauses import Clause, Denial, Flip, Input, Paramod, Rewrite
from .terms import App, Var

MAX_REWRITE_SEARCH = 20000


@dataclass
class CheckResult:
    ok: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "failure at step %s: %s" % (self.step, self.reason)


class _Fail(Exception):
    pass


# -- minimal term algebra ---------------------------------------------------

def _walk(t, s):
    while isinstance(t, Var) and t.index in s:
        t = s[t.index]
    return t


def _occ(i, t, s):
    t = _walk(t, s)
    if isinstance(t, Var):
        return t.index == i
    return any(_occ(i, a, s) for a in t.args)


def _unify(a, b, s) -> bool:
    a, b = _walk(a, s), _walk(b, s)
    if isinstance(a, Var) and isinstance(b, Var) and a.index == b.index:
        return True
    if isinstance(a, Var):
        if _occ(a.index, b, s):
            return False
        s[a.index] = b
        return True
    if isinstance(b, Var):
        return _unify(b, a, s)
    if a.symbol != b.symbol or len(a.args) != len(b.args):
        return False
    return all(_unify(x, y, s) for x, y in zip(a.args, b.args))


def _inst(t, s):
    t = _walk(t, s)
    if isinstance(t, Var):
        return t
    return App(t.symbol, tuple(_inst(a, s) for a in t.args))


def _subst(t, s):
    """One-pass substitution, for matchers whose range may reuse indices."""
    if isinstance(t, Var):
        return s.get(t.index, t)
    return App(t.symbol, tuple(_subst(a, s) for a in t.args))


def _match(pat, t, s) -> bool:
    if isinstance(pat, Var):
        if pat.index in s:
            return s[pat.index] == t
        s[pat.index] = t
        return True
    if isinstance(t, Var) or pat.symbol != t.symbol or len(pat.args) != len(t.args):
        return False
    return all(_match(p, a, s) for p, a in zip(pat.args, t.args))


def _bump(t, k):
    if isinstance(t, Var):
        return Var(t.index + k)
    return App(t.symbol, tuple(_bump(a, k) for a in t.args))


def _vars(t, acc):
    if isinstance(t, Var):
        acc.add(t.index)
    else:
        for a in t.args:
            _vars(a, acc)
    return acc


def _size(t) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(_size(a) for a in t.args)


def _get(t, path):
    for i in path:
        if isinstance(t, Var) or i >= len(t.args):
            raise _Fail("position %s does not exist" % (path,))
        t = t.args[i]
    return t


def _put(t, path, new):
    if not path:
        return new
    args = list(t.args)
    args[path[0]] = _put(args[path[0]], path[1:], new)
    return App(t.symbol, tuple(args))


def _variant_form(lhs, rhs):
    names: Dict[int, int] = {}

    def go(t):
        if isinstance(t, Var):
            names.setdefault(t.index, len(names))
            return Var(names[t.index])
        return App(t.symbol, tuple(go(a) for a in t.args))

    return go(lhs), go(rhs)


def _same_up_to_renaming(a: Tuple, b: Tuple) -> bool:
    return _variant_form(*a) == _variant_form(*b)


def _postorder_paths(t, prefix=()):
    if isinstance(t, App):
        for i, a in enumerate(t.args):
            yield from _postorder_paths(a, prefix + (i,))
    yield prefix


# -- step checks ------------------------------------------------------------

def _check_input(c: Clause, problem) -> None:
    for a in problem.assumptions:
        if _same_up_to_renaming((a.lhs, a.rhs), (c.lhs, c.rhs)) and c.positive:
            return
    raise _Fail("input clause is not an assumption of the problem")


def _check_denial(c: Clause, step: Denial, problem) -> None:
    if c.positive:
        raise _Fail("denial must be negative")
    if step.goal >= len(problem.goals):
        raise _Fail("denial of unknown goal %d" % step.goal)
    goal = problem.goals[step.goal]
    s: Dict[int, object] = {}
    if not (_match(goal.lhs, c.lhs, s) and _match(goal.rhs, c.rhs, s)):
        raise _Fail("denial is not an instance of the goal")
    names = [t.symbol if isinstance(t, App) and not t.args else None for t in s.values()]
    if None in names or len(set(names)) != len(names):
        raise _Fail("goal variables must become distinct fresh constants")
    problem_symbols = set()
    for a in list(problem.assumptions) + [goal]:
        for t in (a.lhs, a.rhs):
            _collect_symbols(t, problem_symbols)
    if any(n in problem_symbols for n in names):
        raise _Fail("denial constants must be fresh")


def _collect_symbols(t, acc):
    if isinstance(t, App):
        acc.add(t.symbol)
        for a in t.args:
            _collect_symbols(a, acc)


def _paramod_result(frm: Clause, into: Clause, position) -> List[Tuple]:
    if not frm.positive:
        raise _Fail("paramodulation from a negative clause")
    side, path = position[0], tuple(position[1:])
    if side not in (0, 1):
        raise _Fail("bad side in position")
    k = 1 + max(_vars(into.lhs, set()) | _vars(into.rhs, set()) | {-1})
    target = (into.lhs, into.rhs)[side]
    sub = _get(target, path)
    if isinstance(sub, Var):
        raise _Fail("paramodulation into a variable position")
    results = []
    for l, r in ((frm.lhs, frm.rhs), (frm.rhs, frm.lhs)):
        l, r = _bump(l, k), _bump(r, k)
        s: Dict[int, object] = {}
        if _unify(l, sub, s):
            new = _inst(_put(target, path, r), s)
            other = _inst((into.lhs, into.rhs)[1 - side], s)
            results.append((new, other) if side == 0 else (other, new))
    if not results:
        raise _Fail("from-side does not unify with the subterm at the position")
    return results


def _rewrite_search(pair: Tuple, rules: List[Clause], goal_ok, budget: List[int]) -> bool:
    """Apply ``rules`` in order, each once at some position, so that the
    final pair satisfies ``goal_ok``.  Depth-first with innermost-leftmost
    positions tried first."""
    if not rules:
        return goal_ok(pair)
    rule = rules[0]
    for side in (0, 1):
        for path in _postorder_paths(pair[side]):
            sub = _get(pair[side], path)
            for l, r in ((rule.lhs, rule.rhs), (rule.rhs, rule.lhs)):
                budget[0] -= 1
                if budget[0] < 0:
                    raise _Fail("rewrite reconstruction exceeded its search budget")
                s: Dict[int, object] = {}
                if not _match(l, sub, s):
                    continue
                if not _vars(r, set()) <= set(s):
                    continue
                new = _put(pair[side], path, _subst(r, s))
                nxt = (new, pair[1]) if side == 0 else (pair[0], new)
                if _rewrite_search(nxt, rules[1:], goal_ok, budget):
                    return True
    return False


def _after_secondary(candidates, secondary, by_id, target: Clause) -> bool:
    rewrites: List[Clause] = []
    for step in secondary:
        if isinstance(step, Rewrite):
            for rid in step.rule_ids:
                rule = by_id.get(rid)
                if rule is None or rule.id >= target.id:
                    raise _Fail("rewrite rule %s is not an earlier step" % rid)
                if not rule.positive:
                    raise _Fail("rewrite rule %s is not positive" % rid)
                rewrites.append(rule)
    flips = sum(1 for step in secondary if isinstance(step, Flip))
    if secondary and not isinstance(secondary[-1], (Flip, Rewrite)):
        raise _Fail("unexpected secondary step")

    # flips commute with rewriting of the pair, so apply them at the end
    def goal_ok(pair):
        if flips % 2:
            pair = (pair[1], pair[0])
        return _same_up_to_renaming(pair, (target.lhs, target.rhs))

    budget = [MAX_REWRITE_SEARCH]
    return any(_rewrite_search(c, rewrites, goal_ok, budget) for c in candidates)


def check_proof(proof, problem) -> CheckResult:
    by_id: Dict[int, Clause] = {}
    last = 0
    try:
        for c in proof.steps:
            step_id = c.id
            if c.id <= last:
                raise _Fail("steps are not in increasing id order")
            last = c.id
            if c.weight != _size(c.lhs) + _size(c.rhs) + 1:
                raise _Fail("cached weight is wrong")
            primary, secondary = c.justification[0], c.justification[1:]
            for parent in c.parents():
                if parent not in by_id:
                    raise _Fail("parent %d is not an earlier step" % parent)
            if isinstance(primary, Input):
                if secondary:
                    raise _Fail("input clauses carry no secondary steps")
                _check_input(c, problem)
            elif isinstance(primary, Denial):
                if secondary:
                    raise _Fail("denials carry no secondary steps")
                _check_denial(c, primary, problem)
            elif isinstance(primary, Paramod):
                frm, into = by_id[primary.from_id], by_id[primary.into_id]
                if into.positive != c.positive:
                    raise _Fail("paramodulant sign differs from the into-parent")
                candidates = _paramod_result(frm, into, primary.position)
                if not _after_secondary(candidates, secondary, by_id, c):
                    raise _Fail("clause does not follow from its parents")
            else:
                raise _Fail("unknown primary justification %r" % (primary,))
            by_id[c.id] = c
        step_id = proof.conclusion.id
        witness = by_id.get(proof.conclusion.witness_id)
        if witness is None:
            raise _Fail("conclusion refers to a missing clause")
        if witness.positive:
            raise _Fail("conclusion witness is not a negative clause")
        if not _unify(witness.lhs, witness.rhs, {}):
            raise _Fail("witness sides do not unify")
    except _Fail as exc:
        return CheckResult(False, step_id, str(exc))
    return CheckResult(True)
