from hypothesis import given, settings, strategies as st

from hintprover.clauses import (
    Denial, GoalError, canonical_key, convert_goal_to_denial, detect_contradiction,
    is_tautology, make_clause, subsumes,
)
from hintprover.syntax import format_clause, parse_clause, parse_problem
from hintprover.terms import SymbolTable, Var, apply_subst

import pytest

from test_terms import terms


def _symbols(*names):
    s = SymbolTable()
    for name, arity in names:
        s.declare(name, arity)
    return s


def denial_text(goal, symbols):
    return format_clause(convert_goal_to_denial(parse_clause(goal, symbols), symbols))


def test_denial_of_commutativity():
    s = _symbols(("*", 2))
    assert denial_text("x * y = y * x", s) == "c1 * c2 != c2 * c1"


def test_denial_of_ground_goal_adds_no_constants():
    s = _symbols(("*", 2), ("a", 0), ("b", 0))
    assert denial_text("a * b = b * a", s) == "a * b != b * a"
    assert s.lookup("c1", 0) is None


def test_denial_of_main_theorem():
    s = _symbols(("*", 2))
    denial = convert_goal_to_denial(parse_clause("((x * y) * x) * z = x * (y * (x * z))", s), s)
    assert format_clause(denial) == "((c1 * c2) * c1) * c3 != c1 * (c2 * (c1 * c3))"
    assert denial.is_false and isinstance(denial.justification[0], Denial)


def test_denial_skips_constant_names_already_used():
    s = _symbols(("*", 2), ("c1", 0))
    assert denial_text("x * c1 = c1 * x", s) == "c2 * c1 != c1 * c2"


def test_denial_rejects_negative_goal():
    s = _symbols(("a", 0), ("b", 0))
    with pytest.raises(GoalError):
        convert_goal_to_denial(parse_clause("a != b", s), s)


# -- subsumption -----------------------------------------------------------

def test_subsumption_examples():
    comm = parse_clause("x * y = y * x")
    assert subsumes(comm, parse_clause("a * b = b * a"))
    assert subsumes(comm, parse_clause("b * a = a * b"))
    assert not subsumes(parse_clause("a * b = b * a"), comm)


def test_subsumption_reads_sides_unordered():
    assert subsumes(parse_clause("e * x = x"), parse_clause("a = e * a"))


def test_subsumption_respects_sign():
    assert not subsumes(parse_clause("x = x"), parse_clause("a != a"))


def clauses(max_var=2):
    return st.builds(lambda l, r, pos: make_clause(l, r, pos), terms(max_var), terms(max_var),
                     st.booleans())


@given(clauses())
def test_subsumption_reflexive(c):
    assert subsumes(c, c)


@settings(max_examples=200, deadline=None)
@given(clauses(), st.dictionaries(st.integers(0, 2), terms(), max_size=3),
       st.dictionaries(st.integers(0, 2), terms(), max_size=3))
def test_subsumption_transitive_on_instances(c, s1, s2):
    b = make_clause(apply_subst(c.lhs, s1), apply_subst(c.rhs, s1), c.positive)
    d = make_clause(apply_subst(b.lhs, s2), apply_subst(b.rhs, s2), c.positive)
    assert subsumes(c, b) and subsumes(b, d) and subsumes(c, d)


@settings(max_examples=200, deadline=None)
@given(clauses(), clauses(), clauses())
def test_subsumption_transitive_random(a, b, c):
    if subsumes(a, b) and subsumes(b, c):
        assert subsumes(a, c)


# -- tautologies and contradictions -----------------------------------------

def test_tautology_examples():
    assert is_tautology(parse_clause("x * y = x * y"))
    assert not is_tautology(parse_clause("x = y"))
    assert not is_tautology(parse_clause("a != a"))


def test_contradiction_examples():
    assert detect_contradiction(parse_clause("a * b != a * b")) is not None
    assert detect_contradiction(parse_clause("x != e * x")) is None
    assert detect_contradiction(parse_clause("c1 * c2 != c2 * c1")) is None
    assert detect_contradiction(parse_clause("x * a != b * y")) is not None


# -- canonical keys -----------------------------------------------------------

@given(clauses(), st.permutations([0, 1, 2]))
def test_canonical_key_ignores_renaming_and_side_order(c, perm):
    sigma = {i: Var(p + 10) for i, p in enumerate(perm)}
    renamed = make_clause(apply_subst(c.rhs, sigma), apply_subst(c.lhs, sigma), c.positive)
    assert canonical_key(renamed) == canonical_key(c)


def test_canonical_key_distinguishes_sign():
    assert canonical_key(parse_clause("a = b")) != canonical_key(parse_clause("a != b"))


def test_problem_goal_symbols_must_be_declared():
    # goals may only mention symbols the parser has seen; that includes their own
    problem = parse_problem("assumptions.\na = b.\nend_of_assumptions.\n"
                            "goals.\nf(a) = f(b).\nend_of_goals.\n")
    d = convert_goal_to_denial(problem.goals[0], problem.symbols)
    assert format_clause(d) == "f(a) != f(b)"
