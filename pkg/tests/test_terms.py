import itertools

from hypothesis import given, settings, strategies as st

from hintprover.clauses import make_clause, rename_apart
from hintprover.syntax import parse_clause, parse_term
from hintprover.terms import (
    App, Order, SymbolTable, Var, apply_subst, make_ordering, match_terms, order_compare,
    renumber, symbol_weight, unify, variables,
)

A, B, E = App("a"), App("b"), App("e")


def mul(s, t):
    return App("*", (s, t))


def inv(s):
    return App("'", (s,))


x, y, z = Var(0), Var(1), Var(2)


# -- strategies ------------------------------------------------------------

def terms(max_var=2, constants=("a", "b", "e")):
    leaves = st.one_of(st.integers(0, max_var).map(Var),
                       st.sampled_from(constants).map(App))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(mul, sub, sub), st.builds(inv, sub)),
        max_leaves=6)


def ground_terms(depth):
    """Every ground term over {a, b, ', *} up to ``depth``."""
    level = [A, B]
    for _ in range(depth):
        level = list(dict.fromkeys(
            [A, B] + [inv(t) for t in level] + [mul(s, t) for s in level for t in level]))
    return level


GROUND_1 = ground_terms(1)


def brute_force_unifiers(t1, t2):
    vs = sorted(set(variables(t1)) | set(variables(t2)))
    for values in itertools.product(GROUND_1, repeat=len(vs)):
        theta = dict(zip(vs, values))
        if apply_subst(t1, theta) == apply_subst(t2, theta):
            yield theta


def compose(sigma, theta):
    """theta after sigma, as a function on terms."""
    return lambda t: apply_subst(apply_subst(t, sigma), theta)


# -- unification and matching examples -------------------------------------

def test_unify_binds_variable():
    assert unify(x, mul(E, y)) == {0: mul(E, y)}


def test_unify_forced_by_both_positions():
    sigma = unify(mul(x, E), mul(E, x))
    assert sigma == {0: E}


def test_unify_occurs_check():
    assert unify(x, mul(x, y)) is None


def test_match_examples():
    assert match_terms(mul(x, y), mul(A, B)) == {0: A, 1: B}
    assert match_terms(mul(x, x), mul(A, B)) is None
    assert match_terms(mul(A, B), mul(x, y)) is None


@settings(max_examples=300, deadline=None)
@given(terms(), terms())
def test_unify_against_brute_force(t1, t2):
    sigma = unify(t1, t2)
    witnesses = list(brute_force_unifiers(t1, t2))
    if sigma is None:
        assert witnesses == []
        return
    assert apply_subst(t1, sigma) == apply_subst(t2, sigma)
    # most general: every ground unifier is an instance of sigma
    for theta in witnesses:
        after = compose(sigma, theta)
        for v in set(variables(t1)) | set(variables(t2)):
            assert after(Var(v)) == theta[v]


@settings(max_examples=200, deadline=None)
@given(terms(), st.dictionaries(st.integers(0, 2), terms(max_var=4), max_size=3))
def test_match_recovers_instance(g, sigma):
    s = apply_subst(g, sigma)
    found = match_terms(g, s)
    assert found is not None
    assert apply_subst(g, found) == s


# -- weights ---------------------------------------------------------------

def test_weight_associativity_is_11():
    assert symbol_weight(parse_clause("(x * y) * z = x * (y * z)")) == 11


def test_weight_left_identity_is_5():
    assert symbol_weight(parse_clause("e * x = x")) == 5


def test_weight_expanded_combining_law_is_34():
    law = "((z * y)' * (z * (y * x))) * ((z * y)' * (z * (y * u))) = (z * y)' * (z * (y * (x * u)))"
    # oracle: every symbol token is one letter, an operator or the predicate
    oracle = sum(1 for ch in law if ch.isalpha() or ch in "*'=")
    assert oracle == 34
    assert symbol_weight(parse_clause(law)) == oracle


@given(terms(), st.permutations([0, 1, 2]))
def test_weight_invariant_under_renaming(t, perm):
    renamed = apply_subst(t, {i: Var(p + 7) for i, p in enumerate(perm)})
    assert symbol_weight(t) == symbol_weight(renamed)


# -- orderings -------------------------------------------------------------

def _symbols():
    s = SymbolTable()
    for name, arity in (("a", 0), ("b", 0), ("e", 0), ("'", 1), ("*", 2)):
        s.declare(name, arity)
    return s


ORDERINGS = {kind: make_ordering(_symbols(), kind) for kind in ("lpo", "kbo")}


def test_compare_examples():
    for ordering in ORDERINGS.values():
        assert ordering.compare(mul(x, E), x) is Order.GREATER
        assert ordering.compare(x, x) is Order.EQUAL
    assert order_compare(mul(x, E), x) is Order.GREATER


def test_commutativity_is_incomparable():
    for ordering in ORDERINGS.values():
        assert ordering.compare(mul(x, y), mul(y, x)) is Order.INCOMPARABLE
        # derivation: the two groundings disagree, so no stable orientation exists
        ab = ordering.compare(mul(A, B), mul(B, A))
        ba = ordering.compare(mul(B, A), mul(A, B))
        assert {ab, ba} == {Order.GREATER, Order.LESS}


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(ORDERINGS)), terms())
def test_ordering_irreflexive(kind, t):
    assert not ORDERINGS[kind].greater(t, t)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(ORDERINGS)), terms(), terms(), terms())
def test_ordering_transitive(kind, s, t, u):
    o = ORDERINGS[kind]
    if o.greater(s, t) and o.greater(t, u):
        assert o.greater(s, u)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(ORDERINGS)), terms(), terms(),
       st.dictionaries(st.integers(0, 2), terms(max_var=4), max_size=3))
def test_ordering_stable_under_substitution(kind, s, t, sigma):
    o = ORDERINGS[kind]
    if o.greater(s, t):
        assert o.greater(apply_subst(s, sigma), apply_subst(t, sigma))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(ORDERINGS)), terms(), terms())
def test_ordering_asymmetric(kind, s, t):
    o = ORDERINGS[kind]
    assert not (o.greater(s, t) and o.greater(t, s))


# -- renaming --------------------------------------------------------------

def test_rename_apart_example():
    c1, c2 = rename_apart(parse_clause("x * y = y * x"), parse_clause("x * e = x"))
    assert set(variables(c1.lhs)) == {0, 1}
    assert set(variables(c2.lhs)) == {2}


def test_rename_apart_same_clause_twice():
    c = parse_clause("x * y = y * x")
    c1, c2 = rename_apart(c, c)
    v1 = set(variables(c1.lhs)) | set(variables(c1.rhs))
    v2 = set(variables(c2.lhs)) | set(variables(c2.rhs))
    assert v1 and v2 and not v1 & v2


def test_rename_apart_ground_unchanged():
    g1, g2 = parse_clause("a * b = b"), parse_clause("e = a")
    r1, r2 = rename_apart(g1, g2)
    assert (r1.lhs, r1.rhs, r2.lhs, r2.rhs) == (g1.lhs, g1.rhs, g2.lhs, g2.rhs)


@given(terms(), terms(), terms(), terms())
def test_rename_apart_preserves_weight(a, b, c, d):
    c1, c2 = make_clause(a, b), make_clause(c, d)
    r1, r2 = rename_apart(c1, c2)
    assert (r1.weight, r2.weight) == (c1.weight, c2.weight)


def test_renumber_first_occurrence():
    terms_, mapping = renumber([mul(Var(5), Var(3)), Var(5)])
    assert terms_ == [mul(x, y), x]
    assert mapping == {5: 0, 3: 1}


def test_parse_term_uses_first_occurrence_numbering():
    assert parse_term("y * (x * y)") == mul(x, mul(y, x))
