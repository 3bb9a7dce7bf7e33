from hypothesis import given, settings, strategies as st

from hintprover.clauses import canonical_key, make_clause, subsumes
from hintprover.hints import HintList, extract_hints, match_hint, merge_hints
from hintprover.proof import proofs_equivalent
from hintprover.saturation import saturate
from hintprover.syntax import parse_clause
from hintprover.terms import Var, apply_subst

from conftest import group_problem
from test_clauses import clauses


def hints(*texts, origin=""):
    return HintList.from_clauses([parse_clause(t) for t in texts], origin)


def test_general_clause_matches_instance_hint():
    assert match_hint(parse_clause("x * y = y * x"), hints("a * b = b * a")) == 1


def test_direction_matters():
    assert match_hint(parse_clause("a * b = b * a"), hints("x * y = y * x")) is None


def test_renamed_copy_matches():
    c = parse_clause("(y * z) * y = z")
    assert match_hint(c, hints("e = a", "(x * y) * x = y")) == 2
    assert c.hint_matched == 2


def test_lowest_numbered_hint_wins():
    assert match_hint(parse_clause("x = x * e"), hints("a * e = a", "e = e * e")) == 1


@settings(max_examples=200, deadline=None)
@given(clauses(), clauses(), st.permutations([0, 1, 2]), st.permutations([0, 1, 2]))
def test_match_invariant_under_renaming(c, h, p1, p2):
    def rename(cl, perm):
        sigma = {i: Var(p + 5) for i, p in enumerate(perm)}
        return make_clause(apply_subst(cl.lhs, sigma), apply_subst(cl.rhs, sigma), cl.positive)
    before = match_hint(make_clause(c.lhs, c.rhs, c.positive), HintList.from_clauses([h]))
    after = match_hint(rename(c, p1), HintList.from_clauses([rename(h, p2)]))
    assert (before is None) == (after is None)


@settings(max_examples=200, deadline=None)
@given(clauses(), st.lists(clauses(), min_size=1, max_size=6))
def test_candidate_filter_agrees_with_brute_force(c, hs):
    hl = HintList.from_clauses(hs)
    expected = next((h.id for h in hl if subsumes(c, h.clause)), None)
    assert match_hint(c, hl) == expected


def test_from_clauses_drops_duplicates_up_to_renaming_and_symmetry():
    hl = hints("x * y = y", "y * x = x", "u = z * u", "a = b")
    assert len(hl) == 2 and [h.id for h in hl] == [1, 2]


# -- extraction and merging ------------------------------------------------------

def _proof(goal):
    out = saturate(group_problem(goal))
    assert out.found
    return out.proof


def test_extract_takes_each_derived_step_once():
    p = _proof("x * e = x")
    derived = [c for c in p.steps if not c.is_input]
    hl = extract_hints(p)
    assert len(hl) == len({canonical_key(c) for c in derived}) == len(derived)
    assert len(extract_hints(p, include_inputs=True)) == len(p.steps)


def test_extract_small_proof_gives_three_hints():
    from test_proof import chain_proof
    assert len(extract_hints(chain_proof())) == 3


def test_merge_identity_and_idempotence():
    x = hints("a = b", "x * e = x")
    assert [canonical_key(c) for c in merge_hints(x, HintList()).clauses()] == \
        [canonical_key(c) for c in x.clauses()]
    assert len(merge_hints(x, x)) == len(x)


def test_merge_disjoint_sizes_add():
    assert len(merge_hints(hints("a = b", "b = c"), hints("x = e * x", "x' = x", "e = e'"))) == 5


@settings(max_examples=100, deadline=None)
@given(st.lists(clauses(), max_size=4), st.lists(clauses(), max_size=4),
       st.lists(clauses(), max_size=4))
def test_merge_associative_up_to_relabeling(a, b, c):
    A, B, C = (HintList.from_clauses(x) for x in (a, b, c))
    left = merge_hints(merge_hints(A, B), C)
    right = merge_hints(A, merge_hints(B, C))
    assert [canonical_key(h) for h in left.clauses()] == [canonical_key(h) for h in right.clauses()]


def test_stable_rerun_marks_every_step_as_matcher():
    first = _proof("x * e = x")
    second = saturate(group_problem("x * e = x"), hints=extract_hints(first)).proof
    assert proofs_equivalent(first, second)
    for c in second.steps:
        if not c.is_input:
            assert c.hint_matched is not None
