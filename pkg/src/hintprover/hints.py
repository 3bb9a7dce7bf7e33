"""Hint lists: clauses from earlier proofs that steer given-clause selection.

A new clause *matches* a hint when it subsumes the hint.  Matching reports
the lowest-numbered hint that matches, so marking is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .clauses import Clause, canonical_key, make_clause, subsumes
from .terms import Var


@dataclass(frozen=True)
class Hint:
    id: int
    clause: Clause


def _head(t) -> Optional[Tuple[str, int]]:
    return None if type(t) is Var else (t.symbol, len(t.args))


@dataclass
class HintList:
    hints: Tuple[Hint, ...] = ()
    origin: str = ""

    def __post_init__(self):
        # buckets keyed by sign and the unordered pair of side heads
        self._buckets: Dict[tuple, List[Hint]] = {}
        for h in self.hints:
            c = h.clause
            key = (c.positive,) + tuple(sorted((_head(c.lhs), _head(c.rhs)), key=repr))
            self._buckets.setdefault(key, []).append(h)

    def __len__(self):
        return len(self.hints)

    def __iter__(self):
        return iter(self.hints)

    def __bool__(self):
        return bool(self.hints)

    @classmethod
    def from_clauses(cls, clauses: Iterable[Clause], origin: str = "") -> "HintList":
        """Number hints 1.. in order, dropping duplicates up to renaming and
        symmetry."""
        seen = set()
        hints = []
        for c in clauses:
            key = canonical_key(c)
            if key in seen:
                continue
            seen.add(key)
            copy = make_clause(c.lhs, c.rhs, c.positive)
            hints.append(Hint(len(hints) + 1, copy))
        return cls(tuple(hints), origin)

    def clauses(self) -> List[Clause]:
        return [h.clause for h in self.hints]

    def candidates(self, c: Clause) -> List[Hint]:
        """Hints whose side heads are compatible with ``c`` subsuming them."""
        heads = (_head(c.lhs), _head(c.rhs))
        if heads[0] is None and heads[1] is None:
            return [h for h in self.hints if h.clause.positive == c.positive]
        found = []
        for key, bucket in self._buckets.items():
            if key[0] != c.positive:
                continue
            pair = key[1:]
            if _heads_fit(heads, pair) or _heads_fit(heads, pair[::-1]):
                found.extend(bucket)
        found.sort(key=lambda h: h.id)
        return found


def _heads_fit(general, specific) -> bool:
    return all(g is None or g == s for g, s in zip(general, specific))


def match_hint(c: Clause, hints: HintList) -> Optional[int]:
    """Id of the first hint that ``c`` subsumes; sets ``c.hint_matched``."""
    if not hints:
        return None
    for h in hints.candidates(c):
        if subsumes(c, h.clause):
            c.hint_matched = h.id
            return h.id
    return None


def extract_hints(proof, include_inputs: bool = False, origin: str = "") -> HintList:
    """Every clause of ``proof`` in proof order; inputs only on request."""
    chosen = [c for c in proof.steps if include_inputs or not c.is_input]
    return HintList.from_clauses(chosen, origin or "extracted from proof")


def merge_hints(a: HintList, b: HintList) -> HintList:
    """``a`` then the entries of ``b`` not already present."""
    origin = " + ".join(o for o in (a.origin, b.origin) if o)
    return HintList.from_clauses(a.clauses() + b.clauses(), origin)
