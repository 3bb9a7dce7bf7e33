"""Discrimination tree for retrieving generalizations of a term.

Terms are keyed by their pre-order symbol string with every variable
collapsed to ``*``.  Retrieval is imperfect (non-linear patterns are not
checked), so callers still run a real match on each candidate.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .terms import Term, Var

STAR = "*var"


def _flatten(t: Term, out: List) -> None:
    if type(t) is Var:
        out.append(STAR)
    else:
        out.append((t.symbol, len(t.args)))
        for a in t.args:
            _flatten(a, out)


def _query(t: Term) -> Tuple[List, List[int]]:
    """Pre-order keys of ``t`` plus, per position, the index just past the
    subterm rooted there."""
    keys: List = []
    ends: List[int] = []

    def go(s):
        i = len(keys)
        keys.append(STAR if type(s) is Var else (s.symbol, len(s.args)))
        ends.append(0)
        if type(s) is not Var:
            for a in s.args:
                go(a)
        ends[i] = len(keys)

    go(t)
    return keys, ends


class DiscriminationTree:
    def __init__(self):
        self.root: Dict = {}
        self.size = 0

    def __len__(self):
        return self.size

    def insert(self, t: Term, value) -> None:
        keys: List = []
        _flatten(t, keys)
        node = self.root
        for k in keys:
            node = node.setdefault(k, {})
        node.setdefault(None, []).append(value)
        self.size += 1

    def remove(self, t: Term, value) -> bool:
        keys: List = []
        _flatten(t, keys)
        node = self.root
        path = []
        for k in keys:
            if k not in node:
                return False
            path.append((node, k))
            node = node[k]
        leaf = node.get(None)
        if not leaf or value not in leaf:
            return False
        leaf.remove(value)
        self.size -= 1
        if not leaf:
            del node[None]
            # prune now-empty branches
            for parent, k in reversed(path):
                if parent[k]:
                    break
                del parent[k]
        return True

    def generalizations(self, t: Term) -> List:
        """Values stored under terms that might match onto ``t``."""
        keys, ends = _query(t)
        out: List = []
        n = len(keys)
        stack = [(self.root, 0)]
        while stack:
            node, i = stack.pop()
            if i == n:
                leaf = node.get(None)
                if leaf:
                    out.extend(leaf)
                continue
            star = node.get(STAR)
            if star is not None:
                stack.append((star, ends[i]))
            k = keys[i]
            if k is not STAR:
                child = node.get(k)
                if child is not None:
                    stack.append((child, i + 1))
        return out
