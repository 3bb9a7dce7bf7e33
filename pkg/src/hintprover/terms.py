"""First-order terms, substitutions, unification, matching and orderings.

Terms are immutable named tuples so that equality and hashing run at tuple
speed.  A variable is ``Var(index)``; everything else is ``App(symbol, args)``
where constants have ``args == ()``.  Variable indices are dense per clause.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union


class Var(NamedTuple):
    index: int

    def __str__(self):
        return variable_name(self.index)


class App(NamedTuple):
    symbol: str
    args: Tuple["Term", ...] = ()

    def __str__(self):
        if not self.args:
            return self.symbol
        return "%s(%s)" % (self.symbol, ",".join(str(a) for a in self.args))


Term = Union[Var, App]
Substitution = Dict[int, Term]

_VAR_NAMES = ("x", "y", "z", "u", "w")


def variable_name(index: int) -> str:
    """Default print name for variable ``index``: x, y, z, u, w, v5, v6, ..."""
    if index < len(_VAR_NAMES):
        return _VAR_NAMES[index]
    return "v%d" % index


def is_variable_name(name: str) -> bool:
    return name[:1] in "uvwxyz" and name != ""


# ---------------------------------------------------------------------------
# Symbol table
# ---------------------------------------------------------------------------

class Fixity(enum.Enum):
    PREFIX = "prefix"
    INFIX = "infix"
    POSTFIX = "postfix"


INFIX_OPERATORS = ("*", "+", "/", "\\")
POSTFIX_OPERATORS = ("'",)


@dataclass
class Symbol:
    name: str
    arity: int
    fixity: Fixity = Fixity.PREFIX
    precedence: int = 0
    kind: str = "function"


@dataclass
class SymbolTable:
    """The problem signature, in declaration order."""

    entries: List[Symbol] = field(default_factory=list)

    def __post_init__(self):
        self._by_key = {(s.name, s.arity): s for s in self.entries}

    def lookup(self, name: str, arity: int) -> Optional[Symbol]:
        return self._by_key.get((name, arity))

    def arities(self, name: str) -> List[int]:
        return [s.arity for s in self.entries if s.name == name]

    def declare(self, name: str, arity: int) -> Symbol:
        """Return the entry for (name, arity), adding it if it is new."""
        found = self._by_key.get((name, arity))
        if found is not None:
            return found
        if name in INFIX_OPERATORS:
            fixity = Fixity.INFIX
        elif name in POSTFIX_OPERATORS:
            fixity = Fixity.POSTFIX
        else:
            fixity = Fixity.PREFIX
        sym = Symbol(name, arity, fixity, len(self.entries),
                     "constant" if arity == 0 else "function")
        self.entries.append(sym)
        self._by_key[(name, arity)] = sym
        return sym

    def declare_term(self, t: Term) -> None:
        for sub in subterms(t):
            if type(sub) is App:
                self.declare(sub.symbol, len(sub.args))

    def set_order(self, names: Iterable[str]) -> None:
        """Override the precedence.  ``names`` runs from lowest to highest;
        symbols not listed keep their relative order below the listed ones."""
        names = list(names)
        listed = [s for n in names for s in self.entries if s.name == n]
        rest = [s for s in self.entries if s.name not in names]
        rest.sort(key=lambda s: s.precedence)
        for rank, sym in enumerate(rest + listed):
            sym.precedence = rank

    def precedence(self) -> Dict[str, int]:
        """Precedence rank per symbol name; later declarations rank higher."""
        return {s.name: s.precedence for s in self.entries}

    def fresh_constant(self, stem: str = "c") -> str:
        n = 1
        while (stem + str(n)) in {s.name for s in self.entries}:
            n += 1
        name = stem + str(n)
        self.declare(name, 0)
        return name

    def copy(self) -> "SymbolTable":
        return SymbolTable([Symbol(s.name, s.arity, s.fixity, s.precedence, s.kind)
                            for s in self.entries])


# ---------------------------------------------------------------------------
# Basic term operations
# ---------------------------------------------------------------------------

def subterms(t: Term) -> Iterator[Term]:
    """Pre-order traversal."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if type(s) is App:
            stack.extend(reversed(s.args))


def positions(t: Term, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    """All (path, subterm) pairs in pre-order, leftmost first."""
    yield prefix, t
    if type(t) is App:
        for i, a in enumerate(t.args):
            yield from positions(a, prefix + (i,))


def subterm_at(t: Term, path: Tuple[int, ...]) -> Term:
    for i in path:
        t = t.args[i]
    return t


def replace_at(t: Term, path: Tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    args = list(t.args)
    args[i] = replace_at(args[i], path[1:], new)
    return App(t.symbol, tuple(args))


def term_weight(t: Term) -> int:
    if type(t) is Var:
        return 1
    return 1 + sum(term_weight(a) for a in t.args)


def symbol_weight(obj) -> int:
    """Number of symbol occurrences, parentheses and commas excluded.

    Accepts a term or anything with ``lhs``/``rhs`` (an equation), in which
    case the equality or disequality symbol adds one.
    """
    if isinstance(obj, (Var, App)):
        return term_weight(obj)
    return term_weight(obj.lhs) + term_weight(obj.rhs) + 1


def variables(t: Term) -> List[int]:
    """Distinct variable indices in order of first occurrence."""
    seen: Dict[int, None] = {}
    for s in subterms(t):
        if type(s) is Var:
            seen.setdefault(s.index, None)
    return list(seen)


def occurs(index: int, t: Term) -> bool:
    if type(t) is Var:
        return t.index == index
    return any(occurs(index, a) for a in t.args)


def is_ground(t: Term) -> bool:
    if type(t) is Var:
        return False
    return all(is_ground(a) for a in t.args)


def apply_subst(t: Term, sigma: Substitution) -> Term:
    if type(t) is Var:
        return sigma.get(t.index, t)
    if not t.args:
        return t
    return App(t.symbol, tuple([apply_subst(a, sigma) for a in t.args]))


def shift_vars(t: Term, offset: int) -> Term:
    if type(t) is Var:
        return Var(t.index + offset)
    if not t.args:
        return t
    return App(t.symbol, tuple([shift_vars(a, offset) for a in t.args]))


def renumber(terms: Iterable[Term]) -> Tuple[List[Term], Dict[int, int]]:
    """Rename variables densely (0..n-1) by first occurrence across ``terms``."""
    terms = list(terms)
    mapping: Dict[int, int] = {}
    for t in terms:
        for s in subterms(t):
            if type(s) is Var and s.index not in mapping:
                mapping[s.index] = len(mapping)
    sigma = {old: Var(new) for old, new in mapping.items()}
    return [apply_subst(t, sigma) for t in terms], mapping


# ---------------------------------------------------------------------------
# Unification and matching
# ---------------------------------------------------------------------------

def _walk(t: Term, bindings: Substitution) -> Term:
    while type(t) is Var and t.index in bindings:
        t = bindings[t.index]
    return t


def _occurs_bound(index: int, t: Term, bindings: Substitution) -> bool:
    t = _walk(t, bindings)
    if type(t) is Var:
        return t.index == index
    return any(_occurs_bound(index, a, bindings) for a in t.args)


def _resolve(t: Term, bindings: Substitution) -> Term:
    t = _walk(t, bindings)
    if type(t) is Var or not t.args:
        return t
    return App(t.symbol, tuple([_resolve(a, bindings) for a in t.args]))


def unify_into(t1: Term, t2: Term, bindings: Substitution) -> bool:
    """Extend triangular ``bindings`` so that t1 and t2 become equal.

    On failure ``bindings`` may be left partially extended; callers pass a
    scratch dict.
    """
    stack = [(t1, t2)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, bindings)
        b = _walk(b, bindings)
        if a == b:
            continue
        if type(a) is Var:
            if _occurs_bound(a.index, b, bindings):
                return False
            bindings[a.index] = b
        elif type(b) is Var:
            if _occurs_bound(b.index, a, bindings):
                return False
            bindings[b.index] = a
        else:
            if a.symbol != b.symbol or len(a.args) != len(b.args):
                return False
            stack.extend(zip(a.args, b.args))
    return True


def solved(bindings: Substitution) -> Substitution:
    """Turn triangular bindings into an idempotent substitution."""
    return {v: _resolve(t, bindings) for v, t in bindings.items()}


def unify(t1: Term, t2: Term) -> Optional[Substitution]:
    """Most general unifier of t1 and t2, or None.  Both terms share one
    variable namespace."""
    bindings: Substitution = {}
    if not unify_into(t1, t2, bindings):
        return None
    return solved(bindings)


def match_into(general: Term, specific: Term, sigma: Substitution) -> bool:
    """One-way matching; variables of ``specific`` behave as constants."""
    stack = [(general, specific)]
    while stack:
        g, s = stack.pop()
        if type(g) is Var:
            bound = sigma.get(g.index)
            if bound is None:
                sigma[g.index] = s
            elif bound != s:
                return False
        elif type(s) is Var:
            return False
        elif g.symbol != s.symbol or len(g.args) != len(s.args):
            return False
        else:
            stack.extend(zip(g.args, s.args))
    return True


def match_terms(general: Term, specific: Term) -> Optional[Substitution]:
    sigma: Substitution = {}
    if match_into(general, specific, sigma):
        return sigma
    return None


# ---------------------------------------------------------------------------
# Simplification orderings
# ---------------------------------------------------------------------------

class Order(enum.Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _var_counts(t: Term, counts: Dict[int, int], sign: int) -> None:
    for s in subterms(t):
        if type(s) is Var:
            counts[s.index] = counts.get(s.index, 0) + sign


class TermOrdering:
    """Base class; subclasses implement ``greater``."""

    name = "?"

    def __init__(self, precedence: Dict[str, int]):
        self.precedence = dict(precedence)

    def key(self, t: App):
        # total on symbols: declared rank, then arity, then name
        return (self.precedence.get(t.symbol, -1), len(t.args), t.symbol)

    def greater(self, s: Term, t: Term) -> bool:
        raise NotImplementedError

    def compare(self, s: Term, t: Term) -> Order:
        if s == t:
            return Order.EQUAL
        if self.greater(s, t):
            return Order.GREATER
        if self.greater(t, s):
            return Order.LESS
        return Order.INCOMPARABLE


class KBO(TermOrdering):
    """Knuth-Bendix ordering with every symbol and variable of weight 1.

    Ties on weight are broken by precedence and then lexicographically on
    arguments.  Unary symbols of weight 1 never occur as a problem here
    because no symbol has weight 0.
    """

    name = "kbo"

    def greater(self, s: Term, t: Term) -> bool:
        if s == t:
            return False
        counts: Dict[int, int] = {}
        _var_counts(s, counts, 1)
        _var_counts(t, counts, -1)
        if any(c < 0 for c in counts.values()):
            return False
        ws, wt = term_weight(s), term_weight(t)
        if ws != wt:
            return ws > wt
        if type(s) is Var:
            return False
        if type(t) is Var:
            # same weight and t's variable occurs in s: only possible if s is t
            return False
        ks, kt = self.key(s), self.key(t)
        if ks != kt:
            return ks > kt
        for a, b in zip(s.args, t.args):
            if a != b:
                return self.greater(a, b)
        return False


class LPO(TermOrdering):
    """Lexicographic path ordering."""

    name = "lpo"

    def greater(self, s: Term, t: Term) -> bool:
        if type(s) is Var:
            return False
        if type(t) is Var:
            return s != t and occurs(t.index, s)
        for a in s.args:
            if a == t or self.greater(a, t):
                return True
        ks, kt = self.key(s), self.key(t)
        if ks > kt:
            return all(self.greater(s, b) for b in t.args)
        if ks == kt:
            for a, b in zip(s.args, t.args):
                if a != b:
                    if not self.greater(a, b):
                        return False
                    break
            else:
                return False
            return all(self.greater(s, b) for b in t.args)
        return False


ORDERINGS = {"lpo": LPO, "kbo": KBO}


def make_ordering(symbols: SymbolTable, kind: str = "lpo") -> TermOrdering:
    try:
        cls = ORDERINGS[kind]
    except KeyError:
        raise ValueError("unknown term ordering %r" % kind) from None
    return cls(symbols.precedence())


def order_compare(t1: Term, t2: Term, ordering: Optional[TermOrdering] = None) -> Order:
    """Compare under ``ordering`` (KBO over the symbols in sight by default)."""
    if ordering is None:
        table = SymbolTable()
        table.declare_term(t1)
        table.declare_term(t2)
        ordering = KBO(table.precedence())
    return ordering.compare(t1, t2)
