"""Reader and printer for the problem language.

A problem file is a sequence of statements, each ending in ``.``::

    % comment to end of line
    assign(max_weight, 48).        % search options (see OPTION_NAMES)
    set(limits_apply_to_hints).
    function_order([e, *, ', T]).  % precedence, lowest first

    assumptions.
      e * x = x.
      T(x,y) = y' * (x * y).
    end_of_assumptions.

    goals.
      ((x * y) * x) * z = x * (y * (x * z)).
    end_of_goals.

    hints.
      x * e = x.
    end_of_hints.

Terms: ``*``, ``+``, ``/`` and ``\\`` are left-associative infix operators of
one precedence level; ``'`` is postfix and binds tighter; ``f(s,t)`` is
prefix application.  Identifiers starting with u, v, w, x, y or z are
variables.  ``=`` and ``!=`` are the only predicates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .clauses import Clause, Input
from .terms import (
    INFIX_OPERATORS, POSTFIX_OPERATORS, App, SymbolTable, Term, Var,
    is_variable_name,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.line = line
        self.column = column


_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<neq>!=)
  | (?P<ident>[A-Za-z0-9_$]+)
  | (?P<op>[*+/\\'=(),.\[\]])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("space", "comment"):
            tokens.append(Token("op" if kind == "neq" else kind, chunk, line,
                                pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    return tokens


SECTIONS = {"assumptions": "end_of_assumptions", "goals": "end_of_goals",
            "hints": "end_of_hints"}

# option name -> value type; ``set``/``clear`` handle the booleans
OPTION_NAMES = {
    "max_weight": int, "max_vars": int, "max_given": int, "max_seconds": float,
    "selection": str, "hint_order": str, "order": str, "demod_step_bound": int,
    "limits_apply_to_hints": bool, "back_subsume": bool,
}


@dataclass
class Problem:
    symbols: SymbolTable = field(default_factory=SymbolTable)
    assumptions: List[Clause] = field(default_factory=list)
    goals: List[Clause] = field(default_factory=list)
    hints: List[Clause] = field(default_factory=list)
    options: Dict[str, object] = field(default_factory=dict)

    @property
    def definitions(self) -> List[Clause]:
        """Assumptions of the form f(x1,...,xn) = t with distinct variables
        x1..xn and f not occurring in t."""
        found = []
        for c in self.assumptions:
            lhs = c.lhs
            if type(lhs) is not App or not lhs.args:
                continue
            if not all(type(a) is Var for a in lhs.args):
                continue
            if len(set(lhs.args)) != len(lhs.args):
                continue
            if _mentions(c.rhs, lhs.symbol):
                continue
            found.append(c)
        return found


def _mentions(t: Term, symbol: str) -> bool:
    if type(t) is Var:
        return False
    return t.symbol == symbol or any(_mentions(a, symbol) for a in t.args)


class _Parser:
    def __init__(self, tokens: List[Token], symbols: SymbolTable):
        self.tokens = tokens
        self.pos = 0
        self.symbols = symbols
        self.var_index: Dict[str, int] = {}

    def peek(self) -> Optional[Token]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek() or (self.tokens[-1] if self.tokens else Token("", "", 1, 1))
        return ParseError(message, tok.line, tok.column)

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input (unterminated statement?)")
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            raise self.error("expected %r" % text, tok)
        return self.next()

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text and tok.kind == "op"

    # term := postfix (infix postfix)*
    def term(self) -> Term:
        left = self.postfix()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op" or tok.text not in INFIX_OPERATORS:
                return left
            self.next()
            right = self.postfix()
            left = self.app(tok.text, (left, right), tok)

    def postfix(self) -> Term:
        t = self.primary()
        while True:
            tok = self.peek()
            if tok is None or tok.text not in POSTFIX_OPERATORS:
                return t
            self.next()
            t = self.app(tok.text, (t,), tok)

    def primary(self) -> Term:
        tok = self.next()
        if tok.text == "(":
            t = self.term()
            self.expect(")")
            return t
        if tok.kind != "ident":
            raise self.error("expected a term, found %r" % tok.text, tok)
        if self.at("("):
            self.next()
            args = [self.term()]
            while self.at(","):
                self.next()
                args.append(self.term())
            self.expect(")")
            return self.app(tok.text, tuple(args), tok)
        if is_variable_name(tok.text):
            if tok.text not in self.var_index:
                self.var_index[tok.text] = len(self.var_index)
            return Var(self.var_index[tok.text])
        return self.app(tok.text, (), tok)

    def app(self, name: str, args: Tuple[Term, ...], tok: Token) -> Term:
        if is_variable_name(name) and args:
            raise self.error("variable %r used as a function" % name, tok)
        known = self.symbols.arities(name)
        if known and len(args) not in known:
            raise self.error("arity conflict: %s used with %d arguments, declared with %s"
                             % (name, len(args), ",".join(map(str, known))), tok)
        self.symbols.declare(name, len(args))
        return App(name, args)

    def equation(self) -> Clause:
        self.var_index = {}
        lhs = self.term()
        tok = self.next()
        if tok.text == "=":
            positive = True
        elif tok.text == "!=":
            positive = False
        else:
            raise self.error("expected '=' or '!='", tok)
        rhs = self.term()
        self.expect(".")
        names = tuple(sorted(self.var_index, key=self.var_index.get))
        return Clause(lhs, rhs, positive, var_names=names)


def _is_keyword(tokens: List[Token], i: int) -> Optional[str]:
    if (i + 1 < len(tokens) and tokens[i].kind == "ident" and tokens[i + 1].text == "."
            and (tokens[i].text in SECTIONS or tokens[i].text in SECTIONS.values())):
        return tokens[i].text
    return None


def _coerce_option(name: str, raw: str, tok: Token):
    kind = OPTION_NAMES.get(name)
    if kind is None:
        raise ParseError("unknown option %r" % name, tok.line, tok.column)
    if kind is bool:
        raise ParseError("option %r is a flag; use set/clear" % name, tok.line, tok.column)
    try:
        return kind(raw)
    except ValueError:
        raise ParseError("bad value %r for %s" % (raw, name), tok.line, tok.column) from None


def _directive(p: _Parser, problem: Problem) -> None:
    head = p.next()
    p.expect("(")
    if head.text == "function_order":
        p.expect("[")
        names = []
        while not p.at("]"):
            names.append(p.next().text)
            if p.at(","):
                p.next()
        p.expect("]")
        p.expect(")")
        p.expect(".")
        problem.options["function_order"] = names
        return
    name_tok = p.next()
    name = name_tok.text
    if head.text in ("set", "clear"):
        if OPTION_NAMES.get(name) is not bool:
            raise p.error("unknown flag %r" % name, name_tok)
        problem.options[name] = head.text == "set"
    elif head.text == "assign":
        p.expect(",")
        parts = []
        while not p.at(")"):
            parts.append(p.next().text)
        problem.options[name] = _coerce_option(name, "".join(parts), name_tok)
    else:
        raise p.error("unknown directive %r" % head.text, head)
    p.expect(")")
    p.expect(".")


def parse_problem(text: str) -> Problem:
    tokens = tokenize(text)
    problem = Problem()
    p = _Parser(tokens, problem.symbols)
    section = None
    section_tok = None
    while p.peek() is not None:
        kw = _is_keyword(tokens, p.pos)
        if kw is not None:
            tok = p.next()
            p.next()
            if kw in SECTIONS:
                if section is not None:
                    raise p.error("section %r opened inside %r" % (kw, section), tok)
                section, section_tok = kw, tok
                if kw == "goals":
                    goal_count = len(problem.goals)
            else:
                if section is None or SECTIONS[section] != kw:
                    raise p.error("unexpected %r" % kw, tok)
                if section == "goals" and len(problem.goals) == goal_count:
                    raise p.error("empty goals section", tok)
                section = None
            continue
        if section is None:
            tok = p.peek()
            if tok.kind == "ident" and tok.text in ("assign", "set", "clear", "function_order"):
                _directive(p, problem)
                continue
            raise p.error("statement outside of any section")
        clause = p.equation()
        if section == "assumptions":
            if not clause.positive:
                raise p.error("assumptions must be positive equations")
            clause.justification = (Input(len(problem.assumptions)),)
            problem.assumptions.append(clause)
        elif section == "goals":
            if not clause.positive:
                raise p.error("goals must be positive equations")
            problem.goals.append(clause)
        else:
            problem.hints.append(clause)
    if section is not None:
        raise ParseError("section %r is never closed" % section, section_tok.line,
                         section_tok.column)
    if "function_order" in problem.options:
        problem.symbols.set_order(problem.options["function_order"])
    return problem


def parse_term(text: str, symbols: Optional[SymbolTable] = None) -> Term:
    p = _Parser(tokenize(text), symbols if symbols is not None else SymbolTable())
    t = p.term()
    if p.peek() is not None:
        raise p.error("trailing input")
    return t


def parse_clause(text: str, symbols: Optional[SymbolTable] = None) -> Clause:
    """Parse one equation; the trailing ``.`` is optional."""
    text = text.strip()
    if not text.endswith("."):
        text += "."
    p = _Parser(tokenize(text), symbols if symbols is not None else SymbolTable())
    c = p.equation()
    if p.peek() is not None:
        raise p.error("trailing input")
    return c


def parse_equations(text: str, symbols: Optional[SymbolTable] = None) -> List[Clause]:
    symbols = symbols if symbols is not None else SymbolTable()
    p = _Parser(tokenize(text), symbols)
    out = []
    while p.peek() is not None:
        out.append(p.equation())
    return out


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def format_term(t: Term, names=None) -> str:
    """Print ``t``; nested infix applications are always parenthesized."""
    if type(t) is Var:
        if names is not None:
            return names(t.index)
        return str(t)
    if not t.args:
        return t.symbol
    if t.symbol in INFIX_OPERATORS and len(t.args) == 2:
        return "%s %s %s" % (_operand(t.args[0], names), t.symbol, _operand(t.args[1], names))
    if t.symbol in POSTFIX_OPERATORS and len(t.args) == 1:
        return _operand(t.args[0], names) + t.symbol
    return "%s(%s)" % (t.symbol, ",".join(format_term(a, names) for a in t.args))


def _operand(t: Term, names) -> str:
    s = format_term(t, names)
    if type(t) is App and len(t.args) == 2 and t.symbol in INFIX_OPERATORS:
        return "(" + s + ")"
    return s


def format_equation(lhs: Term, rhs: Term, positive: bool = True, names=None) -> str:
    return "%s %s %s" % (format_term(lhs, names), "=" if positive else "!=",
                         format_term(rhs, names))


def format_clause(c: Clause, keep_names: bool = True) -> str:
    """``lhs = rhs`` without the terminating period.  Input variable names
    are kept when ``keep_names``; otherwise canonical x, y, z, ... are used."""
    names = c.name_of if (keep_names and c.var_names) else None
    return format_equation(c.lhs, c.rhs, c.positive, names)


def format_problem(problem: Problem) -> str:
    lines = []
    for name, value in problem.options.items():
        if name == "function_order":
            lines.append("function_order([%s])." % ", ".join(value))
        elif isinstance(value, bool):
            lines.append("%s(%s)." % ("set" if value else "clear", name))
        else:
            lines.append("assign(%s, %s)." % (name, value))
    for header, items in (("assumptions", problem.assumptions), ("goals", problem.goals),
                          ("hints", problem.hints)):
        if not items and header == "hints":
            continue
        lines.append(header + ".")
        lines.extend("  " + format_clause(c) + "." for c in items)
        lines.append(SECTIONS[header] + ".")
    return "\n".join(lines) + "\n"


def load_problem(path) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())
