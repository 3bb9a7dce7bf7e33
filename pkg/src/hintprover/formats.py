"""Text formats for proofs, hint files and metric records.

Proof text
----------
::

    % proof
    % given_count: 17
    1. e * x = x. [input]
    2. x' * x = e. [input]
    ...
    6. c1 * e != c1. [deny]
    9. x * e = x. [para(4,7,0.0),rewrite(1,2,2),flip]
    11. $F. [conflict(10)]

Steps are renumbered 1..n in id order; the last line is the conclusion.
Input clauses keep their variable names, derived clauses use x, y, z, u,
w, v5, v6, ... by first occurrence.  Positions are ``side.arg.arg...``
with side 0 for the left-hand side.  A line starting with ``%`` is a
comment; ``% given_count:`` is read back by the metrics command.

Hint files
----------
Equations between ``hints.`` and ``end_of_hints.``, one per line.

Metric records
--------------
``key=value`` lines in :data:`hintprover.proof.METRIC_KEYS` order.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional

from .clauses import (
    FALSE_CLAUSE, TRUE_CLAUSE, Clause, Denial, EmptyClause, Flip, Input, Paramod, Rewrite,
)
from .hints import HintList
from .proof import METRIC_KEYS, Proof, ProofMetrics
from .syntax import ParseError, format_clause, parse_clause, parse_problem
from .terms import SymbolTable


def _format_step(step, ids: Dict[int, int]) -> str:
    if isinstance(step, Input):
        return "input"
    if isinstance(step, Denial):
        return "deny"
    if isinstance(step, Paramod):
        pos = ".".join(str(i) for i in step.position)
        return "para(%d,%d,%s)" % (ids[step.from_id], ids[step.into_id], pos)
    if isinstance(step, Rewrite):
        return "rewrite(%s)" % ",".join(str(ids[r]) for r in step.rule_ids)
    if isinstance(step, Flip):
        return "flip"
    raise TypeError(step)


def render_proof(p: Proof) -> str:
    ids = {c.id: n for n, c in enumerate(p.steps, 1)}
    lines = ["% proof", "%% given_count: %d" % p.given_count]
    for c in p.steps:
        just = ",".join(_format_step(s, ids) for s in c.justification)
        lines.append("%d. %s. [%s]" % (ids[c.id], format_clause(c, keep_names=c.is_input), just))
    lines.append("%d. $F. [conflict(%d)]" % (len(p.steps) + 1, ids[p.conclusion.witness_id]))
    return "\n".join(lines) + "\n"


_LINE = re.compile(r"^\s*(\d+)\.\s+(.*?)\.\s+\[(.*)\]\s*$")
_STEP = re.compile(r"(input|deny|flip|para\(\d+,\d+,[\d.]+\)|rewrite\([\d,]*\))")


def _parse_justification(text: str, lineno: int):
    steps = []
    rest = text.strip()
    while rest:
        m = _STEP.match(rest)
        if m is None:
            raise ParseError("bad justification %r" % text, lineno, 1)
        tok = m.group()
        if tok == "input":
            steps.append(Input())
        elif tok == "deny":
            steps.append(Denial(0))
        elif tok == "flip":
            steps.append(Flip())
        elif tok.startswith("para"):
            f, i, pos = tok[5:-1].split(",")
            steps.append(Paramod(int(f), int(i), tuple(int(n) for n in pos.split("."))))
        else:
            inner = tok[8:-1]
            steps.append(Rewrite(tuple(int(n) for n in inner.split(",")) if inner else ()))
        rest = rest[m.end():]
        if rest.startswith(","):
            rest = rest[1:]
    if not steps:
        raise ParseError("empty justification", lineno, 1)
    return tuple(steps)


def parse_proof(text: str, symbols: Optional[SymbolTable] = None) -> Proof:
    """Read proof text back into a :class:`Proof` (ids as printed)."""
    symbols = symbols if symbols is not None else SymbolTable()
    steps: List[Clause] = []
    by_id: Dict[int, Clause] = {}
    conclusion = None
    given_count = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("%"):
            m = re.match(r"%\s*given_count:\s*(\d+)", stripped)
            if m:
                given_count = int(m.group(1))
            continue
        m = _LINE.match(line)
        if m is None:
            raise ParseError("not a proof line", lineno, 1)
        cid, body, just = int(m.group(1)), m.group(2), m.group(3)
        if conclusion is not None:
            raise ParseError("lines after the conclusion", lineno, 1)
        if body == "$F":
            cm = re.fullmatch(r"conflict\((\d+)\)", just.strip())
            if cm is None:
                raise ParseError("conclusion needs conflict(n)", lineno, 1)
            conclusion = EmptyClause(int(cm.group(1)), {}, cid)
            continue
        try:
            c = parse_clause(body, symbols)
        except ParseError as exc:
            raise ParseError(str(exc), lineno, 1) from None
        c.id = cid
        c.birth = cid
        c.justification = _parse_justification(just, lineno)
        if isinstance(c.justification[0], Denial):
            c.polarity = FALSE_CLAUSE
        elif any(by_id[p].is_false for p in c.parents() if p in by_id):
            c.polarity = FALSE_CLAUSE
        else:
            c.polarity = TRUE_CLAUSE
        if not c.is_input:
            c.var_names = ()
        steps.append(c)
        by_id[cid] = c
    if conclusion is None:
        raise ParseError("proof has no $F conclusion", 0, 0)
    return Proof(steps, conclusion, given_count)


def write_hints(hints: HintList) -> str:
    lines = ["% " + hints.origin] if hints.origin else []
    lines.append("hints.")
    lines.extend("  %s." % format_clause(h.clause, keep_names=False) for h in hints)
    lines.append("end_of_hints.")
    return "\n".join(lines) + "\n"


def read_hints(text: str, origin: str = "") -> HintList:
    """Hints from a file holding a ``hints.`` section (a full problem file
    is accepted too)."""
    problem = parse_problem(text)
    return HintList.from_clauses(problem.hints, origin)


def format_metrics(m: ProofMetrics) -> str:
    data = m.as_dict()
    return "".join("%s=%s\n" % (k, data[k]) for k in METRIC_KEYS)
