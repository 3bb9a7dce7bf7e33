"""Command line interface: ``hintprover prove|simplify|metrics``.

Exit status is 0 when a proof is found (or a report is written), 1 when
the search ends without a proof, and 2 on usage, parse or config errors.
Problem-file options are applied first; flags override them.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from .checker import check_proof
from .clauses import GoalError
from .formats import format_metrics, parse_proof, read_hints, render_proof, write_hints
from .hints import HintList, extract_hints
from .proof import compute_metrics
from .rewriting import DemodulationError
from .saturation import ConfigError, SearchConfig, config_from_options, parse_selection, saturate
from .simplifier import DEFAULT_ORDERING, CampaignConfig, run_campaign
from .syntax import ParseError, load_problem

EXIT_PROOF, EXIT_NO_PROOF, EXIT_USAGE = 0, 1, 2


def _int_list(text: str) -> List[int]:
    try:
        return [int(n) for n in text.split(",") if n.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)


def _squeeze(text: str):
    if text in ("auto", "none"):
        return text
    return _int_list(text)


def _search_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("search")
    g.add_argument("--max-weight", type=int, metavar="N", help="drop derived clauses heavier than N")
    g.add_argument("--max-vars", type=int, metavar="N", help="drop derived clauses with more than N variables")
    g.add_argument("--max-given", type=int, metavar="N", help="stop after N given clauses")
    g.add_argument("--time", type=float, metavar="SECONDS", help="time limit per search")
    g.add_argument("--hints", metavar="FILE", help="hints file (hints. ... end_of_hints.)")
    g.add_argument("--hint-order", choices=("weight", "age"), help="order among hint matchers")
    g.add_argument("--limits-apply-to-hints", action="store_true", default=None,
                   help="apply the weight and variable limits to hint matchers too")
    g.add_argument("--selection", metavar="SPEC", help="ratio:OLD,FALSE,TRUE | age | weight")
    g.add_argument("--order", choices=("lpo", "kbo"), help="term ordering for orientation")
    g.add_argument("--demod-bound", type=int, metavar="N", help="rewrite steps allowed per clause")
    g.add_argument("--back-subsume", action="store_true", default=None,
                   help="delete retained clauses subsumed by a new one")
    g.add_argument("--non-matcher-every", type=int, metavar="N",
                   help="take one non-matcher every N selections")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hintprover", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    prove = sub.add_parser("prove", help="search for a proof of the goal")
    prove.add_argument("problem")
    _search_flags(prove)
    out = prove.add_argument_group("output")
    out.add_argument("--proof-out", metavar="FILE", help="also write the proof text to FILE")
    out.add_argument("--hints-out", metavar="FILE", help="write the proof's derived steps as hints")
    out.add_argument("--metrics", action="store_true", help="print proof metrics after the proof")

    simp = sub.add_parser("simplify", help="iterate proofs, using each as hints for the next")
    simp.add_argument("problem")
    _search_flags(simp)
    c = simp.add_argument_group("campaign")
    c.add_argument("--iterations", type=int, default=10, metavar="N", help="maximum iterations (default 10)")
    c.add_argument("--squeeze", type=_squeeze, default="auto", metavar="auto|none|LIST",
                   help="max_weight squeeze policy or an explicit schedule like 40,38,33")
    c.add_argument("--squeeze-max-vars", type=_int_list, default=(), metavar="LIST",
                   help="max_vars limits to try once max_weight is done")
    c.add_argument("--keep-hints", action="store_true", help="merge each proof's hints with the previous ones")
    c.add_argument("--vary-hint-order", dest="vary_hint_order", action="store_true", default=True,
                   help="flip the hint order for one run when stuck (default)")
    c.add_argument("--no-vary-hint-order", dest="vary_hint_order", action="store_false")
    c.add_argument("--ordering", default=DEFAULT_ORDERING, metavar="KEYS",
                   help="simplicity ordering (default %s)" % DEFAULT_ORDERING)
    c.add_argument("--report", metavar="FILE", help="write the JSON campaign report to FILE")
    c.add_argument("--best-out", metavar="FILE", help="write the best proof text to FILE")

    met = sub.add_parser("metrics", help="print metrics of a proof file")
    met.add_argument("prooffile")
    met.add_argument("--problem", metavar="FILE", help="also check the proof against this problem")
    return parser


def _search_config(args, problem) -> SearchConfig:
    config = config_from_options(problem.options)
    flags = {
        "max_weight": args.max_weight, "max_vars": args.max_vars, "max_given": args.max_given,
        "time_limit": args.time, "hint_order": args.hint_order,
        "apply_limits_to_hint_matchers": args.limits_apply_to_hints, "ordering": args.order,
        "demod_step_bound": args.demod_bound, "back_subsume": args.back_subsume,
        "non_matcher_every": args.non_matcher_every,
    }
    changes = {k: v for k, v in flags.items() if v is not None}
    if args.selection is not None:
        changes["selection"] = parse_selection(args.selection)
    return replace(config, **changes)


def _hints(args, problem) -> HintList:
    if args.hints:
        with open(args.hints, encoding="utf-8") as fh:
            return read_hints(fh.read(), origin=args.hints)
    if problem.hints:
        return HintList.from_clauses(problem.hints, "problem file")
    return HintList()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_prove(args) -> int:
    problem = load_problem(args.problem)
    config = _search_config(args, problem)
    outcome = saturate(problem, config, _hints(args, problem))
    print("%% outcome: %s" % outcome.name)
    print("%% given: %d generated: %d kept: %d" % (outcome.given_count, outcome.generated, outcome.kept))
    logging.getLogger(__name__).info("search took %.2fs", outcome.seconds)
    if not outcome.found:
        return EXIT_NO_PROOF
    text = render_proof(outcome.proof)
    sys.stdout.write(text)
    if args.metrics:
        sys.stdout.write(format_metrics(compute_metrics(outcome.proof)))
    if args.proof_out:
        _write(args.proof_out, text)
    if args.hints_out:
        _write(args.hints_out, write_hints(extract_hints(outcome.proof, origin=args.problem)))
    return EXIT_PROOF


def cmd_simplify(args) -> int:
    problem = load_problem(args.problem)
    search = _search_config(args, problem)
    config = CampaignConfig(
        max_iterations=args.iterations, search=search, squeeze=args.squeeze,
        keep_previous_hints=args.keep_hints, vary_hint_order=args.vary_hint_order,
        squeeze_max_vars=args.squeeze_max_vars, ordering=args.ordering,
        per_run_time_limit=args.time)
    report = run_campaign(problem, config, _hints(args, problem))
    for r in report.history:
        m = r.metrics
        summary = "length=%d level=%d max_noninput_weight=%d" % (
            m["length"], m["level"], m["max_noninput_weight"]) if m else "-"
        print("%% iteration %d: %s %s%s" % (r.iteration, r.outcome, summary, " stable" if r.stable else ""))
    print("%% stop: %s" % report.reason)
    if args.report:
        _write(args.report, report.to_json())
    if report.best_proof is None:
        return EXIT_PROOF if args.report else EXIT_NO_PROOF
    print("%% best: iteration %d" % report.best_iteration)
    text = report.best_proof_text()
    sys.stdout.write(text)
    if args.best_out:
        _write(args.best_out, text)
    return EXIT_PROOF


def cmd_metrics(args) -> int:
    with open(args.prooffile, encoding="utf-8") as fh:
        text = fh.read()
    symbols = None
    problem = None
    if args.problem:
        problem = load_problem(args.problem)
        symbols = problem.symbols.copy()
    proof = parse_proof(text, symbols)
    sys.stdout.write(format_metrics(compute_metrics(proof)))
    if problem is not None:
        result = check_proof(proof, problem)
        print("check=%s" % ("ok" if result.ok else "failed at %s: %s" % (result.step, result.reason)))
        if not result.ok:
            return EXIT_NO_PROOF
    return EXIT_PROOF


COMMANDS = {"prove": cmd_prove, "simplify": cmd_simplify, "metrics": cmd_metrics}


def cli_main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PROOF
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
    except (ConfigError, GoalError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
    except DemodulationError as exc:
        print("error: %s" % exc, file=sys.stderr)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
    return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())
