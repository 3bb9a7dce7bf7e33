import json
import subprocess
import sys
from dataclasses import fields

import pytest

from hintprover.cli import EXIT_NO_PROOF, EXIT_PROOF, EXIT_USAGE, build_parser, cli_main
from hintprover.saturation import SearchConfig
from hintprover.simplifier import CampaignConfig

# one flag per configuration field; ``search`` is the nested SearchConfig itself
FLAG_FOR_FIELD = {
    "selection": "--selection", "max_weight": "--max-weight", "max_vars": "--max-vars",
    "max_given": "--max-given", "time_limit": "--time", "hint_order": "--hint-order",
    "apply_limits_to_hint_matchers": "--limits-apply-to-hints",
    "demod_step_bound": "--demod-bound", "back_subsume": "--back-subsume",
    "non_matcher_every": "--non-matcher-every", "ordering": "--order",
    "max_iterations": "--iterations", "squeeze": "--squeeze",
    "keep_previous_hints": "--keep-hints", "vary_hint_order": "--vary-hint-order",
    "squeeze_max_vars": "--squeeze-max-vars", "per_run_time_limit": "--time",
}
CAMPAIGN_ONLY = {"ordering": "--ordering"}


def run(capsys, *argv):
    code = cli_main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_right_identity(capsys, fixture_path):
    code, out, _ = run(capsys, "prove", fixture_path("group_right_identity.p"))
    assert code == EXIT_PROOF
    assert out.startswith("% outcome: proof found\n")
    assert "% proof" in out and "[input]" in out


def test_prove_unsat_exits_one(capsys, fixture_path):
    code, out, _ = run(capsys, "prove", fixture_path("unsat.p"))
    assert code == EXIT_NO_PROOF
    assert out.splitlines()[0] == "% outcome: SOS empty"


def test_prove_given_limit_exits_one(capsys, fixture_path):
    code, out, _ = run(capsys, "prove", fixture_path("group_inverse_product.p"), "--max-given", 2)
    assert code == EXIT_NO_PROOF and "given limit" in out


def test_parse_error_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.p"
    bad.write_text("assumptions.\ne * = x.\nend_of_assumptions.\n")
    code, _, err = run(capsys, "prove", bad)
    assert code == EXIT_USAGE and "parse error" in err and "line 2" in err


@pytest.mark.parametrize("argv", [
    ["prove"], ["frobnicate"], ["prove", "x.p", "--max-weight", "many"],
    ["prove", "x.p", "--hint-order", "random"], ["simplify", "x.p", "--squeeze", "1,b"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_bad_selection_is_a_config_error(capsys, fixture_path):
    code, _, err = run(capsys, "prove", fixture_path("group_right_identity.p"), "--selection", "bogus")
    assert code == EXIT_USAGE and "config error" in err


def test_missing_file_exits_two(capsys, tmp_path):
    assert run(capsys, "prove", tmp_path / "absent.p")[0] == EXIT_USAGE


def test_prove_writes_proof_hints_and_metrics(capsys, fixture_path, tmp_path):
    proof, hints = tmp_path / "proof.txt", tmp_path / "hints.p"
    code, out, _ = run(capsys, "prove", fixture_path("group_double_inverse.p"), "--metrics",
                       "--proof-out", proof, "--hints-out", hints)
    assert code == EXIT_PROOF
    assert proof.read_text() in out and "length=" in out
    assert "hints." in hints.read_text()
    # the hints steer a second run to a proof with no more givens
    code2, out2, _ = run(capsys, "prove", fixture_path("group_double_inverse.p"), "--hints", hints)
    given = lambda text: int(text.splitlines()[1].split()[2])
    assert code2 == EXIT_PROOF and given(out2) <= given(out)


def test_simplify_report(capsys, fixture_path, tmp_path):
    report, best = tmp_path / "r.json", tmp_path / "best.txt"
    code, out, _ = run(capsys, "simplify", fixture_path("group_inverse_product.p"),
                       "--report", report, "--best-out", best)
    assert code == EXIT_PROOF
    data = json.loads(report.read_text())
    assert len(data["iterations"]) >= 1
    assert out.count("% iteration ") == len(data["iterations"])
    assert data["best_proof"] == best.read_text()
    assert "% stop: " in out


def test_simplify_without_proof(capsys, fixture_path, tmp_path):
    code, out, _ = run(capsys, "simplify", fixture_path("unsat.p"))
    assert code == EXIT_NO_PROOF and "no proof at iteration 0" in out
    # a written report counts as success
    code, _, _ = run(capsys, "simplify", fixture_path("unsat.p"), "--report", tmp_path / "r.json")
    assert code == EXIT_PROOF


def test_metrics_command(capsys, fixture_path, tmp_path):
    proof = tmp_path / "proof.txt"
    run(capsys, "prove", fixture_path("group_right_inverse.p"), "--proof-out", proof)
    code, out, _ = run(capsys, "metrics", proof, "--problem", fixture_path("group_right_inverse.p"))
    assert code == EXIT_PROOF
    pairs = dict(line.split("=", 1) for line in out.splitlines())
    assert pairs["check"] == "ok"
    assert int(pairs["length"]) >= 1 and int(pairs["level"]) >= 1


def test_metrics_rejects_tampered_proof(capsys, fixture_path, tmp_path):
    proof = tmp_path / "proof.txt"
    run(capsys, "prove", fixture_path("group_right_inverse.p"), "--proof-out", proof)
    lines = proof.read_text().splitlines()
    k = next(i for i, line in enumerate(lines) if "[input]" not in line and line[:1].isdigit()
             and "deny" not in line)
    num, rest = lines[k].split(". ", 1)
    lines[k] = "%s. e = e' * e. [%s" % (num, rest.split("[", 1)[1])
    proof.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "metrics", proof, "--problem", fixture_path("group_right_inverse.p"))
    assert code == EXIT_NO_PROOF and "check=failed" in out


def test_help_lists_every_config_field():
    texts = {name: sub.format_help() for name, sub in
             build_parser()._subparsers._group_actions[0].choices.items()}
    search = [f.name for f in fields(SearchConfig)]
    campaign = [f.name for f in fields(CampaignConfig) if f.name != "search"]
    for name in search:
        assert FLAG_FOR_FIELD[name] in texts["prove"], name
        assert FLAG_FOR_FIELD[name] in texts["simplify"], name
    for name in campaign:
        flag = CAMPAIGN_ONLY.get(name, FLAG_FOR_FIELD[name])
        assert flag in texts["simplify"], name
    assert set(FLAG_FOR_FIELD) == set(search) | set(campaign)


@pytest.mark.parametrize("argv", [
    ["prove", "group_inverse_product.p"],
    ["simplify", "group_inverse_product.p", "--iterations", "6"],
])
def test_output_byte_identical_across_runs(capsys, fixture_path, argv):
    argv = [argv[0], fixture_path(argv[1])] + argv[2:]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_module_entry_point(fixture_path):
    done = subprocess.run([sys.executable, "-m", "hintprover", "prove",
                           fixture_path("group_right_identity.p")],
                          capture_output=True, text=True, timeout=120)
    assert done.returncode == 0 and "% outcome: proof found" in done.stdout
    usage = subprocess.run([sys.executable, "-m", "hintprover"], capture_output=True, text=True,
                           timeout=60)
    assert usage.returncode == 2
