import json

import pytest

from roughmap import REGISTRY
from roughmap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_replay_passes(capsys):
    code, out, _ = run(capsys, "replay-paper")
    assert code == 0
    assert "replay: 22/22 checks passed" in out
    assert out.count("PASS") == 22
    assert "FAIL" not in out
    # key frozen strings from the two worked instances
    assert "{(a, a), (b, b), (a, b), (b, a)}" in out
    assert "∅" in out


def test_list_claims_prints_whole_registry(capsys):
    code, out, _ = run(capsys, "list-claims")
    assert code == 0
    for cid in REGISTRY:
        assert cid in out


def test_count_commands(capsys):
    code, out, _ = run(capsys, "count", "--partitions", "7")
    assert code == 0 and "877" in out
    code, out, _ = run(capsys, "count", "--surjections", "6", "2")
    assert code == 0 and "62" in out
    code, out, _ = run(capsys, "count", "--subsets", "5")
    assert code == 0 and "32" in out
    code, out, _ = run(capsys, "count", "--surjections", "2", "3")
    assert code == 0
    assert "0" in out and "no surjections onto a larger codomain" in out
    code, _, err = run(capsys, "count", "--partitions", "0")
    assert code == 2


def test_falsify_exit_codes(capsys):
    # refuted claim, counterexample findable: expected outcome
    code, out, _ = run(capsys, "falsify", "L31-1-fwd", "--max-u", "4", "--max-v", "2")
    assert code == 0
    assert "counterexample found" in out
    # refuted claim, bounds too small: unexpected
    code, out, _ = run(capsys, "falsify", "L31-1-fwd", "--max-u", "2", "--max-v", "2")
    assert code == 1
    assert "no counterexample" in out
    # open claim, bounds exhausted: "none found here"
    code, out, _ = run(capsys, "falsify", "T31", "--max-u", "4", "--max-v", "3")
    assert code == 3
    # proved claim, exhausted: expected
    code, out, _ = run(capsys, "falsify", "T42-1", "--max-u", "3", "--max-v", "3")
    assert code == 0
    # ill-typed claim, exhausted: expected
    code, out, _ = run(capsys, "falsify", "L32", "--max-u", "3", "--max-v", "2")
    assert code == 0
    assert "ill-typed" in out


def test_falsify_open_claim_that_fails(capsys):
    code, out, _ = run(capsys, "falsify", "L31-3-join", "--max-u", "4", "--max-v", "2")
    assert code == 0
    assert "counterexample found" in out


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "T42-1", "--max-u", "3")
    assert code == 0
    assert "zero failures" in out
    # failures on a refuted claim are the expected outcome
    code, out, _ = run(capsys, "verify", "T41-1", "--max-u", "4", "--max-v", "2")
    assert code == 0
    assert "fails" in out
    # failures on an open claim are reported as a finding
    code, out, _ = run(capsys, "verify", "L31-3-join", "--max-u", "4", "--max-v", "2")
    assert code == 1


def test_unknown_claim_prints_registry(capsys):
    code, _, err = run(capsys, "falsify", "T99", "--max-u", "3", "--max-v", "3")
    assert code == 2
    for cid in REGISTRY:
        assert cid in err


def test_json_report_written(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, _, _ = run(
        capsys, "falsify", "T41-1", "--max-u", "4", "--max-v", "2",
        "--json", str(target),
    )
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["schema"] == "relmap-report/1"
    assert doc["outcome"] == "counterexample-found"
    assert doc["first_counterexample"]["claim"] == "T41-1"


def test_json_write_failure_is_io_error(tmp_path, capsys):
    code, _, err = run(
        capsys, "falsify", "T41-1", "--max-u", "3", "--max-v", "2",
        "--json", str(tmp_path / "no" / "dir.json"),
    )
    assert code == 2
    assert "roughmap:" in err


def test_workers_flag(capsys):
    code, out, _ = run(
        capsys, "verify", "T42-1", "--max-u", "4", "--workers", "2"
    )
    assert code == 0
    assert "workers 2" in out


def test_eval_instance_match(tmp_path, capsys):
    code, out, _ = run(capsys, "eval", "--input", "instances/monotonicity.json")
    assert code == 0
    assert "verdict: fails" in out
    assert "matches recorded outcome" in out


def test_eval_instance_mismatch(tmp_path, capsys):
    doc = json.loads(open("instances/monotonicity.json").read())
    doc["expected_outcome"] = "holds"
    p = tmp_path / "inst.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "eval", "--input", str(p))
    assert code == 1
    assert "MISMATCH" in out


def test_eval_show_sections(capsys):
    code, out, _ = run(
        capsys, "eval", "--input", "instances/approximation.json",
        "--show", "relmap,approx,degrees",
    )
    assert code == 0
    assert "f(R) = {(a, a), (b, b), (a, b), (b, a)}" in out
    assert "apr_R X = {1}" in out
    assert "apr̄_R X = {1}" in out
    assert "apr_f(R) f(X) = ∅" in out
    assert "degrees" in out


def test_eval_without_claim_just_describes(tmp_path, capsys):
    doc = json.loads(open("instances/monotonicity.json").read())
    del doc["claim"]
    del doc["expected_outcome"]
    p = tmp_path / "inst.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "eval", "--input", str(p), "--show", "relmap")
    assert code == 0
    assert "f(R1)" in out


def test_eval_missing_file(capsys):
    code, _, err = run(capsys, "eval", "--input", "/nonexistent/x.json")
    assert code == 2


def test_eval_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    code, _, err = run(capsys, "eval", "--input", str(p))
    assert code == 2


def test_eval_invalid_instance(tmp_path, capsys):
    doc = json.loads(open("instances/monotonicity.json").read())
    doc["map"]["1"] = "zzz"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, "eval", "--input", str(p))
    assert code == 2


def test_eval_report_reruns_counterexample(tmp_path, capsys):
    target = tmp_path / "report.json"
    run(
        capsys, "falsify", "L31-2-inc", "--max-u", "4", "--max-v", "2",
        "--json", str(target),
    )
    code, out, _ = run(capsys, "eval", "--input", str(target))
    assert code == 0
    assert "verdict: fails" in out
    assert "matches recorded outcome" in out


def test_eval_clean_report_has_nothing_to_check(tmp_path, capsys):
    target = tmp_path / "report.json"
    run(capsys, "verify", "T42-1", "--max-u", "3", "--json", str(target))
    code, out, _ = run(capsys, "eval", "--input", str(target))
    assert code == 0
    assert "nothing to re-check" in out


def test_no_command_shows_usage(capsys):
    code, _, _ = run(capsys)
    assert code == 2
