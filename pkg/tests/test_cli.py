"""Command-line behavior: subcommands, exit codes, output formats."""

import json

import pytest

from pegcfg.cli import main
from pegcfg import fixtures


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [
        ("G1.g", fixtures.G1_TEXT),
        ("G2.g", fixtures.G2_TEXT),
        ("G3u.g", fixtures.G3_UNORDERED_TEXT),
        ("G4.g", fixtures.G4_TEXT),
        ("G5.g", fixtures.G5_TEXT),
        ("G5.part", fixtures.G5_PARTITION_TEXT),
        ("overlap.part", fixtures.G5_PARTITION_OVERLAP_TEXT),
    ]:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        paths[name] = str(path)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(files, capsys):
    code, out, _ = run(capsys, "validate", files["G1.g"])
    assert code == 0 and out.startswith("ok:")


def test_validate_syntax_error(files, capsys, tmp_path):
    bad = tmp_path / "bad.g"
    bad.write_text("start: S\nS -> ???\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "line 2" in err


def test_match_peg_fail_is_exit_zero(files, capsys):
    code, out, _ = run(capsys, "match", files["G1.g"], "--sem", "peg", "--input", "abac")
    assert code == 0 and out.strip() == "fail"


def test_match_cfg_lengths(files, capsys):
    code, out, _ = run(capsys, "match", files["G1.g"], "--sem", "cfg", "--input", "abac")
    assert code == 0 and out.strip() == "matches: {2}"


def test_match_rejects_marker_in_input(files, capsys):
    code, _, err = run(capsys, "match", files["G1.g"], "--sem", "peg", "--input", "a$")
    assert code == 2 and "--markers" in err


def test_check_sllk_holds(files, capsys):
    code, out, _ = run(capsys, "check", files["G2.g"], "--class", "sllk", "--k", "2")
    assert code == 0 and out.splitlines()[0] == "holds"


def test_check_ll1_fails_with_exit_one(files, capsys):
    code, out, _ = run(capsys, "check", files["G2.g"], "--class", "ll1")
    assert code == 1 and out.splitlines()[0] == "fails"


def test_check_ll_regular(files, capsys):
    code, out, _ = run(
        capsys, "check", files["G5.g"], "--class", "ll-regular", "--partition", files["G5.part"]
    )
    assert code == 0 and out.splitlines()[0] == "holds"


def test_check_rejects_overlapping_partition(files, capsys):
    code, _, err = run(
        capsys, "check", files["G5.g"], "--class", "ll-regular", "--partition", files["overlap.part"]
    )
    assert code == 2 and "overlap" in err


def test_compare_lists_difference(files, capsys):
    code, out, _ = run(capsys, "compare", files["G2.g"], "--max-len", "2", "--markers", "0")
    assert code == 1
    assert "verdict: cfg_superset" in out
    assert "only-cfg: cd" in out


def test_transform_then_validate_round_trip(files, capsys):
    out_path = str(files["dir"] / "out.g")
    code, _, _ = run(
        capsys, "transform", files["G2.g"], "--kind", "phi-before", "--k", "2", "-o", out_path
    )
    assert code == 0
    code, out, _ = run(capsys, "validate", out_path)
    assert code == 0 and "uses the end marker" in out


def test_transform_reorder_then_compare_equal(files, capsys):
    out_path = str(files["dir"] / "ordered.g")
    code, _, _ = run(capsys, "transform", files["G3u.g"], "--kind", "reorder-ll1", "-o", out_path)
    assert code == 0
    code, out, _ = run(capsys, "compare", out_path, "--max-len", "1", "--markers", "1")
    assert code == 0 and "verdict: equal" in out


def test_transform_rho_and_enumerate(files, capsys):
    out_path = str(files["dir"] / "rho.g")
    code, _, _ = run(
        capsys, "transform", files["G5.g"], "--kind", "rho", "--partition", files["G5.part"],
        "-o", out_path,
    )
    assert code == 0
    code, out, _ = run(
        capsys, "enumerate", out_path, "--sem", "peg", "--max-len", "2", "--markers", "1"
    )
    assert code == 0
    listed = {line.strip() for line in out.splitlines()[1:]}
    assert listed == {"c", "d", "ac", "ad"}


def test_transform_precondition_error(files, capsys):
    out_path = str(files["dir"] / "nope.g")
    code, _, err = run(
        capsys, "transform", files["G5.g"], "--kind", "phi-before", "--k", "2", "-o", out_path
    )
    assert code == 2 and "refused" in err


def test_enumerate_cfg_exact(files, capsys):
    code, out, _ = run(capsys, "enumerate", files["G2.g"], "--sem", "cfg", "--max-len", "2")
    assert code == 0
    assert [line.strip() for line in out.splitlines()[1:]] == ["a", "c", "ab", "cd"]


def test_analyze_text(files, capsys):
    code, out, _ = run(capsys, "analyze", files["G2.g"], "--k", "2")
    assert code == 0
    assert "C: first {c} follow {$$, d$}" in out


def test_json_format_and_determinism(files, capsys):
    code, out1, _ = run(
        capsys, "compare", files["G2.g"], "--max-len", "2", "--format", "json-like"
    )
    doc = json.loads(out1)
    assert doc["verdict"] == "cfg_superset" and doc["only_cfg"] == ["cd"] and doc["exit"] == 1
    _, out2, _ = run(capsys, "compare", files["G2.g"], "--max-len", "2", "--format", "json-like")
    assert out1 == out2


def test_missing_file_is_exit_two(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/grammar.g")
    assert code == 2 and "error" in err


def test_left_recursive_peg_match_is_exit_two(tmp_path, capsys):
    path = tmp_path / "lr.g"
    path.write_text("start: A\nA -> A 'a' | 'a'\n", encoding="utf-8")
    code, _, err = run(capsys, "match", str(path), "--sem", "peg", "--input", "aa")
    assert code == 2 and "left-recursive" in err
