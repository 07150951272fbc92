import json
from pathlib import Path

import pytest

from ordtop.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_check_reports_structure(capsys):
    code, out = run(capsys, "check", "--input", DATA / "diamond.json")
    assert code == 0
    assert "elements: 4" in out
    assert "ideal-domain: yes" in out
    assert "bounded-complete: yes" in out
    assert "maximal: {top}" in out


def test_topology_lists_every_open(capsys):
    code, out = run(capsys, "topology", "--input", DATA / "two_chain.json")
    assert code == 0
    assert out.splitlines() == [
        "elements: 2",
        "open-count: 3",
        "open: {}",
        "open: {b}",
        "open: {a,b}",
    ]


def test_maxspace_is_discrete(capsys):
    code, out = run(capsys, "maxspace", "--input", DATA / "diamond.json")
    assert code == 0
    assert "discrete: yes" in out


def test_idl_matches_the_base(capsys):
    code, out = run(capsys, "idl", "--input", DATA / "two_chain.json")
    assert code == 0
    assert "isomorphic-to-base: yes" in out
    assert "principal b: {a,b}" in out


def test_factor_verifies_the_model(capsys):
    code, out = run(capsys, "factor", "--input", DATA / "model_2x1.json")
    assert code == 0
    assert "claim-max-point-bijection: yes" in out
    assert "verified: yes" in out


def test_lower_model_fiber(capsys):
    code, out = run(capsys, "lower-model", "--input", DATA / "model_2x1.json", "--y0", "y")
    assert code == 0
    assert "max-homeomorphic-to-factor: yes" in out


def test_lower_model_defaults_to_the_base_point(capsys):
    code, out = run(capsys, "lower-model", "--input", DATA / "model_2x1.json")
    assert code == 0
    assert "max-homeomorphic-to-factor: yes" in out


def test_lower_model_unknown_fiber_is_an_input_error(capsys):
    code, _ = run(capsys, "lower-model", "--input", DATA / "model_2x1.json", "--y0", "zzz")
    assert code == 2


def test_diagonal_prints_the_witness(capsys):
    code, out = run(capsys, "diagonal", "--input", DATA / "family_uniform3.json")
    assert code == 0
    assert "witness: 1:1 2:2" in out
    assert "witness-default: 0" in out
    assert "verified: yes" in out


def test_diagonal_offset(capsys):
    code, out = run(
        capsys, "diagonal", "--input", DATA / "family_uniform3.json", "--offset", "3"
    )
    assert code == 0
    assert "witness: 0:3 1:4 2:5" in out


def test_diagonal_rejects_non_covering_families(capsys, tmp_path):
    bad = tmp_path / "family.json"
    bad.write_text(json.dumps([
        {"thresholds": {"default": 0, "exceptions": {}}, "allPhiLevel1": True},
        {"thresholds": {"default": None, "exceptions": {}}, "allPhiLevel1": True},
    ]))
    code, _ = run(capsys, "diagonal", "--input", bad)
    assert code == 1


def test_lhat_certificate(capsys):
    code, out = run(capsys, "lhat-cert", "--eval-bound", 4)
    assert code == 0
    assert "cutoff 4 valid-and-covering: yes" in out
    assert "non-maximal-chain-points-excluded: yes" in out
    assert "verified: yes" in out


def test_truncate_emits_loadable_poset_json(capsys, tmp_path):
    code, out = run(capsys, "truncate-l", "--width", 1, "--depth", 1)
    assert code == 0
    data = json.loads(out)
    assert len(data["elements"]) == 4
    path = tmp_path / "trunc.json"
    path.write_text(out)
    code, out = run(capsys, "check", "--input", path)
    assert code == 0
    assert "max-count: 2" in out


def test_hasse_writes_dot(capsys, tmp_path):
    target = tmp_path / "out.dot"
    code, out = run(capsys, "hasse", "--input", DATA / "two_chain.json", "--dot", target)
    assert code == 0
    assert f"written: {target}" in out
    text = target.read_text()
    assert text.startswith("digraph poset {")
    assert '"a" -> "b";' in text


def test_hasse_prints_to_stdout(capsys):
    code, out = run(capsys, "hasse", "--input", DATA / "two_chain.json")
    assert code == 0
    assert out.endswith("}\n")


def test_missing_file_is_an_input_error(capsys):
    code, _ = run(capsys, "check", "--input", "no/such/file.json")
    assert code == 2


def test_invalid_json_is_an_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    code, _ = run(capsys, "check", "--input", bad)
    assert code == 2


def test_cycle_is_an_input_error(capsys, tmp_path):
    bad = tmp_path / "cycle.json"
    bad.write_text(json.dumps({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}))
    code, _ = run(capsys, "check", "--input", bad)
    assert code == 2


def test_size_guard_is_an_input_error(capsys, tmp_path):
    labels = [f"e{i}" for i in range(25)]
    covers = [[labels[i], labels[i + 1]] for i in range(24)]
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"elements": labels, "covers": covers}))
    code, _ = run(capsys, "topology", "--input", big)
    assert code == 2


def test_unknown_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-verb"])
    assert info.value.code == 2
