import json

import pytest

from gor4 import cli
from gor4 import report as RP


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_errors(capsys):
    assert run(capsys)[0] == cli.EXIT_USAGE
    assert run(capsys, "family", "build", "[999]z")[0] == cli.EXIT_USAGE
    assert run(capsys, "deform", "verify", "nonsense")[0] == cli.EXIT_USAGE
    assert run(capsys, "family", "build", "[400]a", "--char", "12")[0] == cli.EXIT_USAGE
    assert run(capsys, "betti", "/nonexistent.json")[0] == cli.EXIT_USAGE


def test_family_list(capsys):
    code, out, _ = run(capsys, "family", "list")
    assert code == 0 and len(out.splitlines()) == 26


def test_build_then_kernel_commands(capsys, tmp_path):
    inst = tmp_path / "i.json"
    code, out, _ = run(capsys, "family", "build", "[400]a", "-o", str(inst))
    assert code == 0 and "CGKK 3" in out and "degree 16, genus 17" in out
    code, out, _ = run(capsys, "hilbert", str(inst))
    assert code == 0 and out.startswith("Hilbert polynomial: 16m - 16")
    code, out, _ = run(capsys, "betti", str(inst))
    assert code == 0 and out.endswith("name: CGKK 3\n")
    gb = tmp_path / "gb.json"
    assert run(capsys, "gb", str(inst), "--json", "-o", str(gb))[0] == 0
    assert json.loads(gb.read_text())["generators"]
    code, out, _ = run(capsys, "colon", str(inst), str(gb))
    assert code == 0 and out.strip() == "1"
    assert run(capsys, "check", str(inst))[0] == 0


def test_corrupted_instance_is_reported(capsys, tmp_path):
    inst = tmp_path / "i.json"
    run(capsys, "family", "build", "[400]a", "-o", str(inst))
    obj = json.loads(inst.read_text())
    obj["generators"] = obj["generators"][:3]
    inst.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "check", str(inst))
    assert code == cli.EXIT_FAIL and out.startswith("FAIL") and "expected" in out
    inst.write_text("{not json")
    code, out, _ = run(capsys, "check", str(inst))
    assert code == cli.EXIT_FAIL and "unreadable" in out
    row = RP.check_instance_file(inst)
    assert row.status == "FAIL" and row.diagnostic


def test_deform_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "deform", "verify", "551a->550a", "--samples", "1")
    assert code == 0 and "flatness PASS" in out
    code, out, _ = run(capsys, "deform", "verify", "420a->400a", "--samples", "1", "--json")
    assert code == cli.EXIT_FAIL
    obj = json.loads(out)
    assert obj["identities"] == "FAIL" and obj["flatness"] == "PASS"


def test_graph_output(capsys, tmp_path):
    out = tmp_path / "g.dot"
    assert run(capsys, "deform", "graph", "-o", str(out))[0] == 0
    text = out.read_text()
    assert text.startswith("digraph") and '"[551]a" -> "[550]a"' in text


def test_report_is_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.md", tmp_path / "b.md"
    for p in (a, b):
        run(capsys, "report", "--filter", "420a|400a", "--samples", "1", "-o", str(p))
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert "| [400]a |" in text and "| 420a->400a |" in text


def test_empty_filter_gives_header_only(capsys, tmp_path):
    out = tmp_path / "r.md"
    code = cli.main(["report", "--filter", "^no-such-entry$", "-o", str(out)])
    text = out.read_text()
    assert code == 0
    assert "| family |" in text and "| deformation |" in text
    assert "## Diagnostics" not in text and "overall: PASS" in text
    rows = [l for l in text.splitlines() if l.startswith("| [") or l.startswith("| 5")]
    assert rows == []


def test_report_directory_layout(capsys, tmp_path):
    run(capsys, "report", "--filter", "^\\[400\\]a$", "--outdir", str(tmp_path), "--format", "json")
    d = tmp_path / "families" / "400_a"
    assert {p.name for p in d.iterdir()} == {"ideal.json", "betti.txt", "report.json"}
    assert json.loads((tmp_path / "report.json").read_text())["passed"] is True


def test_char_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GOR4_CHAR", "101")
    code, out, _ = run(capsys, "family", "build", "[400]a")
    assert code == 0
    monkeypatch.setenv("GOR4_CHAR", "100")
    assert run(capsys, "family", "build", "[400]a")[0] == cli.EXIT_USAGE


def test_tiny_field_is_permitted(capsys):
    code, out, err = run(capsys, "family", "build", "[420]a", "--char", "5")
    assert code in (cli.EXIT_OK, cli.EXIT_FAIL)
    if code == cli.EXIT_FAIL:
        assert "seeds tried" in err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RP.RunConfig(char=4)
    with pytest.raises(ValueError):
        RP.RunConfig(samples=0)
