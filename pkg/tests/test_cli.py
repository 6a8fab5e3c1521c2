import os
import subprocess
import sys
from pathlib import Path

import pytest

from prefcons.cli import main, parse_condition_list, ConfigError

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


def test_models(capsys):
    code, out, _ = run(capsys, "models", "--kb", str(FIXTURES / "republican.kb"),
                       "--atoms", "p,q,r", "--format", "kv")
    assert code == 0
    data = kv(out)
    assert data["models.count"] == "4"
    assert data["models.v4"] == "p=f q=f r=t"


def test_atoms_default_to_those_of_the_kb(capsys):
    code, out, _ = run(capsys, "models", "--kb", str(FIXTURES / "republican.kb"))
    assert code == 0 and out.splitlines() == ["1 model(s)", "v1  r=t"]


def test_consequences_nixon_classical(capsys):
    code, out, _ = run(capsys, "consequences", "--kb", str(FIXTURES / "republican.kb"),
                       "--atoms", "p,q,r", "--structure", str(FIXTURES / "nixon_classical.pref"),
                       "--format", "kv")
    assert code == 0
    data = kv(out)
    texts = {v for k, v in data.items() if k.split(".")[-1].isdigit()}
    assert "!p" in texts and "p" not in texts
    assert data["consequences.sampled"] == "false"


def test_consequences_discriminative(capsys):
    code, out, _ = run(capsys, "consequences", "--semantics", "four", "--atoms", "p,q",
                       "--kb", str(FIXTURES / "contradictory_pacifist.kb"), "--discriminative",
                       "--format", "kv")
    assert code == 0
    texts = {v for k, v in kv(out).items() if k.split(".")[-1].isdigit()}
    assert "q" in texts and "p" not in texts and "!p" not in texts


def test_consequences_sampled_notice(capsys):
    code, out, _ = run(capsys, "consequences", "--semantics", "four", "--atoms", "p,q,r",
                       "--kb", str(FIXTURES / "quaker_republican.kb"),
                       "--structure", str(FIXTURES / "nixon_four.pref"), "--cap", "500")
    assert code == 0
    assert out.startswith("sampled mode")
    lines = out.splitlines()
    listed = lines[lines.index(next(l for l in lines if "consequence class" in l)) + 1:]
    listed = {l.strip() for l in listed}
    assert {"p", "!p", "q", "r"} <= listed and "!q" not in listed and "!r" not in listed


def test_check_pass_and_fail(capsys):
    code, out, _ = run(capsys, "check", "--atoms", "p,q", "--conditions", "c0..c3,P,KLM",
                       "--format", "kv")
    assert code == 0
    data = kv(out)
    assert data["check.c3.pass"] == "true" and data["check.P.pass"] == "true"
    code, out, _ = run(capsys, "check", "--atoms", "p", "--semantics", "four",
                       "--conditions", "KLM", "--format", "kv")
    assert code == 1
    assert kv(out)["check.KLM0.pass"] == "false"
    assert "check.KLM0.witness" in kv(out)


def test_check_nixon_c3(capsys):
    code, out, _ = run(capsys, "check", "--atoms", "p,q,r", "--structure",
                       str(FIXTURES / "nixon_classical.pref"), "--conditions", "c0-c3")
    assert code == 0
    assert out.splitlines()[1:] == ["c0: pass", "c1: pass", "c2: pass", "c3: pass"]


def test_condition_list_parsing():
    assert parse_condition_list("c0..c2,P") == ["c0", "c1", "c2", "P"]
    assert parse_condition_list("c11-c12, KLM") == ["c11", "c12", "KLM"]
    with pytest.raises(ConfigError):
        parse_condition_list("c3..c1")
    with pytest.raises(ConfigError):
        parse_condition_list("c13")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "repClaSyn", "--atoms", "p,q",
                       "--seeds", "10", "--format", "kv")
    assert code == 0
    data = kv(out)
    assert data["verify.pass"] == "true" and data["verify.cases"] == "10"


def test_verify_needs_full_closure(capsys):
    code, _, err = run(capsys, "verify", "--theorem", "repGen", "--atoms", "p,q", "--cap", "3")
    assert code == 2 and "cap" in err


def test_clone_stats(capsys):
    code, out, _ = run(capsys, "clone-stats", "--format", "kv")
    assert code == 0
    data = kv(out)
    assert data["clone.four.1.universe"] == "6"
    assert data["clone.j3.2.D"] == "48"
    assert data["clone.classical.2.D_and_C"] == "15"


def test_clone_stats_capped(capsys):
    code, out, _ = run(capsys, "clone-stats", "--semantics", "four", "--max-atoms", "2",
                       "--cap", "50", "--format", "kv")
    assert code == 0
    assert kv(out)["clone.four.2.capped"] == "true"


def test_malformed_formula(tmp_path, capsys):
    kb = tmp_path / "bad.kb"
    kb.write_text("p & (q\n")
    code, _, err = run(capsys, "models", "--kb", str(kb))
    assert code == 2
    assert "position 6" in err


def test_malformed_structure(tmp_path, capsys):
    pref = tmp_path / "bad.pref"
    pref.write_text("state a label v0\nprefer a b\n")
    code, _, err = run(capsys, "consequences", "--atoms", "p", "--structure", str(pref))
    assert code == 2 and "line 2" in err


def test_atoms_outside_declared(tmp_path, capsys):
    kb = tmp_path / "kb"
    kb.write_text("z\n")
    code, _, err = run(capsys, "models", "--kb", str(kb), "--atoms", "p")
    assert code == 2


def test_missing_file(capsys):
    code, _, err = run(capsys, "models", "--kb", "/nonexistent/kb")
    assert code == 2 and "cannot read" in err


def test_output_is_deterministic(capsys):
    args = ("consequences", "--semantics", "j3", "--atoms", "p,q", "--format", "kv")
    first = run(capsys, *args)
    assert run(capsys, *args) == first


def test_module_entry_point():
    env = dict(os.environ, PREFCONS_CAP="100000")
    proc = subprocess.run([sys.executable, "-m", "prefcons", "clone-stats", "--semantics",
                           "classical", "--max-atoms", "1", "--format", "kv"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert "clone.classical.1.D=4" in proc.stdout


def test_models_examples(tmp_path, capsys):
    code, out, _ = run(capsys, "models", "--kb", str(FIXTURES / "quaker_republican.kb"),
                       "--atoms", "p,q,r", "--format", "kv")
    assert code == 0
    assert [k for k in kv(out) if k.startswith("models.v")] == ["models.v6", "models.v7"]
    code, out, _ = run(capsys, "models", "--format", "kv")
    assert kv(out)["models.count"] == "8"
    kb = tmp_path / "false.kb"
    kb.write_text("false\n")
    code, out, _ = run(capsys, "models", "--kb", str(kb), "--atoms", "p", "--format", "kv")
    assert code == 0 and kv(out)["models.count"] == "0"


def test_verify_default_sizes(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "repGen")
    assert code == 0
    assert out.startswith("repGen on classical over p,q: 100 case(s)")
