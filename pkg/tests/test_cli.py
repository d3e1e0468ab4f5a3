"""Command-line behavior: outputs, formats, and the exit-code discipline."""

import json
import subprocess
import sys

import pytest

from qirtk import Profile, parse_module, validate_profile
from qirtk.cli import main

import genutil


def _path(name):
    return str(genutil.corpus_path(name))


def test_validate_base_module(capsys):
    assert main(["validate", _path("bell_static.ll")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "base"


def test_validate_adaptive_module(capsys):
    assert main(["validate", _path("feedback.ll")]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "adaptive-subset"


def test_validate_unsupported_module_fails_with_details(capsys):
    assert main(["validate", _path("unsupported.ll")]) == 1
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "unsupported"
    assert any(line.startswith("violation:") for line in out.splitlines())


def test_validate_json_format(capsys):
    assert main(["validate", "--format", "json",
                 _path("bell_static.ll")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["profile"] == "base"
    assert payload["violations"] == []


def test_parse_failure_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.ll"
    bad.write_text("define void @main() {\nentry:\n  wibble\n}\n")
    assert main(["validate", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "parse error" in err
    assert "line 3" in err


def test_missing_file_exits_three(capsys):
    assert main(["validate", "no_such_file.ll"]) == 3
    assert "i/o error" in capsys.readouterr().err


def test_run_bell_counts(capsys):
    assert main(["run", _path("bell_static.ll"),
                 "--shots", "100", "--seed", "42"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload["counts"]) <= {"00", "11"}
    assert sum(payload["counts"].values()) == 100
    assert payload["bit_order"] == "clbit0-leftmost"


def test_run_empty_module(capsys):
    assert main(["run", _path("empty.ll"), "--shots", "5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"] == {"": 5}


def test_run_memory_flag_lists_every_shot(capsys):
    assert main(["run", _path("hadamard_loop.ll"), "--shots", "1",
                 "--memory"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["memory"] == [""]


def test_run_text_format(capsys):
    assert main(["run", _path("empty.ll"), "--shots", "2",
                 "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "counts:" in out
    assert "(empty) 2" in out


def test_run_rejects_nonpositive_shots(capsys):
    assert main(["run", _path("empty.ll"), "--shots", "0"]) == 1
    assert "--shots" in capsys.readouterr().err


def test_run_unknown_intrinsic_exits_one(capsys):
    assert main(["run", _path("unsupported.ll"), "--shots", "1"]) == 1
    assert "UnknownIntrinsic" in capsys.readouterr().err


def test_run_qubit_limit_exits_one(capsys):
    assert main(["run", _path("bell_static.ll"), "--shots", "1",
                 "--max-qubits", "1"]) == 1
    assert "QubitLimit" in capsys.readouterr().err


def test_run_step_limit_exits_one(capsys):
    assert main(["run", _path("phi_loop.ll"), "--shots", "1",
                 "--step-limit", "3"]) == 1
    assert "StepLimit" in capsys.readouterr().err


def test_run_seed_determinism(capsys):
    main(["run", _path("bell_static.ll"), "--shots", "64", "--seed", "7"])
    first = capsys.readouterr().out
    main(["run", _path("bell_static.ll"), "--shots", "64", "--seed", "7"])
    assert capsys.readouterr().out == first


def test_transpile_qasm_to_base_qir(capsys):
    assert main(["transpile", _path("bell.qasm"), "--to", "qir-base"]) == 0
    out = capsys.readouterr().out
    assert "call void @__quantum__qis__h__body(ptr null)" in out
    assert "ptr inttoptr (i64 1 to ptr)" in out
    module = parse_module(out)
    assert validate_profile(module).profile is Profile.BASE


def test_transpile_qir_to_qasm(capsys):
    assert main(["transpile", _path("bell_dynamic.ll"),
                 "--to", "qasm2"]) == 0
    out = capsys.readouterr().out
    assert out == genutil.corpus_text("bell.qasm")


def test_transpile_feedback_fails_with_reason(capsys):
    assert main(["transpile", _path("feedback.ll"),
                 "--to", "qir-base"]) == 1
    assert "FeedbackRequired" in capsys.readouterr().err


def test_unroll_command(capsys):
    assert main(["unroll", _path("hadamard_loop.ll")]) == 0
    out = capsys.readouterr().out
    assert out.count("call void @__quantum__qis__h__body") == 10


def test_unroll_cap_exits_one(capsys):
    assert main(["unroll", _path("hadamard_loop.ll"),
                 "--iteration-cap", "4"]) == 1
    assert "CapExceeded" in capsys.readouterr().err


def test_unroll_straight_line_file_is_unchanged(capsys):
    main(["unroll", _path("bell_static.ll")])
    out = capsys.readouterr().out
    module = parse_module(genutil.corpus_text("bell_static.ll"))
    assert parse_module(out) == module


def test_out_flag_writes_a_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    assert main(["run", _path("empty.ll"), "--shots", "1",
                 "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["counts"] == {"": 1}


def test_input_format_override(tmp_path, capsys):
    renamed = tmp_path / "bell.txt"
    renamed.write_text(genutil.corpus_text("bell.qasm"))
    assert main(["validate", str(renamed),
                 "--input-format", "qasm2"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "base"
    # the same file read as IR is a parse failure
    assert main(["validate", str(renamed)]) == 2


def test_emitted_outputs_reparse_and_validate(tmp_path, capsys):
    for name in ("bell_dynamic.ll", "reuse.ll", "ghz_dynamic.ll"):
        target = tmp_path / ("low_" + name)
        assert main(["transpile", _path(name), "--to", "qir-base",
                     "--out", str(target)]) == 0
        assert main(["validate", str(target)]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "base"


def test_console_entry_point_runs_as_a_module():
    proc = subprocess.run(
        [sys.executable, "-m", "qirtk.cli", "validate",
         _path("bell_static.ll")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "base"
