import json

import pytest

from curvhom.cli import EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_f_family_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "--family", "f", "--function", "exp(x)",
        "--order", "4", "--grid", "x=0:1:9", "--format", "text",
    )
    assert code == EXIT_OK
    assert "result: pass" in out


def test_verify_h_family_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "--family", "h", "--function", "t^3",
        "--order", "2", "--grid", "t=1:2:9", "--format", "text",
    )
    assert code == EXIT_OK


def test_verify_json_reports_per_order(capsys):
    code, out, _ = run(
        capsys, "verify", "--family", "f", "--function", "x^2",
        "--order", "3", "--grid", "x=0.1:1:5",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert [v["name"] for v in payload["verdicts"]] == [f"order_{k}" for k in range(4)]
    assert set(payload) == {"config", "verdicts", "invariants", "exclusions", "tool_version"}


def test_malformed_function_exits_2(capsys):
    code, _, err = run(
        capsys, "verify", "--family", "f", "--function", "x + * 2",
        "--order", "2", "--grid", "x=0:1:3",
    )
    assert code == EXIT_CONFIG
    assert "offset 4" in err


def test_h_verify_order_beyond_closed_forms_exits_2(capsys):
    code, _, err = run(
        capsys, "verify", "--family", "h", "--function", "t^3",
        "--order", "3", "--grid", "t=1:2:3",
    )
    assert code == EXIT_CONFIG
    assert "order 2" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("classify", "--family", "f", "--function", "exp(x)"),  # missing grid
        ("classify", "--family", "f", "--function", "exp(x)", "--grid", "x=0:1:0"),
        ("classify", "--family", "f", "--function", "exp(x)", "--grid", "z=0:1:3"),
        ("classify", "--family", "q", "--function", "exp(x)", "--grid", "x=0:1:3"),
        ("classify", "--family", "f", "--grid", "x=0:1:3"),  # missing function
        ("invariants", "--family", "custom", "--metric", "tt=1", "--grid", "x=0:1:3"),
    ],
)
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_CONFIG
    assert err


def test_classify_emits_schema_report(capsys):
    code, out, _ = run(
        capsys, "classify", "--family", "h", "--function", "t^3",
        "--order", "2", "--grid", "t=1:2:9",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    for key in ("config", "verdicts", "invariants", "exclusions", "tool_version"):
        assert key in payload
    statuses = {v["name"]: v["status"] for v in payload["verdicts"]}
    assert statuses["CH_0"] == "pass"
    assert statuses["SCH_1(1,3)"] == "pass"
    assert statuses["SCH_2(1,3)"] == "fail"


def test_classify_output_is_byte_stable(capsys):
    argv = (
        "classify", "--family", "f", "--function", "exp(x)",
        "--order", "2", "--grid", "x=0:1:5",
    )
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_classify_hypothesis_violated_everywhere_exits_3(capsys):
    code, out, _ = run(
        capsys, "classify", "--family", "h", "--function", "0.000000001*t^2",
        "--order", "1", "--grid", "t=0:1:5",
    )
    assert code == EXIT_HYPOTHESIS


def test_invariants_csv(capsys):
    code, out, _ = run(
        capsys, "invariants", "--family", "h", "--function", "t^3",
        "--order", "2", "--grid", "t=2:2:1", "--format", "csv",
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    row = dict(zip(header, lines[1].split(",")))
    assert float(row["xi"]) == pytest.approx(0.25, rel=1e-9)
    assert float(row["xi_X"]) == pytest.approx(0.5, rel=1e-9)


def test_invariants_json_f_family(capsys):
    code, out, _ = run(
        capsys, "invariants", "--family", "f", "--function", "exp(x)",
        "--order", "1", "--grid", "x=0:0:1",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    row = payload["invariants"][0]
    assert row["xi"] == pytest.approx(9.0, rel=1e-9)
    assert row["sch_ratio"] == pytest.approx(-1.125, rel=1e-9)


def test_invariants_all_hypothesis_violated_exits_3(capsys):
    code, out, _ = run(
        capsys, "invariants", "--family", "f", "--function", "0",
        "--order", "1", "--grid", "x=0:1:3",
    )
    assert code == EXIT_HYPOTHESIS


def test_config_file_supplies_flags(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# homogeneity run\n"
        "family = h\n"
        "function = t^3\n"
        "order = 2\n"
        "grid = t=1:2:5\n"
        "tol = 1e-6\n"
        "format = json\n"
    )
    code, out, _ = run(capsys, "classify", "--config", str(cfg))
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["config"]["family"] == "h"
    assert payload["config"]["grid"] == {"t": "1:2:5"}


def test_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("family = h\nfunction = t^3\norder = 2\ngrid = t=1:2:5\n")
    code, out, _ = run(capsys, "classify", "--config", str(cfg), "--function", "exp(t)")
    assert code == EXIT_OK
    assert json.loads(out)["config"]["function"] == "exp(t)"


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("family = h\nfunction = t^3\ngrid = t=1:2:5\nbogus = 1\n")
    code, _, err = run(capsys, "classify", "--config", str(cfg))
    assert code == EXIT_CONFIG
    assert "bogus" in err


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "classify", "--family", "h", "--function", "exp(t)",
        "--order", "1", "--grid", "t=0:1:3", "--output", str(dest),
    )
    assert code == EXIT_OK
    assert out == ""
    payload = json.loads(dest.read_text())
    assert payload["tool_version"]


def test_custom_metric_classify(capsys):
    code, out, _ = run(
        capsys, "classify", "--family", "custom",
        "--metric", "tt=1", "--metric", "xx=1", "--metric", "yy=1",
        "--order", "1", "--grid", "x=0:1:3",
    )
    assert code == EXIT_OK
    assert json.loads(out)["degenerate"] is True


def test_verify_failure_exit_code(monkeypatch, capsys):
    # force a mismatch by patching the oracle
    import curvhom.cli as cli
    import numpy as np
    from curvhom.tensor import TensorAtPoint

    def fake_oracle(fn, p, k):
        comp = np.zeros((3,) * (4 + k))
        comp[(0, 1, 1, 0) + (0,) * k] = 1.0
        return TensorAtPoint(0, 4 + k, comp)

    monkeypatch.setattr(cli, "family_h_oracle", fake_oracle)
    code, out, _ = run(
        capsys, "verify", "--family", "h", "--function", "t^3",
        "--order", "1", "--grid", "t=1:2:3", "--format", "text",
    )
    assert code == EXIT_CHECK_FAILED
