"""
命令行接口测试
"""

import json

import pytest
from click.testing import CliRunner

from src.main import cli


@pytest.fixture
def invoke(config_file):
    runner = CliRunner()

    def _invoke(*args):
        return runner.invoke(cli, ["--config-file", str(config_file), *args])

    return _invoke


def _json(output: str) -> dict:
    """截取输出中的 JSON 报告 (进度信息可能混在同一流里)"""
    return json.loads(output[output.index("{"): output.rindex("}") + 1])


def test_norms_closed_form(invoke):
    result = invoke("norms", "--j", "1/2", "--Lambda", "3", "--n", "-1")
    assert result.exit_code == 0, result.output
    assert result.output.strip() == "4"


def test_flow_identity(invoke):
    result = invoke("flow", "--algebra", "n2", "--theta", "0", "--mode", "H0")
    assert result.exit_code == 0, result.output
    assert result.output.strip().splitlines()[-1].strip() == "H0"


def test_singular_json_report(invoke):
    result = invoke(
        "singular", "--module", "topological", "--h", "sym:h-minus:1:1", "--max-level", "1", "--format", "json"
    )
    assert result.exit_code == 0, result.output
    report = _json(result.output)
    assert report["schema"] == "n2verma/1"
    assert report["module"] == "topological"
    first = report["vectors"][0]
    assert first["theta"] == 1
    assert first["verified"] is True
    assert first["bigrade"] == {"charge": -1, "level": 1}
    assert first["state"] == [{"monomial": "Q-1 v", "coeff": "1"}]


@pytest.mark.parametrize(
    "args",
    [
        ["norms", "--j", "abc", "--Lambda", "3", "--n", "0"],
        ["basis", "--module", "topological", "--h", "0", "--t", "0"],
        ["basis", "--h", "1/3"],
        ["equiv", "--module", "topological", "--h", "1/3", "--theta", "1"],
        ["suite", "--only", "99"],
    ],
)
def test_usage_errors_exit_2(invoke, args):
    result = invoke(*args)
    assert result.exit_code == 2, result.output


def test_basis_listing(invoke):
    result = invoke("basis", "--module", "topological", "--h", "1/3", "--charge", "0", "--level", "1")
    assert result.exit_code == 0, result.output
    assert "L-1 v" in result.output
    assert "H-1 v" in result.output


def test_char_csv(invoke):
    result = invoke(
        "char", "--module", "topological", "--h", "1/3", "--max-level", "1", "--charge-window", "0:0", "--format", "csv"
    )
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0] == "charge,level,dim"
    assert "0,0,1" in lines
    assert "0,1,2" in lines


def test_diagram_dot(invoke):
    result = invoke("diagram", "--module", "topological", "--h", "1/3", "--charge-window", "-1:1", "--format", "dot")
    assert result.exit_code == 0, result.output
    assert result.output.lstrip().startswith("digraph {")
    assert "G-1" in result.output


def test_suite_single_criterion(invoke):
    result = invoke("suite", "--only", "11", "--format", "json")
    assert result.exit_code == 0, result.output
    report = _json(result.output)
    assert report["status"] == "pass"
    assert [c["number"] for c in report["criteria"]] == [11]


def test_config_set_and_get(invoke, config_file):
    result = invoke("config", "set", "truncation.max_level", "4")
    assert result.exit_code == 0, result.output
    assert "max_level = 4" in config_file.read_text(encoding="utf-8")
    result = invoke("config", "get", "truncation.max_level")
    assert result.exit_code == 0, result.output
    assert "4" in result.output


def test_config_rejects_bad_key(invoke):
    result = invoke("config", "set", "truncation", "4")
    assert result.exit_code == 1


def test_version(invoke):
    result = invoke("--version")
    assert result.exit_code == 0
    assert "n2verma" in result.output


def test_singular_reports_uncharged_massive_vector(invoke):
    result = invoke(
        "singular", "--module", "massive", "--h", "1/3", "--t", "7/5", "--l=-1/45",
        "--min-level", "1", "--max-level", "1", "--format", "json",
    )
    assert result.exit_code == 0, result.output
    report = _json(result.output)
    uncharged = [v for v in report["vectors"] if v["bigrade"] == {"charge": 0, "level": 1}]
    assert [(v["kind"], v["condition"], v["verified"]) for v in uncharged] == [("massive", "Massive(0)", True)]
