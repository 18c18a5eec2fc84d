# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from flexmock import flexmock

from khoveq import cli, equivariant
from khoveq.cli import RunConfig, khoveq, run
from khoveq.constants import (
    EXIT_CHECK_FAILED,
    EXIT_EVEN_ORDER,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_RESOURCE_CAP,
)
from khoveq.exceptions import KhovEqException
from khoveq.khovanov import HomologyTable
from khoveq.utils import CheckReport
from tests.constants import (
    ANNULAR_KINK,
    DATA_DIR,
    EDGE_GRAPH,
    MALFORMED,
    TREFOIL_GRADINGS,
    TREFOIL_JONES,
    TREFOIL_SYM,
    TREFOIL_SYM_P2,
    TRIANGLE_GRAPH,
    TWISTED_CURL,
    UNKNOT,
    UNLINK2_P2,
    UNLINK3,
    UNLINK3_EQUIVARIANT_JONES,
)


def invoke(*args, env=None):
    return CliRunner().invoke(khoveq, [str(a) for a in args], env=env)


def test_kh_unknot():
    result = invoke("kh", UNKNOT)
    assert result.exit_code == EXIT_OK
    assert result.output == "H: (0,1):1 (0,-1):1\nV(q) = q+q^-1\n"


def test_kh_framed():
    result = invoke("kh", UNKNOT, "--flavor", "framed")
    assert result.exit_code == EXIT_OK
    assert "<D>(A) = -A^2-A^-2" in result.output


def test_kheq_trefoil():
    result = invoke("kheq", TREFOIL_SYM)
    assert result.exit_code == EXIT_OK
    assert f"V(q) = {TREFOIL_JONES}" in result.output
    assert f"V_G(q) = {TREFOIL_JONES}" in result.output
    assert "Theorem 1: PASS" in result.output


def test_kheq_unlink():
    result = invoke("kheq", UNLINK3)
    assert result.exit_code == EXIT_OK
    assert f"V_G(q) = {UNLINK3_EQUIVARIANT_JONES}" in result.output
    assert "fixed: (0,3):1 (0,1):1 (0,-1):1 (0,-3):1" in result.output


def test_kheq_even_order():
    result = invoke("kheq", TREFOIL_SYM_P2)
    assert result.exit_code == EXIT_EVEN_ORDER
    assert "odd order" in result.output
    result = invoke("kheq", UNLINK2_P2, "--allow-even-p")
    assert result.exit_code == EXIT_OK
    assert "(informational)" in result.output


def test_malformed_input():
    result = invoke("kh", MALFORMED)
    assert result.exit_code == EXIT_PARSE_ERROR
    assert "line 2" in result.output


def test_marker_change_without_split():
    result = invoke("kh", TWISTED_CURL)
    assert result.exit_code == EXIT_PARSE_ERROR
    assert "crossing 1 keeps the number of circles" in result.output


def test_missing_input():
    result = invoke("kh", DATA_DIR / "missing.diag")
    assert result.exit_code == EXIT_PARSE_ERROR


def test_kheq_without_symmetry():
    assert invoke("kheq", UNKNOT).exit_code == EXIT_PARSE_ERROR


def test_resource_cap():
    assert invoke("kh", TREFOIL_SYM, "--cap", "2").exit_code == EXIT_RESOURCE_CAP
    result = invoke("kh", TREFOIL_SYM, env={"KHOVEQ_CAP": "2"})
    assert result.exit_code == EXIT_RESOURCE_CAP
    assert invoke("graph", TRIANGLE_GRAPH, "--cap", "2").exit_code == EXIT_RESOURCE_CAP


def test_kheq_builds_complex_once():
    flexmock(equivariant).should_receive("build_complex").never()
    flexmock(cli).should_call("build_complex").once()
    result = invoke("kheq", TREFOIL_SYM)
    assert result.exit_code == EXIT_OK
    assert "Theorem 1: PASS" in result.output


def test_json_output():
    result = invoke("kheq", TREFOIL_SYM, "--format", "json")
    assert result.exit_code == EXIT_OK
    payload = json.loads(result.output)
    assert payload["command"] == "kheq"
    assert payload["homology"][0] == {"gradings": [0, 1], "dim": 1}
    expected = HomologyTable({key: 1 for key in TREFOIL_GRADINGS})
    assert HomologyTable.from_json(payload["homology"]) == expected
    assert HomologyTable.from_json(payload["equivariant_homology"]) == expected
    assert payload["equivariant_polynomial"] == TREFOIL_JONES
    assert payload["checks"][0]["name"] == "Theorem 1"
    assert payload["checks"][0]["passed"]


@pytest.mark.parametrize("command, path", [("kheq", TREFOIL_SYM), ("grapheq", TRIANGLE_GRAPH)])
def test_jobs_do_not_change_output(command, path):
    assert invoke(command, path).output == invoke(command, path, "--jobs", "4").output


def test_annular():
    result = invoke("annular", ANNULAR_KINK)
    assert result.exit_code == EXIT_OK
    assert result.output == (
        "H: (-2,5,-2):1 (0,1,0):1 (1,-3,0):1 (2,-3,2):1\ndropped terms = 1\n"
    )


def test_graph():
    result = invoke("graph", EDGE_GRAPH)
    assert result.exit_code == EXIT_OK
    assert result.output == "H: (0,2):1 (0,1):1\nchromatic Euler characteristic: PASS\n"


def test_grapheq():
    result = invoke("grapheq", TRIANGLE_GRAPH)
    assert result.exit_code == EXIT_OK
    assert "H_G: " in result.output
    assert "fixed subspace: PASS" in result.output


@pytest.mark.parametrize(
    "path", [UNKNOT, UNLINK3, TREFOIL_SYM, ANNULAR_KINK, EDGE_GRAPH, TRIANGLE_GRAPH]
)
def test_verify(path):
    result = invoke("verify", path)
    assert result.exit_code == EXIT_OK, result.output
    assert "FAIL" not in result.output


def test_verify_failed_check():
    flexmock(cli).should_receive("chromatic_euler_check").and_return(
        CheckReport("chromatic Euler characteristic", ["mocked difference"])
    )
    result = invoke("verify", EDGE_GRAPH)
    assert result.exit_code == EXIT_CHECK_FAILED
    assert "chromatic Euler characteristic: FAIL\n  mocked difference" in result.output


def test_verify_informational_failure_passes():
    result = invoke("verify", UNLINK2_P2, "--allow-even-p")
    assert result.exit_code == EXIT_OK
    assert "transfer: FAIL (informational)" in result.output


def test_run_echo():
    lines = []
    status = run(RunConfig("kh", UNKNOT), echo=lambda *args, **kwargs: lines.extend(args))
    assert status == EXIT_OK
    assert lines == ["H: (0,1):1 (0,-1):1\nV(q) = q+q^-1"]


@pytest.mark.parametrize(
    "kwargs",
    [{"command": "nope"}, {"cap": 0}, {"output_format": "xml"}],
)
def test_invalid_config(kwargs):
    with pytest.raises(KhovEqException):
        RunConfig(**{"command": "kh", "input": Path("x"), **kwargs})
