import csv
import json
import logging
from pathlib import Path

import pytest

from pyfixedpoint.cli import ProblemSpec, main, setup_logging
from pyfixedpoint.serializer import SchemaError, get_serializer

QUADRANT_COMBO = {
    "type": "combo",
    "weights": [0.5, 0.5],
    "operators": [
        {"type": "project", "set": {"type": "halfspace", "a": [1, 0], "b": 0}},
        {"type": "project", "set": {"type": "halfspace", "a": [0, 1], "b": 0}},
    ],
}


def _problem(**changes) -> dict:
    problem = {
        "dimension": 2,
        "method": "halpern",
        "sequence": {"kind": "constant", "operator": QUADRANT_COMBO},
        "alpha": {"family": "power", "c": 1, "p": 1},
        "u": [1, 1],
        "x1": [1, 1],
        "stop": {"max_iters": 1000000, "target_tol": 1e-3, "stride": 100},
    }
    problem.update(changes)
    return problem


def _write(path: Path, obj) -> str:
    path.write_text(json.dumps(obj, indent=2))
    return str(path)


@pytest.fixture(autouse=True)
def _restore_root_level():
    level = logging.getLogger().level
    yield
    logging.getLogger().setLevel(level)


def test_run_two_halfspaces(tmp_path: Path):
    spec = _write(tmp_path / "problem.json", _problem())
    out = tmp_path / "out"

    assert main(["run", "--spec", spec, "--out", str(out)]) == 0

    summary = json.loads((out / "summary.json").read_text())
    assert summary["stop_reason"] == "target_met"
    assert summary["final_dist"] <= 1e-2

    oracle = json.loads((out / "oracle.json").read_text())
    assert oracle["method"] == "active_set_enumeration"
    assert oracle["value"] == pytest.approx([0, 0], abs=1e-9)

    with open(out / "trace.csv", newline="") as file:
        rows = list(csv.DictReader(file))

    assert list(rows[0]) == ["n", "residual_S", "residual_T", "dist_to_ref"]
    assert len(rows) == summary["iters"]
    assert float(rows[-1]["dist_to_ref"]) == summary["final_dist"]


def test_run_is_deterministic(tmp_path: Path):
    problem = _problem(
        sequence={
            "kind": "cfp",
            "operators": QUADRANT_COMBO["operators"],
            "gamma": {"family": "constant", "v": 0.5},
        },
        domain={"type": "box", "lo": [-4, -4], "hi": [4, 4]},
        seed=7,
    )
    spec = _write(tmp_path / "problem.json", problem)

    for out in ("a", "b"):
        assert main(["run", "--spec", spec, "--out", str(tmp_path / out)]) == 0

    first = (tmp_path / "a" / "trace.csv").read_bytes()
    assert (tmp_path / "b" / "trace.csv").read_bytes() == first


@pytest.mark.parametrize(
    "changes",
    [
        {},
        {
            "method": "viscosity",
            "u": None,
            "contraction": {"family": "scaled", "theta": 0.5, "center": [2, 3]},
            "domain": {"type": "box", "lo": [-4, -4], "hi": [4, 4]},
        },
    ],
)
def test_problem_round_trip(changes: dict):
    s = get_serializer(ProblemSpec)
    text = json.dumps({k: v for k, v in _problem(**changes).items() if v is not None})
    first = s.dumps(s.deserialize(text))

    assert s.dumps(s.deserialize(first)) == first


def test_run_identity_converges_to_anchor(tmp_path: Path):
    problem = _problem(
        sequence={"kind": "constant", "operator": {"type": "identity"}}, x1=[0, 0]
    )
    spec = _write(tmp_path / "problem.json", problem)

    assert main(["run", "--spec", spec, "--out", str(tmp_path)]) == 0

    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["final_iterate"] == pytest.approx([1, 1], abs=1e-3)


def test_run_budget_exhausted(tmp_path: Path):
    spec = _write(tmp_path / "problem.json", _problem())

    assert main(["run", "--spec", spec, "--out", str(tmp_path), "--max-iters", "10"]) == 2

    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["stop_reason"] == "max_iters"
    assert summary["iters"] == 10


def test_run_viscosity(tmp_path: Path):
    problem = _problem(
        dimension=1,
        method="viscosity",
        sequence={
            "kind": "constant",
            "operator": {"type": "project", "set": {"type": "halfspace", "a": [1], "b": 0}},
        },
        u=None,
        x1=[3],
        contraction={"family": "scaled", "theta": 0.5, "center": [0]},
        stop={"target_tol": 1e-8},
    )
    spec = _write(tmp_path / "problem.json", problem)

    assert main(["run", "--spec", spec, "--out", str(tmp_path)]) == 0

    oracle = json.loads((tmp_path / "oracle.json").read_text())
    assert oracle["method"] == "contraction_iteration"


def test_summable_alpha_is_rejected(tmp_path: Path, caplog):
    spec = _write(
        tmp_path / "problem.json",
        _problem(alpha={"family": "power", "c": 1, "p": 2}),
    )
    text = Path(spec).read_text().splitlines()
    line = next(i for i, s in enumerate(text, start=1) if '"alpha"' in s)

    assert main(["run", "--spec", spec, "--out", str(tmp_path)]) == 1
    assert "the sum of the sequence must diverge" in caplog.text
    assert f"line {line}: alpha: " in caplog.text
    assert not (tmp_path / "trace.csv").exists()


@pytest.mark.parametrize(
    "changes,reason",
    [
        ({"u": None}, "missing required key 'u' for the halpern method"),
        ({"x1": [1, 1, 1]}, "x1: Dimension mismatch: 2, 3."),
        ({"alpha": {"family": "exponential"}}, "alpha: unknown family 'exponential'"),
        ({"seed": -1}, "seed: "),
        (
            {
                "sequence": {
                    "kind": "cfp",
                    "operators": [QUADRANT_COMBO],
                    "gamma": {"family": "constant", "v": 1.5},
                }
            },
            "sequence.gamma: gamma schedule",
        ),
    ],
)
def test_problem_schema_errors(changes: dict, reason: str):
    text = json.dumps({k: v for k, v in _problem(**changes).items() if v is not None})

    with pytest.raises(SchemaError) as e:
        get_serializer(ProblemSpec).deserialize(text)

    assert reason in str(e.value)
    assert str(e.value).startswith("line 1")


def test_malformed_spec(tmp_path: Path, caplog):
    spec = tmp_path / "problem.json"
    spec.write_text('{"dimension": 2,\n "x1": [1, }')

    assert main(["run", "--spec", str(spec)]) == 1
    assert "line 2: malformed JSON" in caplog.text


def test_missing_spec_file(tmp_path: Path):
    assert main(["run", "--spec", str(tmp_path / "absent.json")]) == 1


def test_oracle_command(tmp_path: Path, capsys):
    spec = _write(tmp_path / "problem.json", _problem(u=[2, -1]))

    assert main(["oracle", "--spec", spec, "--out", str(tmp_path)]) == 0

    printed = json.loads(capsys.readouterr().out)
    assert printed["value"] == pytest.approx([0, -1], abs=1e-9)
    assert (tmp_path / "oracle.json").exists()


def test_verify_command(tmp_path: Path, capsys):
    assert main(["verify", "lemmas", "--out", str(tmp_path)]) == 0

    reports = json.loads((tmp_path / "verify-lemmas.json").read_text())
    assert all(r["passed"] != r["expected_to_fail"] for r in reports)
    assert {r["property"] for r in reports} >= {"mainge_tau", "scalar_recursion_convergence"}
    assert "lemmas: " in capsys.readouterr().out


def test_verify_unknown_suite(caplog):
    assert main(["verify", "everything"]) == 1
    assert "Unknown suite 'everything'" in caplog.text


def _schedules() -> list:
    return [
        {"family": "power", "c": 1, "p": 1},
        {"family": "power", "c": 1, "p": 0.75},
        {"family": "harmonic_shifted", "c": 2},
    ]


def test_compare(tmp_path: Path):
    spec = _write(tmp_path / "problem.json", _problem())
    schedules = _write(tmp_path / "schedules.json", _schedules())
    args = ["compare", "--spec", spec, "--schedules", schedules]

    assert main([*args, "--out", str(tmp_path / "a")]) == 0
    assert main([*args, "--out", str(tmp_path / "b")]) == 0

    text = (tmp_path / "a" / "compare.csv").read_text()
    rows = list(csv.reader(text.splitlines()))

    assert rows[0] == ["schedule", "n_at_0.1", "n_at_0.01", "n_at_0.001"]
    assert len(rows) == 4
    assert rows[1][0] == "power(c=1.0, p=1.0, offset=0.0)"

    for row in rows[1:]:
        levels = [int(n) for n in row[1:]]
        assert levels == sorted(levels)

    # sweeps are deterministic
    assert (tmp_path / "b" / "compare.csv").read_text() == text


def test_compare_errors(tmp_path: Path):
    spec = _write(tmp_path / "problem.json", _problem())
    empty = _write(tmp_path / "empty.json", [])
    summable = _write(
        tmp_path / "summable.json", [*_schedules(), {"family": "power", "p": 2}]
    )

    assert main(["compare", "--spec", spec, "--schedules", empty]) == 1
    assert main(["compare", "--spec", spec, "--schedules", summable]) == 1


def test_setup_logging(monkeypatch, caplog):
    monkeypatch.setenv("FIXEDPOINT_LOG", "error")
    setup_logging()
    assert logging.getLogger().level == logging.ERROR

    monkeypatch.setenv("FIXEDPOINT_LOG", "10")
    setup_logging()
    assert logging.getLogger().level == logging.DEBUG

    monkeypatch.setenv("FIXEDPOINT_LOG", "loud")
    setup_logging()
    assert logging.getLogger().level == logging.WARNING
    assert "Unknown log level 'LOUD'" in caplog.text
