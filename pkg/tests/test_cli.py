import json

import pytest

from main import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, main
from models.perturb import FINE_STRUCTURE_ALPHA2
from utils.tables import from_json, to_json


def _run_json(capsys, *args):
    code = main(["--format", "json", *args])
    payload = json.loads(capsys.readouterr().out) if code == EXIT_OK else None
    return code, payload


def _column(payload, name):
    index = payload["columns"].index(name)
    return [row[index] for row in payload["rows"]]


def test_ground_state_spectrum(capsys):
    code, payload = _run_json(capsys, "--command", "spectrum", "--n-max", "1")
    assert code == EXIT_OK
    assert payload["columns"] == ["n", "l", "j", "m", "E_fine [Ry]", "dE [Ry]", "E_total [Ry]"]
    assert len(payload["rows"]) == 2
    for energy in _column(payload, "E_total [Ry]"):
        assert energy == pytest.approx(-(1 + FINE_STRUCTURE_ALPHA2 / 4), rel=1e-15)


def test_spectrum_state_count(capsys):
    code, payload = _run_json(capsys, "--command", "spectrum", "--n-min", "2", "--n-max", "3", "--potential", "quadratic")
    assert code == EXIT_OK
    assert len(payload["rows"]) == 2 * 4 + 2 * 9


def test_wall_shift_of_ground_state(capsys):
    code, payload = _run_json(capsys, "--command", "shift", "--n-max", "1", "--potential", "lj", "--d", "10")
    assert code == EXIT_OK
    assert _column(payload, "dE [Ry]") == pytest.approx([-1e-3, -1e-3], rel=1e-12)


def test_displaced_quadratic_branches(capsys):
    code, payload = _run_json(
        capsys, "--command", "shift", "--n-min", "2", "--n-max", "2", "--potential", "dq", "--lambda", "1", "--z0", "1"
    )
    assert code == EXIT_OK
    first = payload["rows"][:2]
    assert [row[3] for row in first] == ["+", "-"]
    assert [row[5] for row in first] == pytest.approx([17.0, 9.0], rel=1e-12)


def test_scan_over_wall_distance(capsys):
    code, payload = _run_json(
        capsys,
        "--command", "scan", "--n-max", "1", "--potential", "lj",
        "--scan-variable", "d", "--scan-start", "10", "--scan-stop", "30", "--scan-step", "10",
    )
    assert code == EXIT_OK
    assert payload["columns"][0] == "d [a0]"
    assert sorted(set(_column(payload, "d [a0]"))) == [10.0, 20.0, 30.0]


def test_regime(capsys):
    code, payload = _run_json(capsys, "--command", "regime")
    assert code == EXIT_OK
    values = {row[0]: row[1] for row in payload["rows"]}
    assert values["d^3"] == pytest.approx(40, rel=0.05)
    assert values["atomic_hydrogen"] is False


def test_verify_passes(capsys):
    code = main(["--command", "verify", "--n-max", "2", "--potential", "dq", "--lambda", "0.5", "--z0", "1.5"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("check,n,j,m,potential")
    assert all(line.endswith("True") for line in lines[1:])


def test_full_suite_passes(capsys):
    assert main(["--command", "verify", "--n-max", "2"]) == EXIT_OK


def test_injected_fault_fails(capsys):
    code = main(["--command", "verify", "--n-max", "2", "--potential", "quadratic", "--inject-fault"])
    assert code == EXIT_VERIFICATION
    assert "False" in capsys.readouterr().out


@pytest.mark.parametrize(
    "args",
    [
        ["--command", "spectrum", "--n-min", "3", "--n-max", "2"],
        ["--n-max", "2"],
        ["--command", "spectrum", "--potential", "morse"],
        ["--command", "shift", "--potential", "lj", "--Z", "2"],
        ["--command", "scan", "--potential", "quadratic"],
    ],
)
def test_usage_errors(args):
    assert main(args) == EXIT_USAGE


def test_config_file_and_override(tmp_path, capsys):
    config = tmp_path / "run.env"
    config.write_text("command=shift\nn_max=3\npotential=quadratic\nlambda=2\nformat=json\n")
    assert main(["--config", str(config), "--n-max", "1"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert {row[0] for row in payload["rows"]} == {1}
    assert _column(payload, "dE [Ry]") == pytest.approx([2.0, 2.0])


def test_output_file(tmp_path):
    out = tmp_path / "spectrum.md"
    assert main(["--command", "spectrum", "--n-max", "1", "--format", "markdown", "--out", str(out)]) == EXIT_OK
    assert out.read_text().startswith("# Fine-structure spectrum")


def test_overflowing_strength_is_a_usage_error(capsys):
    assert main(["--command", "shift", "--potential", "quadratic", "--lambda", "1e308"]) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_full_suite_through_n3(capsys):
    assert main(["--command", "verify", "--n-max", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) > 1 and all(line.endswith("True") for line in lines[1:])


def test_wall_scan_follows_inverse_cube(capsys):
    code, payload = _run_json(
        capsys,
        "--command", "scan", "--n-max", "1", "--potential", "lj",
        "--scan-variable", "d", "--scan-start", "5", "--scan-stop", "40", "--scan-step", "5",
    )
    assert code == EXIT_OK
    for d, shift in zip(_column(payload, "d [a0]"), _column(payload, "dE [Ry]")):
        assert shift == pytest.approx(-1 / d**3, rel=1e-12), f"d={d}"


def test_strength_scan_is_linear(capsys):
    code, payload = _run_json(
        capsys,
        "--command", "scan", "--n-max", "2", "--potential", "quadratic",
        "--scan-variable", "lambda", "--scan-start", "1", "--scan-stop", "3", "--scan-step", "1",
    )
    assert code == EXIT_OK
    ratios = {}
    for row in payload["rows"]:
        strength, state, shift = row[0], (*row[1:4], row[5]), row[6]
        ratios.setdefault(state, []).append(shift / strength)
    assert len(ratios) == 2 + 8
    for state, values in ratios.items():
        assert values == pytest.approx([values[0]] * 3, rel=1e-14), f"{state}"


@pytest.mark.parametrize("fmt", ["csv", "json", "markdown"])
def test_output_is_reproducible(capsys, fmt):
    args = ["--command", "spectrum", "--n-max", "3", "--potential", "dq", "--lambda", "0.3", "--z0", "0.7", "--format", fmt]
    assert main(args) == EXIT_OK
    first = capsys.readouterr().out
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out == first


def test_spectrum_json_reads_back(capsys):
    assert main(["--command", "spectrum", "--n-max", "2", "--potential", "linear", "--lambda", "0.1", "--format", "json"]) == EXIT_OK
    text = capsys.readouterr().out
    table = from_json(text)
    assert table.values.tolist() == json.loads(text)["rows"]
    assert to_json(table) == text


def test_verify_json_reads_back(capsys):
    assert main(["--command", "verify", "--n-max", "2", "--potential", "quadratic", "--format", "json"]) == EXIT_OK
    text = capsys.readouterr().out
    payload = json.loads(text)
    table = from_json(text)
    assert list(table.columns) == payload["columns"]
    assert len(table) == len(payload["rows"])
    assert table["passed"].tolist() == [True] * len(table)


def test_offset_scan_of_unpaired_states(capsys):
    code, payload = _run_json(
        capsys,
        "--command", "scan", "--n-min", "2", "--n-max", "2", "--potential", "dq", "--lambda", "0.5",
        "--scan-variable", "z0", "--scan-start", "0", "--scan-stop", "2", "--scan-step", "0.5",
    )
    assert code == EXIT_OK
    residuals = {}
    for row in payload["rows"]:
        z0, j, m, shift = row[0], row[2], row[3], row[6]
        if j == "3/2":
            residuals.setdefault(m, []).append(shift - 0.5 * z0**2)
    assert set(residuals) == {"-3/2", "-1/2", "1/2", "3/2"}
    for m, values in residuals.items():
        assert values == pytest.approx([values[0]] * 5, rel=1e-12), f"m={m}"
