import json
import math

import numpy as np
import pytest

from micz import __version__
from micz.cli import main, read_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_flat_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--geometry", "flat", "--s", "0", "--n-max", "2")
    assert code == 0
    _, cols, rows = read_table(out)
    energies = sorted({r[cols.index("energy")] for r in rows})
    assert energies == pytest.approx([-0.5, -0.125], abs=1e-15)
    assert "kappa" in cols and len(rows) == 5


def test_sphere_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--geometry", "sphere", "--radius", "1", "--n-max", "2")
    assert code == 0
    _, cols, rows = read_table(out)
    energies = sorted({r[cols.index("energy")] for r in rows})
    assert energies == pytest.approx([-0.5, 1.375], abs=1e-15)


def test_hyperboloid_spectrum_reports_both_criteria(capsys):
    code, out, _ = run(capsys, "spectrum", "--geometry", "hyperboloid", "--radius", "10",
                       "--n-max", "10")
    assert code == 0
    _, cols, rows = read_table(out)
    c = {name: i for i, name in enumerate(cols)}
    j0 = [r for r in rows if r[c["j"]] == 0.0 and r[c["m"]] == 0.0]
    assert sum(r[c["bound"]] for r in j0) == 3
    assert sum(r[c["bound_bracket"]] for r in j0) == 2
    for r in rows:
        assert (r[c["energy"]] is None) == (not r[c["bound"]])


def test_rows_sorted_by_energy(capsys):
    _, out, _ = run(capsys, "spectrum", "--geometry", "sphere", "--radius", "3", "--s", "1/2",
                    "--lambda1", "0.4", "--n-max", "7/2")
    _, cols, rows = read_table(out)
    e = [r[cols.index("energy")] for r in rows]
    assert e == sorted(e)


@pytest.mark.parametrize("s", ["1/2", "0.5"])
def test_half_integer_spellings(capsys, s):
    _, out, _ = run(capsys, "spectrum", "--geometry", "flat", "--s", s, "--n-max", "3/2")
    cfg, _, rows = read_table(out)
    assert cfg["s"] == "1/2" and rows


def test_flat_ground_state_wavefunction(capsys):
    code, out, _ = run(capsys, "wavefunction", "--geometry", "flat", "--n", "1", "--j", "0",
                       "--m", "0", "--points", "0.5,1,2")
    assert code == 0
    _, cols, rows = read_table(out)
    r = np.array([row[0] for row in rows])
    R = np.array([row[1] for row in rows])
    np.testing.assert_allclose(R, 2 * np.exp(-r), rtol=1e-14)
    # Z_00 = 1/sqrt(4 pi)
    np.testing.assert_allclose([row[2] for row in rows], 1 / math.sqrt(4 * math.pi), rtol=1e-14)
    assert cols == ["r", "R", "Z_re", "Z_im", "psi_re", "psi_im"]


def test_sphere_ground_state_decays(capsys):
    code, out, _ = run(capsys, "wavefunction", "--geometry", "sphere", "--radius", "4", "--n", "1",
                       "--j", "0", "--m", "0", "--grid", "0,3,31")
    assert code == 0
    _, _, rows = read_table(out)
    R = np.array([row[1] for row in rows])
    assert np.all(np.diff(R) < 0)
    chi = np.array([row[0] for row in rows])
    # pure exponential C e^{-sigma chi}: constant log-slope -sigma = -4
    np.testing.assert_allclose(np.diff(np.log(R)) / np.diff(chi), -4.0, rtol=1e-12)


def test_header_embeds_config_and_notation(capsys):
    _, out, _ = run(capsys, "wavefunction", "--geometry", "hyperboloid", "--radius", "40",
                    "--s", "1", "--lambda2", "0.3", "--n", "3", "--j", "1", "--m", "1",
                    "--grid", "0,2,5")
    lines = out.splitlines()
    assert lines[0] == f"# micz {__version__}"
    cfg = json.loads(lines[1][len("# config: "):])
    assert cfg["radius"] == 40.0 and cfg["lambda2"] == 0.3 and cfg["n"] == "3"
    assert any(line.startswith("# notation: ") for line in lines)
    assert any(line.startswith("# energy: ") for line in lines)


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_round_trip_is_lossless(capsys, fmt):
    argv = ["wavefunction", "--geometry", "sphere", "--radius", "2.5", "--s", "1/2",
            "--lambda1", "0.75", "--n", "7/2", "--j", "3/2", "--m", "1/2",
            "--grid", "0.1,3.0,17", "--theta", "0.7", "--phi", "0.3", "--format", fmt]
    _, out, _ = run(capsys, *argv)
    _, _, rows = read_table(out)
    from micz import sphere
    from micz.params import Geometry, PhysParams, QuantumNumbers

    p = PhysParams(s="1/2", lambda1=0.75, geometry=Geometry.SPHERE, r_curv=2.5)
    st = sphere.SphereBoundState.build(p, QuantumNumbers.of("7/2", "3/2", "1/2"))
    chi = np.linspace(0.1, 3.0, 17)
    exact = np.atleast_1d(sphere.quasi_radial_eval(st, chi))
    assert [row[0] for row in rows] == chi.tolist()
    assert [row[1] for row in rows] == exact.tolist()


def test_json_structure(capsys):
    _, out, _ = run(capsys, "spectrum", "--geometry", "flat", "--n-max", "2", "--format", "json")
    doc = json.loads(out)
    assert set(doc) >= {"config", "columns", "rows"}
    assert doc["config"]["tool"] == "micz" and doc["config"]["version"] == __version__
    assert all(len(r) == len(doc["columns"]) for r in doc["rows"])


def test_output_is_deterministic(capsys, tmp_path):
    argv = ["spectrum", "--geometry", "hyperboloid", "--radius", "25", "--s", "1/2",
            "--lambda1", "0.2", "--n-max", "5"]
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(argv + ["--output", str(first)]) == 0
    assert main(argv + ["--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_invalid_state_exit_two(capsys):
    code, out, err = run(capsys, "wavefunction", "--geometry", "flat", "--n", "1", "--j", "1",
                         "--m", "0", "--points", "1")
    assert code == 2 and out == ""
    payload = json.loads(err)
    assert payload["exit_code"] == 2 and payload["violations"]


def test_unbound_hyperboloid_state_exit_two(capsys):
    code, _, err = run(capsys, "wavefunction", "--geometry", "hyperboloid", "--radius", "2",
                       "--n", "3", "--j", "0", "--m", "0", "--points", "1")
    assert code == 2
    assert json.loads(err)["error"] == "no-bound-state"


def test_numeric_instability_exit_three(capsys, monkeypatch):
    from micz import sphere

    def unstable(state, chi, representation="standard"):
        raise sphere.NumericInstabilityError("imaginary residue too large", condition=1e20)

    monkeypatch.setattr(sphere, "quasi_radial_eval", unstable)
    code, out, err = run(capsys, "wavefunction", "--geometry", "sphere", "--n", "2", "--j", "0",
                         "--m", "0", "--points", "1")
    assert code == 3 and out == ""
    assert json.loads(err)["error"] == "numeric-instability"


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["spectrum", "--geometry", "flat", "--n-max", "2", "--bogus", "1"])
    assert info.value.code == 2


def test_verify_identities_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "identities")
    assert code == 0
    _, cols, rows = read_table(out)
    assert len(rows) == 3 and all(r[cols.index("passed")] for r in rows)
    assert all("100 instances" in r[cols.index("check")] for r in rows)


def test_verify_failure_exit_one(capsys, monkeypatch):
    monkeypatch.setenv("MICZ_TOL_OVERRIDE", "1e-30")
    code, _, _ = run(capsys, "verify", "--suite", "reductions")
    assert code == 1


def test_limits_command(capsys):
    code, out, _ = run(capsys, "limits", "--geometry", "sphere", "--s", "1/2", "--lambda1", "0.3",
                       "--n", "5/2", "--j", "1/2", "--m", "1/2")
    assert code == 0
    _, cols, rows = read_table(out)
    ratios = [r[cols.index("ratio")] for r in rows[1:]]
    assert ratios == pytest.approx([4.0] * 3, abs=0.2)


def test_bound_counts_command(capsys):
    code, out, _ = run(capsys, "bound-counts", "--ratios", "10")
    assert code == 0
    _, cols, rows = read_table(out)
    assert all(r[cols.index("oracle_agrees")] for r in rows)
    assert not all(r[cols.index("bracket_agrees")] for r in rows)
