"""Command-line surface: outputs, exit codes, determinism."""

import math

import pytest

from calmir import parse, preset_scenario, serialize
from calmir.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def fig1a_file(tmp_path):
    p = tmp_path / "fig1a.txt"
    p.write_text(serialize(preset_scenario("fig1a")))
    return p


@pytest.fixture
def ideal_file(tmp_path):
    p = tmp_path / "ideal.txt"
    p.write_text(
        "[material pec]\nideal = electric\n"
        "[mirror 1]\nsubstrate = pec\n[mirror 2]\nsubstrate = pec\n"
        "[run]\nT = 0\nd = 1 1 1 lin\n"
    )
    return p


def parse_kv(out):
    return dict(line.split("=", 1) for line in out.strip().splitlines())


def test_force_ideal_casimir(capsys, ideal_file):
    code, out, _ = run(capsys, "force", str(ideal_file), "-d", "1.0")
    assert code == 0
    kv = parse_kv(out)
    assert float(kv["pressure_norm"]) == pytest.approx(math.pi**2 / 240.0, rel=1e-6)
    assert float(kv["bound_hi"]) == pytest.approx(math.pi**2 / 240.0, rel=1e-12)
    assert int(kv["n_terms_used"]) > 0


def test_force_preset_attractive(capsys, fig1a_file):
    code, out, _ = run(capsys, "force", str(fig1a_file), "-d", str(math.pi))
    kv = parse_kv(out)
    assert code == 0
    assert float(kv["pressure_norm"]) > 0.0
    assert float(kv["bound_lo"]) <= float(kv["pressure_norm"]) <= float(kv["bound_hi"])


def test_force_quiet_and_si(capsys, ideal_file):
    code, out, _ = run(capsys, "force", str(ideal_file), "-d", "1.0", "--quiet")
    assert code == 0
    assert len(out.strip().splitlines()) == 1
    code, out, _ = run(
        capsys, "force", str(ideal_file), "-d", "1.0", "--omega-rad-s", "1e15"
    )
    kv = parse_kv(out)
    # F = pi^2 hbar c/(240 d_SI^4) at d_SI = c/omega
    d_si = 299792458.0 / 1e15
    want = math.pi**2 * 1.054571817e-34 * 299792458.0 / (240.0 * d_si**4)
    assert float(kv["F_SI_Pa"]) == pytest.approx(want, rel=1e-6)


def test_vacuum_mirror_zero(capsys, tmp_path):
    p = tmp_path / "vac.txt"
    p.write_text(
        "[material v]\nideal = vacuum\n[material m]\neps_strength = 1\n"
        "[mirror 1]\nsubstrate = v\n[mirror 2]\nsubstrate = m\n"
    )
    code, out, _ = run(capsys, "force", str(p), "-d", "1.0", "--quiet")
    assert code == 0
    assert float(out) == 0.0


def test_sweep_csv_schema(capsys, tmp_path, fig1a_file):
    out_csv = tmp_path / "out.csv"
    scn = parse(fig1a_file.read_text())
    small = serialize(
        type(scn)(
            materials=scn.materials,
            mirror1=scn.mirror1,
            mirror2=scn.mirror2,
            gap=scn.gap,
            temperature=0.0,
            sweep=type(scn.sweep)(0.5, 5.0, 4, "log"),
        )
    )
    src = tmp_path / "small.txt"
    src.write_text(small)
    code, _, _ = run(capsys, "sweep", str(src), "-o", str(out_csv), "--tol", "1e-6")
    assert code == 0
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == (
        "d_over_c_by_omega,d_over_lambda,pressure_norm,te_part,tm_part,"
        "bound_lo,bound_hi,c3_over_d3,est_error"
    )
    assert len(lines) == 5
    for row in lines[1:]:
        cells = row.split(",")
        assert len(cells) == 9
        d, dl, p, te, tm, lo, hi, c3, err = (float(c) for c in cells)
        assert dl == pytest.approx(d / (2.0 * math.pi))
        assert p == pytest.approx(te + tm, abs=1e-14)
        assert lo <= p <= hi
        assert p <= c3 + 1e-12  # homogeneous mirrors: short-distance cap


def test_sweep_si_column(capsys, tmp_path):
    src = tmp_path / "si.txt"
    src.write_text(
        "[material m]\neps_strength = 1\n"
        "[mirror 1]\nsubstrate = m\n[mirror 2]\nsubstrate = m\n"
        "[run]\nT = 0\nd = 1 2 2 log\n"
    )
    out_csv = tmp_path / "si.csv"
    code, _, _ = run(
        capsys, "sweep", str(src), "-o", str(out_csv),
        "--tol", "1e-6", "--omega-rad-s", "1e15", "--quiet",
    )
    assert code == 0
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0].endswith(",F_SI_Pa")
    first = lines[1].split(",")
    p_norm, p_si = float(first[2]), float(first[-1])
    d_si = 299792458.0 / 1e15  # one c/Omega in metres
    assert p_si == pytest.approx(p_norm * 1.054571817e-34 * 1e15 / d_si**3, rel=1e-12)


def test_sweep_temperature_family(capsys, tmp_path):
    src = tmp_path / "fam.txt"
    src.write_text(
        "[material m]\neps_strength = 1\n"
        "[mirror 1]\nsubstrate = m\n[mirror 2]\nsubstrate = m\n"
        "[run]\nT = 0.5 0.1\nd = 1 2 2 log\n"
    )
    out_csv = tmp_path / "fam.csv"
    code, _, _ = run(capsys, "sweep", str(src), "-o", str(out_csv), "--tol", "1e-6", "--quiet")
    assert code == 0
    assert (tmp_path / "fam_tau0.5.csv").exists()
    assert (tmp_path / "fam_tau0.1.csv").exists()


def test_asympt_outputs(capsys, fig1a_file, ideal_file):
    code, out, _ = run(capsys, "asympt", str(fig1a_file), "-d", "0.5", "--tau", "0.1")
    kv = parse_kv(out)
    assert code == 0
    assert float(kv["c3_norm"]) > 0.0
    assert float(kv["lambda_T"]) == pytest.approx(10.0)
    assert kv["regime"] == "short"
    code, out, _ = run(capsys, "asympt", str(ideal_file), "-d", "0.5")
    assert code == 0
    assert "unavailable" in parse_kv(out)["c3_norm"]


def test_preset_roundtrip(capsys, tmp_path):
    for name in ("fig1a", "fig1d", "fig3d"):
        out = tmp_path / f"{name}.txt"
        code, _, _ = run(capsys, "preset", name, "-o", str(out))
        assert code == 0
        assert parse(out.read_text()) == preset_scenario(name)


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "force", str(tmp_path / "missing.txt"), "-d", "1")
    assert code == 2 and "scenario error" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("[material a]\neps_strength = oops\n")
    code, _, err = run(capsys, "force", str(bad), "-d", "1")
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "bogus")
    assert code == 1
    good = tmp_path / "good.txt"
    good.write_text(
        "[material m]\neps_strength = 1\neps_resonance = 0\n"
        "[mirror 1]\nsubstrate = m\n[mirror 2]\nsubstrate = m\n[run]\nT = 0.001\nd = 1 1 1 lin\n"
    )
    code, _, err = run(capsys, "force", str(good), "-d", "0.05", "--max-matsubara", "10")
    assert code == 3 and "error" in err


def test_sweep_deterministic_across_workers(capsys, tmp_path):
    src = tmp_path / "det.txt"
    src.write_text(
        "[material diel]\neps_strength = 3\neps_resonance = 1\n"
        "[material mag]\neps_strength = 0.1\neps_resonance = 1\n"
        "mu_strength = 0.3\nmu_resonance = 1\n"
        "[mirror 1]\nsubstrate = diel\n[mirror 2]\nsubstrate = mag\n"
        "[run]\nT = 0\nd = 0.2 20 6 log\n"
    )
    outputs = []
    for workers in (1, 4):
        out_csv = tmp_path / f"w{workers}.csv"
        code, _, _ = run(
            capsys, "sweep", str(src), "-o", str(out_csv), "--workers", str(workers),
            "--tol", "1e-6", "--quiet",
        )
        assert code == 0
        outputs.append(out_csv.read_bytes())
    assert outputs[0] == outputs[1]
    # this dielectric/magnetic pairing shows a repulsive range at T = 0
    pressures = [float(r.split(",")[2]) for r in outputs[0].decode().splitlines()[1:]]
    assert any(p < 0.0 for p in pressures) and any(p > 0.0 for p in pressures)
