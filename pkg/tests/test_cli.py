"""End-to-end command line behavior, exit codes, and file outputs."""

import csv
import json

import numpy as np
import pytest

from gssc import FourierFn, Real, canonical_complex, load_chain, rmse_ratio
from gssc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_homology_all_degrees_on_one_line(capsys):
    code, out, err = run(capsys, "homology", "rp2", "--all")
    assert code == 0
    assert out.strip() == "H_0 = Z, H_1 = Z/2, H_2 = 0"
    assert err == ""


def test_homology_single_degree(capsys):
    code, out, _ = run(capsys, "homology", "cycle(3)", "-k", "1")
    assert code == 0
    assert out.strip() == "H_1 = Z"
    code, out, _ = run(capsys, "homology", "torus")
    assert code == 0
    assert out.strip() == "H_0 = Z, H_1 = Z^2, H_2 = Z"


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "homology", "no_such_file.scx")
    assert code == 2
    assert "gssc: error:" in err


def test_unknown_complex_name_exits_2(capsys):
    code, _, err = run(capsys, "homology", "klein_bottle")
    assert code == 2
    assert "cannot interpret" in err


def test_decompose_real_chain(tmp_path, capsys):
    signal = tmp_path / "x.csv"
    signal.write_text("cell,value\n0,1.0\n1,-0.5\n2,2.0\n3,0.25\n")
    out_dir = tmp_path / "parts"
    code, out, _ = run(capsys, "--out", str(out_dir), "decompose", "cycle(4)",
                       str(signal), "-k", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["model"] == "fundamental"
    assert payload["objective"] == pytest.approx(1.875)
    rep = canonical_complex("cycle(4)")
    x0 = load_chain(out_dir / "x0.csv", rep, 1, Real())
    x1 = load_chain(out_dir / "x1.csv", rep, 1, Real())
    x_neg1 = load_chain(out_dir / "x_neg1.csv", rep, 1, Real())
    total = (np.asarray(x0.values, dtype=float)
             + np.asarray(x1.values, dtype=float)
             + np.asarray(x_neg1.values, dtype=float))
    assert np.allclose(total, [1.0, -0.5, 2.0, 0.25], atol=1e-10)


def test_decompose_accepts_flags_after_the_subcommand(tmp_path, capsys):
    signal = tmp_path / "x.csv"
    signal.write_text("cell,value\n0,1.0\n1,-0.5\n2,2.0\n3,0.25\n")
    out_dir = tmp_path / "parts"
    code, out, _ = run(capsys, "decompose", "cycle(4)", str(signal),
                       "-k", "1", "--out", str(out_dir))
    assert code == 0
    assert json.loads(out)["objective"] == pytest.approx(1.875)


def test_decompose_smooth_model(tmp_path, capsys):
    signal = tmp_path / "x.csv"
    signal.write_text("cell,value\n0,1.0\n1,0.0\n2,0.0\n")
    code, out, _ = run(capsys, "--out", str(tmp_path / "p"), "decompose",
                       "filled_triangle", str(signal), "-k", "1",
                       "--model", "smooth", "--eta", "2.0")
    assert code == 0
    assert json.loads(out)["model"] == "smooth"


def test_decompose_mod2_objective(tmp_path, capsys):
    signal = tmp_path / "x.csv"
    signal.write_text("cell,value\n0,1\n1,1\n2,0\n")
    code, out, _ = run(capsys, "--out", str(tmp_path / "p"), "decompose",
                       "rp2", str(signal), "-k", "1", "--system", "mod2",
                       "-p", "1")
    assert code == 0
    assert json.loads(out)["objective"] == pytest.approx(1.0)


def test_decompose_mod2_infeasible_exits_4(tmp_path, capsys):
    signal = tmp_path / "x.csv"
    signal.write_text("cell,value\n0,1\n1,0\n2,0\n")
    code, _, err = run(capsys, "--out", str(tmp_path / "p"), "decompose",
                       "rp2", str(signal), "-k", "1", "--system", "mod2")
    assert code == 4
    assert "gssc: numerical failure:" in err


def test_decompose_integer_exits_3(tmp_path, capsys):
    signal = tmp_path / "x.csv"
    signal.write_text("cell,value\n0,1\n1,-1\n2,1\n")
    code, _, err = run(capsys, "--out", str(tmp_path / "p"), "decompose",
                       "cycle(3)", str(signal), "-k", "1",
                       "--system", "integer")
    assert code == 3
    assert "gssc: unsupported:" in err


def test_spectra_to_csv(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    vecs = tmp_path / "vecs.csv"
    code, _, _ = run(capsys, "--out", str(out), "spectra", "rp2", "-k", "1",
                     "--vectors", str(vecs))
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["index", "eigenvalue"]
    eigs = [float(r[1]) for r in rows[1:]]
    assert eigs == pytest.approx([2.0, 4.0, 4.0])
    assert np.loadtxt(vecs, delimiter=",").shape == (3, 3)


def test_spectra_defaults_to_stdout(capsys):
    code, out, _ = run(capsys, "spectra", "path(2)", "-k", "0")
    assert code == 0
    assert out.splitlines()[0] == "index,eigenvalue"


def test_synth_sample_reconstruct_pipeline(tmp_path, capsys):
    signal = tmp_path / "f.csv"
    samples = tmp_path / "s.csv"
    estimate = tmp_path / "est.csv"

    code, out, _ = run(capsys, "--seed", "4", "--out", str(signal), "synth",
                       "cycle(6)", "--n-irr", "6", "--n-sol", "6",
                       "--time-order", "2")
    assert code == 0 and "6 edges" in out

    code, out, _ = run(capsys, "--seed", "5", "--out", str(samples), "sample",
                       "cycle(6)", str(signal), "-M", "30", "--sigma", "0.0",
                       "--time-order", "2")
    assert code == 0 and "30 samples" in out

    code, out, _ = run(capsys, "--out", str(estimate), "reconstruct",
                       "cycle(6)", str(samples), "--time-order", "2",
                       "--eta", "1e6", "--n-irr", "6", "--n-sol", "6")
    assert code == 0
    assert json.loads(out)["model"] == "reconstruct"

    rep = canonical_complex("cycle(6)")
    truth = load_chain(signal, rep, 1, FourierFn(2))
    est = load_chain(estimate, rep, 1, FourierFn(2))
    assert rmse_ratio(est, truth) < 1e-6


def test_synth_requires_an_output_path(capsys):
    code, _, err = run(capsys, "synth", "cycle(3)")
    assert code == 2
    assert "--out is required" in err


def test_experiment_subcommand_runs_a_config(tmp_path, capsys):
    cfg = tmp_path / "tiny.cfg"
    cfg.write_text(
        "complex = random(8, 0.6, 0.7, 2)\n"
        "methods = gssc, krr\n"
        "sweep = noise\n"
        "noise_levels = 0.01\n"
        "samples_per_edge = 8\n"
        "trials = 2\n"
        "time_order = 2\n"
        "n_irr = 6\n"
        "n_sol = 6\n"
        "sub_size = 3\n"
        "eta = 5\n")
    out_dir = tmp_path / "results"
    code, out, _ = run(capsys, "--out", str(out_dir), "--jobs", "2",
                       "experiment", str(cfg))
    assert code == 0
    for name in ("results.csv", "aggregate.csv", "timings.csv"):
        assert (out_dir / name).exists()


def test_experiment_unknown_method_exits_3(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("methods = splines\n")
    code, _, err = run(capsys, "--out", str(tmp_path / "r"), "experiment",
                       str(cfg))
    assert code == 3
    assert "unknown method" in err


def test_complex_gen_round_trips_both_formats(tmp_path, capsys):
    scx = tmp_path / "c.scx"
    code, out, _ = run(capsys, "--out", str(scx), "complex", "gen",
                       "random(7, 0.5, 0.5, 1)")
    assert code == 0 and "wrote" in out
    code, out, _ = run(capsys, "homology", str(scx))
    assert code == 0

    dcx = tmp_path / "c.dcx"
    code, out, _ = run(capsys, "--out", str(dcx), "complex", "gen", "rp2")
    assert code == 0
    code, out, _ = run(capsys, "homology", str(dcx), "--all")
    assert code == 0
    assert out.strip() == "H_0 = Z, H_1 = Z/2, H_2 = 0"


def test_complex_gen_without_out_prints_dims(capsys):
    code, out, _ = run(capsys, "complex", "gen", "rp2")
    assert code == 0
    assert out.strip() == "dims 2 3 2 (valid)"


def test_complex_gen_refuses_scx_for_delta_complexes(tmp_path, capsys):
    code, _, err = run(capsys, "--out", str(tmp_path / "t.scx"), "complex",
                       "gen", "rp2")
    assert code == 3
    assert ".dcx" in err
