import json

import numpy as np
import pytest

from iontrap_revivals import __version__
from iontrap_revivals.cli import OUT_ENV, main, read_config
from iontrap_revivals.figures import FIG4_PRESETS, fig3, fig4, fig5, fig7, make_figure, table1
from iontrap_revivals.tables import Table, read_csv, to_csv_text, write_csv


def body(path):
    return [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]


def test_csv_round_trip(tmp_path):
    t = Table("demo", ["a", "b"], [(1, 0.1), (2, 1 / 3)], meta={"seed": 7}, units={"b": "1/Omega"})
    path = write_csv(t, tmp_path / "x" / "demo.csv")
    meta, cols, data = read_csv(path)
    assert cols == ["a", "b"]
    assert meta["seed"] == "7"
    assert meta["unit[b]"] == "1/Omega"
    assert meta["code_version"] == f"iontrap_revivals {__version__}"
    np.testing.assert_array_equal(data, [[1, 0.1], [2, 1 / 3]])


def test_csv_is_deterministic():
    t = Table("demo", ["v"], [(np.pi,)])
    assert to_csv_text(t) == to_csv_text(t)
    assert "3.1415926535897931" in to_csv_text(t)


def test_table1_rows():
    t = table1()
    assert t.columns == ["j", "x_j", "h", "h1", "h2", "h3", "h4"]
    assert t.column("x_j")[0] == pytest.approx(9.9516, abs=5e-5)
    assert t.column("h")[0] == pytest.approx(0.279462, abs=5e-7)
    assert t.column("h3")[2] == pytest.approx(-1.2091e-4, abs=5e-9)
    assert "tolerances" in t.meta


def test_fig3_two_series():
    t = fig3(tmax=0.05)
    N = t.column("N")
    assert set(N) == {100.0, 400.0}
    assert t.column("t")[0] == 0.0
    assert t.column("W_exact")[0] == pytest.approx(1.0)


def test_fig4_presets_and_panels():
    assert set(FIG4_PRESETS) == {"alpha", "N"}
    t = fig4("alpha", resolution=5)
    assert t.meta["alpha"] == pytest.approx(11.77, abs=0.01)
    assert sorted(set(t.column("panel"))) == ["cat", "t_h"]
    assert t.meta["N"] == pytest.approx(138.577, abs=1e-3)
    assert fig4("N", resolution=3).meta["N"] == pytest.approx(184.19, abs=0.01)


def test_fig5_short_sweep():
    t = fig5(M_values=[58, 578], phi_samples=10)
    assert t.column("F_B").min() >= 0.93


def test_fig7_three_times():
    t = fig7(resolution=5)
    assert sorted(set(t.column("t_over_tq"))) == [0.25, 0.5, 0.75]


def test_unknown_figure():
    with pytest.raises(ValueError):
        make_figure("fig9")


def test_cli_table1_and_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(OUT_ENV, str(tmp_path / "env_out"))
    assert main(["table1"]) == 0
    path = tmp_path / "env_out" / "table1.csv"
    meta, cols, data = read_csv(path)
    assert "tolerances" in meta and "code_version" in meta and "seed" in meta
    assert data.shape == (4, 7)


def test_cli_figure_is_byte_identical(tmp_path):
    args = ["figure", "fig2", "--N", "100", "--samples", "5", "--seed", "11", "--tmax", "0.5"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    a, b = tmp_path / "a" / "fig2.csv", tmp_path / "b" / "fig2.csv"
    assert body(a) == body(b)
    meta, _, _ = read_csv(a)
    assert meta["seed"] == "11"
    assert meta["samples"] == "5"


def test_cli_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nsamples = 3\nseed = 5\nN = 100\ntmax = 0.2\n")
    assert read_config(cfg)["samples"] == 3
    out = tmp_path / "o"
    assert main(["figure", "fig2", "--config", str(cfg), "--seed", "9", "--out", str(out)]) == 0
    meta, _, data = read_csv(out / "fig2.csv")
    assert meta["seed"] == "9"  # flag wins
    assert meta["samples"] == "3"  # config beats default


def test_cli_bad_config_and_names(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["table1", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert main(["figure", "fig9", "--out", str(tmp_path)]) == 2
    assert "unknown figure" in capsys.readouterr().err


def test_cli_bell_sweep(tmp_path, capsys):
    assert main(["bell-sweep", "--M", "58,108", "--phi-samples", "6", "--out", str(tmp_path)]) == 0
    _, cols, data = read_csv(tmp_path / "bell_sweep.csv")
    assert cols == ["M", "N", "eta", "F_B"]
    assert data.shape == (2, 4)


def test_cli_wigner_zoom(tmp_path):
    assert main(["wigner", "--state", "cat", "--half-width", "1.0", "--resolution", "11",
                 "--out", str(tmp_path)]) == 0
    meta, _, data = read_csv(tmp_path / "wigner_cat.csv")
    centre = data[np.argmin(np.abs(data[:, 0]) + np.abs(data[:, 1]))]
    assert centre[2] == pytest.approx(2.0, abs=1e-6)
    assert float(meta["alpha"]) == pytest.approx(11.77, abs=0.01)


def test_cli_check_report_and_tolerance(tmp_path, capsys):
    assert main(["check", "--only", "1,8b", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "check_report.json").read_text())
    assert report["passed"] is True
    assert all("seconds" in c for c in report["checks"])
    assert report["freq_method"] == "laguerre_exact"
    capsys.readouterr()
    assert main(["check", "--only", "1", "--table1-tol", "1e-9", "--out", str(tmp_path)]) == 1
    report = json.loads((tmp_path / "check_report.json").read_text())
    assert "x_j(x_1)" in report["checks"][0]["detail"]


def test_zero_padding_leaves_wigner_unchanged():
    from iontrap_revivals.analysis import wigner_at
    from iontrap_revivals.figures import _padded
    from iontrap_revivals.hilbert import cat_state

    psi = cat_state(2.0, 1).amplitudes
    rho = np.outer(psi, psi.conj())
    big = _padded(rho, 40.0)
    assert big.shape[0] > rho.shape[0]
    for beta in (0.0, 0.7 - 1.2j, 2.5j):
        assert wigner_at(big, beta) == pytest.approx(wigner_at(rho, beta), abs=1e-12)
