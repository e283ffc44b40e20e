"""End-to-end command-line behavior in throwaway directories."""

import json
import math

import numpy as np
import pytest

from _oracle_frozen import ZERO_ORDINATES
from zetacycles import cli
from zetacycles.sheaf import build_section_grid, section_to_payload, GlobalSection
from zetacycles.specfun import ZetaZero

L_STAR = 2.0 * math.pi / ZERO_ORDINATES[0]


@pytest.fixture(autouse=True)
def isolated_dir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(cli.CACHE_DIR_ENV, raising=False)
    return tmp_path


def run(*args: str) -> int:
    return cli.main(list(args))


def seed_cache(t_max: float = 20.0) -> None:
    assert run("--t-max", str(t_max), "zeros") == cli.EXIT_OK


class TestConfig:
    def test_defaults(self):
        cfg = cli.RunConfig()
        assert cfg.t_max == 60.0
        assert cfg.family_ks == (0, 1, 2)
        assert cfg.L_window == (0.40, 0.46)

    def test_validation(self):
        with pytest.raises(cli.ConfigError):
            cli.RunConfig(t_max=-1.0)
        with pytest.raises(cli.ConfigError):
            cli.RunConfig(L_window=(0.5, 0.4))
        with pytest.raises(cli.ConfigError):
            cli.RunConfig(family_ks=())
        with pytest.raises(cli.ConfigError):
            cli.RunConfig(threads=0)

    def test_parse_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# comment\n"
            "\n"
            "t_max = 30\n"
            "family_ks = 0, 1\n"
            "L_window = 0.41, 0.45\n"
            "cache_path = z.csv\n"
        )
        values = cli.parse_config_file(path)
        assert values == {
            "t_max": 30.0,
            "family_ks": (0, 1),
            "L_window": (0.41, 0.45),
            "cache_path": "z.csv",
        }

    def test_unknown_key_reports_line(self, tmp_path, capsys):
        path = tmp_path / "run.cfg"
        path.write_text("t_max = 30\nbogus = 1\n")
        assert run("--config", str(path), "verify") == cli.EXIT_USAGE
        assert ":2:" in capsys.readouterr().err

    def test_missing_equals_reports_line(self, tmp_path, capsys):
        path = tmp_path / "run.cfg"
        path.write_text("t_max 30\n")
        assert run("--config", str(path), "verify") == cli.EXIT_USAGE
        err = capsys.readouterr().err
        assert ":1:" in err and "key = value" in err

    def test_bad_flag_value(self):
        assert run("--family-ks", "0,x", "zeros") == cli.EXIT_USAGE
        assert run("--tol", "-1", "zeros") == cli.EXIT_USAGE

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("t_max = 5\noutput_dir = from_file\n")
        assert (
            run("--config", str(path), "--output-dir", "from_flag", "zeros")
            == cli.EXIT_OK
        )
        assert (tmp_path / "from_flag" / "zeros_report.json").exists()
        assert not (tmp_path / "from_file").exists()

    def test_cache_dir_env(self, tmp_path, monkeypatch):
        store = tmp_path / "store"
        store.mkdir()
        monkeypatch.setenv(cli.CACHE_DIR_ENV, str(store))
        seed_cache(20.0)
        assert (store / "zeros.csv").exists()
        assert not (tmp_path / "zeros.csv").exists()
        assert run("--t-max", "20", "laplacian") == cli.EXIT_OK


class TestZeros:
    def test_cache_and_report(self, tmp_path):
        seed_cache(20.0)
        cache = tmp_path / "zeros.csv"
        assert cache.exists()
        meta = json.loads((tmp_path / "zeros.csv.meta.json").read_text())
        assert meta == {"t_max": 20.0, "count": 1}
        report = json.loads((tmp_path / "reports" / "zeros_report.json").read_text())
        assert report["count"] == 1
        assert report["reused"] is False

    def test_idempotent_rerun(self, tmp_path):
        seed_cache(20.0)
        cache_bytes = (tmp_path / "zeros.csv").read_bytes()
        seed_cache(20.0)
        assert (tmp_path / "zeros.csv").read_bytes() == cache_bytes
        report = json.loads((tmp_path / "reports" / "zeros_report.json").read_text())
        assert report["reused"] is True

    def test_wider_range_recomputes(self, tmp_path):
        seed_cache(20.0)
        seed_cache(25.0)
        meta = json.loads((tmp_path / "zeros.csv.meta.json").read_text())
        assert meta["t_max"] == 25.0
        assert meta["count"] == 2

    def test_empty_range_still_writes_cache(self, tmp_path):
        seed_cache(5.0)
        report = json.loads((tmp_path / "reports" / "zeros_report.json").read_text())
        assert report["count"] == 0


class TestCacheGate:
    def test_missing_cache_instructs(self, capsys):
        assert run("--t-max", "20", "scan") == cli.EXIT_USAGE
        assert "run `zetacycles zeros` first" in capsys.readouterr().err

    def test_stale_cache_rejected(self, capsys):
        seed_cache(20.0)
        assert run("--t-max", "40", "laplacian") == cli.EXIT_USAGE
        assert "rerun" in capsys.readouterr().err


class TestDetect:
    def test_positive_verdict(self, tmp_path):
        seed_cache(20.0)
        assert run("--t-max", "20", "detect", repr(L_STAR)) == cli.EXIT_OK
        payload = json.loads((tmp_path / "reports" / "detect.json").read_text())
        assert payload["verdict"] is True
        assert payload["flagged"] == [-1, 1]
        assert payload["matched"][0]["distance"] <= 1e-9

    def test_negative_verdict_still_exits_zero(self, tmp_path):
        seed_cache(20.0)
        assert run("--t-max", "20", "detect", "0.41") == cli.EXIT_OK
        payload = json.loads((tmp_path / "reports" / "detect.json").read_text())
        assert payload["verdict"] is False
        assert payload["flagged"] == []


class TestScan:
    def test_deterministic_reports(self, tmp_path):
        seed_cache(20.0)
        args = (
            "--t-max", "20",
            "--L-window", "0.443,0.446",
            "--scan-step", "1e-4",
            "scan",
        )
        assert run(*args) == cli.EXIT_OK
        reports = tmp_path / "reports"
        first_csv = (reports / "scan.csv").read_bytes()
        first_dips = (reports / "dips.json").read_bytes()
        assert run(*args) == cli.EXIT_OK
        assert (reports / "scan.csv").read_bytes() == first_csv
        assert (reports / "dips.json").read_bytes() == first_dips

        dips = json.loads(first_dips)["dips"]
        assert len(dips) == 1
        assert dips[0]["matched_zero"] == pytest.approx(ZERO_ORDINATES[0])
        assert dips[0]["distance"] <= 1e-6
        assert abs(dips[0]["L_star"] - L_STAR) <= 1e-8
        assert b"seconds" not in first_dips

        runtime = json.loads((reports / "scan_runtime.json").read_text())
        assert runtime["command"] == "scan"
        assert runtime["threads_used"] == 1
        assert "profile_seconds" in runtime

    def test_csv_header(self, tmp_path):
        seed_cache(20.0)
        assert (
            run(
                "--t-max", "20",
                "--L-window", "0.44,0.45",
                "--scan-step", "5e-3",
                "scan",
            )
            == cli.EXIT_OK
        )
        lines = (tmp_path / "reports" / "scan.csv").read_text().splitlines()
        assert lines[0] == "L,min_row_score"
        assert len(lines) == 4


class TestVerify:
    def test_identity_suite_passes(self, tmp_path):
        assert run("verify") == cli.EXIT_OK
        payload = json.loads((tmp_path / "reports" / "verify.json").read_text())
        assert payload["all_pass"] is True
        names = [c["name"] for c in payload["checks"]]
        assert names == [
            "fourier_direct_vs_closed",
            "trace_identity",
            "psi_vanishing_at_i_half",
            "mellin_conjugation",
        ]
        for check in payload["checks"]:
            assert check["pass"] is True
            assert check["worst"] <= check["threshold"]


class TestLaplacian:
    def test_negativity_csv(self, tmp_path):
        seed_cache(20.0)
        assert run("--t-max", "20", "laplacian") == cli.EXIT_OK
        lines = (tmp_path / "reports" / "laplacian.csv").read_text().splitlines()
        assert lines[0] == "ordinate,eigenvalue,negativity_ok"
        assert len(lines) == 2
        ordinate, value, ok = lines[1].split(",")
        assert float(ordinate) == pytest.approx(ZERO_ORDINATES[0], abs=1e-8)
        assert float(value) < 0.0
        assert ok == "True"


class TestJets:
    def test_zero_section_emits_zero_jets(self, tmp_path):
        seed_cache(20.0)
        grid = build_section_grid(20.0, [ZetaZero(ZERO_ORDINATES[0], 1, 1e-9)])
        section = GlobalSection(grid, np.zeros(grid.size), np.zeros(grid.size))
        section_file = tmp_path / "section.json"
        section_file.write_text(json.dumps(section_to_payload(section)))
        assert run("--t-max", "20", "jets", str(section_file)) == cli.EXIT_OK
        lines = (tmp_path / "reports" / "jets.csv").read_text().splitlines()
        assert lines[0] == "t_k,L_k,slot,order,jet_re,jet_im"
        assert len(lines) == 3
        for line in lines[1:]:
            parts = line.split(",")
            assert float(parts[4]) == 0.0 and float(parts[5]) == 0.0

    def test_missing_section_file(self, capsys):
        seed_cache(20.0)
        assert run("--t-max", "20", "jets", "absent.json") == cli.EXIT_USAGE
        assert "not found" in capsys.readouterr().err
