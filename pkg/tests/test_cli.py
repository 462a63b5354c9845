import json
import math
import os
import stat

import pytest

from poncelet.cli import build_parser, main, make_config, read_config_file, to_json, UsageError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def payload(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, json.loads(out)


class TestCommands:
    def test_locus_example(self, capsys):
        code, doc = payload(capsys, "locus", "--a", "1.5", "--b", "1", "--cx", "0.3", "--cy", "0.2", "--center", "2",
                            "--out", "json")
        assert code == 0 and doc["pass"] is True
        res = doc["results"][0]
        assert res["compare"]["pass"] is True
        assert res["closed_form"]["center"] == pytest.approx([0.2, 0.2 * 2 / 3])

    def test_special_iso_x7(self, capsys):
        code, doc = payload(capsys, "special", "--kind", "iso-x7", "--a", "1.5", "--b", "1")
        assert code == 0
        vals = {r["name"]: r["value"] for r in doc["results"]["reports"]}
        assert vals["sum tan(theta/2)"] == pytest.approx(1.8856181, abs=1e-7)

    def test_table1(self, capsys):
        code, doc = payload(capsys, "table1")
        assert code == 0
        rows = {r["family"]: "".join(r["got"]) for r in doc["results"]["rows"]}
        assert rows["Chapple"] == "PCC" and rows["Incircle"] == "PEE" and rows["Homothetic"] == "---"
        assert len(rows) == 7

    def test_cayley(self, capsys):
        code, doc = payload(capsys, "cayley", "--cx", "0", "--cy", "0")
        assert code == 0 and doc["results"]["r"] == pytest.approx(0.6)

    def test_center_triangle(self, capsys):
        code, doc = payload(capsys, "center", "--triangle", "0", "0", "4", "0", "0", "3", "--center", "1")
        assert code == 0
        item = doc["results"]["centers"][0]
        assert (item["k"], item["defined"]) == (1, True)
        assert (item["x"], item["y"]) == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_center_undefined(self, capsys):
        s3 = math.sqrt(3)
        code, doc = payload(capsys, "center", "--triangle", "0", "0", "2", "0", "1", str(s3), "--center", "11")
        assert code == 0 and doc["results"]["centers"][0]["defined"] is False

    def test_equi_suite(self, capsys):
        code, doc = payload(capsys, "equi", "--suite", "--t", "0.7")
        assert code == 0 and doc["pass"] is True

    def test_verify_all_quick(self, capsys):
        code, doc = payload(capsys, "verify-all", "--quick")
        assert code == 0, [c for c in doc["results"] if not c["pass"]]


class TestExitCodes:
    def test_failure_is_one(self, capsys):
        code, doc = payload(capsys, "family", "--cx", "0.3", "--cy", "0.2", "--tol", "1e-20")
        assert code == 1 and doc["pass"] is False

    @pytest.mark.parametrize(
        "argv",
        [
            ["locus", "--center", "9999"],
            ["special", "--kind", "nope"],
            ["table1", "--tol", "-1"],
            ["special", "--out", "csv"],
            ["locus", "--samples", "4"],
            ["cayley", "--cx", "3"],
            ["bogus"],
        ],
    )
    def test_usage_is_two(self, capsys, argv):
        code, _, err = run_cli(capsys, *argv)
        assert code == 2 and err

    def test_domain_error_detail(self, capsys):
        code, _, err = run_cli(capsys, "cayley", "--cx", "3")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "OutOfDomain"


class TestConfig:
    def test_file_and_flag_precedence(self, tmp_path, monkeypatch):
        monkeypatch.delenv("PONCELET_TOL", raising=False)
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text("# sample\na = 2.0\nb = 1\ncenter = 3, 5\nsamples = 64\n")
        ns = build_parser().parse_args(["locus", "--config", str(cfg_file), "--samples", "128"])
        cfg = make_config(ns)
        assert (cfg.a, cfg.b, cfg.centers, cfg.samples) == (2.0, 1.0, [3, 5], 128)

    def test_env_tol(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PONCELET_TOL", "1e-6")
        assert make_config(build_parser().parse_args(["table1"])).tol == 1e-6
        cfg_file = tmp_path / "c.cfg"
        cfg_file.write_text("tol = 1e-5\n")
        assert make_config(build_parser().parse_args(["table1", "--config", str(cfg_file)])).tol == 1e-5
        ns = build_parser().parse_args(["table1", "--config", str(cfg_file), "--tol", "1e-4"])
        assert make_config(ns).tol == 1e-4

    def test_bad_file(self, tmp_path):
        p = tmp_path / "bad.cfg"
        p.write_text("colour = red\n")
        with pytest.raises(UsageError):
            read_config_file(str(p))
        p.write_text("samples = many\n")
        with pytest.raises(UsageError):
            read_config_file(str(p))

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "table1", "--config", str(tmp_path / "none.cfg"))
        assert code == 2


class TestOutputs:
    @pytest.mark.parametrize(
        "argv",
        [
            ["locus", "--cx", "0.3", "--cy", "0.2", "--center", "5", "--out", "csv", "--samples", "64"],
            ["family", "--cx", "0.3", "--cy", "0.2", "--out", "csv", "--samples", "32"],
            ["cayley", "--r", "0.35", "--out", "csv", "--samples", "32"],
            ["figure", "--name", "loci", "--out", "svg"],
            ["equi", "--envelope", "--out", "json"],
        ],
    )
    def test_byte_identical(self, tmp_path, argv):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(argv + ["-o", str(a)]) == 0
        assert main(argv + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_csv_header(self, tmp_path):
        out = tmp_path / "l.csv"
        main(["locus", "--center", "3", "--out", "csv", "--samples", "16", "-o", str(out)])
        lines = out.read_text().splitlines()
        assert lines[0] == "lambda_phase,x,y,defined" and len(lines) == 17

    def test_atomic_no_leftovers(self, tmp_path):
        out = tmp_path / "sub" / "t.json"
        assert main(["table1", "-o", str(out)]) == 0
        assert json.loads(out.read_text())["pass"] is True
        assert os.listdir(out.parent) == ["t.json"]
        assert stat.S_IMODE(out.stat().st_mode) == 0o644


def test_json_non_finite():
    assert json.loads(to_json({"x": math.inf, "y": [math.nan, 1.0]})) == {"x": None, "y": [None, 1.0]}
