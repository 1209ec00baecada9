import csv
import subprocess
import sys

import pytest

from logical_noise.cli import RATES_COLUMNS, main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out, err = capsys.readouterr() if capsys else ("", "")
    return code, out, err


class TestChannelCommand:
    def test_prints_adaptive_five_qubit_dephasing(self, capsys):
        code, out, _ = run_cli(
            "channel", "--code", "five", "--noise", "dephasing",
            "--strategy", "adaptive", capsys=capsys,
        )
        assert code == 0
        assert "lambda_Z = Poly(10*p^3 + -15*p^4 + 6*p^5)" in out
        assert "lambda_X = Poly(0)" in out

    def test_eval_p(self, capsys):
        code, out, _ = run_cli(
            "channel", "--code", "five", "--noise", "dephasing",
            "--strategy", "adaptive", "--eval-p", "0.01", capsys=capsys,
        )
        assert code == 0
        assert "9.8506e-06" in out

    def test_dump_and_sweep_files(self, tmp_path, capsys):
        dump = tmp_path / "dump.csv"
        table = tmp_path / "table.csv"
        code, _, _ = run_cli(
            "channel", "--code", "bit3", "--noise", "depol2q",
            "--strategy", "standard", "--out", str(dump),
            "--dump-table", str(table), capsys=capsys,
        )
        assert code == 0
        rows = list(csv.reader(open(dump)))
        assert rows[0][0] == "class"
        assert len(rows) == 17
        trows = list(csv.reader(open(table)))
        assert trows[0][0] == "syndrome_int"
        assert len(trows) == 5

        sweep = tmp_path / "sweep.csv"
        code, _, _ = run_cli(
            "channel", "--code", "five", "--noise", "dephasing",
            "--strategy", "adaptive", "--sweep", "0:0.3:31",
            "--out", str(sweep), capsys=capsys,
        )
        assert code == 0
        srows = list(csv.reader(open(sweep)))
        assert srows[0] == ["p", "lambda_I", "lambda_X", "lambda_Y", "lambda_Z"]
        assert len(srows) == 32

    def test_unknown_code_exit(self, capsys):
        code, _, err = run_cli("channel", "--code", "nope", capsys=capsys)
        assert code == 4
        assert "unknown code" in err

    def test_custom_code_file(self, tmp_path, capsys):
        path = tmp_path / "bitflip.code"
        path.write_text("n 3\nZZI\nIZZ\nXL XXX\nZL ZZZ\n")
        code, out, _ = run_cli(
            "channel", "--code", str(path), "--noise", "dephasing",
            "--strategy", "standard", capsys=capsys,
        )
        assert code == 0
        assert "lambda_Z = Poly(3*p + -6*p^2 + 4*p^3)" in out

    def test_invalid_code_file_exit(self, tmp_path, capsys):
        path = tmp_path / "bad.code"
        path.write_text("n 3\nZZI\nXZI\nXL XXX\nZL ZZZ\n")
        code, _, err = run_cli("channel", "--code", str(path), capsys=capsys)
        assert code == 3
        assert "invalid code definition" in err


class TestThresholdCommand:
    def test_two_segments(self, capsys):
        code, out, _ = run_cli("threshold", "--segments", "2", capsys=capsys)
        assert code == 0
        assert out.strip() == "0.9205"

    def test_encoded(self, capsys):
        code, out, _ = run_cli(
            "threshold", "--segments", "8", "--encode", "five", capsys=capsys
        )
        assert code == 0
        assert abs(float(out) - 0.964) <= 1e-3


class TestRatesCommand:
    def test_schema_and_value(self, tmp_path, capsys):
        out_csv = tmp_path / "rates.csv"
        code, _, _ = run_cli(
            "rates", "--segments", "8", "--p0", "0.7", "--mu", "0.99",
            "--tc", "10", "--length", "800", "--encode", "five",
            "--scheme", "mc", "--seed", "7", "--out", str(out_csv),
            capsys=capsys,
        )
        assert code == 0
        rows = list(csv.reader(open(out_csv)))
        assert rows[0] == RATES_COLUMNS
        row = dict(zip(rows[0], rows[1]))
        assert float(row["skr_hz"]) == pytest.approx(4.85, rel=0.15)
        assert float(row["L0_km"]) == 100.0

    def test_byte_identical_for_fixed_seed(self, tmp_path, capsys):
        args = (
            "rates", "--segments", "4", "--p0", "0.7", "--mu", "0.99",
            "--tc", "0.1", "--length", "100:300:100", "--scheme", "mc",
            "--samples", "100000", "--seed", "11",
        )
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert run_cli(*args, "--out", str(a), capsys=capsys)[0] == 0
        assert run_cli(*args, "--out", str(b), capsys=capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_length_list(self, tmp_path, capsys):
        out_csv = tmp_path / "r.csv"
        code, _, _ = run_cli(
            "rates", "--segments", "2", "--tc", "1", "--mu", "0.97",
            "--length", "50,100,150", "--scheme", "exact2",
            "--out", str(out_csv), capsys=capsys,
        )
        assert code == 0
        assert len(list(csv.reader(open(out_csv)))) == 4

    def test_cutoff_requires_exact2(self, capsys):
        code, _, err = run_cli(
            "rates", "--segments", "2", "--tc", "1", "--length", "100",
            "--cutoff", "10", "--scheme", "sequential", capsys=capsys,
        )
        assert code == 2
        assert "cutoff" in err

    def test_bad_length_spec(self, capsys):
        code, _, err = run_cli(
            "rates", "--segments", "2", "--tc", "1", "--length", "10:5:1",
            capsys=capsys,
        )
        assert code == 2
        assert "range" in err


class TestTable1Command:
    def test_grid_shape(self, tmp_path, capsys):
        out_csv = tmp_path / "t1.csv"
        code, _, _ = run_cli("table1", "--out", str(out_csv), capsys=capsys)
        assert code == 0
        rows = list(csv.reader(open(out_csv)))
        assert rows[0] == ["encoding", "mu", "tc_s", "n_segments", "raw_hz", "skf", "skr_hz"]
        assert len(rows) == 1 + 36


class TestEntryPoint:
    def test_console_script_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "logical_noise.cli", "threshold",
             "--segments", "2"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "0.9205"

    def test_missing_subcommand_usage_error(self):
        proc = subprocess.run(
            [sys.executable, "-m", "logical_noise.cli"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 2
