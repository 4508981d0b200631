"""End-to-end runs of the command-line front end via main(argv)."""

import numpy as np
import pytest

from pdcipher.buffers import PixelBuffer
from pdcipher.cli import (
    EXIT_INTEGRATION,
    EXIT_KEY,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    main,
)
from pdcipher.imageio import read_pgm, write_pgm

KEY_TEXT = "3.0 4.0 5.0 3.999"


@pytest.fixture
def sample(tmp_path):
    rng = np.random.default_rng(17)
    buf = PixelBuffer(rng.integers(0, 256, 256, dtype=np.uint8), 16, 16)
    path = tmp_path / "plain.pgm"
    write_pgm(buf, path)
    return path


class TestEncryptDecrypt:
    def test_round_trip_restores_bytes(self, tmp_path, sample, capsys):
        ct = tmp_path / "ct.pgm"
        rt = tmp_path / "rt.pgm"
        assert main(["encrypt", str(sample), str(ct), "--key", KEY_TEXT]) == EXIT_OK
        assert main(["decrypt", str(ct), str(rt), "--key", KEY_TEXT]) == EXIT_OK
        assert rt.read_bytes() == sample.read_bytes()
        out = capsys.readouterr().out
        assert "encrypted 16x16" in out and "decrypted 16x16" in out

    def test_ciphertext_differs_and_keeps_dimensions(self, tmp_path, sample):
        ct = tmp_path / "ct.pgm"
        main(["encrypt", str(sample), str(ct), "--key", KEY_TEXT])
        img = read_pgm(ct)
        assert (img.width, img.height) == (16, 16)
        assert ct.read_bytes() != sample.read_bytes()

    def test_key_file(self, tmp_path, sample):
        key_path = tmp_path / "key.txt"
        key_path.write_text(KEY_TEXT + "\n")
        ct = tmp_path / "ct.pgm"
        code = main(["encrypt", str(sample), str(ct), "--key-file", str(key_path)])
        assert code == EXIT_OK
        ct_inline = tmp_path / "ct2.pgm"
        main(["encrypt", str(sample), str(ct_inline), "--key", KEY_TEXT])
        assert ct.read_bytes() == ct_inline.read_bytes()

    def test_inline_key_wins_with_warning(self, tmp_path, sample, capsys):
        key_path = tmp_path / "other.txt"
        key_path.write_text("1.0 1.0 1.0 3.7\n")
        ct = tmp_path / "ct.pgm"
        code = main(
            ["encrypt", str(sample), str(ct), "--key", KEY_TEXT,
             "--key-file", str(key_path)]
        )
        assert code == EXIT_OK
        assert "both --key and --key-file" in capsys.readouterr().err
        ct_inline = tmp_path / "ct2.pgm"
        main(["encrypt", str(sample), str(ct_inline), "--key", KEY_TEXT])
        assert ct.read_bytes() == ct_inline.read_bytes()


class TestExitCodes:
    def test_missing_key(self, tmp_path, sample, capsys):
        code = main(["encrypt", str(sample), str(tmp_path / "o.pgm")])
        assert code == EXIT_USAGE
        assert "key is required" in capsys.readouterr().err

    def test_unreadable_key_file(self, tmp_path, sample):
        code = main(
            ["encrypt", str(sample), str(tmp_path / "o.pgm"),
             "--key-file", str(tmp_path / "absent.txt")]
        )
        assert code == EXIT_USAGE

    def test_malformed_key(self, tmp_path, sample):
        code = main(
            ["encrypt", str(sample), str(tmp_path / "o.pgm"), "--key", "a b c d"]
        )
        assert code == EXIT_KEY

    def test_control_parameter_out_of_range(self, tmp_path, sample):
        code = main(
            ["encrypt", str(sample), str(tmp_path / "o.pgm"), "--key", "1 2 3 4.5"]
        )
        assert code == EXIT_KEY

    def test_malformed_image(self, tmp_path, capsys):
        bad = tmp_path / "bad.pgm"
        bad.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
        code = main(["encrypt", str(bad), str(tmp_path / "o.pgm"), "--key", KEY_TEXT])
        assert code == EXIT_PARSE
        assert "error:" in capsys.readouterr().err

    def test_divergent_trajectory(self, tmp_path, sample):
        code = main(
            ["encrypt", str(sample), str(tmp_path / "o.pgm"),
             "--key", "1e6 1e6 1e6 3.9"]
        )
        assert code == EXIT_INTEGRATION

    def test_missing_input_file(self, tmp_path):
        code = main(
            ["encrypt", str(tmp_path / "absent.pgm"), str(tmp_path / "o.pgm"),
             "--key", KEY_TEXT]
        )
        assert code == EXIT_USAGE

    def test_no_verb(self, capsys):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2


class TestAnalyze:
    def test_text_report(self, sample, capsys):
        assert main(["analyze", str(sample)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "entropy" in out and "corr_horizontal" in out
        assert "npcr" not in out

    def test_csv_with_reference(self, tmp_path, sample, capsys):
        ct = tmp_path / "ct.pgm"
        main(["encrypt", str(sample), str(ct), "--key", KEY_TEXT])
        capsys.readouterr()
        code = main(["analyze", str(ct), "--ref", str(sample), "--format", "csv"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().split("\n")
        names = [line.split(",")[0] for line in lines[:6]]
        assert names == [
            "entropy", "corr_horizontal", "corr_vertical", "corr_diagonal",
            "npcr", "uaci",
        ]
        assert len(lines) == 6 + 256

    def test_out_file(self, tmp_path, sample, capsys):
        report = tmp_path / "report.txt"
        assert main(["analyze", str(sample), "--out", str(report)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert "entropy" in report.read_text()


class TestDifftest:
    def test_seeded_runs_agree(self, sample, capsys):
        argv = ["difftest", str(sample), "--key", KEY_TEXT,
                "--trials", "3", "--seed", "11"]
        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out == first
        assert first.startswith("npcr,") and "\nuaci," in first


class TestBench:
    def test_csv_shape(self, capsys):
        code = main(["bench", "--sizes", "16", "32", "--reps", "1"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == (
            "side,pixels,backend,reps,encrypt_s,decrypt_s,"
            "encrypt_mpix_s,decrypt_mpix_s"
        )
        assert len(lines) == 3
        first = lines[1].split(",")
        assert first[0] == "16" and first[1] == "256"
        assert float(first[4]) > 0.0 and float(first[5]) > 0.0


class TestKeyspace:
    def test_reports_cardinality(self, capsys):
        assert main(["keyspace"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "10^60" in out
        assert str(10**60) in out
