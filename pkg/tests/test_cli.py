import json

import numpy as np
import pytest

from wavehop import read_matrix_bin, read_wav
from wavehop.cli import parse_synth_spec, run_cli
from testutil import write_reference_wav


def make_wav(path, n=16_000, rate=16_000, seed=0):
    rng = np.random.default_rng(seed)
    write_reference_wav(path, rng.integers(-20_000, 20_000, n, dtype=np.int16), rate)


class TestParseSynthSpec:
    def test_sine_with_fields(self):
        spec = parse_synth_spec("sine:frequency=1000,amplitude=0.25", 64, 16_000.0)
        assert spec.kind == "sine"
        assert spec.frequency == 1000.0
        assert spec.amplitude == 0.25

    def test_noise_alias(self):
        assert parse_synth_spec("noise:seed=7", 64, 16_000.0).kind == "white_noise"

    def test_bare_kind(self):
        assert parse_synth_spec("white_noise", 64, 16_000.0).seed == 0

    def test_unknown_field(self):
        from wavehop import InvalidSpec

        with pytest.raises(InvalidSpec):
            parse_synth_spec("sine:color=blue", 64, 16_000.0)


class TestSynthCommand:
    def test_writes_readable_wav(self, tmp_path):
        out = tmp_path / "tone.wav"
        code = run_cli([
            "synth", "sine:frequency=440", "--length", "8000", "--rate", "16000",
            "--out", str(out),
        ])
        assert code == 0
        sig = read_wav(out)
        assert len(sig) == 8000
        assert sig.sample_rate == 16_000

    def test_float32_encoding(self, tmp_path):
        out = tmp_path / "noise.wav"
        code = run_cli([
            "synth", "noise:seed=3", "--length", "100", "--rate", "8000",
            "--out", str(out), "--encoding", "float32",
        ])
        assert code == 0
        assert len(read_wav(out)) == 100


class TestTransformCommand:
    def test_strided_frame_count_on_ten_second_file(self, tmp_path):
        wav = tmp_path / "in.wav"
        make_wav(wav, n=160_000)
        out = tmp_path / "out.scg1"
        code = run_cli([
            "transform", str(wav), "--out", str(out),
            "--mode", "strided", "--hop", "128",
            "--scales", "8", "--fmin", "500", "--fmax", "4000",
        ])
        assert code == 0
        matrix = read_matrix_bin(out)
        assert matrix.columns == 1250
        assert matrix.hop == 128
        assert matrix.rows == 8

    def test_synth_spec_input(self, tmp_path):
        out = tmp_path / "synth.scg1"
        code = run_cli([
            "transform", "sine:frequency=1000", "--length", "4096", "--rate", "16000",
            "--out", str(out), "--hop", "64", "--scales", "6",
            "--fmin", "500", "--fmax", "4000",
        ])
        assert code == 0
        assert read_matrix_bin(out).columns == 64

    def test_decimate_mode_records_reduced_rate(self, tmp_path):
        out = tmp_path / "dec.scg1"
        code = run_cli([
            "transform", "noise:seed=1", "--length", "16000", "--rate", "16000",
            "--out", str(out), "--mode", "decimate", "--hop", "4",
            "--scales", "6", "--fmin", "100", "--fmax", "1500",
        ])
        assert code == 0
        matrix = read_matrix_bin(out)
        assert matrix.source_rate == 4000.0
        assert matrix.hop == 4
        assert matrix.columns == 4000

    def test_full_mode(self, tmp_path):
        out = tmp_path / "full.scg1"
        code = run_cli([
            "transform", "noise:seed=2", "--length", "2048", "--rate", "16000",
            "--out", str(out), "--mode", "full",
            "--scales", "4", "--fmin", "500", "--fmax", "4000",
        ])
        assert code == 0
        matrix = read_matrix_bin(out)
        assert matrix.columns == 2048
        assert matrix.hop == 1

    def test_csv_and_pgm_outputs(self, tmp_path):
        out = tmp_path / "o.scg1"
        csv = tmp_path / "o.csv"
        pgm = tmp_path / "o.pgm"
        code = run_cli([
            "transform", "noise:seed=4", "--length", "2000", "--rate", "16000",
            "--out", str(out), "--csv", str(csv), "--pgm", str(pgm),
            "--hop", "50", "--scales", "5", "--fmin", "500", "--fmax", "4000",
            "--mag", "log_db",
        ])
        assert code == 0
        assert csv.read_text().count("\n") == 5
        assert pgm.read_bytes().startswith(b"P5\n40 5\n255\n")

    def test_byte_deterministic(self, tmp_path):
        args = [
            "transform", "noise:seed=5", "--length", "3000", "--rate", "16000",
            "--mode", "strided", "--hop", "30",
            "--scales", "6", "--fmin", "300", "--fmax", "3000",
        ]
        out1, out2 = tmp_path / "a.scg1", tmp_path / "b.scg1"
        pgm1, pgm2 = tmp_path / "a.pgm", tmp_path / "b.pgm"
        assert run_cli(args + ["--out", str(out1), "--pgm", str(pgm1)]) == 0
        assert run_cli(args + ["--out", str(out2), "--pgm", str(pgm2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert pgm1.read_bytes() == pgm2.read_bytes()

    def test_missing_input_exits_one(self, tmp_path, capsys):
        code = run_cli([
            "transform", str(tmp_path / "none.wav"), "--out", str(tmp_path / "x.scg1"),
        ])
        assert code == 1
        assert "error" in capsys.readouterr().err


class TestScalogramCommand:
    def test_scg1_to_pgm(self, tmp_path):
        out = tmp_path / "o.scg1"
        run_cli([
            "transform", "sine:frequency=800", "--length", "4000", "--rate", "16000",
            "--out", str(out), "--hop", "40", "--scales", "6",
            "--fmin", "300", "--fmax", "3000",
        ])
        pgm = tmp_path / "o.pgm"
        assert run_cli(["scalogram", str(out), "--out", str(pgm)]) == 0
        assert pgm.read_bytes().startswith(b"P5\n100 6\n255\n")

    def test_flip_flag_changes_bytes(self, tmp_path):
        out = tmp_path / "o.scg1"
        run_cli([
            "transform", "chirp:f0=200,f1=4000", "--length", "4000", "--rate", "16000",
            "--out", str(out), "--hop", "40", "--scales", "6",
            "--fmin", "300", "--fmax", "3000",
        ])
        a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
        run_cli(["scalogram", str(out), "--out", str(a)])
        run_cli(["scalogram", str(out), "--out", str(b), "--no-flip"])
        assert a.read_bytes() != b.read_bytes()


class TestUsageErrors:
    def test_unknown_flag_exits_two(self, capsys):
        code = run_cli(["transform", "noise", "--out", "x.scg1", "--bogus"])
        assert code == 2
        assert "usage" in capsys.readouterr().err.lower()

    def test_no_subcommand_exits_two(self):
        assert run_cli([]) == 2

    def test_unknown_subcommand_exits_two(self):
        assert run_cli(["fourier"]) == 2


class TestAucCommand:
    def test_prints_value(self, tmp_path, capsys):
        csv = tmp_path / "scores.csv"
        csv.write_text("0.9,1\n0.8,1\n0.2,0\n0.1,0\n")
        assert run_cli(["auc", str(csv)]) == 0
        assert capsys.readouterr().out.strip() == "1.000000"

    def test_single_class_exits_one(self, tmp_path, capsys):
        csv = tmp_path / "scores.csv"
        csv.write_text("0.9,1\n0.8,1\n")
        assert run_cli(["auc", str(csv)]) == 1
        assert "DegenerateLabels" in capsys.readouterr().err

    def test_malformed_line_exits_one(self, tmp_path, capsys):
        csv = tmp_path / "scores.csv"
        csv.write_text("0.9,hello\n")
        assert run_cli(["auc", str(csv)]) == 1


class TestBenchCommand:
    def test_json_lines_on_stdout(self, capsys):
        code = run_cli([
            "bench", "--length", "8192", "--rate", "16000", "--hop", "64",
            "--reps", "3", "--scales", "6", "--fmin", "300", "--fmax", "3000",
        ])
        assert code == 0
        lines = capsys.readouterr().out.strip().split("\n")
        decoded = [json.loads(line) for line in lines]
        assert [d["method"] for d in decoded] == ["cwt_fft", "cwth_strided"]
        assert all(d["signal_length"] == 8192 for d in decoded)


class TestScanCommand:
    def test_batch_outputs_and_order(self, tmp_path, capsys):
        in_dir = tmp_path / "in"
        in_dir.mkdir()
        for name, seed in (("b.wav", 1), ("a.wav", 2), ("c.wav", 3)):
            make_wav(in_dir / name, n=4000, seed=seed)
        out_dir = tmp_path / "out"
        code = run_cli([
            "scan", str(in_dir), "--out-dir", str(out_dir),
            "--hop", "40", "--scales", "5", "--fmin", "300", "--fmax", "3000",
        ])
        assert code == 0
        assert sorted(p.name for p in out_dir.iterdir()) == ["a.scg1", "b.scg1", "c.scg1"]
        out_lines = capsys.readouterr().out.strip().split("\n")
        assert out_lines == ["ok a.wav", "ok b.wav", "ok c.wav"]

    def test_failure_continues_and_exits_one(self, tmp_path, capsys):
        in_dir = tmp_path / "in"
        in_dir.mkdir()
        make_wav(in_dir / "good.wav", n=4000)
        (in_dir / "bad.wav").write_bytes(b"not a wav at all")
        out_dir = tmp_path / "out"
        code = run_cli([
            "scan", str(in_dir), "--out-dir", str(out_dir),
            "--hop", "40", "--scales", "5", "--fmin", "300", "--fmax", "3000",
        ])
        assert code == 1
        assert (out_dir / "good.scg1").exists()
        assert not (out_dir / "bad.scg1").exists()
        captured = capsys.readouterr()
        assert "ok good.wav" in captured.out
        assert "failed bad.wav" in captured.err

    def test_threads_flag_gives_identical_bytes(self, tmp_path):
        in_dir = tmp_path / "in"
        in_dir.mkdir()
        for i in range(4):
            make_wav(in_dir / f"f{i}.wav", n=3000, seed=i)
        serial_dir = tmp_path / "serial"
        threaded_dir = tmp_path / "threaded"
        base = ["--hop", "30", "--scales", "5", "--fmin", "300", "--fmax", "3000"]
        assert run_cli(["scan", str(in_dir), "--out-dir", str(serial_dir)] + base) == 0
        assert run_cli(
            ["scan", str(in_dir), "--out-dir", str(threaded_dir), "--threads", "3"] + base
        ) == 0
        for path in sorted(serial_dir.iterdir()):
            assert path.read_bytes() == (threaded_dir / path.name).read_bytes()

    def test_threads_env_variable(self, tmp_path, monkeypatch):
        in_dir = tmp_path / "in"
        in_dir.mkdir()
        make_wav(in_dir / "x.wav", n=2000)
        monkeypatch.setenv("THREADS", "2")
        out_dir = tmp_path / "out"
        code = run_cli([
            "scan", str(in_dir), "--out-dir", str(out_dir),
            "--hop", "20", "--scales", "4", "--fmin", "300", "--fmax", "3000",
        ])
        assert code == 0
        assert (out_dir / "x.scg1").exists()

    def test_empty_directory_exits_one(self, tmp_path):
        in_dir = tmp_path / "in"
        in_dir.mkdir()
        assert run_cli(["scan", str(in_dir), "--out-dir", str(tmp_path / "out")]) == 1
