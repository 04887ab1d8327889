import math
import os

import pytest

from pausecut import compute_stats, read_wav, write_wav
from pausecut.cli import main
from pausecut.manifest import entries_to_segments, read_manifest, render_manifest, ManifestEntry
from pausecut.metrics import stats_rows

from conftest import clip_from, silence, tone


@pytest.fixture
def talk_wav(tmp_path):
    clip = clip_from(
        tone(5.0), silence(0.3), tone(12.7), silence(0.4), tone(0.6),
        silence(0.6), tone(25.4),
    )  # 45 s with usable pauses
    path = tmp_path / "talk.wav"
    write_wav(path, clip)
    return path


def run(args):
    return main([str(a) for a in args])


class TestSegment:
    def test_fixed_manifest(self, talk_wav, tmp_path, capsys):
        out = tmp_path / "fixed.yaml"
        code = run(["segment", "--strategy", "fixed", "--length", "20", "-o", out, talk_wav])
        assert code == 0
        entries, header = read_manifest(out)
        duration = read_wav(talk_wav).duration
        assert len(entries) == math.ceil(duration / 20.0)
        assert header["strategy"] == "fixed"
        assert float(header["total_duration"]) == duration

    def test_hybrid_respects_length_bound(self, talk_wav, tmp_path):
        out = tmp_path / "hyb.yaml"
        code = run([
            "segment", "--strategy", "hybrid", "--min-len", "17", "--max-len", "20",
            "-o", out, talk_wav,
        ])
        assert code == 0
        entries, _ = read_manifest(out)
        assert all(e.duration <= 20.0 + 1e-9 for e in entries)

    def test_srpol_streaming_rejected(self, talk_wav, capsys):
        code = run(["segment", "--strategy", "srpol", "--streaming", talk_wav])
        assert code == 1
        assert "strategy requires full audio" in capsys.readouterr().err

    def test_streaming_rejected_for_fixed(self, talk_wav, capsys):
        code = run(["segment", "--strategy", "fixed", "--streaming", talk_wav])
        assert code == 1
        assert "not supported" in capsys.readouterr().err

    def test_streaming_equals_batch_manifest(self, talk_wav, tmp_path):
        batch, stream = tmp_path / "b.yaml", tmp_path / "s.yaml"
        assert run(["segment", "--strategy", "hybrid-force", "-o", batch, talk_wav]) == 0
        assert run(["segment", "--strategy", "hybrid-force", "--streaming", "-o", stream, talk_wav]) == 0
        batch_entries, _ = read_manifest(batch)
        stream_entries, _ = read_manifest(stream)
        assert batch_entries == stream_entries

    def test_deterministic_output_bytes(self, talk_wav, tmp_path):
        a, b = tmp_path / "a.yaml", tmp_path / "b.yaml"
        argv = ["segment", "--strategy", "hybrid", talk_wav]
        assert run(argv + ["-o", a]) == 0
        assert run(argv + ["-o", b]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_vad_drops_silence(self, tmp_path):
        clip = clip_from(tone(2.0), silence(1.0), tone(2.0))
        wav = tmp_path / "c.wav"
        write_wav(wav, clip)
        kept_only = tmp_path / "k.yaml"
        with_dropped = tmp_path / "d.yaml"
        assert run(["segment", "--strategy", "vad", "-o", kept_only, wav]) == 0
        assert run(["segment", "--strategy", "vad", "--emit-dropped", "-o", with_dropped, wav]) == 0
        kept, _ = read_manifest(kept_only)
        full, _ = read_manifest(with_dropped)
        assert all(not e.dropped for e in kept)
        assert any(e.dropped for e in full)
        assert len(full) > len(kept)

    def test_multiple_inputs_ordered(self, tmp_path):
        w1, w2 = tmp_path / "one.wav", tmp_path / "two.wav"
        write_wav(w1, clip_from(tone(3.0)))
        write_wav(w2, clip_from(tone(4.0)))
        out = tmp_path / "m.yaml"
        assert run(["segment", "--strategy", "fixed", "--length", "2", "-o", out, w1, w2]) == 0
        entries, _ = read_manifest(out)
        assert [e.wav for e in entries] == ["one.wav", "one.wav", "two.wav", "two.wav"]

    def test_raw_pcm_input(self, tmp_path):
        clip = clip_from(tone(1.5))
        raw = tmp_path / "audio.pcm"
        raw.write_bytes(clip.samples.tobytes())
        out = tmp_path / "r.yaml"
        assert run(["segment", "--strategy", "fixed", "--length", "1", "--raw-rate", "16000", "-o", out, raw]) == 0
        entries, _ = read_manifest(out)
        assert [e.duration for e in entries] == [1.0, 0.5]

    def test_jsonl_format(self, talk_wav, tmp_path, capsys):
        code = run(["segment", "--strategy", "fixed", "--length", "20", "--format", "jsonl", talk_wav])
        assert code == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith('{"')

    def test_missing_file_names_it(self, capsys):
        code = run(["segment", "nope.wav"])
        assert code == 1
        assert "nope.wav" in capsys.readouterr().err

    def test_undectable_file_names_it(self, tmp_path, capsys):
        bad = tmp_path / "bad.wav"
        bad.write_bytes(b"not audio at all")
        assert run(["segment", bad]) == 1
        assert "bad.wav" in capsys.readouterr().err


class TestConfigResolution:
    def test_config_file_and_flag_precedence(self, talk_wav, tmp_path):
        cfg = tmp_path / "run.conf"
        cfg.write_text("strategy = fixed\nlength = 10  # comment\n")
        out = tmp_path / "m.yaml"
        assert run(["segment", "--config", cfg, "-o", out, talk_wav]) == 0
        entries, header = read_manifest(out)
        assert header["strategy"] == "fixed"
        assert entries[0].duration == 10.0
        # explicit flag wins over the file
        assert run(["segment", "--config", cfg, "--length", "15", "-o", out, talk_wav]) == 0
        entries, _ = read_manifest(out)
        assert entries[0].duration == 15.0

    def test_env_overrides_file_but_not_flag(self, talk_wav, tmp_path, monkeypatch):
        cfg = tmp_path / "run.conf"
        cfg.write_text("strategy = fixed\nlength = 10\n")
        monkeypatch.setenv("PAUSECUT_LENGTH", "12")
        out = tmp_path / "m.yaml"
        assert run(["segment", "--config", cfg, "-o", out, talk_wav]) == 0
        entries, _ = read_manifest(out)
        assert entries[0].duration == 12.0
        assert run(["segment", "--config", cfg, "--length", "14", "-o", out, talk_wav]) == 0
        entries, _ = read_manifest(out)
        assert entries[0].duration == 14.0

    def test_unknown_config_key(self, talk_wav, tmp_path, capsys):
        cfg = tmp_path / "run.conf"
        cfg.write_text("no_such_option = 1\n")
        assert run(["segment", "--config", cfg, talk_wav]) == 1
        assert "unknown option" in capsys.readouterr().err


class TestStats:
    def fixture_manifest(self, tmp_path):
        entries = [
            ManifestEntry("a.wav", 0.0, 6.0),
            ManifestEntry("a.wav", 6.0, 2.0, dropped=True),
            ManifestEntry("a.wav", 8.0, 2.0),
        ]
        path = tmp_path / "fx.yaml"
        path.write_text(render_manifest(entries, {"total_duration": "10.000000"}))
        return path

    def test_report_values(self, tmp_path, capsys):
        assert run(["stats", self.fixture_manifest(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "% filtered" in out and "20.00" in out
        assert "Num segm." in out and "2" in out
        assert "Max len (s)" in out and "6.00" in out

    def test_empty_manifest(self, tmp_path, capsys):
        path = tmp_path / "e.yaml"
        path.write_text(render_manifest([], {}))
        assert run(["stats", path]) == 0
        out = capsys.readouterr().out
        assert "Num segm." in out and "0" in out and "-" in out

    def test_json_output(self, tmp_path, capsys):
        import json

        assert run(["stats", self.fixture_manifest(tmp_path), "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["pct_filtered"] == 20.0 and data["num_segments"] == 2

    def test_malformed_manifest(self, tmp_path, capsys):
        path = tmp_path / "bad.yaml"
        path.write_text("- {wav: a, offset: [}")
        assert run(["stats", path]) == 1
        assert "malformed" in capsys.readouterr().err

    def test_roundtrip_matches_in_process(self, talk_wav, tmp_path, capsys):
        out = tmp_path / "h.yaml"
        assert run(["segment", "--strategy", "hybrid", "-o", out, talk_wav]) == 0
        assert run(["stats", out]) == 0
        report = capsys.readouterr().out

        entries, header = read_manifest(out)
        total = float(header["total_duration"])
        stats = compute_stats(entries_to_segments(entries, total), total)
        for label, value in stats_rows(stats):
            row = next(line for line in report.splitlines() if line.startswith(label))
            assert value in row


class TestCompare:
    def write_fixed(self, tmp_path, wav, length, name):
        out = tmp_path / name
        assert run(["segment", "--strategy", "fixed", "--length", str(length), "-o", out, wav]) == 0
        return out

    def test_self_comparison(self, talk_wav, tmp_path, capsys):
        m = self.write_fixed(tmp_path, talk_wav, 12, "a.yaml")
        assert run(["compare", m, m]) == 0
        assert "f1         1.000" in capsys.readouterr().out

    def test_fixed20_vs_fixed10_over_40s(self, tmp_path, capsys):
        wav = tmp_path / "forty.wav"
        write_wav(wav, clip_from(tone(40.0)))
        hyp = self.write_fixed(tmp_path, wav, 20, "h.yaml")
        ref = self.write_fixed(tmp_path, wav, 10, "r.yaml")
        assert run(["compare", hyp, ref, "--tolerance", "0.1"]) == 0
        out = capsys.readouterr().out
        assert "precision  1.000" in out
        assert "recall     0.333" in out

    def test_zero_tolerance_offset_boundaries(self, tmp_path, capsys):
        wav = tmp_path / "w.wav"
        write_wav(wav, clip_from(tone(30.0)))
        hyp = self.write_fixed(tmp_path, wav, 9, "h.yaml")
        ref = self.write_fixed(tmp_path, wav, 11, "r.yaml")
        assert run(["compare", hyp, ref, "--tolerance", "0"]) == 0
        assert "f1         0.000" in capsys.readouterr().out

    def test_duration_mismatch(self, tmp_path, capsys):
        w1, w2 = tmp_path / "a.wav", tmp_path / "b.wav"
        write_wav(w1, clip_from(tone(30.0)))
        write_wav(w2, clip_from(tone(33.0)))
        m1 = self.write_fixed(tmp_path, w1, 10, "m1.yaml")
        m2 = self.write_fixed(tmp_path, w2, 10, "m2.yaml")
        assert run(["compare", m1, m2]) == 1
        assert "different durations" in capsys.readouterr().err

    def test_json(self, talk_wav, tmp_path, capsys):
        import json

        m = self.write_fixed(tmp_path, talk_wav, 15, "j.yaml")
        assert run(["compare", m, m, "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["f1"] == 1.0


class TestEntryPoints:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "pausecut" in capsys.readouterr().out

    def test_module_invocation(self, tmp_path):
        import subprocess
        import sys

        env = dict(os.environ)
        proc = subprocess.run(
            [sys.executable, "-m", "pausecut", "--help"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert proc.returncode == 0
        assert "segment" in proc.stdout and "compare" in proc.stdout
