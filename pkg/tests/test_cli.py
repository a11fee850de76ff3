"""CLI subcommands: shapes, consistency, exit codes, determinism."""

from __future__ import annotations

import csv
import subprocess
import sys
from math import log2

import pytest

from addrloc.cli import main
from addrloc.trace import read_trace

FIXTURE = "0\tA\tB\n5\tB\tA\n"


def _write_fixture(tmp_path, text=FIXTURE, name="t.tsv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


def _parse_trace_text(text):
    from io import StringIO

    from addrloc.trace import parse_trace

    return parse_trace(StringIO(text))


def test_summarize_fixture(tmp_path, capsys):
    path = _write_fixture(tmp_path)
    assert main(["summarize", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("frames=2 addresses=2 destinations=2")


def test_gen_then_stackdist_pipeline(tmp_path):
    trace_path = tmp_path / "cyc.tsv"
    csv_path = tmp_path / "sd.csv"
    assert main(["gen", "--cyclic", "30", "--length", "10000", "--seed", "7",
                 "--out", str(trace_path)]) == 0
    assert main(["stackdist", str(trace_path), "--out", str(csv_path)]) == 0
    rows = _read_csv(csv_path)
    assert rows[0] == ["distance", "count", "pdf", "cdf"]
    by_distance = {r[0]: r for r in rows[1:]}
    assert float(by_distance["30"][2]) >= 0.99
    assert rows[-1][0] == "inf"


def test_gen_writes_parseable_trace_to_stdout(capsys):
    assert main(["gen", "--uniform-irm", "5", "--length", "20", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert len(_parse_trace_text(out)) == 20


def test_gen_model_flags(tmp_path):
    for flags in (
        ["--irm", "5,3,2"],
        ["--lru-stack", "4,3,2,1", "--stack-size", "6"],
        ["--interleave", "cyclic:3;uniform-irm:4", "--pattern", "2,1"],
    ):
        out = tmp_path / "g.tsv"
        assert main(["gen", *flags, "--length", "30", "--seed", "1", "--out", str(out)]) == 0
        assert len(read_trace(out)) == 30


def test_gen_flag_pairing_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["gen", "--cyclic", "3", "--pattern", "2,1", "--length", "5"])
    assert info.value.code == 2


def test_split_command(tmp_path):
    path = _write_fixture(
        tmp_path, "0\tA\tB\tLAT\n1\tB\tA\tDEC\n2\tA\tB\tLAT\n", "p.tsv"
    )
    match_out = tmp_path / "lat.tsv"
    rest_out = tmp_path / "rest.tsv"
    assert main(["split", str(path), "--proto", "LAT",
                 "--match-out", str(match_out), "--rest-out", str(rest_out)]) == 0
    assert len(read_trace(match_out)) == 2
    assert len(read_trace(rest_out)) == 1


def test_concentration_stdout(tmp_path, capsys):
    path = _write_fixture(tmp_path)
    assert main(["concentration", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "dest_fraction,frame_fraction"
    assert lines[-1] == "1.0,1.0"


def test_wss_skips_oversized_windows(tmp_path, capsys):
    path = _write_fixture(tmp_path)
    assert main(["wss", str(path), "--windows", "1,2,100", "--mode", "sliding"]) == 0
    captured = capsys.readouterr()
    assert "skipping window 100" in captured.err
    rows = captured.out.splitlines()
    assert rows[0] == "window,mode,avg_wss"
    assert len(rows) == 3


def test_wss_no_usable_window_fails(tmp_path, capsys):
    path = _write_fixture(tmp_path)
    assert main(["wss", str(path), "--windows", "50"]) == 1
    assert "error:" in capsys.readouterr().err


def test_simulate_shape(tmp_path):
    path = _write_fixture(tmp_path, "".join(f"{i}\tS\td{i % 6}\n" for i in range(600)))
    miss_out = tmp_path / "m.csv"
    inter_out = tmp_path / "i.csv"
    assert main(["simulate", str(path), "--policies", "MIN,LRU,FIFO,RAND",
                 "--capacities", "1,2,4,8", "--seed", "1",
                 "--miss-out", str(miss_out), "--interfault-out", str(inter_out)]) == 0
    miss = _read_csv(miss_out)
    inter = _read_csv(inter_out)
    assert miss[0] == ["capacity", "MIN", "LRU", "FIFO", "RAND"]
    assert [r[0] for r in miss[1:]] == ["1", "2", "4", "8"]
    assert len(miss) == len(inter) == 5
    for miss_row, inter_row in zip(miss[1:], inter[1:]):
        for p, d in zip(miss_row[1:], inter_row[1:]):
            assert abs(float(p) * float(d) - 1.0) <= 1e-12


def test_simulate_default_capacities_include_distinct(tmp_path):
    path = _write_fixture(tmp_path, "".join(f"{i}\tS\td{i % 6}\n" for i in range(60)))
    miss_out = tmp_path / "m.csv"
    assert main(["simulate", str(path), "--policies", "LRU",
                 "--miss-out", str(miss_out),
                 "--interfault-out", str(tmp_path / "i.csv")]) == 0
    capacities = [r[0] for r in _read_csv(miss_out)[1:]]
    assert capacities == ["1", "2", "4", "6", "8", "16", "32", "64", "128", "256"]


def test_searchtime_full_cache_row_is_one(tmp_path, capsys):
    path = _write_fixture(tmp_path, "".join(f"{i}\tS\td{i % 4}\n" for i in range(400)))
    assert main(["searchtime", str(path), "--policies", "LRU"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "capacity,LRU"
    # at capacity = database size only the 4 cold misses remain
    assert rows[-1] == f"4,{1.0 + 4 / 400!r}"


def test_searchtime_rejects_capacity_beyond_database(tmp_path, capsys):
    path = _write_fixture(tmp_path)
    assert main(["searchtime", str(path), "--capacities", "8"]) == 1
    assert "error:" in capsys.readouterr().err


def test_report_outputs_are_mutually_consistent(tmp_path):
    text = "".join(f"{i}\tS\td{(i * i) % 17}\n" for i in range(2000))
    path = _write_fixture(tmp_path, text)
    out_dir = tmp_path / "rep"
    assert main(["report", str(path), "--out-dir", str(out_dir),
                 "--windows", "5,20,100", "--seed", "2"]) == 0
    names = {
        "concentration.csv", "wss.csv", "stackdist.csv", "runs.csv",
        "miss_ratio.csv", "interfault.csv", "searchtime.csv", "summary.txt",
    }
    assert {p.name for p in out_dir.iterdir()} == names

    summary = dict(
        line.split("=", 1) for line in (out_dir / "summary.txt").read_text().splitlines()
    )
    n = int(summary["destinations"])
    miss = _read_csv(out_dir / "miss_ratio.csv")
    inter = _read_csv(out_dir / "interfault.csv")
    times = _read_csv(out_dir / "searchtime.csv")
    assert miss[0] == inter[0] == times[0]
    for miss_row, inter_row, time_row in zip(miss[1:], inter[1:], times[1:]):
        capacity = int(miss_row[0])
        for p, d, t in zip(miss_row[1:], inter_row[1:], time_row[1:]):
            assert abs(float(p) * float(d) - 1.0) <= 1e-12
            expected = (1 + log2(capacity)) / (1 + log2(n)) + float(p)
            assert abs(float(t) - expected) <= 1e-12


def test_report_is_byte_deterministic(tmp_path):
    text = "".join(f"{i}\tS\td{(i * 7) % 23}\n" for i in range(1500))
    path = _write_fixture(tmp_path, text)
    dirs = [tmp_path / "r1", tmp_path / "r2"]
    for d in dirs:
        assert main(["report", str(path), "--out-dir", str(d), "--seed", "5"]) == 0
    for name in ("miss_ratio.csv", "interfault.csv", "searchtime.csv",
                 "stackdist.csv", "concentration.csv", "wss.csv", "runs.csv",
                 "summary.txt"):
        assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


def test_missing_file_is_runtime_error(tmp_path, capsys):
    assert main(["summarize", str(tmp_path / "absent.tsv")]) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_trace_reports_line(tmp_path, capsys):
    path = _write_fixture(tmp_path, "0\tA\tB\nnonsense\n")
    assert main(["summarize", str(path)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_console_entry_point(tmp_path):
    path = _write_fixture(tmp_path)
    result = subprocess.run(
        [sys.executable, "-m", "addrloc", "summarize", str(path)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.startswith("frames=2")
