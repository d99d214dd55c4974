import json

import pytest

from waringlab.cli import main, parse_point_file


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    out = json.loads(captured.out) if captured.out.strip() else None
    return code, out, captured.err


class TestRankProfile:
    def test_x3y(self, capsys):
        code, out, _ = run(capsys, "rank-profile", "4:0,1,0,0,0")
        assert code == 0
        prof = out["outputs"]
        assert prof["border_rank"] == 2 and prof["rank"] == 4
        assert prof["z_unique"] is True

    def test_binomial(self, capsys):
        code, out, _ = run(capsys, "rank-profile", "2:1,0,1")
        assert code == 0
        assert out["outputs"]["rank"] == 2

    def test_cubic_binomial(self, capsys):
        code, out, _ = run(capsys, "rank-profile", "3:1,0,0,1")
        assert code == 0
        assert out["outputs"]["border_rank"] == 2
        assert out["outputs"]["rank"] == 2

    def test_parse_error_exits_2(self, capsys):
        code, out, err = run(capsys, "rank-profile", "4:1,2")
        assert code == 2 and out is None and "error" in err


class TestWq:
    def test_certified_point(self, capsys):
        code, out, _ = run(capsys, "wq", "4:0,1,0,0,0", "--seed", "7")
        assert code == 0
        o = out["outputs"]
        assert o["certified_point"] and o["stabilized"]
        assert o["subspace"]["dim"] == 0

    def test_single_member_family(self, capsys):
        code, out, _ = run(capsys, "wq", "5:1,0,0,0,0,1", "--t", "2")
        assert code == 0
        o = out["outputs"]
        assert o["stabilized"] and not o["certified_point"]
        assert o["samples_used"] == 1
        assert o["subspace"]["dim"] == 1

    def test_rationals_are_strings(self, capsys):
        code, out, _ = run(capsys, "wq", "4:1/2,0,0,0,-3", "--seed", "1")
        assert code == 0
        for row in out["outputs"]["subspace"]["basis"]:
            for entry in row:
                assert isinstance(entry, str)


class TestVerify:
    def test_known_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "q2", "--seed", "7")
        assert code == 0
        assert out["pass"] is True
        assert out["outputs"]["suite"] == "q2"
        assert out["outputs"]["failure_count"] == 0

    def test_unknown_suite_exits_2(self, capsys):
        code, out, err = run(capsys, "verify", "nope")
        assert code == 2 and out is None
        assert err.strip()


class TestA43:
    def test_pass_case(self, capsys):
        code, out, _ = run(capsys, "a43", "--b", "2", "--k", "10",
                           "--samples", "12", "--seed", "0")
        assert code == 0
        ver = out["outputs"]["verification"]
        assert ver["all_sample_spans_contain_q"] is True
        assert ver["qprime_recovered"] is True

    def test_out_of_range_exits_2(self, capsys):
        code, out, err = run(capsys, "a43", "--b", "2", "--k", "30")
        assert code == 2 and out is None
        assert "hypothesis violation" in err


class TestH1:
    def _write_points(self, tmp_path, pts):
        path = tmp_path / "pts.txt"
        path.write_text("# test point set\n" +
                        "\n".join(":".join(str(c) for c in p) for p in pts) + "\n")
        return str(path)

    def test_line_witness(self, capsys, tmp_path):
        pts = [(1, k, 0) for k in range(8)]
        pts += [(k, k * k + 1, 1) for k in range(10)]
        path = self._write_points(tmp_path, pts)
        code, out, _ = run(capsys, "h1", path, "--n", "2", "--d", "6")
        assert code == 0
        rep = out["outputs"]["report"]
        assert rep["h1"] >= 1
        assert rep["witness"]["kind"] == "line"
        assert len(rep["witness"]["points"]) == 7

    def test_oversized_set_skips_search(self, capsys, tmp_path):
        pts = [(1, k, 0) for k in range(12)]
        pts += [(k, k * k + 1, 1) for k in range(12)]
        path = self._write_points(tmp_path, pts)
        code, out, _ = run(capsys, "h1", path, "--n", "2", "--d", "6")
        assert code == 0
        assert "skipped" in out["outputs"]["witness_search"]
        assert "witness" not in out["outputs"]["report"] or \
            out["outputs"]["report"].get("witness") is None

    def test_missing_file_exits_2(self, capsys):
        code, out, err = run(capsys, "h1", "/nonexistent/pts.txt",
                             "--n", "2", "--d", "6")
        assert code == 2 and "error" in err


class TestReportShape:
    def test_schema_and_fields(self, capsys):
        code, out, _ = run(capsys, "rank-profile", "4:0,1,0,0,0")
        assert code == 0
        for key in ("schema", "command", "claim", "seed", "threads",
                    "inputs", "outputs", "pass", "elapsed_ms"):
            assert key in out
        assert out["schema"] == 1

    def test_deterministic_modulo_elapsed(self, capsys):
        outs = []
        for _ in range(2):
            _, out, _ = run(capsys, "wq", "6:1,2,0,-1,3,0,2", "--seed", "11")
            out.pop("elapsed_ms")
            outs.append(out)
        assert outs[0] == outs[1]

    def test_threads_env_echoed(self, capsys, monkeypatch):
        monkeypatch.setenv("WARINGLAB_THREADS", "4")
        _, out, _ = run(capsys, "rank-profile", "2:1,0,1")
        assert out["threads"] == 4

    def test_json_file_written(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run(capsys, "rank-profile", "4:0,1,0,0,0",
                           "--json", str(path))
        assert code == 0
        on_disk = json.loads(path.read_text())
        assert on_disk == out


class TestPointFile:
    def test_parse(self):
        pts = parse_point_file("# header\n1:2:3\n\n-1:0:1/2\n")
        assert len(pts) == 2
        assert pts[0] == (1, 2, 3)
        assert pts[1][:2] == (-1, 0) and pts[1][2] * 2 == 1
