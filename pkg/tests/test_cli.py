import json
import subprocess
import sys

import pytest

from etsurf import cli, verify

K4 = "C~"
PETERSEN = "IheA@GUAo"
HEAWOOD = "MhEGHC@AI?_PC@_G_"
DESARGUES = "ShEGGC@AG?c@?@?Ga?GC@O?C?AGA?K?OC"
PRISM = "EUxo"  # triangular prism, cubic but not edge-transitive


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def small_corpus(tmp_path):
    p = tmp_path / "corpus.g6"
    p.write_text(f"# K4\n{K4}\n# Petersen\n{PETERSEN}\n# Heawood\n{HEAWOOD}\n")
    return p


class TestCensus:
    def test_k4(self, tmp_path, capsys):
        corpus = tmp_path / "k4.g6"
        corpus.write_text(K4 + "\n")
        out = tmp_path / "out.jsonl"
        assert run("census", corpus, "-o", out) == cli.EXIT_OK
        header, records = cli.read_census(out)
        assert header["failures"] == [] and header["version"]
        assert [(r.n_faces, r.fe_label, r.chi) for r in records] == [(4, "(1,4)", 2)]
        table = capsys.readouterr().out
        assert "(1,4)" in table and "total" in table

    def test_empty_corpus(self, tmp_path):
        corpus = tmp_path / "empty.g6"
        corpus.write_text("")
        out = tmp_path / "out.jsonl"
        assert run("census", corpus, "-o", out) == cli.EXIT_OK
        assert cli.read_census(out)[1] == []

    def test_deterministic(self, small_corpus, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        assert run("census", small_corpus, "-o", a) == 0
        assert run("census", small_corpus, "-o", b, "--jobs", 2) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_records_sorted(self, small_corpus, tmp_path):
        out = tmp_path / "o.jsonl"
        run("census", small_corpus, "-o", out)
        records = cli.read_census(out)[1]
        assert records == sorted(records)
        assert {r.graph_id for r in records} == {"K4", "Petersen", "Heawood"}

    def test_failure_recorded_and_run_continues(self, tmp_path):
        corpus = tmp_path / "c.g6"
        corpus.write_text(f"{PRISM} prism\n{K4} K4\n")
        out = tmp_path / "o.jsonl"
        assert run("census", corpus, "-o", out) == cli.EXIT_INPUT
        header, records = cli.read_census(out)
        assert [f["graph_id"] for f in header["failures"]] == ["prism"]
        assert "not edge-transitive" in header["failures"][0]["error"]
        assert len(records) == 1

    def test_ceiling(self, small_corpus, tmp_path):
        out = tmp_path / "o.jsonl"
        assert run("census", small_corpus, "-o", out, "--max-aut-order", 50) == cli.EXIT_CEILING
        header, records = cli.read_census(out)
        assert {f["kind"] for f in header["failures"]} == {"ceiling"}
        assert len(records) == 1

    def test_env_override(self, small_corpus, tmp_path, monkeypatch):
        monkeypatch.setenv("ETSURF_MAX_AUT_ORDER", "50")
        out = tmp_path / "o.jsonl"
        assert run("census", small_corpus, "-o", out) == cli.EXIT_CEILING

    def test_types(self, small_corpus, tmp_path):
        out = tmp_path / "o.jsonl"
        assert run("census", small_corpus, "-o", out, "--types", "1,2") == 0
        header, records = cli.read_census(out)
        assert header["types"] == ["1,2"]
        assert [r.fe_label for r in records] == ["(1,2).1"]

    def test_bad_types(self, small_corpus, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run("census", small_corpus, "-o", tmp_path / "o", "--types", "3,3")
        assert exc.value.code == 2

    def test_missing_corpus(self, tmp_path):
        assert run("census", tmp_path / "nope.g6", "-o", tmp_path / "o") == cli.EXIT_INPUT

    def test_malformed_corpus(self, tmp_path):
        corpus = tmp_path / "c.g6"
        corpus.write_text("C~\n!!!\n")
        assert run("census", corpus, "-o", tmp_path / "o") == cli.EXIT_INPUT


class TestVerifyFixture:
    def test_x21(self, capsys):
        from importlib import resources

        path = resources.files("etsurf").joinpath("data/x21.json")
        assert run("verify-fixture", path) == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "(28, 168, 112)" in out and "face-edge type = (2,1)" in out

    def test_invalid(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text(json.dumps({"faces": [[1, 2, 3], [1, 2, 4]]}))
        assert run("verify-fixture", p) == cli.EXIT_INPUT
        assert "expected 2" in capsys.readouterr().err

    def test_missing(self, tmp_path):
        assert run("verify-fixture", tmp_path / "nope.json") == cli.EXIT_INPUT

    def test_violation(self, tmp_path, monkeypatch):
        monkeypatch.setattr(verify, "surface_violations", lambda s: ["injected"])
        from importlib import resources

        path = resources.files("etsurf").joinpath("data/tetrahedron.json")
        assert run("verify-fixture", path) == cli.EXIT_MISMATCH


class TestOracleCheck:
    @pytest.mark.parametrize("code", [K4, PETERSEN, "Gr`HOk"])
    def test_match(self, code, capsys):
        assert run("oracle-check", code) == cli.EXIT_OK
        assert "match" in capsys.readouterr().out

    def test_mismatch(self, monkeypatch):
        monkeypatch.setattr(verify, "census_graph", lambda *a, **k: [])
        assert run("oracle-check", K4) == cli.EXIT_MISMATCH

    def test_bound(self):
        assert run("oracle-check", DESARGUES, "--oracle-bound", 10) == cli.EXIT_CEILING

    def test_not_cubic(self):
        assert run("oracle-check", "E?~o") == cli.EXIT_INPUT


class TestRelabelCheck:
    def test_heawood_seed_42(self, capsys):
        assert run("relabel-check", HEAWOOD, "--seed", 42) == cli.EXIT_OK
        assert "equal up to isomorphism" in capsys.readouterr().out

    def test_explicit_perm(self):
        assert run("relabel-check", K4, "--perm", "3,1,0,2") == cli.EXIT_OK

    @pytest.mark.parametrize("perm", ["0,0,1,2", "a,b"])
    def test_corrupt_perm(self, perm):
        with pytest.raises(SystemExit) as exc:
            run("relabel-check", K4, "--perm", perm)
        assert exc.value.code == cli.EXIT_INPUT

    def test_wrong_degree_perm(self):
        assert run("relabel-check", K4, "--perm", "0,1,2,3,4,5") == cli.EXIT_INPUT

    def test_ceiling(self):
        assert run("relabel-check", DESARGUES, "--max-aut-order", 100) == cli.EXIT_CEILING

    def test_mismatch(self, monkeypatch):
        real = verify.census_graph
        calls = []

        def flaky(g, *a, **k):
            calls.append(g)
            return real(g, *a, **k) if len(calls) == 1 else []

        monkeypatch.setattr(verify, "census_graph", flaky)
        assert run("relabel-check", K4, "--seed", 1) == cli.EXIT_MISMATCH


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "etsurf.cli", "oracle-check", K4],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "match" in proc.stdout


def test_help_documents_defaults(capsys):
    with pytest.raises(SystemExit):
        run("census", "--help")
    out = capsys.readouterr().out
    for flag in ("--max-aut-order", "--types", "--jobs", "ETSURF_JOBS"):
        assert flag in out
