import json

import pytest

import confhodge.complexes as complexes
from confhodge import fixtures
from confhodge.arrangement import cech_sign
from confhodge.cli import main


@pytest.fixture
def p1_path():
    return str(fixtures.path("p1"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestValidate:
    def test_valid_fixture(self, capsys, p1_path):
        code, out, _ = run(capsys, "validate", p1_path)
        assert code == 0 and "valid" in out

    def test_all_bundled_fixtures(self, capsys):
        for name in fixtures.FIXTURE_NAMES:
            code, _, _ = run(capsys, "validate", str(fixtures.path(name)))
            assert code == 0, name

    def test_invariant_violation_exits_one(self, capsys, tmp_path):
        doc = json.loads(fixtures.path("p1").read_text())
        doc["products"].append({
            "left": "h", "right": "h", "result": [["1/1", "h"]],
        })
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "validate", str(bad))
        assert code == 1
        assert "degree additivity" in out and "(h,h)" in out

    def test_malformed_document_exits_two(self, capsys, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2

    def test_unknown_id_is_parse_error(self, capsys, tmp_path):
        doc = json.loads(fixtures.path("p1").read_text())
        doc["products"].append({
            "left": "h", "right": "zz", "result": [],
        })
        bad = tmp_path / "unknown.json"
        bad.write_text(json.dumps(doc))
        code, _, _ = run(capsys, "validate", str(bad))
        assert code == 2

    def test_missing_file_exits_two(self, capsys, tmp_path):
        code, _, _ = run(capsys, "validate", str(tmp_path / "nope.json"))
        assert code == 2


class TestCompute:
    def test_open_route_p1_pairs(self, capsys, p1_path, tmp_path):
        out_file = tmp_path / "out.json"
        code, _, _ = run(
            capsys, "compute", "--algebra", p1_path, "--n", "2",
            "--graph", "complete", "--route", "open", "--output", str(out_file),
        )
        assert code == 0
        doc = json.loads(out_file.read_text())
        assert doc["entries"] == [[0, 0, 0, 0, 1], [2, 2, 1, 1, 1]]
        assert doc["metadata"]["route"] == "open"

    def test_open_route_p1_triples(self, capsys, p1_path, tmp_path):
        out_file = tmp_path / "out.json"
        code, _, _ = run(
            capsys, "compute", "--algebra", p1_path, "--n", "3",
            "--graph", "complete", "--route", "open", "--output", str(out_file),
        )
        assert code == 0
        doc = json.loads(out_file.read_text())
        assert doc["entries"] == [[0, 0, 0, 0, 1], [3, 4, 2, 2, 1]]

    def test_byte_identical_across_runs_and_jobs(self, capsys, p1_path, tmp_path):
        blobs = []
        for k, jobs in enumerate(["1", "2", "1"]):
            out_file = tmp_path / f"out{k}.json"
            code, _, _ = run(
                capsys, "compute", "--algebra", p1_path, "--n", "3",
                "--graph", "complete", "--route", "all", "--jobs", jobs,
                "--output", str(out_file),
            )
            assert code == 0
            blobs.append(tuple(
                (tmp_path / f"out{k}.{route}.json").read_bytes()
                for route in ("relative", "open", "kriz")
            ))
        assert blobs[0] == blobs[1] == blobs[2]

    def test_kriz_partial_graph_exits_three(self, capsys, p1_path, tmp_path):
        code, _, err = run(
            capsys, "compute", "--algebra", p1_path, "--n", "3",
            "--graph", "1-2", "--route", "kriz", "--output", str(tmp_path / "x.json"),
        )
        assert code == 3 and "complete" in err

    def test_all_routes_partial_graph_skips_kriz(self, capsys, p1_path, tmp_path):
        out_file = tmp_path / "out.json"
        code, _, _ = run(
            capsys, "compute", "--algebra", p1_path, "--n", "3",
            "--graph", "1-2", "--route", "all", "--output", str(out_file),
        )
        assert code == 0
        assert (tmp_path / "out.relative.json").exists()
        assert (tmp_path / "out.open.json").exists()
        assert not (tmp_path / "out.kriz.json").exists()

    def test_refuses_overwrite_without_force(self, capsys, p1_path, tmp_path):
        out_file = tmp_path / "out.json"
        args = [
            "compute", "--algebra", p1_path, "--n", "2",
            "--graph", "complete", "--route", "open", "--output", str(out_file),
        ]
        assert run(capsys, *args)[0] == 0
        assert run(capsys, *args)[0] == 1
        assert run(capsys, *args, "--force")[0] == 0

    def test_bad_graph_spec_exits_two(self, capsys, p1_path, tmp_path):
        code, _, _ = run(
            capsys, "compute", "--algebra", p1_path, "--n", "2",
            "--graph", "1+2", "--route", "open", "--output", str(tmp_path / "x.json"),
        )
        assert code == 2


class TestOracle:
    def test_p1_pairs(self, capsys, p1_path):
        code, out, _ = run(
            capsys, "oracle", "--algebra", p1_path, "--n", "2", "--graph", "complete",
        )
        assert code == 0
        assert "u^2v^2 + uv" in out and "equal" in out

    def test_edgeless(self, capsys, p1_path):
        code, out, _ = run(
            capsys, "oracle", "--algebra", p1_path, "--n", "2", "--graph", "",
        )
        assert code == 0

    def test_genus2_pairs(self, capsys):
        code, out, _ = run(
            capsys, "oracle", "--algebra", str(fixtures.path("genus2")),
            "--n", "2", "--graph", "complete",
        )
        assert code == 0 and "equal" in out


class TestCheck:
    def test_p1_triples_passes(self, capsys, p1_path):
        code, out, _ = run(
            capsys, "check", "--algebra", p1_path, "--n", "3", "--graph", "complete",
        )
        assert code == 0
        assert "cross-route" in out and "FAIL" not in out

    def test_elliptic_pairs_passes(self, capsys):
        code, out, _ = run(
            capsys, "check", "--algebra", str(fixtures.path("elliptic")),
            "--n", "2", "--graph", "complete",
        )
        assert code == 0 and "FAIL" not in out

    def test_every_bundled_fixture_passes(self, capsys):
        for name in fixtures.FIXTURE_NAMES:
            code, out, _ = run(
                capsys, "check", "--algebra", str(fixtures.path(name)),
                "--n", "2", "--graph", "complete",
            )
            assert code == 0 and "FAIL" not in out, name

    def test_partial_graph_skips_cross_route(self, capsys, p1_path):
        code, out, _ = run(
            capsys, "check", "--algebra", p1_path, "--n", "3", "--graph", "1-2,2-3",
        )
        assert code == 0 and "cross-route" not in out

    def test_injected_sign_bug_reported(self, capsys, p1_path, monkeypatch):
        def bad_sign(g, mask, pos):
            s = cech_sign(g, mask, pos)
            return -s if (mask, pos) == (0b001, 1) else s

        monkeypatch.setattr(complexes.arrangement, "cech_sign", bad_sign)
        code, out, _ = run(
            capsys, "check", "--algebra", p1_path, "--n", "3", "--graph", "complete",
        )
        assert code == 1
        assert "delta^2" in out
