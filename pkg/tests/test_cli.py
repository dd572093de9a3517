from __future__ import annotations

import json

import pytest

from oddpcf.cli import cli
from oddpcf.discharging import AuditReport
from oddpcf.formats import render_rotation
from oddpcf.generator import GeneratorSpec, generate


@pytest.fixture
def rot_file(tmp_path):
    g = generate(GeneratorSpec(skeleton=6, girth=10, policy="even", seed=1))
    path = tmp_path / "g.rot"
    path.write_text(render_rotation(g))
    return str(path)


class TestCli:
    def test_gen_outputs_rotation(self, capsys):
        assert cli(["gen", "--skeleton", "5", "--girth", "10", "--seed", "2"]) == 0
        out = capsys.readouterr().out
        assert all(":" in line for line in out.strip().splitlines())

    def test_gen_json(self, capsys):
        assert cli(["--format", "json", "gen", "--skeleton", "5",
                    "--girth", "10", "--seed", "2"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["schema"] == 1 and body["girth"] >= 10

    def test_faces_text(self, rot_file, capsys):
        assert cli(["faces", rot_file]) == 0
        assert "face 0" in capsys.readouterr().out

    def test_analyze_json(self, rot_file, capsys):
        assert cli(["--format", "json", "analyze", rot_file]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["vertices"]

    def test_detect(self, rot_file, capsys):
        assert cli(["detect", rot_file, "--theorem", "odd10"]) == 0
        capsys.readouterr()

    def test_discharge_json_totals(self, rot_file, capsys):
        assert cli(["--format", "json", "discharge", rot_file]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["totals"]["mu_double_prime"] == "-12/1"

    def test_solve(self, rot_file, capsys):
        assert cli(["solve", rot_file, "--mode", "odd"]) == 0
        assert "chromatic[odd]" in capsys.readouterr().out

    def test_color(self, rot_file, capsys):
        assert cli(["color", rot_file]) == 0
        assert "fallback=" in capsys.readouterr().out

    def test_stdin_input(self, rot_file, capsys, monkeypatch):
        import io
        text = open(rot_file).read()
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        assert cli(["faces", "-"]) == 0
        capsys.readouterr()

    def test_faces_renders_reference_walk(self, tmp_path, capsys):
        from conftest import ring_with_pendants
        g = ring_with_pendants(10, {0: 2, 4: 2, 6: 1, 7: 2})
        path = tmp_path / "walk.rot"
        path.write_text(render_rotation(g))
        assert cli(["faces", str(path)]) == 0
        out = capsys.readouterr().out
        assert "a4·a2b·a1·a3" in out

    def test_graph6_input(self, tmp_path, capsys):
        import networkx as nx
        g6 = nx.to_graph6_bytes(nx.cycle_graph(10), header=False).decode()
        path = tmp_path / "c10.g6"
        path.write_text(g6)
        assert cli(["solve", str(path), "--input-format", "graph6",
                    "--mode", "odd"]) == 0
        assert "chromatic[odd]" in capsys.readouterr().out

    def test_validation_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.rot"
        bad.write_text("0: 1\n")            # asymmetric
        assert cli(["faces", str(bad)]) == 1
        assert "MalformedRotation" in capsys.readouterr().err

    def test_missing_file_exit_code(self, capsys):
        assert cli(["faces", "/nonexistent/file.rot"]) == 1
        capsys.readouterr()

    def test_jobs_fanout(self, rot_file, capsys):
        assert cli(["faces", rot_file, rot_file, "--jobs", "2"]) == 0
        capsys.readouterr()

    def test_critical_exit_code(self, rot_file, capsys, monkeypatch):
        def fake_audit(g, theorem):
            return AuditReport(theorem=theorem, applicable=True,
                               critical=[("vertex", 0)],
                               negatives=[(("vertex", 0), -1)])
        monkeypatch.setattr("oddpcf.service.handlers.discharging.audit", fake_audit)
        assert cli(["discharge", rot_file]) == 2
        capsys.readouterr()
