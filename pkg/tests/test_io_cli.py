import json

import pytest

from commhide import io
from commhide.cli import main
from commhide.graph import CommunityPartition, Graph


class TestEdgeListIO:
    def test_roundtrip(self, tmp_path):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        path = tmp_path / "g.edges"
        io.write_edge_list(path, g)
        g2, name_to_id, id_to_name = io.read_edge_list(path)
        assert g2 == g
        assert id_to_name == ["0", "1", "2", "3"]

    def test_names_comments_blank_lines(self, tmp_path):
        path = tmp_path / "g.edges"
        path.write_text("# header\nalice bob\n\nbob carol # trailing\n")
        g, name_to_id, id_to_name = io.read_edge_list(path)
        assert g.n == 3 and g.edge_count == 2
        assert g.has_edge(name_to_id["alice"], name_to_id["bob"])

    def test_directed_duplicates_collapse(self, tmp_path):
        path = tmp_path / "g.edges"
        path.write_text("a b\nb a\na b\n")
        g, _, _ = io.read_edge_list(path)
        assert g.edge_count == 1

    def test_self_loop_rejected_with_line_number(self, tmp_path):
        path = tmp_path / "g.edges"
        path.write_text("a b\nc c\n")
        with pytest.raises(io.ParseError, match=r":2:"):
            io.read_edge_list(path)

    def test_wrong_field_count(self, tmp_path):
        path = tmp_path / "g.edges"
        path.write_text("a b c\n")
        with pytest.raises(io.ParseError, match=r":1:"):
            io.read_edge_list(path)


class TestPartitionIO:
    def test_roundtrip(self, tmp_path):
        p = CommunityPartition([0, 1, 1])
        path = tmp_path / "p.tsv"
        io.write_partition(path, p, ["x", "y", "z"])
        p2 = io.read_partition(path, {"x": 0, "y": 1, "z": 2})
        assert p2 == p

    def test_unknown_node(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("x\t0\nq\t1\n")
        with pytest.raises(io.ParseError, match=r":2:"):
            io.read_partition(path, {"x": 0, "y": 1})

    def test_duplicate_node(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("x\t0\nx\t1\n")
        with pytest.raises(io.ParseError, match="twice"):
            io.read_partition(path, {"x": 0})

    def test_missing_coverage(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("x\t0\n")
        with pytest.raises(io.ParseError, match="missing"):
            io.read_partition(path, {"x": 0, "y": 1})

    def test_non_integer_community(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("x\tred\n")
        with pytest.raises(io.ParseError, match="integer"):
            io.read_partition(path, {"x": 0})


class TestCLI:
    def test_generate_detect_deceive_evaluate(self, tmp_path, capsys):
        edges = tmp_path / "g.edges"
        truth = tmp_path / "truth.tsv"
        part = tmp_path / "detected.tsv"
        out = tmp_path / "rewired.edges"
        plan = tmp_path / "plan.jsonl"

        assert main([
            "generate", "--n", "120", "--k", "4", "--mu", "0.2",
            "--avg-deg", "8", "--seed", "1",
            "--out", str(edges), "--partition-out", str(truth),
        ]) == 0
        assert main(["detect", str(edges), "--seed", "0", "--out", str(part)]) == 0
        assert main([
            "deceive", str(edges), "--target", "largest", "--seed", "0",
            "--budget-frac", "0.3", "--out", str(out), "--plan-out", str(plan),
        ]) == 0
        capsys.readouterr()
        assert main([
            "evaluate", str(edges), str(out), "--target", "largest", "--seed", "0",
        ]) == 0
        report = json.loads(capsys.readouterr().out)
        assert set(report) >= {"nmi", "mnmi", "comm_splits", "comm_uniformity"}
        assert 0.0 <= report["nmi"] <= 1.0

        records = [json.loads(line) for line in plan.read_text().splitlines()]
        assert records and all(r["kind"] in ("add", "del") for r in records)
        assert all("seed" in r and "budget" in r for r in records)

    def test_deceive_with_external_partition(self, tmp_path):
        edges = tmp_path / "g.edges"
        truth = tmp_path / "truth.tsv"
        out = tmp_path / "rewired.edges"
        main([
            "generate", "--n", "60", "--k", "3", "--mu", "0.2", "--avg-deg", "6",
            "--out", str(edges), "--partition-out", str(truth),
        ])
        assert main([
            "deceive", str(edges), "--detector", "external",
            "--partition-in", str(truth), "--target", "0",
            "--method", "dice", "--out", str(out),
        ]) == 0
        g2, _, _ = io.read_edge_list(out)
        assert g2.n == 60

    def test_hide_single_node(self, tmp_path, capsys):
        edges = tmp_path / "g.edges"
        main([
            "generate", "--n", "60", "--k", "3", "--mu", "0.2", "--avg-deg", "6",
            "--out", str(edges),
        ])
        capsys.readouterr()
        assert main(["hide-nodes", str(edges), "--target", "5", "--seed", "0"]) == 0
        out = capsys.readouterr().out
        assert "hidden=" in out

    def test_parse_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.edges"
        bad.write_text("a b c\n")
        assert main(["detect", str(bad)]) == 1
        assert ":1:" in capsys.readouterr().err

    def test_unknown_target_community(self, tmp_path, capsys):
        edges = tmp_path / "g.edges"
        main([
            "generate", "--n", "60", "--k", "3", "--mu", "0.2", "--avg-deg", "6",
            "--out", str(edges),
        ])
        assert main([
            "deceive", str(edges), "--target", "999",
            "--out", str(tmp_path / "x.edges"),
        ]) == 1

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            main(["--version"])
        assert "commhide" in capsys.readouterr().out
