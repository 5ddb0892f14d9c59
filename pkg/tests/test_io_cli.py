"""Graph file formats, report serialization, and the CLI surface."""

import json

import pytest

from decaycent import build_graph
from decaycent.cli import main
from decaycent.io import (
    GraphParseError,
    edgelist_text,
    graph_to_json_dict,
    parse_edgelist,
    read_graph,
    write_edgelist,
    write_graph_json,
)

P3_TEXT = "3 2\n0 1\n1 2\n"


class TestEdgelistFormat:
    def test_parse_p3(self):
        g = parse_edgelist(P3_TEXT)
        assert g.n == 3
        assert g.edges == ((0, 1), (1, 2))

    def test_round_trip_identity(self):
        g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)])
        assert parse_edgelist(edgelist_text(g)).edges == g.edges
        assert edgelist_text(parse_edgelist(edgelist_text(g))) == edgelist_text(g)

    def test_malformed_line_names_line_number(self):
        with pytest.raises(GraphParseError, match=":3:"):
            parse_edgelist("3 2\n0 1\na b\n", name="<t>")

    def test_wrong_edge_count(self):
        with pytest.raises(GraphParseError, match="promised 3"):
            parse_edgelist("3 3\n0 1\n1 2\n")

    def test_empty_file(self):
        with pytest.raises(GraphParseError, match="empty"):
            parse_edgelist("\n\n")

    def test_header_not_integers(self):
        with pytest.raises(GraphParseError, match="integers"):
            parse_edgelist("x y\n")


class TestJsonFormat:
    def test_round_trip(self, tmp_path):
        g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        path = tmp_path / "g.json"
        write_graph_json(g, path)
        assert read_graph(path).edges == g.edges

    def test_auto_detection(self, tmp_path):
        g = build_graph(3, [(0, 1), (1, 2)])
        as_json = tmp_path / "graph_without_extension"
        as_json.write_text(json.dumps(graph_to_json_dict(g)))
        assert read_graph(as_json).edges == g.edges
        as_edges = tmp_path / "graph.txt"
        write_edgelist(g, as_edges)
        assert read_graph(as_edges).edges == g.edges

    def test_bad_json_payload(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"nodes": 3}')
        with pytest.raises(GraphParseError):
            read_graph(path)


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text(P3_TEXT)
    return path


@pytest.fixture
def star_json(tmp_path):
    path = tmp_path / "star.json"
    path.write_text(json.dumps({"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]}))
    return path


class TestComputeCommand:
    def test_p3_closeness_column(self, p3_file, tmp_path, capsys):
        out = tmp_path / "table.csv"
        code = main(
            ["compute", "--graph", str(p3_file), "--grid-points", "3",
             "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        closeness = [line.split(",")[3] for line in lines[1:]]
        assert closeness == ["0.333333333", "0.5", "0.333333333"]

    def test_star_json_maximizers(self, star_json, tmp_path):
        out_json = tmp_path / "report.json"
        code = main(
            ["compute", "--graph", str(star_json), "--grid-points", "5",
             "--out", str(tmp_path / "t.csv"), "--json", str(out_json), "--full"]
        )
        assert code == 0
        report = json.loads(out_json.read_text())
        assert report["maximizers"]["by_degree"] == [0]
        assert report["maximizers"]["by_closeness"] == [0]
        assert all(v == [0] for v in report["maximizers"]["by_decay"].values())
        assert report["nodes"][0]["fvec"][0] == 3
        assert "version" in report and "conventions" in report

    def test_malformed_file_is_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("3 2\n0 1\na b\n")
        code = main(["compute", "--graph", str(bad)])
        assert code == 2
        assert ":3:" in capsys.readouterr().err

    def test_disconnected_is_data_error(self, tmp_path, capsys):
        path = tmp_path / "disc.txt"
        path.write_text("4 2\n0 1\n2 3\n")
        assert main(["compute", "--graph", str(path)]) == 2

    def test_stdout_default(self, p3_file, capsys):
        assert main(["compute", "--graph", str(p3_file), "--grid-points", "2"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("node,degree,farness,closeness")


class TestCompareCommand:
    def test_star_center_vs_leaf(self, star_json, capsys):
        code = main(["compare", "--graph", str(star_json), "-i", "0", "-j", "1"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdicts"]["profile_dominance"]["relation"] == "greater"
        assert report["sufficient_conditions"]["low_delta"]["satisfied"] == [1, 2, 3, 4]
        assert report["difference_coeffs"]["avec"] == [2, -2, 0]

    def test_p3_center_vs_endpoint(self, p3_file, capsys):
        code = main(["compare", "--graph", str(p3_file), "-i", "1", "-j", "0"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdicts"]["farness_dominance"]["relation"] == "greater"
        assert report["sufficient_conditions"]["high_delta"]["satisfied"] == [1, 2]
        assert report["difference_coeffs"]["bvec"] == [-1, 1]
        curve = report["dc_difference_curve"]["difference"]
        assert all(d > 0 for d in curve)

    def test_same_node_is_data_error(self, p3_file, capsys):
        assert main(["compare", "--graph", str(p3_file), "-i", "1", "-j", "1"]) == 2
        assert "distinct" in capsys.readouterr().err

    def test_unknown_node_is_data_error(self, p3_file, capsys):
        assert main(["compare", "--graph", str(p3_file), "-i", "0", "-j", "9"]) == 2
        assert "unknown node" in capsys.readouterr().err


class TestSimulateCommand:
    def test_requires_seed(self, tmp_path, capsys):
        code = main(
            ["simulate", "--n", "8", "--p", "0.4", "--trials", "2",
             "--out-dir", str(tmp_path / "o")]
        )
        assert code == 1
        assert "--seed" in capsys.readouterr().err

    def test_small_run_writes_outputs(self, tmp_path, capsys):
        out = tmp_path / "sim"
        code = main(
            ["simulate", "--n", "8", "--p", "0.4", "--trials", "3",
             "--seed", "5", "--grid-points", "7", "--out-dir", str(out)]
        )
        assert code == 0
        assert (out / "records.csv").exists()
        assert (out / "aggregate.csv").exists()
        assert (out / "summary.json").exists()

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "sim.cfg"
        cfg.write_text(
            "n = 8\np = 0.4\ntrials = 2\nseed = 9\ngrid_points = 5\n"
            f"out_dir = {tmp_path / 'from_file'}\n"
        )
        code = main(["simulate", "--config", str(cfg),
                     "--out-dir", str(tmp_path / "override")])
        assert code == 0
        assert (tmp_path / "override" / "summary.json").exists()
        assert not (tmp_path / "from_file").exists()
        summary = json.loads((tmp_path / "override" / "summary.json").read_text())
        assert summary["config"]["trials"] == 2

    def test_unknown_config_key_is_usage_error(self, tmp_path, capsys):
        cfg = tmp_path / "sim.cfg"
        cfg.write_text("bogus = 1\n")
        assert main(["simulate", "--config", str(cfg)]) == 1


class TestCheckCommand:
    def test_zero_graphs_empty_report_success(self, tmp_path, capsys):
        out = tmp_path / "check.json"
        code = main(["check", "--graphs", "0", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["properties"] == []

    def test_small_run_passes(self, capsys):
        code = main(["check", "--graphs", "12", "--n-max", "8", "--seed", "2"])
        assert code == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out
        assert "[FAIL]" not in out


class TestUsageErrors:
    def test_unknown_flag(self, capsys):
        assert main(["compute", "--nope"]) == 1

    def test_missing_subcommand(self, capsys):
        assert main([]) == 1
