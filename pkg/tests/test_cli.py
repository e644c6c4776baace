# -*- coding: utf-8 -*-
"""Tests for the command-line front end."""

import math

import pytest

from cli import main, parse_grid
from isingkit.common.errors import InputError
from isingkit.common.logger import init_logger
from isingkit.graph.core import complete_graph
from isingkit.model.io import model_to_dict
from isingkit.model.ising import IsingModel, model_from_edges
from tests.conftest import FIVE_NODE_EDGES, brute_marginals


def fields(line):
    """`a=1 b=2` -> {"a": "1", "b": "2"} (the first bare word is skipped)."""
    return dict(part.split("=", 1) for part in line.split() if "=" in part)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [line for line in out.splitlines() if line]


@pytest.fixture
def five_node_path(write_model):
    return write_model(model_to_dict(model_from_edges(5, [(i, j, 1.0) for i, j in FIVE_NODE_EDGES])))


class TestParseGrid:
    def test_inclusive_range(self):
        assert parse_grid("10:100:10", int) == list(range(10, 101, 10))
        assert parse_grid("1:2:0.5") == [1.0, 1.5, 2.0]

    def test_single_value_and_list(self):
        assert parse_grid("0") == [0.0]
        assert parse_grid("2,4,8", int) == [2, 4, 8]

    def test_two_parts_default_step(self):
        assert parse_grid("1:3", int) == [1, 2, 3]

    @pytest.mark.parametrize("text", ["a:b:c", "1:2:0", "5:1:1", "1:2:3:4", "1:2:0.5"])
    def test_invalid(self, text):
        with pytest.raises(InputError):
            parse_grid(text, int)


class TestPartition:
    def test_exact_conditioned_pair(self, capsys, write_model):
        path = write_model({"n": 2, "thresholds": [1.5, 1.0], "edges": [{"i": 0, "j": 1, "w": 1.0}]})
        code, lines = run(capsys, "partition", path, "--method", "exact")
        assert code == 0
        result = fields(lines[0])
        assert result["method"] == "exact"
        assert float(result["Z"]) == pytest.approx(41.31542, abs=5e-4)
        assert float(result["logZ"]) == pytest.approx(math.log(41.31542), abs=1e-5)

    def test_inner_single_node(self, capsys, write_model):
        code, lines = run(capsys, "partition", write_model({"n": 1}), "--method", "inner")
        assert code == 0
        result = fields(lines[0])
        assert result["method"] == "inner"
        assert float(result["logZ"]) == pytest.approx(math.log(2.0), rel=1e-15)
        assert float(result["Z"]) == pytest.approx(2.0, rel=1e-15)

    def test_curie_weiss_matches_exact_on_uniform_clique(self, capsys, write_model):
        m = IsingModel.create(complete_graph(12), thresholds=[0.2] * 12, default_weight=-0.15)
        path = write_model(model_to_dict(m))
        _, exact = run(capsys, "partition", path, "--method", "exact")
        _, cw = run(capsys, "partition", path, "--method", "curie-weiss")
        assert fields(cw[0])["method"] == "curie_weiss"
        assert float(fields(cw[0])["logZ"]) == pytest.approx(float(fields(exact[0])["logZ"]), rel=1e-10)

    @pytest.mark.parametrize("method", ["pairwise", "clique-exact", "mean-field"])
    def test_other_methods(self, capsys, five_node_path, method):
        code, lines = run(capsys, "partition", five_node_path, "--method", method)
        assert code == 0
        assert math.isfinite(float(fields(lines[0])["logZ"]))

    def test_cap_exceeded(self, capsys, write_model):
        code, lines = run(capsys, "partition", write_model({"n": 6}), "--cap", "5")
        assert code == 3
        assert lines == []

    def test_bad_model(self, capsys, write_model):
        code, _ = run(capsys, "partition", write_model({"n": 2, "thresholds": [0.0]}))
        assert code == 2

    def test_non_utf8_model(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_bytes(b'{"n": 1, "thresholds": [0.0], "edges": []}\xff\xfe')
        code, lines = run(capsys, "partition", str(path))
        assert code == 2
        assert lines == []

    def test_unknown_method_is_usage_error(self, write_model):
        with pytest.raises(SystemExit) as exc_info:
            main(["partition", write_model({"n": 1}), "--method", "bethe"])
        assert exc_info.value.code == 2


class TestIntervene:
    def test_per_clique_constants(self, capsys, five_node_path):
        code, lines = run(capsys, "intervene", five_node_path, "--set", "1=1", "--method", "exact")
        assert code == 0
        assert lines[0].startswith("normalizer method=exact ")
        cliques = [fields(line) for line in lines if line.startswith("clique ")]
        assert [c["nodes"] for c in cliques] == ["0,1", "0,4", "1,2,3"]
        assert cliques[2]["free"] == "2,3"
        assert float(cliques[2]["Z"]) == pytest.approx(26.5221, abs=1e-3)

    def test_empty_set_is_partition(self, capsys, five_node_path):
        _, intervened = run(capsys, "intervene", five_node_path, "--set", "")
        _, plain = run(capsys, "partition", five_node_path)
        assert float(fields(intervened[0])["logZ"]) == pytest.approx(float(fields(plain[0])["logZ"]), rel=1e-12)

    def test_marginals_match_brute_force(self, capsys, five_node_path):
        _, lines = run(capsys, "intervene", five_node_path, "--set", "1=1", "--marginals")
        expected = brute_marginals(model_from_edges(5, [(i, j, 1.0) for i, j in FIVE_NODE_EDGES]), {1: 1})
        rows = [fields(line) for line in lines if line.startswith("marginal ")]
        assert [int(r["node"]) for r in rows] == [0, 2, 3, 4]
        for r in rows:
            assert float(r["p"]) == pytest.approx(expected[int(r["node"])], abs=1e-12)

    def test_curie_weiss_method(self, capsys, five_node_path):
        code, lines = run(capsys, "intervene", five_node_path, "--set", "1=1", "--method", "cw", "--marginals")
        assert code == 0
        assert lines[0].startswith("normalizer method=curie_weiss_clique_product ")
        assert all(0.0 <= float(fields(line)["p"]) <= 1.0 for line in lines if line.startswith("marginal "))

    @pytest.mark.parametrize("spec", ["1", "1=2", "9=1", "x=1"])
    def test_malformed_set(self, capsys, five_node_path, spec):
        code, _ = run(capsys, "intervene", five_node_path, "--set", spec)
        assert code == 2

    def test_cap(self, capsys, write_model):
        code, _ = run(capsys, "intervene", write_model({"n": 2, "edges": [{"i": 0, "j": 1, "w": 1.0}]}), "--cap", "1")
        assert code == 3


class TestRank:
    def test_edgeless_graph(self, capsys, write_model):
        code, lines = run(capsys, "rank", write_model({"n": 3}), "--value", "1")
        assert code == 0
        assert lines == [
            "rank=1 node=0 value=1 impact=0.0",
            "rank=2 node=1 value=1 impact=0.0",
            "rank=3 node=2 value=1 impact=0.0",
        ]

    def test_star_center_first(self, capsys, write_model):
        edges = [{"i": 2, "j": leaf, "w": 1.0} for leaf in (0, 1, 3, 4)]
        code, lines = run(capsys, "rank", write_model({"n": 5, "edges": edges}), "--metric", "l1", "--table")
        assert code == 0
        assert fields(lines[0])["node"] == "2"

    def test_invalid_metric(self, capsys, write_model):
        code, _ = run(capsys, "rank", write_model({"n": 3}), "--metric", "kl")
        assert code == 2


class TestSimulate:
    ARGS = ["simulate", "--k-grid", "5:15:5", "--sigma-grid", "1:2:1", "--reps", "4", "--seed", "42", "--theta1", "0.3"]

    def test_zero_sigma_column(self, capsys):
        code, lines = run(capsys, "simulate", "--k-grid", "10:20:10", "--sigma-grid", "0", "--reps", "3")
        assert code == 0
        assert lines[0] == "k,sigma,rep,zbar_log,z_log,diff,ratio,theta0_bar,theta1_bar"
        assert len(lines) == 7
        assert all(row.split(",")[5] == "0.0" for row in lines[1:])

    def test_same_seed_same_bytes(self, tmp_path):
        first, second, parallel = (tmp_path / name for name in ("a.csv", "b.csv", "c.csv"))
        assert main(self.ARGS + ["--out", str(first)]) == 0
        assert main(self.ARGS + ["--out", str(second)]) == 0
        assert main(["--workers", "3"] + self.ARGS + ["--out", str(parallel)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert first.read_bytes() == parallel.read_bytes()

    def test_summary_and_exact(self, tmp_path):
        summary = tmp_path / "summary.csv"
        args = ["simulate", "--k-grid", "4:6:2", "--sigma-grid", "1", "--reps", "3", "--exact"]
        assert main(args + ["--out", str(tmp_path / "r.csv"), "--summary", str(summary)]) == 0
        assert len(summary.read_text(encoding="utf-8").splitlines()) == 3

    def test_unwritable_output(self, tmp_path):
        assert main(self.ARGS + ["--out", str(tmp_path / "no" / "such" / "dir.csv")]) == 4

    def test_bad_grid(self):
        assert main(["simulate", "--k-grid", "10:1:1"]) == 2

    def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "settings.toml"
        config.write_text("[simulation]\nclique_sizes = [3]\nsigmas = [1.0]\nreps = 2\n", encoding="utf-8")
        code, lines = run(capsys, "--config", str(config), "simulate")
        assert code == 0
        assert len(lines) == 3

    def test_non_utf8_config(self, tmp_path):
        config = tmp_path / "settings.toml"
        config.write_bytes(b"[simulation]\nreps = 2\n# \xff\n")
        assert main(["--config", str(config), "simulate", "--k-grid", "3"]) == 2


class TestHoeffding:
    def test_report_line(self, capsys):
        code, lines = run(capsys, "hoeffding", "--k", "10", "--sigma", "1", "--reps", "2000", "--seed", "3")
        assert code == 0
        report = fields(lines[0])
        assert report["passed"] == "true"
        assert float(report["t_stated"]) < float(report["t_bound"])

    def test_too_few_reps(self, capsys):
        code, _ = run(capsys, "hoeffding", "--k", "10", "--sigma", "1", "--reps", "10")
        assert code == 2


class TestLogging:
    def test_component_filter(self, capsys, tmp_path, write_model):
        log_file = tmp_path / "run.log"
        path = write_model({"n": 3, "edges": [{"i": 0, "j": 1, "w": 0.5}]})
        code, _ = run(
            capsys,
            "--log-level", "DEBUG",
            "--log-file", str(log_file),
            "--log-component", "partition.enumeration",
            "partition", path,
        )
        init_logger(enable_console=False)
        assert code == 0
        lines = [line for line in log_file.read_text(encoding="utf-8").splitlines() if line]
        assert any("exact partition over 3 nodes" in line for line in lines)
        assert all("isingkit.partition.enumeration" in line for line in lines)
