import numpy as np
import pytest
from helpers import planted_theta

from splp.errors import InvalidInput, ParseError
from splp.harness import (
    CSV_HEADER,
    SweepConfig,
    cli_dispatch,
    ingest_weighted_edgelist,
    run_sweep,
    write_edgelist_tsv,
)
from splp.mmsb import ThetaMatrix, build_probability_matrix


def read_csv_columns(path):
    lines = path.read_text().strip().split("\n")
    assert lines[0] == CSV_HEADER
    return [line.split(",") for line in lines[1:]]


class TestRunSweep:
    def test_single_point_deterministic(self):
        cfg = SweepConfig(variable="n", grid=(200,), repeats=1, base_seed=3)
        first = run_sweep(cfg)
        second = run_sweep(cfg)
        assert first[0].mean_error == second[0].mean_error
        assert first[0].trial_statuses == ["ok"]

    def test_delta_zero_identity_blend(self):
        cfg = SweepConfig(
            variable="delta", grid=(0.0,), repeats=1, base_seed=5,
            b_kind="delta_blend", n=200,
        )
        records = run_sweep(cfg)
        assert np.isfinite(records[0].mean_error)

    def test_recovery_time_grows_subcubically(self):
        cfg = SweepConfig(variable="n", grid=(250, 1000), repeats=2, base_seed=9)
        records = run_sweep(cfg)
        ratio = records[1].mean_seconds / max(records[0].mean_seconds, 1e-9)
        assert ratio < 4.0**3

    def test_validation(self):
        with pytest.raises(InvalidInput):
            SweepConfig(variable="gamma", grid=(1,))
        with pytest.raises(InvalidInput):
            SweepConfig(variable="n", grid=())
        with pytest.raises(InvalidInput):
            SweepConfig(variable="n", grid=(100,), repeats=0)
        with pytest.raises(InvalidInput):
            SweepConfig(variable="delta", grid=(1.5,))


class TestIngest:
    def test_basic_parse(self, tmp_path):
        path = tmp_path / "g.tsv"
        path.write_text("a\tb\t0.5\nb\tc\t0.25\n")
        graph, names = ingest_weighted_edgelist(path)
        assert names == ["a", "b", "c"]
        assert graph.adj[0, 1] == 0.5
        assert graph.adj[1, 2] == 0.25
        assert graph.adj[0, 2] == 0.0
        assert np.all(graph.adj.diagonal() == 1.0)

    def test_duplicate_edge_keeps_max(self, tmp_path):
        path = tmp_path / "g.tsv"
        path.write_text("a\tb\t0.3\nb\ta\t0.7\n")
        graph, _ = ingest_weighted_edgelist(path)
        assert graph.adj[0, 1] == 0.7

    def test_listed_self_weight_kept(self, tmp_path):
        path = tmp_path / "g.tsv"
        path.write_text("a\ta\t0.4\na\tb\t0.2\n")
        graph, _ = ingest_weighted_edgelist(path)
        assert graph.adj[0, 0] == 0.4
        assert graph.adj[1, 1] == 1.0  # unlisted self-weight defaults

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("")
        with pytest.raises(ParseError, match="no edges"):
            ingest_weighted_edgelist(path)

    def test_malformed_line_reports_number(self, tmp_path):
        path = tmp_path / "g.tsv"
        path.write_text("a\tb\t0.5\na\tb\n")
        with pytest.raises(ParseError, match=":2:"):
            ingest_weighted_edgelist(path)

    def test_non_numeric_weight(self, tmp_path):
        path = tmp_path / "g.tsv"
        path.write_text("a\tb\thigh\n")
        with pytest.raises(ParseError):
            ingest_weighted_edgelist(path)

    def test_weight_above_two_rejected(self, tmp_path):
        path = tmp_path / "g.tsv"
        path.write_text("a\tb\t3.0\n")
        with pytest.raises(ParseError, match="wrong column"):
            ingest_weighted_edgelist(path)

    def test_weight_clamped_with_warning(self, tmp_path, capsys):
        path = tmp_path / "g.tsv"
        path.write_text("a\tb\t1.5\n")
        graph, _ = ingest_weighted_edgelist(path)
        assert graph.adj[0, 1] == 1.0
        assert "clamped" in capsys.readouterr().err

    def test_roundtrip_with_writer(self, tmp_path):
        rng = np.random.default_rng(0)
        adj = rng.random((6, 6)) * 0.9
        adj = 0.5 * (adj + adj.T)
        np.fill_diagonal(adj, 1.0)
        path = tmp_path / "g.tsv"
        write_edgelist_tsv(adj, path)
        graph, names = ingest_weighted_edgelist(path)
        assert names == [f"n{i}" for i in range(6)]
        np.testing.assert_allclose(graph.adj, adj, atol=1e-15)


class TestCli:
    def test_sweep_row_count(self, tmp_path):
        out = tmp_path / "s.csv"
        code = cli_dispatch(
            [
                "sweep", "--variable", "n", "--grid", "150,300",
                "--repeats", "2", "--seed", "7", "--out", str(out),
            ]
        )
        assert code == 0
        rows = read_csv_columns(out)
        assert len(rows) == 2
        assert [r[0] for r in rows] == ["n", "n"]

    def test_check_bounds_prints_min_n(self, capsys):
        code = cli_dispatch(
            [
                "check-bounds", "--k", "2", "--alpha", "1", "--kappa", "1",
                "--p", "0.1", "--epsilon", "0.01",
            ]
        )
        assert code == 0
        assert "min_n = 299" in capsys.readouterr().out

    def test_conc_check_runs(self, capsys):
        code = cli_dispatch(
            ["conc-check", "--n", "300", "--k", "3", "--trials", "5", "--seed", "1"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "c_vector_violations" in out
        assert "p3" in out

    def test_unknown_flag_exits_one(self, capsys):
        assert cli_dispatch(["sweep", "--wat"]) == 1

    def test_unknown_command_exits_one(self):
        assert cli_dispatch(["frobnicate"]) == 1

    def test_missing_input_file_exits_two(self, tmp_path):
        code = cli_dispatch(
            ["recover", "--in", str(tmp_path / "nope.tsv"), "--k", "3",
             "--out", str(tmp_path / "o.csv")]
        )
        assert code == 2

    def test_generate_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["generate", "--n", "40", "--k", "3", "--seed", "11"]
        assert cli_dispatch(args + ["--out", str(a)]) == 0
        assert cli_dispatch(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert len(a.read_text().strip().split("\n")) == 40

    def test_recover_roundtrip(self, tmp_path):
        from splp.evaluation import entrywise_error

        graph = tmp_path / "g.tsv"
        truth = tmp_path / "truth.csv"
        out = tmp_path / "theta.csv"
        assert cli_dispatch(
            ["generate", "--n", "200", "--k", "3", "--seed", "5",
             "--out", str(truth), "--graph-out", str(graph)]
        ) == 0
        assert cli_dispatch(
            ["recover", "--in", str(graph), "--k", "3", "--seed", "5",
             "--out", str(out)]
        ) == 0
        estimated = np.loadtxt(out, delimiter=",")
        assert estimated.shape == (200, 3)
        # the exported graph pins node order, so rows align with the truth
        error = entrywise_error(estimated, np.loadtxt(truth, delimiter=",")).error
        assert error < 0.4

    def test_diagonal_block_pins_node_order(self, tmp_path):
        # zero-weight edges are skipped, yet readers must see nodes in
        # natural order; the leading self-weight block guarantees it
        adj = np.eye(4)
        adj[0, 2] = adj[2, 0] = 0.5  # n1 would otherwise appear after n2
        path = tmp_path / "g.tsv"
        write_edgelist_tsv(adj, path, include_diagonal=True)
        _, names = ingest_weighted_edgelist(path)
        assert names == ["n0", "n1", "n2", "n3"]

    def test_ppi_end_to_end(self, tmp_path):
        # synthetic planted network: 20 nodes, 3 communities
        rng = np.random.default_rng(21)
        theta, _ = planted_theta(rng, 20, 3, eta=0.0)
        B = np.array([[0.9, 0.1, 0.1], [0.1, 0.9, 0.1], [0.1, 0.1, 0.9]])
        P = build_probability_matrix(ThetaMatrix(theta), B).adj
        graph = tmp_path / "ppi.tsv"
        write_edgelist_tsv(P, graph)
        out = tmp_path / "complexes.txt"
        code = cli_dispatch(
            ["ppi", "--in", str(graph), "--k", "3", "--merge-threshold", "0.8",
             "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert 1 <= len(lines) <= 3
        for line in lines:
            assert all(field.startswith("n") for field in line.split("\t"))
