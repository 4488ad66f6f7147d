import json

import pytest

from ecograph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def path3_csv(tmp_path):
    path = tmp_path / "p3.csv"
    path.write_text("source,target\na,b\nb,c\n")
    return path


class TestMetrics:
    def test_path3_report(self, capsys, path3_csv):
        code, out, _ = run(capsys, "metrics", str(path3_csv))
        assert code == 0
        report = json.loads(out)
        bundle = report["bundle"]
        assert bundle["n_nodes"] == 3
        assert bundle["density"] == pytest.approx(2 / 3, abs=1e-9)
        assert bundle["transitivity"] == 0.0
        assert len(report["indices"]) == 16
        assert report["simplification"] == {
            "loops_dropped": 0,
            "duplicates_merged": 0,
        }

    def test_report_byte_stable(self, capsys, path3_csv, tmp_path):
        out1 = tmp_path / "r1.json"
        out2 = tmp_path / "r2.json"
        assert run(capsys, "metrics", str(path3_csv), "--out", str(out1))[0] == 0
        assert run(capsys, "metrics", str(path3_csv), "--out", str(out2))[0] == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_survey_metadata_flows_in(self, capsys, path3_csv, tmp_path):
        survey = tmp_path / "survey.json"
        survey.write_text(
            json.dumps(
                {"respondents": 2, "max_reportable": 24, "avg_collaborations": 5.5}
            )
        )
        code, out, _ = run(capsys, "metrics", str(path3_csv), "--survey", str(survey))
        assert code == 0
        assert json.loads(out)["bundle"]["avg_collaborations"] == 5.5

    def test_parse_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a;b\n")
        code, _, err = run(capsys, "metrics", str(bad))
        assert code == 2
        assert "line 1" in err

    def test_too_small_exit_3(self, capsys, tmp_path):
        tiny = tmp_path / "tiny.csv"
        tiny.write_text("source,target\na,b\n")
        code, _, err = run(capsys, "metrics", str(tiny))
        assert code == 3


class TestIndex:
    def test_bundle_input(self, capsys, tmp_path):
        bundle = tmp_path / "bundle.json"
        bundle.write_text(
            json.dumps(
                {
                    "n_nodes": 100,
                    "n_edges": 300,
                    "avg_shortest_path": 3.0,
                    "central_point_dominance": 0.2,
                    "clustering": 0.3,
                    "density": 0.06,
                    "global_efficiency": 0.4,
                    "avg_eccentricity": 5.0,
                    "avg_degree": 6.0,
                    "modularity": 0.5,
                    "avg_edge_weight": 1.0,
                    "transitivity": 0.2,
                    "rich_club": 0.3,
                    "core_ratio": 0.6,
                    "avg_collaborations": 12.0,
                }
            )
        )
        code, out, _ = run(capsys, "index", "--bundle", str(bundle))
        assert code == 0
        indices = json.loads(out)["indices"]
        by_id = {entry["formula"]: entry for entry in indices}
        assert "rescaled" in by_id["C10"]
        assert by_id["C10R"]["value"] == pytest.approx(
            by_id["C10"]["rescaled"]
        )

    def test_requires_exactly_one_source(self, capsys, tmp_path):
        code, _, err = run(capsys, "index")
        assert code == 1
        code, _, err = run(capsys, "index", "--bundle", "x.json", "--input", "y.csv")
        assert code == 1


class TestSynth:
    def test_byte_identical_reruns(self, capsys, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        args = ["synth", "--family", "respondents", "--k", "10", "--seed", "7"]
        assert run(capsys, *args, "--out", str(d1))[0] == 0
        assert run(capsys, *args, "--out", str(d2))[0] == 0
        f1 = d1 / "respondents_010.csv"
        f2 = d2 / "respondents_010.csv"
        assert f1.read_bytes() == f2.read_bytes()
        assert (d1 / "manifest.json").read_bytes() == (d2 / "manifest.json").read_bytes()

    def test_k_out_of_range_exit_1(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "synth", "--family", "respondents", "--k", "0",
            "--out", str(tmp_path),
        )
        assert code == 1
        assert "[1, 200]" in err

    def test_synth_then_metrics(self, capsys, tmp_path):
        out_dir = tmp_path / "synth"
        assert run(
            capsys, "synth", "--family", "new-connections", "--k", "42",
            "--seed", "7", "--out", str(out_dir),
        )[0] == 0
        csv_path = out_dir / "new-connections_042.csv"
        code, out, _ = run(capsys, "metrics", str(csv_path))
        assert code == 0
        bundle = json.loads(out)["bundle"]
        assert 120 <= bundle["n_nodes"] <= 400

    def test_unknown_family_exit_1(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["synth", "--family", "bogus", "--k", "1", "--out", str(tmp_path)])
        assert exc.value.code == 1


class TestEvaluate:
    def test_empty_dir_exit_5(self, capsys, tmp_path):
        out = tmp_path / "scores"
        code, _, err = run(capsys, "evaluate", str(tmp_path), "--out", str(out))
        assert code == 5

    def test_small_pipeline(self, capsys, tmp_path):
        from ecograph.synthgen import (
            SweepFamily,
            derive_seed,
            generate_graph,
            sweep_params,
            write_corpus,
        )
        from dataclasses import replace

        family = SweepFamily.RESPONDENTS
        graphs = []
        for k in range(1, 5):
            cfg = sweep_params(family, k)
            cfg = replace(cfg, seed=derive_seed(7, family.value, k))
            graphs.append(generate_graph(cfg, family=family, k=k))
        corpus_dir = tmp_path / "corpus"
        write_corpus({family: graphs}, corpus_dir, master_seed=7)

        out_dir = tmp_path / "scores"
        code, out, _ = run(
            capsys, "evaluate", str(corpus_dir),
            "--formulas", "C7", "C10", "--plots", "--out", str(out_dir),
        )
        assert code == 0
        assert "winner:" in out
        assert (out_dir / "table2.csv").is_file()
        assert (out_dir / "table2.json").is_file()
        assert (out_dir / "series_C10_respondents.csv").is_file()
        assert (out_dir / "effectiveness.png").stat().st_size > 0


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
