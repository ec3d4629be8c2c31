import json

import pytest

from narramine.cli import main
from testkit import VACCINE_TEXT

ONE_LINE_VACCINE = " ".join(VACCINE_TEXT.split())


@pytest.fixture
def corpus_path(tmp_path):
    rows = [
        {"doc_id": "c1", "subcorpus": "conspiracy", "graphs": [ONE_LINE_VACCINE]},
        {
            "doc_id": "c2",
            "subcorpus": "conspiracy",
            "graphs": ["(d / destroy-01 :ARG0 (w / world) :ARG1 (t / truth))"],
        },
        {
            "doc_id": "m1",
            "subcorpus": "mainstream",
            "graphs": [
                "(d / develop-02 :ARG0 (c / company) :ARG1 (v / vaccine) :time (w / week))",
                "(t / test-01 :ARG1 (p / person) :quant 7)",
            ],
        },
        {
            "doc_id": "m2",
            "subcorpus": "mainstream",
            "graphs": ["(s / spread-03 :ARG1 (v / virus))"],
        },
    ]
    path = tmp_path / "corpus.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def elements_path(tmp_path, corpus_path):
    out = tmp_path / "elements.jsonl"
    assert main(["mine", corpus_path, "-o", str(out)]) == 0
    return str(out)


class TestMine:
    def test_writes_elements(self, corpus_path, tmp_path):
        out = tmp_path / "elements.jsonl"
        assert main(["mine", corpus_path, "-o", str(out)]) == 0
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        assert rows[0]["doc_id"] == "c1"
        assert {row["subcorpus"] for row in rows} == {"conspiracy", "mainstream"}
        kinds = {row["kind"] for row in rows}
        assert kinds == {"plot", "character", "setting", "entity"}

    def test_stdout_default(self, corpus_path, capsys):
        assert main(["mine", corpus_path]) == 0
        out = capsys.readouterr().out
        assert '"kind": "plot"' in out

    def test_skip_warning_on_stderr(self, tmp_path, capsys):
        row = {"doc_id": "d", "subcorpus": "x", "graphs": ["(a / apple)", "(bro ken"]}
        path = tmp_path / "c.jsonl"
        path.write_text(json.dumps(row) + "\n")
        assert main(["mine", str(path)]) == 0
        assert "skipped 1 malformed graph" in capsys.readouterr().err

    def test_missing_file_is_data_error(self, tmp_path):
        assert main(["mine", str(tmp_path / "nope.jsonl")]) == 2

    def test_bad_record_is_data_error(self, tmp_path, capsys):
        path = tmp_path / "c.jsonl"
        path.write_text("not json\n")
        assert main(["mine", str(path)]) == 2
        assert "error" in capsys.readouterr().err


class TestStats:
    def test_corpus_mode_includes_graph_counts(self, corpus_path, capsys):
        assert main(["stats", corpus_path]) == 0
        out = capsys.readouterr().out
        assert "subcorpus conspiracy" in out
        assert "documents: 2" in out
        assert "graphs: 3" in out  # mainstream side
        assert "plot: total=3 unique=3" in out

    def test_elements_mode(self, elements_path, capsys):
        assert main(["stats", elements_path]) == 0
        out = capsys.readouterr().out
        assert "documents: 2" in out
        assert "graphs:" not in out
        assert "plot: total=" in out


class TestCompare:
    def test_top_bottom_rendering(self, elements_path, capsys):
        assert main(["compare", elements_path, "--kind", "plot", "--top", "2"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("top (conspiracy)\n")
        assert "bottom (mainstream)" in out
        assert "(" in out and ")" in out  # label (z) rows

    def test_full_ranking_csv(self, elements_path, tmp_path, capsys):
        out_csv = tmp_path / "ranked.csv"
        assert (
            main(["compare", elements_path, "--kind", "character", "-o", str(out_csv)]) == 0
        )
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "kind,label,f_i,f_j,z"
        labels = [line.split(",")[1] for line in lines[1:]]
        assert set(labels) == {"doctor", "world", "truth", "virus", "company", "person", "vaccine"}
        zs = [float(line.split(",")[4]) for line in lines[1:]]
        assert zs == sorted(zs, reverse=True)

    def test_counts_json(self, elements_path, tmp_path):
        counts_path = tmp_path / "counts.json"
        assert (
            main(["compare", elements_path, "--kind", "plot", "--counts", str(counts_path)])
            == 0
        )
        data = json.loads(counts_path.read_text())
        assert data["kind"] == "plot"
        assert data["subcorpus_i"] == "conspiracy"
        assert data["n_i"] == 4  # prevent, spread, vaccinate, destroy
        assert data["n_j"] == 3  # develop, test, spread

    def test_swapped_subcorpora_flip_sign(self, elements_path, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["compare", elements_path, "--kind", "plot", "-o", str(a)])
        main(
            [
                "compare", elements_path, "--kind", "plot",
                "--i", "mainstream", "--j", "conspiracy", "-o", str(b),
            ]
        )
        za = {r.split(",")[1]: float(r.split(",")[4]) for r in a.read_text().splitlines()[1:]}
        zb = {r.split(",")[1]: float(r.split(",")[4]) for r in b.read_text().splitlines()[1:]}
        for label in za:
            assert za[label] == pytest.approx(-zb[label], abs=1e-12)

    def test_unknown_label_is_data_error(self, elements_path, capsys):
        assert (
            main(["compare", elements_path, "--kind", "plot", "--i", "x", "--j", "mainstream"])
            == 2
        )
        assert "error" in capsys.readouterr().err

    def test_usage_error_exit_code(self, elements_path, capsys):
        assert main(["compare", elements_path, "--kind", "nonsense"]) == 1

    def test_missing_subcommand_usage_error(self, capsys):
        assert main([]) == 1


class TestTriples:
    def test_csv_output(self, corpus_path, capsys):
        assert main(["triples", corpus_path, "--frame", "spread-03", "--side", "ARG1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "frame,side,argument,f_i,f_j,z"
        assert lines[1].startswith("spread-03,ARG1,virus,1,1,")

    def test_render_notation(self, corpus_path, capsys):
        assert (
            main(["triples", corpus_path, "--frame", "spread-03", "--side", "ARG1", "--render"])
            == 0
        )
        out = capsys.readouterr().out
        assert "spread-03 --" in out and "-> virus" in out

    def test_render_arg0_side(self, corpus_path, capsys):
        assert (
            main(["triples", corpus_path, "--frame", "prevent-01", "--side", "ARG0", "--render"])
            == 0
        )
        out = capsys.readouterr().out.strip()
        assert out.endswith("-- prevent-01")
        assert out.startswith("doctor <-")

    def test_unknown_frame_is_data_error(self, corpus_path, capsys):
        assert main(["triples", corpus_path, "--frame", "absent-01"]) == 2


class TestReport:
    def test_plot_data_without_coords(self, elements_path, capsys):
        assert main(["report", elements_path]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "kind,label,z,subcorpus,x,y"
        assert any(line.startswith("Plot,destroy,") for line in lines)
        assert all(line.endswith(",,") for line in lines[1:])

    def test_plot_data_with_coords(self, elements_path, tmp_path, capsys):
        coords = tmp_path / "coords.csv"
        coords.write_text(
            "label,x,y\n"
            + "\n".join(
                f"{label},0.0,1.0"
                for label in [
                    "prevent", "spread", "vaccinate", "destroy", "develop", "test",
                    "doctor", "world", "truth", "virus", "company", "person", "vaccine",
                    "date", "week", "Pfizer", "2021", "7",
                ]
            )
            + "\n",
            encoding="utf-8",
        )
        assert main(["report", elements_path, "--coords", str(coords)]) == 0
        lines = capsys.readouterr().out.splitlines()
        plot_rows = [line for line in lines if line.startswith("Plot,")]
        assert plot_rows and all(row.endswith(",0.0,1.0") for row in plot_rows)


class TestValidate:
    def test_clean_corpus(self, corpus_path, capsys):
        assert main(["validate", corpus_path]) == 0
        out = capsys.readouterr().out
        assert "documents: 4" in out
        assert "graphs: 5" in out
        assert "problems: 0" in out

    def test_malformed_graph_reported(self, tmp_path, capsys):
        rows = [
            {"doc_id": "a", "subcorpus": "x", "graphs": ["(a / apple)"]},
            {"doc_id": "b", "subcorpus": "x", "graphs": ["(broken"]},
        ]
        path = tmp_path / "c.jsonl"
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        assert main(["validate", str(path)]) == 2
        captured = capsys.readouterr()
        assert "problems: 1" in captured.out
        assert "graph 0" in captured.err

    def test_bad_record_reported_and_scan_continues(self, tmp_path, capsys):
        path = tmp_path / "c.jsonl"
        path.write_text(
            "garbage\n" + json.dumps({"doc_id": "a", "subcorpus": "x", "graphs": []}) + "\n"
        )
        assert main(["validate", str(path)]) == 2
        captured = capsys.readouterr()
        assert "documents: 1" in captured.out
        assert "problems: 1" in captured.out


class TestDeterminism:
    def test_byte_identical_outputs_across_runs(self, corpus_path, tmp_path):
        def run(tag):
            elements = tmp_path / f"elements-{tag}.jsonl"
            ranked = tmp_path / f"ranked-{tag}.csv"
            counts = tmp_path / f"counts-{tag}.json"
            plotdata = tmp_path / f"plot-{tag}.csv"
            triples = tmp_path / f"triples-{tag}.csv"
            assert main(["mine", corpus_path, "-o", str(elements)]) == 0
            assert main(
                ["compare", str(elements), "--kind", "plot",
                 "-o", str(ranked), "--counts", str(counts)]
            ) == 0
            assert main(["report", str(elements), "-o", str(plotdata)]) == 0
            assert main(
                ["triples", corpus_path, "--frame", "spread-03", "-o", str(triples)]
            ) == 0
            return tuple(
                p.read_bytes() for p in (elements, ranked, counts, plotdata, triples)
            )

        assert run("one") == run("two")
