import json

import pytest

from amr_adapter.cli import main


@pytest.fixture
def raw_path(tmp_path):
    rows = [
        {"doc_id": "a", "subcorpus": "conspiracy", "text": "Elites control the media."},
        {"doc_id": "b", "subcorpus": "mainstream", "text": "Scientists developed a vaccine."},
    ]
    path = tmp_path / "raw.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return str(path)


class TestParseCommand:
    def test_writes_corpus(self, raw_path, tmp_path, capsys):
        out = tmp_path / "corpus.jsonl"
        assert main(["parse", raw_path, "-o", str(out)]) == 0
        rows = [json.loads(line) for line in out.read_text().splitlines()]
        assert [r["doc_id"] for r in rows] == ["a", "b"]
        assert all(len(r["graphs"]) == 1 for r in rows)
        assert "documents=2" in capsys.readouterr().err

    def test_stdout_default(self, raw_path, capsys):
        assert main(["parse", raw_path]) == 0
        assert '"graphs"' in capsys.readouterr().out

    def test_missing_file_is_data_error(self, tmp_path):
        assert main(["parse", str(tmp_path / "nope.jsonl")]) == 2

    def test_bad_record_is_data_error(self, tmp_path, capsys):
        path = tmp_path / "raw.jsonl"
        path.write_text('{"doc_id": "a"}\n')
        assert main(["parse", str(path)]) == 2
        assert "error" in capsys.readouterr().err

    def test_usage_error(self):
        assert main(["parse", "x", "--backend", "nonsense"]) == 1

    def test_seq2seq_without_model_dir_is_data_error(self, raw_path):
        assert main(["parse", raw_path, "--backend", "seq2seq"]) == 2


class TestProjectCommand:
    def test_project_labels_file(self, tmp_path, capsys):
        labels = tmp_path / "labels.txt"
        labels.write_text("doctor\nvirus\nworld\n", encoding="utf-8")
        out = tmp_path / "coords.csv"
        assert main(["project", str(labels), "-o", str(out), "--seed", "3"]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("#") and "seed=3" in lines[0]
        assert lines[1] == "label,x,y"
        assert len(lines) == 5

    def test_transformer_without_model_dir_is_data_error(self, tmp_path):
        labels = tmp_path / "labels.txt"
        labels.write_text("doctor\n", encoding="utf-8")
        assert main(["project", str(labels), "--embeddings", "transformer"]) == 2
