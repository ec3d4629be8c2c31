import io
import json

import pytest

from narramine.corpus import (
    BadRecord,
    Document,
    MissingCoordinateWarning,
    display_label,
    elements_stats_report,
    emit_plot_data,
    load_corpus,
    read_coordinates,
    read_elements,
    stats_report,
    write_elements,
)
from narramine.mining import ElementKind, NarrativeElement
from narramine.stats import ZScoredElement
from testkit import VACCINE_TEXT


def corpus_file(tmp_path, lines, name="corpus.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def record(doc_id, graphs, subcorpus="conspiracy", **extra):
    return json.dumps(
        {"doc_id": doc_id, "subcorpus": subcorpus, "graphs": graphs, **extra},
        ensure_ascii=False,
    )


class TestLoadCorpus:
    def test_single_document(self, tmp_path):
        path = corpus_file(tmp_path, [record("d1", [VACCINE_TEXT.replace("\n", " ")])])
        reader = load_corpus(path)
        docs = list(reader)
        assert len(docs) == 1
        assert docs[0].doc_id == "d1"
        assert len(docs[0].graphs) == 1
        assert reader.graphs_kept == 1
        assert reader.graphs_skipped == 0

    def test_empty_file(self, tmp_path):
        path = corpus_file(tmp_path, [""])
        assert list(load_corpus(path)) == []

    def test_malformed_graph_skipped_with_counter(self, tmp_path):
        graphs = ["(a / apple)", "(broken", "(b / bear)"]
        path = corpus_file(tmp_path, [record("d1", graphs)])
        reader = load_corpus(path)
        (doc,) = list(reader)
        assert doc.graphs == ["(a / apple)", "(b / bear)"]
        assert reader.graphs_skipped == 1

    def test_optional_fields(self, tmp_path):
        path = corpus_file(
            tmp_path,
            [record("d1", ["(a / apple)"], seeds=["covid.19"], date="2020-05-01")],
        )
        (doc,) = list(load_corpus(path))
        assert doc.seeds == ["covid.19"]
        assert doc.date == "2020-05-01"

    @pytest.mark.parametrize(
        "line",
        [
            "not json",
            '"just a string"',
            '{"subcorpus": "x", "graphs": []}',
            '{"doc_id": "", "subcorpus": "x", "graphs": []}',
            '{"doc_id": "d", "graphs": []}',
            '{"doc_id": "d", "subcorpus": "", "graphs": []}',
            '{"doc_id": "d", "subcorpus": "x"}',
            '{"doc_id": "d", "subcorpus": "x", "graphs": "nope"}',
            '{"doc_id": "d", "subcorpus": "x", "graphs": [1]}',
            '{"doc_id": "d", "subcorpus": "x", "graphs": [], "date": "May 2020"}',
            '{"doc_id": "d", "subcorpus": "x", "graphs": [], "seeds": "covid"}',
        ],
    )
    def test_bad_records(self, tmp_path, line):
        path = corpus_file(tmp_path, [line])
        with pytest.raises(BadRecord):
            list(load_corpus(path))

    def test_duplicate_doc_id(self, tmp_path):
        path = corpus_file(
            tmp_path, [record("d1", ["(a / apple)"]), record("d1", ["(b / bear)"])]
        )
        with pytest.raises(BadRecord, match="duplicate"):
            list(load_corpus(path))

    def test_bad_record_reports_line_number(self, tmp_path):
        path = corpus_file(tmp_path, [record("d1", []), "oops"])
        with pytest.raises(BadRecord) as excinfo:
            list(load_corpus(path))
        assert excinfo.value.line == 2


class TestElementsIo:
    def test_write_read_round_trip(self, tmp_path):
        records = [
            ("d1", "conspiracy", NarrativeElement(ElementKind.PLOT, "destroy-01")),
            ("d1", "conspiracy", NarrativeElement(ElementKind.CHARACTER, "world", "ARG0")),
            ("d2", "mainstream", NarrativeElement(ElementKind.ENTITY, "Pfizer")),
        ]
        buf = io.StringIO()
        assert write_elements(records, buf) == 3
        path = tmp_path / "elements.jsonl"
        path.write_text(buf.getvalue(), encoding="utf-8")
        assert list(read_elements(str(path))) == records

    def test_schema_fields(self):
        buf = io.StringIO()
        write_elements(
            [("d1", "conspiracy", NarrativeElement(ElementKind.SETTING, "today", "time"))],
            buf,
        )
        row = json.loads(buf.getvalue())
        assert row == {
            "doc_id": "d1",
            "subcorpus": "conspiracy",
            "kind": "setting",
            "label": "today",
            "role_context": "time",
        }

    def test_read_rejects_invalid_rows(self, tmp_path):
        path = tmp_path / "elements.jsonl"
        path.write_text('{"doc_id": "d", "subcorpus": "x", "kind": "plot", "label": "noun"}\n')
        with pytest.raises(BadRecord):
            list(read_elements(str(path)))


class TestStatsReport:
    def test_vaccine_only_corpus(self):
        doc = Document("d1", "conspiracy", [VACCINE_TEXT])
        report = stats_report([doc])
        stats = report.per_subcorpus["conspiracy"]
        assert stats.documents == 1
        assert stats.graphs == 1
        assert stats.totals[ElementKind.PLOT] == 3
        assert stats.totals[ElementKind.CHARACTER] == 4
        assert len(stats.unique[ElementKind.CHARACTER]) == 3
        assert stats.totals[ElementKind.ENTITY] == 2

    def test_empty_corpus(self):
        report = stats_report([])
        assert report.per_subcorpus == {}

    def test_totals_match_hand_count(self):
        docs = [
            Document("a", "conspiracy", ["(s / say-01 :ARG0 (w / world))"]),
            Document(
                "b",
                "mainstream",
                ["(t / test-01 :ARG1 (v / virus))", "(d / develop-02 :ARG0 (c / company))"],
            ),
        ]
        report = stats_report(docs)
        con = report.per_subcorpus["conspiracy"]
        main = report.per_subcorpus["mainstream"]
        assert (con.documents, con.graphs) == (1, 1)
        assert (main.documents, main.graphs) == (1, 2)
        assert con.totals[ElementKind.PLOT] == 1
        assert main.totals[ElementKind.PLOT] == 2
        assert main.totals[ElementKind.CHARACTER] == 2

    def test_totals_never_below_unique(self):
        doc = Document("a", "conspiracy", ["(s / say-01 :ARG0 (w / world))"] * 3)
        report = stats_report([doc])
        stats = report.per_subcorpus["conspiracy"]
        for kind in ElementKind:
            assert stats.totals[kind] >= len(stats.unique[kind])

    def test_elements_report_counts_documents_once(self):
        records = [
            ("d1", "conspiracy", NarrativeElement(ElementKind.PLOT, "say-01")),
            ("d1", "conspiracy", NarrativeElement(ElementKind.PLOT, "say-01")),
            ("d2", "conspiracy", NarrativeElement(ElementKind.PLOT, "lie-01")),
        ]
        report = elements_stats_report(records)
        stats = report.per_subcorpus["conspiracy"]
        assert stats.documents == 2
        assert stats.totals[ElementKind.PLOT] == 3
        assert len(stats.unique[ElementKind.PLOT]) == 2


class TestDisplayLabel:
    @pytest.mark.parametrize(
        "label,expected",
        [
            ("prevent-01", "prevent"),
            ("government-organization", "government"),
            ("doctor", "doctor"),
            ("outbreak-29", "outbreak"),
            ("keep-up-05", "keep"),
            ("date-entity", "date"),
            ("have-degree-91", "have"),
            ("today", "today"),
        ],
    )
    def test_examples(self, label, expected):
        assert display_label(label) == expected

    def test_idempotent(self):
        for label in ["prevent-01", "government-organization", "keep-up-05", "doctor"]:
            once = display_label(label)
            assert display_label(once) == once


class TestEmitPlotData:
    def _ranked(self):
        return {
            ElementKind.PLOT: [
                ZScoredElement("destroy-01", 24.91, 50, 2),
                ZScoredElement("say-01", -43.95, 3, 80),
            ]
        }

    def test_rows_with_coordinates(self):
        coords = {"destroy": ("0.5", "1.5"), "say": ("-1.0", "2.0")}
        text = emit_plot_data(self._ranked(), 1, coords=coords)
        lines = text.splitlines()
        assert lines[0] == "kind,label,z,subcorpus,x,y"
        assert "Plot,destroy,24.91,conspiracy,0.5,1.5" in lines
        assert "Plot,say,-43.95,mainstream,-1.0,2.0" in lines

    def test_blank_coordinates_without_file(self):
        text = emit_plot_data(self._ranked(), 1)
        assert "Plot,destroy,24.91,conspiracy,,\n" in text

    def test_missing_coordinate_warns_but_emits(self):
        with pytest.warns(MissingCoordinateWarning):
            text = emit_plot_data(self._ranked(), 1, coords={"say": ("0", "0")})
        assert "Plot,destroy,24.91,conspiracy,,\n" in text

    def test_entity_labels_stay_verbatim(self):
        ranked = {ElementKind.ENTITY: [ZScoredElement("COVID-19", 47.36, 9, 1)]}
        text = emit_plot_data(ranked, 5)
        assert "Entity,COVID-19,47.36,conspiracy,,\n" in text

    def test_top_and_bottom_clamped(self):
        text = emit_plot_data(self._ranked(), 15)
        # 2 labels, top and bottom both emit them: 4 data rows
        assert len(text.splitlines()) == 5

    def test_read_coordinates_round_trip(self, tmp_path):
        path = tmp_path / "coords.csv"
        path.write_text("label,x,y\ndestroy,0.5,1.5\nsay,-1.0,2.0\n", encoding="utf-8")
        assert read_coordinates(str(path)) == {
            "destroy": ("0.5", "1.5"),
            "say": ("-1.0", "2.0"),
        }

    def test_read_coordinates_headerless(self, tmp_path):
        path = tmp_path / "coords.csv"
        path.write_text("destroy,0.5,1.5\n", encoding="utf-8")
        assert read_coordinates(str(path)) == {"destroy": ("0.5", "1.5")}
