import numpy as np
import pytest
from scipy import sparse

from minangle import io as mio
from minangle.corpus import Document, TfidfMatrix, build_vocabulary, tfidf
from minangle.errors import DataError
from minangle.pipeline import RunReport


class TestDocuments:
    def test_line_file_with_labels(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("red apple\tfruit\nfast car\tvehicle\nplain line\n", encoding="utf-8")
        docs = mio.read_documents(path)
        assert [d.text for d in docs] == ["red apple", "fast car", "plain line"]
        assert [d.label for d in docs] == ["fruit", "vehicle", None]
        assert [d.id for d in docs] == ["0", "1", "2"]

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("one\n\n   \ntwo\n", encoding="utf-8")
        docs = mio.read_documents(path)
        assert [d.text for d in docs] == ["one", "two"]
        assert [d.id for d in docs] == ["0", "3"]

    def test_directory(self, tmp_path):
        (tmp_path / "a.txt").write_text("alpha beta", encoding="utf-8")
        (tmp_path / "b.txt").write_text("gamma", encoding="utf-8")
        docs = mio.read_documents(tmp_path)
        assert [d.id for d in docs] == ["a.txt", "b.txt"]
        assert docs[0].label is None

    def test_missing_path(self, tmp_path):
        with pytest.raises(DataError):
            mio.read_documents(tmp_path / "nope.txt")

    def test_write_read_round_trip(self, tmp_path):
        docs = [Document("0", "red apple", "fruit"), Document("1", "no label")]
        path = tmp_path / "out.txt"
        mio.write_documents(path, docs)
        loaded = mio.read_documents(path)
        assert [(d.text, d.label) for d in loaded] == [
            ("red apple", "fruit"), ("no label", None)
        ]


class TestMatrixMarket:
    def make_matrix(self):
        docs = [
            Document("doc-a", "red apple", "fruit"),
            Document("doc-b", "fast car", "vehicle"),
        ]
        vocab = build_vocabulary(docs)
        return tfidf(docs, vocab)

    def test_round_trip(self, tmp_path):
        original = self.make_matrix()
        path = tmp_path / "X.mtx"
        mio.write_tfidf(original, path)
        assert (tmp_path / "X.mtx.json").is_file()
        loaded = mio.read_tfidf(path)
        np.testing.assert_allclose(
            loaded.matrix.toarray(), original.matrix.toarray(), atol=1e-12
        )
        assert loaded.terms == original.terms
        assert loaded.doc_ids == original.doc_ids
        assert loaded.labels == original.labels

    def test_read_without_sidecar(self, tmp_path):
        original = self.make_matrix()
        path = tmp_path / "X.mtx"
        mio.write_tfidf(original, path)
        (tmp_path / "X.mtx.json").unlink()
        loaded = mio.read_tfidf(path)
        assert loaded.doc_ids == ["0", "1"]
        assert loaded.labels is None

    def test_missing_matrix(self, tmp_path):
        with pytest.raises(DataError):
            mio.read_tfidf(tmp_path / "absent.mtx")

    def test_shape_mismatch_detected(self, tmp_path):
        original = self.make_matrix()
        path = tmp_path / "X.mtx"
        mio.write_tfidf(original, path)
        sidecar = tmp_path / "X.mtx.json"
        sidecar.write_text('{"terms": ["just-one"], "doc_ids": ["a", "b"]}',
                           encoding="utf-8")
        with pytest.raises(DataError):
            mio.read_tfidf(path)


class TestLabelsCsv:
    def test_round_trip_and_format(self, tmp_path):
        path = tmp_path / "labels.csv"
        mio.write_labels_csv(path, ["a", "b"], [1, 2])
        raw = path.read_bytes()
        assert raw == b"id,cluster\na,1\nb,2\n"
        assert mio.read_labels_csv(path) == {"a": "1", "b": "2"}

    def test_empty_file(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(DataError):
            mio.read_labels_csv(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("id,cluster\n", encoding="utf-8")
        with pytest.raises(DataError):
            mio.read_labels_csv(path)


class TestHistogramOutputs:
    def test_csv(self, tmp_path):
        path = tmp_path / "hist.csv"
        mio.write_histogram_csv(path, {3: 2, 1: 7})
        assert path.read_text(encoding="utf-8") == "size,count\n1,7\n3,2\n"

    def test_ascii_chart(self, tmp_path):
        path = tmp_path / "hist.txt"
        mio.write_histogram_chart(path, {1: 10, 2: 5})
        text = path.read_text(encoding="utf-8")
        assert "#" in text and "size" in text

    def test_svg_chart(self, tmp_path):
        path = tmp_path / "hist.svg"
        mio.write_histogram_chart(path, {1: 10, 2: 5})
        text = path.read_text(encoding="utf-8")
        assert text.startswith("<svg") and "<rect" in text


class TestReport:
    def test_lossless_round_trip(self, tmp_path):
        report = RunReport(
            n_observations=10,
            n_features=4,
            n_components=3,
            histogram={1: 2, 4: 2},
            stage_seconds={"rref": 0.5},
            metrics={"ari": 1.0},
            config={"n_clusters": 2},
        )
        path = tmp_path / "report.json"
        mio.write_report_json(path, report.to_dict())
        loaded = RunReport.from_dict(mio.read_report_json(path))
        assert loaded == report

    def test_dissimilarity_csv(self, tmp_path):
        values = np.array([[0.0, 0.25], [0.25, 0.0]])
        path = tmp_path / "d.csv"
        mio.write_dissimilarity_csv(path, values)
        loaded = np.loadtxt(path, delimiter=",")
        np.testing.assert_allclose(loaded, values)
