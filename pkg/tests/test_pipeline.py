import dataclasses

import numpy as np
import pytest

from minangle.corpus import Document, build_vocabulary, tfidf
from minangle.errors import DataError, TooFewPoints
from minangle.metrics import ari, purity
from minangle.pipeline import (
    PipelineConfig,
    RunReport,
    cluster_matrix,
    run_mac,
)
from minangle.synth import SubspaceMixtureSpec, gen_subspace_mixture

from minangle import io as mio


def two_category_matrix():
    # "apple orchard" is the exact union of "apple" and "orchard", so each
    # category collapses into one connected component; vocabularies are
    # disjoint, making the two component subspaces orthogonal.
    docs = [
        Document("0", "apple orchard", "fruit"),
        Document("1", "apple", "fruit"),
        Document("2", "orchard", "fruit"),
        Document("3", "car engine", "vehicle"),
        Document("4", "car", "vehicle"),
        Document("5", "engine", "vehicle"),
    ]
    vocab = build_vocabulary(docs)
    return tfidf(docs, vocab), [d.label for d in docs], docs


class TestConfig:
    def test_validation(self):
        with pytest.raises(DataError):
            PipelineConfig(n_clusters=0).validate()
        with pytest.raises(DataError):
            PipelineConfig(rref_tol=0.0).validate()
        with pytest.raises(DataError):
            PipelineConfig(rank_tol=2.0).validate()
        with pytest.raises(DataError):
            PipelineConfig(baseline="bogus").validate()
        with pytest.raises(DataError):
            PipelineConfig(scaling_k=0).validate()
        PipelineConfig(n_clusters=3).validate()


class TestClusterMatrix:
    def test_disjoint_categories_recovered(self):
        tm, truth, _ = two_category_matrix()
        assignment, report, artifacts = cluster_matrix(tm, PipelineConfig(n_clusters=2))
        assert ari(assignment.observation_labels, truth) == 1.0
        assert set(assignment.observation_labels.tolist()) == {1, 2}
        assert report.n_components == 2
        assert artifacts.dissimilarity.values.shape == (2, 2)

    def test_k_one(self):
        tm, truth, _ = two_category_matrix()
        assignment, _, _ = cluster_matrix(tm, PipelineConfig(n_clusters=1))
        assert set(assignment.observation_labels.tolist()) == {1}
        assert purity(assignment.observation_labels, truth) == 0.5

    def test_deterministic(self):
        spec = SubspaceMixtureSpec(ambient_dim=40, n_subspaces=4, subspace_dim=2,
                                   points_per_subspace=12, seed=3)
        X, _ = gen_subspace_mixture(spec)
        config = PipelineConfig(n_clusters=4, seed=17)
        a1, _, _ = cluster_matrix(X, config)
        a2, _, _ = cluster_matrix(X, config)
        np.testing.assert_array_equal(a1.observation_labels, a2.observation_labels)

    def test_too_few_components(self):
        tm, _, _ = two_category_matrix()
        with pytest.raises(TooFewPoints):
            cluster_matrix(tm, PipelineConfig(n_clusters=3))

    def test_histogram_totals(self):
        spec = SubspaceMixtureSpec(ambient_dim=30, n_subspaces=3, subspace_dim=2,
                                   points_per_subspace=8, seed=1)
        X, _ = gen_subspace_mixture(spec)
        _, report, _ = cluster_matrix(X, PipelineConfig(n_clusters=3))
        assert sum(s * c for s, c in report.histogram.items()) == X.shape[1]
        assert report.n_observations == X.shape[1]
        assert report.n_features == X.shape[0]

    def test_subspace_labels_propagate(self):
        tm, _, _ = two_category_matrix()
        assignment, _, artifacts = cluster_matrix(tm, PipelineConfig(n_clusters=2))
        part = artifacts.partition
        for obs in range(tm.n_observations):
            comp = part.assignment[obs]
            assert assignment.observation_labels[obs] == assignment.subspace_labels[comp]

    def test_baseline_sc_x_selector(self):
        tm, truth, _ = two_category_matrix()
        config = PipelineConfig(n_clusters=2, baseline="sc-x", scaling_k=2)
        assignment, report, _ = cluster_matrix(tm, config)
        assert set(assignment.observation_labels.tolist()) <= {1, 2}
        assert "baseline_sc_x" in report.stage_seconds
        assert assignment.subspace_labels is None

    def test_baseline_sc_a_selector(self):
        tm, truth, _ = two_category_matrix()
        config = PipelineConfig(n_clusters=2, baseline="sc-a")
        assignment, report, _ = cluster_matrix(tm, config)
        assert ari(assignment.observation_labels, truth) == 1.0
        assert "baseline_sc_a" in report.stage_seconds


class TestRunMac:
    def test_end_to_end_text_input(self, tmp_path):
        _, _, docs = two_category_matrix()
        corpus = tmp_path / "corpus.txt"
        mio.write_documents(corpus, docs)
        config = PipelineConfig(
            n_clusters=2,
            input_path=str(corpus),
            labels_out=str(tmp_path / "labels.csv"),
            report_out=str(tmp_path / "report.json"),
            dissimilarity_out=str(tmp_path / "d.csv"),
        )
        assignment, report = run_mac(config)
        assert report.metrics is not None
        assert report.metrics["ari"] == 1.0
        labels = mio.read_labels_csv(tmp_path / "labels.csv")
        assert set(labels) == {"0", "1", "2", "3", "4", "5"}
        loaded = RunReport.from_dict(mio.read_report_json(tmp_path / "report.json"))
        assert loaded.metrics == report.metrics
        assert loaded.config == dataclasses.asdict(config)
        assert (tmp_path / "d.csv").is_file()

    def test_matrix_input_equivalent(self, tmp_path):
        tm, _, docs = two_category_matrix()
        corpus = tmp_path / "corpus.txt"
        mio.write_documents(corpus, docs)
        mio.write_tfidf(tm, tmp_path / "X.mtx")
        base = dict(n_clusters=2, seed=5)
        from_text, _ = run_mac(PipelineConfig(input_path=str(corpus), **base))
        from_mtx, _ = run_mac(PipelineConfig(input_path=str(tmp_path / "X.mtx"), **base))
        np.testing.assert_array_equal(
            from_text.observation_labels, from_mtx.observation_labels
        )

    def test_deterministic_output_files(self, tmp_path):
        _, _, docs = two_category_matrix()
        corpus = tmp_path / "corpus.txt"
        mio.write_documents(corpus, docs)
        out1 = tmp_path / "l1.csv"
        out2 = tmp_path / "l2.csv"
        for out in (out1, out2):
            run_mac(PipelineConfig(n_clusters=2, seed=9, input_path=str(corpus),
                                   labels_out=str(out)))
        assert out1.read_bytes() == out2.read_bytes()

    def test_missing_input(self):
        with pytest.raises(DataError):
            run_mac(PipelineConfig(n_clusters=2))
        with pytest.raises(DataError):
            run_mac(PipelineConfig(n_clusters=2, input_path="/nonexistent/file.txt"))
