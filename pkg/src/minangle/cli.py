"""Command-line interface for the clustering pipeline.

Subcommands compose through files: ``synth`` writes corpora,
``vectorize`` turns a corpus into a Matrix Market file, ``cluster``
produces a labels CSV and a report, ``evaluate`` scores labels against
ground truth, ``histogram`` inspects the component-size distribution,
and ``baseline`` runs one of the two reference spectral methods.

Exit codes: 0 success, 2 usage, 3 data error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import io as mio
from .corpus import build_vocabulary, tfidf
from .errors import DataError, MinAngleError, NumericalError
from .graph import SubspaceGraph, components, indicator, size_histogram
from .metrics import ari, nmi, purity
from .pipeline import BASELINE_CHOICES, PipelineConfig, run_mac
from .rref import rref
from .synth import ShortTextSpec, SubspaceMixtureSpec, gen_short_texts, gen_subspace_mixture

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


def _add_tfidf_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-df", type=int, default=None,
                        help="drop terms seen in fewer documents (default 1)")
    parser.add_argument("--no-normalize", action="store_true",
                        help="skip L2 normalization of matrix columns")
    parser.add_argument("--keep-case", action="store_true",
                        help="skip lowercasing during tokenization")
    parser.add_argument("--stop-words", default=None,
                        help="comma-separated words to drop during tokenization")


def _add_cluster_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=None, required=False,
                        help="number of clusters K")
    parser.add_argument("--rref-tol", type=float, default=None,
                        help="relative zero tolerance for the echelon reduction")
    parser.add_argument("--rank-tol", type=float, default=None,
                        help="relative singular-value cutoff for subspace bases")
    parser.add_argument("--scaling-k", type=int, default=None,
                        help="neighbour index for local scaling (capped at n-1)")
    parser.add_argument("--restarts", type=int, default=None,
                        help="k-means restarts")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minangle",
        description="Subspace clustering of very sparse high-dimensional data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_vec = sub.add_parser("vectorize", help="turn a corpus into a TF-IDF matrix")
    p_vec.add_argument("input", help="corpus file or directory")
    p_vec.add_argument("-o", "--output", required=True, help="output .mtx path")
    _add_tfidf_options(p_vec)

    p_clu = sub.add_parser("cluster", help="run the full clustering pipeline")
    p_clu.add_argument("input", help="corpus file/directory or .mtx matrix")
    p_clu.add_argument("-o", "--labels-out", default=None, help="labels CSV path")
    p_clu.add_argument("--report", default=None, help="report JSON path")
    p_clu.add_argument("--baseline", choices=BASELINE_CHOICES, default=None,
                       help="run a reference method instead of the main pipeline")
    p_clu.add_argument("--dump-dissimilarity", default=None,
                       help="write the subspace dissimilarity matrix as CSV")
    p_clu.add_argument("--config", default=None,
                       help="TOML or JSON file with defaults (flags win)")
    _add_cluster_options(p_clu)
    _add_tfidf_options(p_clu)

    p_eval = sub.add_parser("evaluate", help="score predicted labels against truth")
    p_eval.add_argument("predicted", help="CSV with id,cluster")
    p_eval.add_argument("truth", help="CSV with id,label")

    p_hist = sub.add_parser("histogram", help="component-size histogram of a corpus")
    p_hist.add_argument("input", help="corpus file/directory or .mtx matrix")
    p_hist.add_argument("-o", "--output", default=None,
                        help="histogram CSV path (default: stdout)")
    p_hist.add_argument("--chart", default=None,
                        help="also render a bar chart (.svg for SVG, else ASCII)")
    p_hist.add_argument("--rref-tol", type=float, default=None)
    _add_tfidf_options(p_hist)

    p_syn = sub.add_parser("synth", help="generate synthetic datasets")
    syn_sub = p_syn.add_subparsers(dest="kind", required=True)
    p_txt = syn_sub.add_parser("texts", help="labeled short-text corpus")
    p_txt.add_argument("--out-dir", required=True)
    p_txt.add_argument("--categories", type=int, default=None)
    p_txt.add_argument("--vocab-per-category", type=int, default=None)
    p_txt.add_argument("--shared-vocab", type=int, default=None)
    p_txt.add_argument("--docs-per-category", type=int, default=None)
    p_txt.add_argument("--words-min", type=int, default=None)
    p_txt.add_argument("--words-max", type=int, default=None)
    p_txt.add_argument("--shared-word-rate", type=float, default=None)
    p_txt.add_argument("--seed", type=int, default=0)
    p_sub = syn_sub.add_parser("subspaces", help="union-of-subspaces matrix")
    p_sub.add_argument("--out-dir", required=True)
    p_sub.add_argument("--ambient-dim", type=int, default=None)
    p_sub.add_argument("--subspaces", type=int, default=None)
    p_sub.add_argument("--subspace-dim", type=int, default=None)
    p_sub.add_argument("--points-per-subspace", type=int, default=None)
    p_sub.add_argument("--noise-sigma", type=float, default=None)
    p_sub.add_argument("--seed", type=int, default=0)

    p_base = sub.add_parser("baseline", help="run a reference spectral method")
    p_base.add_argument("input", help="corpus file/directory or .mtx matrix")
    p_base.add_argument("--method", choices=("sc-x", "sc-a"), required=True)
    p_base.add_argument("-o", "--labels-out", default=None, help="labels CSV path")
    p_base.add_argument("--report", default=None, help="report JSON path")
    p_base.add_argument("--config", default=None)
    _add_cluster_options(p_base)
    _add_tfidf_options(p_base)

    return parser


def _load_config_file(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise DataError(f"config file does not exist: {p}")
    if p.suffix.lower() == ".json":
        return json.loads(p.read_text(encoding="utf-8"))
    with p.open("rb") as handle:
        return tomllib.load(handle)


def _build_pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    """Defaults, then config file values, then explicit flags."""
    config = PipelineConfig()
    file_values = _load_config_file(args.config) if getattr(args, "config", None) else {}
    if getattr(args, "k", None) is None and "n_clusters" not in file_values:
        raise DataError("--k is required (or n_clusters in the config file)")
    valid = {f.name for f in dataclasses.fields(PipelineConfig)}
    unknown = set(file_values) - valid
    if unknown:
        raise DataError(f"unknown config keys: {sorted(unknown)}")
    for key, value in file_values.items():
        setattr(config, key, tuple(value) if key == "stop_words" and value else value)

    flag_map = {
        "k": "n_clusters",
        "rref_tol": "rref_tol",
        "rank_tol": "rank_tol",
        "scaling_k": "scaling_k",
        "restarts": "kmeans_restarts",
        "seed": "seed",
        "min_df": "min_df",
        "baseline": "baseline",
        "labels_out": "labels_out",
        "dump_dissimilarity": "dissimilarity_out",
    }
    for flag, field_name in flag_map.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(config, field_name, value)
    if getattr(args, "no_normalize", False):
        config.normalize_columns = False
    if getattr(args, "keep_case", False):
        config.lowercase = False
    stop_words = getattr(args, "stop_words", None)
    if stop_words:
        config.stop_words = tuple(w for w in stop_words.split(",") if w)
    if getattr(args, "report", None):
        config.report_out = args.report
    config.input_path = getattr(args, "input", None)
    return config


def _cmd_vectorize(args) -> int:
    docs = mio.read_documents(args.input)
    vocab = build_vocabulary(
        docs,
        min_df=args.min_df if args.min_df is not None else 1,
        lowercase=not args.keep_case,
        stop_words=tuple(args.stop_words.split(",")) if args.stop_words else None,
    )
    matrix = tfidf(
        docs,
        vocab,
        normalize=not args.no_normalize,
        lowercase=not args.keep_case,
        stop_words=tuple(args.stop_words.split(",")) if args.stop_words else None,
    )
    mio.write_tfidf(matrix, args.output)
    if matrix.dropped_ids:
        print(f"dropped {len(matrix.dropped_ids)} documents with no in-vocabulary terms",
              file=sys.stderr)
    print(f"wrote {matrix.n_features} x {matrix.n_observations} matrix to {args.output}")
    return EXIT_OK


def _cmd_cluster(args) -> int:
    config = _build_pipeline_config(args)
    assignment, report = run_mac(config)
    if report.metrics:
        _print_metric_table(report.metrics)
    counts = {}
    for label in assignment.observation_labels:
        counts[int(label)] = counts.get(int(label), 0) + 1
    sizes = ", ".join(f"{c}:{counts[c]}" for c in sorted(counts))
    print(f"clustered {report.n_observations} observations "
          f"({report.n_components} components) into {sizes}")
    return EXIT_OK


def _cmd_baseline(args) -> int:
    args.baseline = args.method
    args.dump_dissimilarity = None
    return _cmd_cluster(args)


def _print_metric_table(values: dict) -> None:
    print(f"{'Metric':<8}{'Value':>8}")
    for name, shown in (("purity", "Purity"), ("nmi", "NMI"), ("ari", "ARI")):
        if name in values:
            print(f"{shown:<8}{values[name]:>8.3f}")


def _cmd_evaluate(args) -> int:
    predicted = mio.read_labels_csv(args.predicted)
    truth = mio.read_labels_csv(args.truth)
    shared = [doc_id for doc_id in predicted if doc_id in truth]
    if not shared:
        raise DataError("predicted and truth files share no document ids")
    pred_labels = [predicted[i] for i in shared]
    truth_labels = [truth[i] for i in shared]
    _print_metric_table({
        "purity": purity(pred_labels, truth_labels),
        "nmi": nmi(pred_labels, truth_labels),
        "ari": ari(pred_labels, truth_labels),
    })
    return EXIT_OK


def _cmd_histogram(args) -> int:
    path = Path(args.input)
    if path.suffix.lower() == ".mtx":
        matrix = mio.read_tfidf(path).matrix
    else:
        docs = mio.read_documents(path)
        vocab = build_vocabulary(
            docs,
            min_df=args.min_df if args.min_df is not None else 1,
            lowercase=not args.keep_case,
        )
        matrix = tfidf(docs, vocab, normalize=not args.no_normalize,
                       lowercase=not args.keep_case).matrix
    tol = args.rref_tol if args.rref_tol is not None else 1e-10
    echelon = rref(matrix, tol=tol)
    partition = components(SubspaceGraph(indicator=indicator(echelon)))
    histogram = size_histogram(partition)
    if args.output:
        mio.write_histogram_csv(args.output, histogram)
        print(f"wrote histogram ({partition.n_components} components) to {args.output}")
    else:
        print("size,count")
        for size in sorted(histogram):
            print(f"{size},{histogram[size]}")
    if args.chart:
        mio.write_histogram_chart(args.chart, histogram)
    return EXIT_OK


def _cmd_synth_texts(args) -> int:
    spec = ShortTextSpec(seed=args.seed)
    overrides = {
        "n_categories": args.categories,
        "vocab_per_category": args.vocab_per_category,
        "shared_vocab": args.shared_vocab,
        "docs_per_category": args.docs_per_category,
        "shared_word_rate": args.shared_word_rate,
    }
    for name, value in overrides.items():
        if value is not None:
            setattr(spec, name, value)
    lo = args.words_min if args.words_min is not None else spec.words_per_doc[0]
    hi = args.words_max if args.words_max is not None else spec.words_per_doc[1]
    spec.words_per_doc = (lo, hi)
    docs = gen_short_texts(spec)
    # line-based corpora identify documents by line number, so the truth
    # file must use the same positional ids
    docs = [dataclasses.replace(d, id=str(i)) for i, d in enumerate(docs)]
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    mio.write_documents(out / "corpus.txt", docs)
    mio.write_truth_csv(out / "truth.csv", docs)
    print(f"wrote {len(docs)} documents to {out / 'corpus.txt'}")
    return EXIT_OK


def _cmd_synth_subspaces(args) -> int:
    spec = SubspaceMixtureSpec(seed=args.seed)
    overrides = {
        "ambient_dim": args.ambient_dim,
        "n_subspaces": args.subspaces,
        "subspace_dim": args.subspace_dim,
        "points_per_subspace": args.points_per_subspace,
        "noise_sigma": args.noise_sigma,
    }
    for name, value in overrides.items():
        if value is not None:
            setattr(spec, name, value)
    matrix, labels = gen_subspace_mixture(spec)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    from scipy import sparse

    from .corpus import TfidfMatrix

    ids = [f"p{i:05d}" for i in range(matrix.shape[1])]
    wrapped = TfidfMatrix(
        matrix=sparse.csc_matrix(matrix),
        terms=[f"dim{i}" for i in range(matrix.shape[0])],
        doc_ids=ids,
        labels=[f"s{k}" for k in labels],
    )
    mio.write_tfidf(wrapped, out / "data.mtx")
    mio.write_labels_csv(out / "truth.csv", ids, [f"s{k}" for k in labels],
                         header=("id", "label"))
    print(f"wrote {matrix.shape[0]} x {matrix.shape[1]} matrix to {out / 'data.mtx'}")
    return EXIT_OK


_HANDLERS = {
    "vectorize": _cmd_vectorize,
    "cluster": _cmd_cluster,
    "evaluate": _cmd_evaluate,
    "histogram": _cmd_histogram,
    "baseline": _cmd_baseline,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "synth":
            if args.kind == "texts":
                return _cmd_synth_texts(args)
            return _cmd_synth_subspaces(args)
        return _HANDLERS[args.command](args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MinAngleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
