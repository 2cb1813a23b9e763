"""File formats shared by the CLI stages.

Corpora are plain UTF-8 text (one document per line, optional trailing
tab-separated label) or a directory with one file per document. The
TF-IDF matrix travels as Matrix Market coordinate format plus a JSON
sidecar (``<name>.mtx.json``) that records term and document identity.
Labels move as two-column CSV with a header and LF endings.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
from scipy import io as scipy_io
from scipy import sparse

from .corpus import Document, TfidfMatrix
from .errors import DataError

SIDECAR_SUFFIX = ".json"
SIDECAR_SCHEMA_VERSION = 1


def read_documents(path) -> list[Document]:
    """Load a corpus from a line-oriented file or a directory of files."""
    p = Path(path)
    if p.is_dir():
        docs = []
        for child in sorted(p.iterdir()):
            if not child.is_file():
                continue
            text = child.read_text(encoding="utf-8").strip()
            if text:
                docs.append(Document(id=child.name, text=text))
        if not docs:
            raise DataError(f"no non-empty documents under {p}")
        return docs
    if not p.is_file():
        raise DataError(f"corpus path does not exist: {p}")
    docs = []
    with p.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if "\t" in line:
                text, label = line.rsplit("\t", 1)
                label = label.strip() or None
            else:
                text, label = line, None
            if not text.strip():
                continue
            docs.append(Document(id=str(lineno), text=text, label=label))
    if not docs:
        raise DataError(f"no non-empty documents in {p}")
    return docs


def write_documents(path, docs: Sequence[Document]) -> None:
    """Write documents as one line each, label appended after a tab."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as handle:
        for doc in docs:
            if doc.label is not None:
                handle.write(f"{doc.text}\t{doc.label}\n")
            else:
                handle.write(f"{doc.text}\n")


def _sidecar_path(mtx_path) -> Path:
    return Path(str(mtx_path) + SIDECAR_SUFFIX)


def write_tfidf(tfidf_matrix: TfidfMatrix, mtx_path) -> None:
    """Write the matrix as Matrix Market plus its identity sidecar."""
    mtx_path = Path(mtx_path)
    scipy_io.mmwrite(str(mtx_path), sparse.coo_matrix(tfidf_matrix.matrix))
    sidecar = {
        "schema_version": SIDECAR_SCHEMA_VERSION,
        "terms": tfidf_matrix.terms,
        "doc_ids": tfidf_matrix.doc_ids,
        "labels": tfidf_matrix.labels,
        "dropped_ids": tfidf_matrix.dropped_ids,
    }
    _sidecar_path(mtx_path).write_text(
        json.dumps(sidecar, ensure_ascii=False, indent=2), encoding="utf-8"
    )


def read_tfidf(mtx_path) -> TfidfMatrix:
    """Read a Matrix Market file and its sidecar back into a TfidfMatrix."""
    mtx_path = Path(mtx_path)
    if not mtx_path.is_file():
        raise DataError(f"matrix file does not exist: {mtx_path}")
    matrix = sparse.csc_matrix(scipy_io.mmread(str(mtx_path)))
    sidecar_path = _sidecar_path(mtx_path)
    if sidecar_path.is_file():
        sidecar = json.loads(sidecar_path.read_text(encoding="utf-8"))
        terms = sidecar.get("terms") or [str(i) for i in range(matrix.shape[0])]
        doc_ids = sidecar.get("doc_ids") or [str(j) for j in range(matrix.shape[1])]
        labels = sidecar.get("labels")
        dropped = sidecar.get("dropped_ids") or []
    else:
        terms = [str(i) for i in range(matrix.shape[0])]
        doc_ids = [str(j) for j in range(matrix.shape[1])]
        labels = None
        dropped = []
    if len(terms) != matrix.shape[0] or len(doc_ids) != matrix.shape[1]:
        raise DataError(f"sidecar {sidecar_path} does not match matrix shape")
    return TfidfMatrix(
        matrix=matrix, terms=terms, doc_ids=doc_ids, labels=labels, dropped_ids=dropped
    )


def write_labels_csv(path, ids: Sequence[str], labels: Iterable, header=("id", "cluster")) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for doc_id, label in zip(ids, labels):
            writer.writerow([doc_id, label])


def read_labels_csv(path) -> dict[str, str]:
    """Read any two-column labels CSV into an id-to-value map."""
    p = Path(path)
    if not p.is_file():
        raise DataError(f"labels file does not exist: {p}")
    out: dict[str, str] = {}
    with p.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        rows = list(reader)
    if not rows:
        raise DataError(f"labels file is empty: {p}")
    for row in rows[1:]:  # first row is the header
        if len(row) < 2:
            continue
        out[row[0]] = row[1]
    if not out:
        raise DataError(f"no label rows in {p}")
    return out


def write_histogram_csv(path, histogram: Mapping[int, int]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["size", "count"])
        for size in sorted(histogram):
            writer.writerow([size, histogram[size]])


def write_dissimilarity_csv(path, values: np.ndarray) -> None:
    np.savetxt(path, values, delimiter=",", fmt="%.12g")


def render_histogram_chart(histogram: Mapping[int, int], width: int = 60) -> str:
    """ASCII bar chart of the component-size histogram."""
    if not histogram:
        return "(empty histogram)\n"
    peak = max(histogram.values())
    lines = ["size  count  bar"]
    for size in sorted(histogram):
        count = histogram[size]
        bar = "#" * max(1, round(width * count / peak))
        lines.append(f"{size:>4}  {count:>5}  {bar}")
    return "\n".join(lines) + "\n"


def render_histogram_svg(histogram: Mapping[int, int]) -> str:
    """Minimal standalone SVG bar chart of the histogram."""
    sizes = sorted(histogram)
    if not sizes:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>'
    peak = max(histogram.values())
    bar_w, gap, height, pad = 14, 4, 220, 28
    width = pad * 2 + len(sizes) * (bar_w + gap)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height + 2 * pad}">'
    ]
    for i, size in enumerate(sizes):
        h = max(1, round(height * histogram[size] / peak))
        x = pad + i * (bar_w + gap)
        y = pad + height - h
        parts.append(f'<rect x="{x}" y="{y}" width="{bar_w}" height="{h}" fill="#4878a8"/>')
        parts.append(
            f'<text x="{x + bar_w / 2}" y="{pad + height + 14}" font-size="9" '
            f'text-anchor="middle">{size}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def write_histogram_chart(path, histogram: Mapping[int, int]) -> None:
    """Write the histogram as SVG when the path ends in .svg, else ASCII."""
    p = Path(path)
    if p.suffix.lower() == ".svg":
        p.write_text(render_histogram_svg(histogram), encoding="utf-8")
    else:
        p.write_text(render_histogram_chart(histogram), encoding="utf-8")


def write_truth_csv(path, docs: Sequence[Document]) -> None:
    """Ground-truth labels for a generated corpus, id then label."""
    labeled = [(d.id, d.label) for d in docs if d.label is not None]
    write_labels_csv(path, [i for i, _ in labeled], [l for _, l in labeled],
                     header=("id", "label"))


def write_report_json(path, report: Mapping) -> None:
    Path(path).write_text(
        json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def read_report_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
