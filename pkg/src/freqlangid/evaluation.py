"""Dataset ingestion and accuracy evaluation for the two scoring methods."""

from __future__ import annotations

import csv
import io
import logging
import time
import warnings
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .profile import MAX_CHARS, ProfileSet
from .scoring import DetectorConfig, UndeterminableError, detect_normalized
from .textstats import normalize

__all__ = [
    "CellStats",
    "ComparisonReport",
    "EvalReport",
    "IngestError",
    "LabeledSample",
    "bucket_labels",
    "evaluate",
    "ingest_dataset",
    "method_comparison_report",
    "parse_manifest",
    "sweep_m",
    "sweep_to_csv",
]

logger = logging.getLogger(__name__)

UNDETERMINABLE = "<undeterminable>"
TIE = "<tie>"
REPORT_HEADER = ("dataset", "method", "bucket", "n", "correct", "accuracy")
CONFUSION_HEADER = ("true", "predicted", "count")
COMPARISON_HEADER = ("dataset", "bucket", "n", "method1_accuracy", "method2_accuracy", "delta")


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


@dataclass(frozen=True)
class LabeledSample:
    text: str
    true_language: str
    dataset_id: str = "mini"
    source: str = ""

    @property
    def length_chars(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class IngestError:
    path: str
    message: str


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    language: str
    mode: str = "file"
    dataset_id: str | None = None


def parse_manifest(path: str | Path) -> list[ManifestEntry]:
    """Read ``<relative-path>\\t<language-id>\\t<file|lines>[\\t<dataset-id>]`` lines.

    Blank lines and lines starting with ``#`` are skipped.
    """
    entries = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 2 or len(cols) > 4:
            raise ValueError(f"{path}:{lineno}: expected 2 to 4 tab-separated columns")
        mode = cols[2] if len(cols) > 2 else "file"
        if mode not in ("file", "lines"):
            raise ValueError(f"{path}:{lineno}: mode must be 'file' or 'lines', got {mode!r}")
        entries.append(ManifestEntry(cols[0], cols[1], mode, cols[3] if len(cols) > 3 else None))
    return entries


def ingest_dataset(
    root: str | Path,
    manifest: str | Path | Mapping[str, str] | Iterable[ManifestEntry],
    dataset_id: str = "mini",
) -> tuple[list[LabeledSample], list[IngestError]]:
    """Load labelled samples listed in a manifest.

    ``manifest`` is a manifest file, a ``{relative_path: language}`` mapping
    (file mode), or parsed entries. A missing or undecodable file becomes an
    :class:`IngestError` and the remaining files are still read.
    """
    root = Path(root)
    if isinstance(manifest, (str, Path)):
        entries = parse_manifest(manifest)
    elif isinstance(manifest, Mapping):
        entries = [ManifestEntry(p, lang) for p, lang in manifest.items()]
    else:
        entries = list(manifest)

    samples: list[LabeledSample] = []
    errors: list[IngestError] = []
    for entry in entries:
        file = root / entry.path
        try:
            content = file.read_bytes().decode("utf-8")
        except FileNotFoundError:
            errors.append(IngestError(entry.path, "file not found"))
            continue
        except UnicodeDecodeError as exc:
            errors.append(IngestError(entry.path, f"invalid UTF-8 at byte offset {exc.start}"))
            continue
        except OSError as exc:
            errors.append(IngestError(entry.path, str(exc)))
            continue
        ds = entry.dataset_id or dataset_id
        chunks = content.splitlines() if entry.mode == "lines" else [content]
        for chunk in chunks:
            chunk = chunk.strip()
            if chunk:
                samples.append(LabeledSample(chunk, entry.language, ds, entry.path))
    for err in errors:
        logger.warning("skipping %s: %s", err.path, err.message)
    return samples, errors


def bucket_labels(boundaries: Sequence[int]) -> list[str]:
    edges = [0, *boundaries]
    labels = [f"[{a},{b})" for a, b in zip(edges, edges[1:])]
    labels.append(f"[{edges[-1]},inf)")
    return labels


def _bucket_of(length: int, boundaries: Sequence[int], labels: Sequence[str]) -> str:
    for bound, label in zip(boundaries, labels):
        if length < bound:
            return label
    return labels[-1]


@dataclass
class CellStats:
    n: int = 0
    correct: int = 0
    undeterminable: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.n if self.n else 0.0

    def merge(self, other: CellStats) -> CellStats:
        return CellStats(
            self.n + other.n, self.correct + other.correct, self.undeterminable + other.undeterminable
        )


@dataclass
class EvalReport:
    """Accuracy per (dataset, method, length bucket) plus confusion counts.

    ``ms_per_kb`` is wall time of detection per KiB of UTF-8 input and is kept
    out of the CSV outputs so they stay reproducible.
    """

    methods: tuple[int, ...]
    buckets: tuple[str, ...]
    cells: dict[tuple[str, int, str], CellStats] = field(default_factory=dict)
    confusion: dict[int, Counter] = field(default_factory=dict)
    ms_per_kb: dict[int, float] = field(default_factory=dict)

    @property
    def datasets(self) -> list[str]:
        return sorted({d for d, _, _ in self.cells})

    def cell(self, dataset: str | None, method: int, bucket: str | None = None) -> CellStats:
        """Aggregate over every dataset and/or bucket left as None."""
        total = CellStats()
        for (d, m, b), stats in self.cells.items():
            if m == method and dataset in (None, d) and bucket in (None, b):
                total = total.merge(stats)
        return total

    def accuracy(self, method: int, dataset: str | None = None, bucket: str | None = None) -> float:
        return self.cell(dataset, method, bucket).accuracy

    def to_csv(self) -> str:
        rows = []
        for d in self.datasets:
            for m in self.methods:
                for b in (*self.buckets, "all"):
                    c = self.cell(d, m, None if b == "all" else b)
                    if c.n:
                        rows.append((d, m, b, c.n, c.correct, f"{c.accuracy:.6f}"))
        return _csv(REPORT_HEADER, rows)

    def confusion_csv(self, method: int) -> str:
        rows = sorted(self.confusion.get(method, Counter()).items())
        return _csv(CONFUSION_HEADER, ((t, p, n) for (t, p), n in rows))

    def to_dict(self) -> dict:
        return {
            "methods": list(self.methods),
            "buckets": list(self.buckets),
            "cells": [
                {
                    "dataset": d,
                    "method": m,
                    "bucket": b,
                    "n": c.n,
                    "correct": c.correct,
                    "undeterminable": c.undeterminable,
                    "accuracy": c.accuracy,
                }
                for (d, m, b), c in sorted(self.cells.items())
            ],
            "confusion": {
                str(m): [{"true": t, "predicted": p, "count": n} for (t, p), n in sorted(cm.items())]
                for m, cm in sorted(self.confusion.items())
            },
        }


def evaluate(
    samples: Sequence[LabeledSample],
    profiles: ProfileSet,
    methods: Iterable[int] = (1, 2),
    buckets: Sequence[int] = (150,),
    m: int = 10,
) -> EvalReport:
    """Detect every sample under each method and tally accuracy.

    A sample counts as correct only when the winner equals its label and the
    top score is not tied. Samples without letters count as wrong and are
    tallied under ``undeterminable``.
    """
    if not samples:
        raise ValueError("evaluate needs at least one sample")
    methods = tuple(sorted(set(methods)))
    labels = bucket_labels(sorted(buckets))
    report = EvalReport(methods, tuple(labels))

    normalized = [normalize(s.text) for s in samples]
    n_bytes = sum(t.original_length_bytes for t in normalized)
    for method in methods:
        config = DetectorConfig.method(method, m=m)
        confusion: Counter = Counter()
        elapsed = 0.0
        for sample, text in zip(samples, normalized):
            key = (sample.dataset_id, method, _bucket_of(sample.length_chars, sorted(buckets), labels))
            cell = report.cells.setdefault(key, CellStats())
            cell.n += 1
            start = time.perf_counter()
            try:
                result = detect_normalized(text, profiles, config)
            except UndeterminableError:
                elapsed += time.perf_counter() - start
                cell.undeterminable += 1
                confusion[(sample.true_language, UNDETERMINABLE)] += 1
                continue
            elapsed += time.perf_counter() - start
            predicted = TIE if result.tie else result.winner
            if predicted == sample.true_language:
                cell.correct += 1
            confusion[(sample.true_language, predicted)] += 1
        report.confusion[method] = confusion
        report.ms_per_kb[method] = 1000.0 * elapsed / (n_bytes / 1024) if n_bytes else 0.0
    return report


def sweep_m(
    samples: Sequence[LabeledSample],
    profiles: ProfileSet,
    m_range: tuple[int, int] = (2, 20),
) -> list[tuple[int, float]]:
    """Method 1 accuracy for each m in the inclusive range."""
    lo, hi = m_range
    clipped = max(1, lo), min(MAX_CHARS, hi)
    if clipped != (lo, hi):
        warnings.warn(f"m range {m_range} clipped to {clipped}", stacklevel=2)
    rows = []
    for m in range(clipped[0], clipped[1] + 1):
        report = evaluate(samples, profiles, methods=(1,), m=m)
        rows.append((m, report.accuracy(1)))
    return rows


def sweep_to_csv(rows: Iterable[tuple[int, float]]) -> str:
    return _csv(("m", "accuracy"), ((m, f"{acc:.6f}") for m, acc in rows))


def _pct(value: float) -> str:
    text = f"{100 * value:.1f}"
    return (text[:-2] if text.endswith(".0") else text) + "%"


@dataclass(frozen=True)
class ComparisonRow:
    dataset: str
    bucket: str
    n: int
    method1: float
    method2: float

    @property
    def delta(self) -> float:
        return self.method2 - self.method1


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]

    def overall(self) -> list[ComparisonRow]:
        return [r for r in self.rows if r.bucket == "all"]

    def table(self) -> str:
        lines = ["Dataset, Method 1, Method 2"]
        lines += [f"{r.dataset}, {_pct(r.method1)}, {_pct(r.method2)}" for r in self.overall()]
        lines.append("")
        lines.append("Dataset, Bucket, n, Method 1, Method 2, Delta")
        for r in self.rows:
            if r.bucket != "all":
                lines.append(
                    f"{r.dataset}, {r.bucket}, {r.n}, {_pct(r.method1)}, {_pct(r.method2)}, {_pct(r.delta)}"
                )
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        return _csv(
            COMPARISON_HEADER,
            ((r.dataset, r.bucket, r.n, f"{r.method1:.6f}", f"{r.method2:.6f}", f"{r.delta:.6f}") for r in self.rows),
        )


def method_comparison_report(report: EvalReport) -> ComparisonReport:
    """Side-by-side Method 1 / Method 2 accuracy per dataset and bucket."""
    if not {1, 2} <= set(report.methods):
        raise ValueError("comparison requires both methods")
    rows = []
    for d in report.datasets:
        for b in (*report.buckets, "all"):
            bucket = None if b == "all" else b
            c1, c2 = report.cell(d, 1, bucket), report.cell(d, 2, bucket)
            if c1.n:
                rows.append(ComparisonRow(d, b, c1.n, c1.accuracy, c2.accuracy))
    return ComparisonReport(tuple(rows))

