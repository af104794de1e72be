"""Dataset schema, ingestion, label registry, and deterministic k-fold splits.

Datasets are JSONL (one object per line) or CSV with the fields ``text``
(required), ``lang``, ``user_id``, ``ui_lang``, ``created_at`` (ISO-8601).
Ingestion is lossless for well-formed records and fails fast, naming the
offending line, on malformed ones.
"""

from __future__ import annotations

import csv
import json
import logging
import random
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

# Default alias map grouping Malay into Indonesian, applied at ingestion
# when requested (the two are too close to separate on short texts).
INDONESIAN_MALAY_ALIASES = {"ms": "id"}


class DatasetError(Exception):
    """Raised for unreadable, empty, or malformed dataset files."""


@dataclass(frozen=True)
class LanguageLabel:
    """One supported language; ``code`` is a short lowercase tag."""

    code: str
    display_name: str = ""

    def __post_init__(self) -> None:
        if not self.code:
            raise ValueError("language code must be non-empty")


class LabelRegistry:
    """Closed, ordered set of language labels for one trained model."""

    def __init__(self, labels: Iterable[LanguageLabel]):
        self._labels: dict[str, LanguageLabel] = {}
        for label in labels:
            if label.code in self._labels:
                raise ValueError(f"duplicate language code {label.code!r}")
            self._labels[label.code] = label
        self._codes = tuple(sorted(self._labels))

    @classmethod
    def from_codes(cls, codes: Iterable[str]) -> "LabelRegistry":
        return cls(LanguageLabel(c) for c in codes)

    @classmethod
    def from_samples(cls, samples: Iterable["Sample"]) -> "LabelRegistry":
        return cls.from_codes(sorted({s.label for s in samples if s.label is not None}))

    @property
    def codes(self) -> tuple[str, ...]:
        return self._codes

    def __contains__(self, code: str) -> bool:
        return code in self._labels

    def __len__(self) -> int:
        return len(self._codes)

    def __iter__(self):
        return iter(self._codes)

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelRegistry) and self._labels == other._labels

    def get(self, code: str) -> LanguageLabel:
        return self._labels[code]


@dataclass
class Sample:
    """One short text, optionally labeled and carrying user metadata."""

    text: str
    label: str | None = None
    user_id: str | None = None
    ui_lang: str | None = None
    timestamp: datetime | None = None


def _parse_timestamp(value: str, line_num: int) -> datetime:
    try:
        return datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise DatasetError(f"line {line_num}: bad created_at {value!r}: {exc}") from exc


def _make_sample(record: Mapping[str, object], line_num: int) -> Sample:
    text = record.get("text")
    if not isinstance(text, str) or len(text) < 1:
        raise DatasetError(f"line {line_num}: missing or empty 'text' field")
    label = record.get("lang") or None
    if label is not None and not isinstance(label, str):
        raise DatasetError(f"line {line_num}: 'lang' must be a string")
    user_id = record.get("user_id") or None
    ui_lang = record.get("ui_lang") or None
    created = record.get("created_at") or None
    timestamp = _parse_timestamp(created, line_num) if isinstance(created, str) else None
    return Sample(text=text, label=label, user_id=user_id, ui_lang=ui_lang, timestamp=timestamp)


def load_dataset(
    path: str | Path,
    format: str | None = None,
    alias: Mapping[str, str] | None = None,
    registry: LabelRegistry | None = None,
) -> list[Sample]:
    """Load samples in file order from a JSONL or CSV dataset.

    ``format`` is inferred from the file suffix when omitted.  ``alias``
    remaps label codes at ingestion (e.g. ``{"ms": "id"}``).  When a
    ``registry`` is given, samples whose label is outside it are kept but
    reported via a warning, never silently dropped.
    """
    path = Path(path)
    if format is None:
        suffix = path.suffix.lower()
        format = {"jsonl": "jsonl", "json": "jsonl", "csv": "csv"}.get(suffix.lstrip("."), "")
        if not format:
            raise DatasetError(f"cannot infer dataset format from suffix {suffix!r}")
    if format not in ("jsonl", "csv"):
        raise DatasetError(f"unsupported dataset format {format!r}")
    alias = dict(alias or {})

    samples: list[Sample] = []
    if format == "jsonl":
        with open(path, encoding="utf-8") as fp:
            for line_num, line in enumerate(fp, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise DatasetError(f"line {line_num}: invalid JSON: {exc}") from exc
                if not isinstance(record, dict):
                    raise DatasetError(f"line {line_num}: expected a JSON object")
                samples.append(_make_sample(record, line_num))
    else:
        with open(path, encoding="utf-8", newline="") as fp:
            reader = csv.DictReader(fp)
            if reader.fieldnames is None or "text" not in reader.fieldnames:
                raise DatasetError("CSV file must have a header row with a 'text' column")
            for row in reader:
                samples.append(_make_sample(row, reader.line_num))

    if not samples:
        raise DatasetError(f"{path}: dataset is empty")

    for sample in samples:
        if sample.label is not None:
            sample.label = alias.get(sample.label, sample.label)

    if registry is not None:
        unknown: dict[str, int] = {}
        for sample in samples:
            if sample.label is not None and sample.label not in registry:
                unknown[sample.label] = unknown.get(sample.label, 0) + 1
        if unknown:
            logger.warning("dataset contains labels outside the registry: %s", unknown)
    return samples


def filter_min_samples(
    samples: Sequence[Sample], min_count: int
) -> tuple[list[Sample], dict[str, int]]:
    """Drop samples of labels with fewer than ``min_count`` occurrences.

    Returns the kept samples and a report of discarded label counts.
    Discarded samples do not take part in training or evaluation.
    """
    counts: dict[str, int] = {}
    for s in samples:
        if s.label is not None:
            counts[s.label] = counts.get(s.label, 0) + 1
    discarded = {lab: n for lab, n in counts.items() if n < min_count}
    kept = [s for s in samples if s.label is None or s.label not in discarded]
    return kept, discarded


@dataclass(frozen=True)
class FoldPlan:
    """Assignment of sample indices to ``k`` cross-validation folds."""

    k: int
    assignments: tuple[int, ...]
    seed: int

    def fold_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignments) if f == fold]

    def train_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignments) if f != fold]


def make_folds(n: int, k: int, seed: int, labels: Sequence[str | None] | None = None) -> FoldPlan:
    """Deterministic, label-stratified fold assignment.

    Indices with the same label are shuffled (seeded) and dealt cyclically
    onto folds; the cyclic cursor runs on across labels, so overall fold
    sizes differ by at most one and so do per-label counts within each fold.
    """
    if k < 2:
        raise ValueError(f"fold count must be >= 2, got {k}")
    if n < k:
        raise ValueError(f"cannot split {n} samples into {k} folds")
    if labels is not None and len(labels) != n:
        raise ValueError("labels must have one entry per sample")

    rng = random.Random(seed)
    groups: dict[str, list[int]] = {}
    for i in range(n):
        key = labels[i] if labels is not None and labels[i] is not None else ""
        groups.setdefault(key, []).append(i)

    assignments = [0] * n
    cursor = 0
    for key in sorted(groups):
        indices = groups[key][:]
        rng.shuffle(indices)
        for i in indices:
            assignments[i] = cursor % k
            cursor += 1
    return FoldPlan(k=k, assignments=tuple(assignments), seed=seed)
