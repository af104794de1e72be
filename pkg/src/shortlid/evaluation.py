"""Precision/recall/F1, micro/macro averaging, and k-fold evaluation runs.

The micro average pools true/false positives and negatives globally; for
single-label classification over a closed label set it equals accuracy.
The macro average is the unweighted mean of per-label F1 over *all*
registry labels, so labels with no support in a test fold pull it down as
zeros.  Fold scores are aggregated as mean plus/minus population standard
deviation.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .classify import predict
from .corpus import LabelRegistry, Sample, make_folds
from .dictionary import DictionaryPack, classify_dict
from .kneser_ney import KnModel
from .preprocess import clean, is_classifiable
from .script_gate import DEFAULT_GATE_THRESHOLD
from .user_priors import DEFAULT_INIT_VALUE, DEFAULT_UI_BOOST, UserPriorStore

METHODS = ("kn", "kn+prior", "kn+prior+ui", "dictionary")


def f1(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; zero when both are zero."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


class ConfusionMatrix:
    """True-label x predicted-label counts over a closed registry.

    A predicted value of None records the designated "unknown" outcome of
    the dictionary baseline; it counts as a false negative for the true
    label and a false positive for no label.
    """

    def __init__(self, labels: Sequence[str]):
        self.labels = tuple(labels)
        self._index = set(self.labels)
        self.counts: dict[tuple[str, str | None], int] = {}

    def add(self, true: str, predicted: str | None, count: int = 1) -> None:
        if true not in self._index:
            raise ValueError(f"unknown true label {true!r}")
        if predicted is not None and predicted not in self._index:
            raise ValueError(f"unknown predicted label {predicted!r}")
        key = (true, predicted)
        self.counts[key] = self.counts.get(key, 0) + count

    def merge(self, other: "ConfusionMatrix") -> None:
        for (true, predicted), count in other.counts.items():
            self.add(true, predicted, count)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def tp_fp_fn(self, label: str) -> tuple[int, int, int]:
        tp = self.counts.get((label, label), 0)
        fp = sum(
            c for (t, p), c in self.counts.items() if p == label and t != label
        )
        fn = sum(
            c for (t, p), c in self.counts.items() if t == label and p != label
        )
        return tp, fp, fn

    def per_label_prf(self) -> dict[str, tuple[float, float, float]]:
        out = {}
        for label in self.labels:
            tp, fp, fn = self.tp_fp_fn(label)
            precision = tp / (tp + fp) if tp + fp else 0.0
            recall = tp / (tp + fn) if tp + fn else 0.0
            out[label] = (precision, recall, f1(precision, recall))
        return out


def micro_macro(cm: ConfusionMatrix) -> tuple[float, float]:
    """(micro-F1, macro-F1) from one confusion matrix."""
    if cm.total == 0:
        raise ValueError("empty confusion matrix")
    tp_all = fp_all = fn_all = 0
    f1s = []
    for label in cm.labels:
        tp, fp, fn = cm.tp_fp_fn(label)
        tp_all += tp
        fp_all += fp
        fn_all += fn
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1s.append(f1(precision, recall))
    micro_p = tp_all / (tp_all + fp_all) if tp_all + fp_all else 0.0
    micro_r = tp_all / (tp_all + fn_all) if tp_all + fn_all else 0.0
    return f1(micro_p, micro_r), sum(f1s) / len(f1s)


@dataclass
class EvalReport:
    """Cross-validation outcome for one method."""

    method: str
    k: int
    seed: int
    labels: tuple[str, ...]
    fold_micro: list[float]
    fold_macro: list[float]
    micro_mean: float
    micro_std: float
    macro_mean: float
    macro_std: float
    per_label: dict[str, tuple[float, float, float]]
    confusion: ConfusionMatrix
    flagged_labels: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "k": self.k,
            "seed": self.seed,
            "labels": list(self.labels),
            "fold_micro_f1": self.fold_micro,
            "fold_macro_f1": self.fold_macro,
            "micro_f1_mean": self.micro_mean,
            "micro_f1_std": self.micro_std,
            "macro_f1_mean": self.macro_mean,
            "macro_f1_std": self.macro_std,
            "per_label": {
                label: {"precision": p, "recall": r, "f1": f}
                for label, (p, r, f) in self.per_label.items()
            },
            "flagged_labels": self.flagged_labels,
        }

    def to_text(self) -> str:
        lines = [
            f"method: {self.method}   folds: {self.k}   seed: {self.seed}",
            f"micro-F1: {self.micro_mean:.4f} +/- {self.micro_std:.4f}",
            f"macro-F1: {self.macro_mean:.4f} +/- {self.macro_std:.4f}",
            "",
            f"{'label':<8}{'precision':>11}{'recall':>9}{'f1':>9}",
        ]
        for label in self.labels:
            p, r, f = self.per_label[label]
            lines.append(f"{label:<8}{p:>11.4f}{r:>9.4f}{f:>9.4f}")
        if self.flagged_labels:
            lines.append("")
            lines.append("flagged (no training data in some fold): " + ", ".join(self.flagged_labels))
        return "\n".join(lines) + "\n"

    def write(self, directory: str | Path) -> None:
        """Write report.json, report.txt and confusion.csv."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "report.json").write_text(
            json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n", "utf-8"
        )
        (directory / "report.txt").write_text(self.to_text(), "utf-8")
        with open(directory / "confusion.csv", "w", encoding="utf-8", newline="") as fp:
            writer = csv.writer(fp)
            predicted_cols = list(self.labels) + ["<unknown>"]
            writer.writerow(["true\\predicted"] + predicted_cols)
            for true in self.labels:
                row = [self.confusion.counts.get((true, p), 0) for p in self.labels]
                row.append(self.confusion.counts.get((true, None), 0))
                writer.writerow([true] + row)


def bundled_word_lists() -> dict[str, list[str]]:
    """The word lists shipped with the package, keyed by label code."""
    base = resources.files("shortlid.data").joinpath("wordlists")
    out = {}
    for entry in base.iterdir():
        if entry.name.endswith(".txt"):
            out[entry.name[:-4]] = entry.read_text("utf-8").splitlines()
    return out


def _evaluation_order(indices: list[int], samples: Sequence[Sample]) -> list[int]:
    # Timestamp order when every test sample carries one, file order otherwise.
    if all(samples[i].timestamp is not None for i in indices):
        return sorted(indices, key=lambda i: (samples[i].timestamp, i))
    return list(indices)


def run_cv(
    samples: Sequence[Sample],
    k: int,
    method: str,
    seed: int,
    *,
    max_order: int = 4,
    prior_init: float = DEFAULT_INIT_VALUE,
    ui_boost: float = DEFAULT_UI_BOOST,
    gate_threshold: float = DEFAULT_GATE_THRESHOLD,
    gate_in_kn: bool = False,
    word_lists: dict[str, list[str]] | None = None,
    dict_fpr: float = 0.01,
    update_from: str = "predicted",
) -> EvalReport:
    """Stratified k-fold cross-validation of one method.

    Prior stores are reset at every fold.  A registry label without any
    training text in some fold is flagged and simply never predicted by
    that fold's model, so its per-label score degrades naturally.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    labeled = [s for s in samples if s.label is not None]
    if len(labeled) != len(samples):
        raise ValueError("run_cv requires every sample to be labeled")
    registry = LabelRegistry.from_samples(samples)
    cleaned = [clean(s.text) for s in samples]

    plan = make_folds(len(samples), k, seed, labels=[s.label for s in samples])

    pack: DictionaryPack | None = None
    if method == "dictionary":
        lists = word_lists if word_lists is not None else bundled_word_lists()
        lists = {code: words for code, words in lists.items() if code in registry}
        if not lists:
            raise ValueError("no word lists available for any registry label")
        pack = DictionaryPack.from_word_lists(lists, target_fpr=dict_fpr)

    fold_micro: list[float] = []
    fold_macro: list[float] = []
    pooled = ConfusionMatrix(registry.codes)
    flagged: set[str] = set()

    for fold in range(k):
        test_indices = plan.fold_indices(fold)
        cm = ConfusionMatrix(registry.codes)

        if method == "dictionary":
            for i in test_indices:
                predicted = (
                    classify_dict(cleaned[i], pack, threshold=gate_threshold)
                    if is_classifiable(cleaned[i])
                    else None
                )
                if predicted is not None and predicted not in registry:
                    predicted = None
                cm.add(samples[i].label, predicted)
        else:
            train_pairs = [
                (cleaned[i], samples[i].label)
                for i in plan.train_indices(fold)
                if is_classifiable(cleaned[i])
            ]
            present = {label for _, label in train_pairs}
            absent = set(registry.codes) - present
            flagged.update(absent)
            fold_registry = LabelRegistry.from_codes(sorted(present))
            model = KnModel.train(train_pairs, max_order=max_order, registry=fold_registry)

            store: UserPriorStore | None = None
            if method in ("kn+prior", "kn+prior+ui"):
                store = UserPriorStore(fold_registry, init_value=prior_init, ui_boost=ui_boost)

            for i in _evaluation_order(test_indices, samples):
                if not is_classifiable(cleaned[i]):
                    cm.add(samples[i].label, None)
                    continue
                prediction = predict(
                    model,
                    samples[i],
                    store,
                    use_gate=gate_in_kn,
                    gate_threshold=gate_threshold,
                    use_ui_boost=(method == "kn+prior+ui"),
                    update_from=update_from,  # type: ignore[arg-type]
                )
                cm.add(samples[i].label, prediction.label)

        micro, macro = micro_macro(cm)
        fold_micro.append(micro)
        fold_macro.append(macro)
        pooled.merge(cm)

    return EvalReport(
        method=method,
        k=k,
        seed=seed,
        labels=registry.codes,
        fold_micro=fold_micro,
        fold_macro=fold_macro,
        micro_mean=statistics.fmean(fold_micro),
        micro_std=statistics.pstdev(fold_micro),
        macro_mean=statistics.fmean(fold_macro),
        macro_std=statistics.pstdev(fold_macro),
        per_label=pooled.per_label_prf(),
        confusion=pooled,
        flagged_labels=sorted(flagged),
    )
