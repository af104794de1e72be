"""Prediction pipeline: cleaning, optional script gate, scoring, priors.

A prediction carries the winning label, the normalized distribution over
all registry labels, the raw per-language log-likelihoods, and which stage
produced the answer.  Ties are broken by lexicographic label code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Mapping

from .corpus import Sample
from .kneser_ney import KnModel
from .preprocess import clean, is_classifiable
from .script_gate import DEFAULT_GATE_THRESHOLD, gate
from .user_priors import UserPriorStore, combine

PredictionSource = Literal["script_gate", "kn", "kn_with_prior", "dictionary"]


class UnclassifiableTextError(Exception):
    """Raised when a text cleans down to nothing classifiable."""


@dataclass
class Prediction:
    label: str
    distribution: dict[str, float]
    source: PredictionSource
    log_likelihoods: dict[str, float] = field(default_factory=dict)


def argmax_label(distribution: Mapping[str, float]) -> str:
    """Highest-probability label; exact ties go to the smaller code."""
    return min(distribution.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def normalize_log_likelihoods(log_likelihoods: Mapping[str, float]) -> dict[str, float]:
    """Max-shifted exponentiation; invariant under adding a constant."""
    if not log_likelihoods:
        raise ValueError("no log-likelihoods to normalize")
    peak = max(log_likelihoods.values())
    expd = {code: math.exp(v - peak) for code, v in log_likelihoods.items()}
    total = sum(expd.values())
    return {code: v / total for code, v in expd.items()}


def predict(
    model: KnModel,
    sample: Sample,
    store: UserPriorStore | None = None,
    *,
    use_gate: bool = False,
    gate_threshold: float = DEFAULT_GATE_THRESHOLD,
    use_ui_boost: bool = True,
    update_store: bool = True,
    update_from: Literal["predicted", "gold"] = "predicted",
) -> Prediction:
    """Classify one sample.

    The script gate is off by default here: the smoothed model handles the
    gated scripts well on its own, so gating is only worth enabling for
    callers that want the short-circuit.  When a prior store is given and
    the sample carries a user id, the user's prior multiplies the
    likelihoods and the store is updated afterward with the predicted (or,
    optionally, the gold) label.
    """
    text = clean(sample.text)
    if not is_classifiable(text):
        raise UnclassifiableTextError(f"text {sample.text!r} is empty after cleaning")

    if use_gate:
        gated = gate(text, gate_threshold)
        if gated is not None and gated in model.registry:
            distribution = {code: 0.0 for code in model.registry.codes}
            distribution[gated] = 1.0
            return Prediction(
                label=gated,
                distribution=distribution,
                source="script_gate",
                log_likelihoods={},
            )

    log_likelihoods = model.score_text(text)
    if store is not None and sample.user_id:
        prior = store.get_prior(
            sample.user_id, ui_lang=sample.ui_lang if use_ui_boost else None
        )
        distribution = combine(log_likelihoods, prior)
        source: PredictionSource = "kn_with_prior"
    else:
        distribution = normalize_log_likelihoods(log_likelihoods)
        source = "kn"
    label = argmax_label(distribution)

    if store is not None and sample.user_id and update_store:
        if update_from == "gold":
            if sample.label is None:
                raise ValueError("cannot update from gold label: sample has none")
            store.update(sample.user_id, sample.label)
        else:
            store.update(sample.user_id, label)

    return Prediction(
        label=label,
        distribution=distribution,
        source=source,
        log_likelihoods=log_likelihoods,
    )
