"""Per-user evidence accumulation and UI-language boosting.

Each user starts with a flat count vector over the registry (one entry per
language), optionally boosted once at creation for the user's interface
language.  Every classified text increments the count of the language it
was assigned to, so the normalized counts act as a multiplicative prior
that adapts to the user's actual language mix.  A low initial value makes
each new observation count for more.
"""

from __future__ import annotations

import json
import logging
import math
import threading
from pathlib import Path
from typing import Mapping

from .corpus import LabelRegistry

logger = logging.getLogger(__name__)

DEFAULT_INIT_VALUE = 1.0
DEFAULT_UI_BOOST = 7.0


class UserPrior:
    """Count vector over languages for one user; counts only increase."""

    __slots__ = ("counts",)

    def __init__(self, counts: dict[str, float]):
        self.counts = counts

    def probability(self, code: str) -> float:
        return self.counts[code] / sum(self.counts.values())

    def distribution(self) -> dict[str, float]:
        total = sum(self.counts.values())
        return {code: c / total for code, c in self.counts.items()}

    def increment(self, code: str) -> None:
        if code not in self.counts:
            raise ValueError(f"unknown label {code!r}")
        self.counts[code] += 1.0


class UserPriorStore:
    """Lazily created priors per user id, with exact JSONL persistence.

    Updates are serialized under a lock; readers observe either the pre-
    or post-update state, never a partial one.
    """

    def __init__(
        self,
        registry: LabelRegistry,
        init_value: float = DEFAULT_INIT_VALUE,
        ui_boost: float = DEFAULT_UI_BOOST,
    ):
        if init_value <= 0:
            raise ValueError("init_value must be positive")
        if ui_boost < 0:
            raise ValueError("ui_boost must be non-negative")
        self.registry = registry
        self.init_value = init_value
        self.ui_boost = ui_boost
        self._users: dict[str, UserPrior] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._users)

    def __contains__(self, user_id: str) -> bool:
        return user_id in self._users

    @property
    def user_ids(self) -> tuple[str, ...]:
        return tuple(self._users)

    def get_prior(self, user_id: str, ui_lang: str | None = None) -> UserPrior:
        """Return the stored prior, creating a fresh one on first sight.

        The UI-language boost is applied once, at creation; an unregistered
        UI language is ignored with a warning.
        """
        if not user_id:
            raise ValueError("user_id must be non-empty")
        with self._lock:
            prior = self._users.get(user_id)
            if prior is None:
                counts = {code: self.init_value for code in self.registry.codes}
                if ui_lang is not None:
                    if ui_lang in self.registry:
                        counts[ui_lang] += self.ui_boost
                    else:
                        logger.warning(
                            "ignoring UI language %r for user %r: not in registry",
                            ui_lang, user_id,
                        )
                prior = UserPrior(counts)
                self._users[user_id] = prior
            return prior

    def update(self, user_id: str, predicted: str) -> None:
        """Add one observation of ``predicted`` to an existing user."""
        with self._lock:
            if user_id not in self._users:
                raise KeyError(f"unknown user {user_id!r}")
            self._users[user_id].increment(predicted)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fp:
            for user_id in self._users:
                record = {"user_id": user_id, "counts": self._users[user_id].counts}
                fp.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    @classmethod
    def load(
        cls,
        path: str | Path,
        registry: LabelRegistry,
        init_value: float = DEFAULT_INIT_VALUE,
        ui_boost: float = DEFAULT_UI_BOOST,
    ) -> "UserPriorStore":
        store = cls(registry, init_value=init_value, ui_boost=ui_boost)
        with open(path, encoding="utf-8") as fp:
            for line_num, line in enumerate(fp, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    user_id = record["user_id"]
                    counts = {str(k): float(v) for k, v in record["counts"].items()}
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    raise ValueError(f"{path}: bad prior record at line {line_num}: {exc}") from exc
                store._users[user_id] = UserPrior(counts)
        return store


def combine(log_likelihoods: Mapping[str, float], prior: UserPrior) -> dict[str, float]:
    """Posterior over labels: likelihoods times the normalized prior.

    The result sums to one; with a flat prior the argmax of the posterior
    equals the argmax of the likelihoods.
    """
    missing = set(prior.counts) - set(log_likelihoods)
    if missing:
        raise ValueError(f"log_likelihoods missing labels: {sorted(missing)}")
    prior_dist = prior.distribution()
    scores = {
        code: log_likelihoods[code] + math.log(prior_dist[code]) for code in prior.counts
    }
    peak = max(scores.values())
    expd = {code: math.exp(s - peak) for code, s in scores.items()}
    total = sum(expd.values())
    return {code: v / total for code, v in expd.items()}
