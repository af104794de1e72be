"""Per-language character n-gram models with modified Kneser-Ney smoothing.

Each conditional probability is the discounted relative frequency of the
full-order gram plus a scaling mass ``gamma`` times the next-lower-order
probability.  The top order uses raw counts; every lower order uses
continuation counts (distinct left-extensions), and the recursion bottoms
out in the unigram continuation distribution interpolated with a uniform
distribution over the scoring support (seen symbols plus one unknown
symbol).  Three discounts are applied per order, chosen by whether a gram
was seen once, twice, or three-plus times; they are estimated per order and
per language from that order's counts-of-counts:

    Y  = n1 / (n1 + 2*n2)
    D1 = 1 - 2*Y * n2/n1
    D2 = 2 - 3*Y * n3/n2
    D3 = 3 - 4*Y * n4/n3

with a fixed fallback triple when any of n1, n2, n3 is zero, and clamping
into (0, 1] / (0, 2] / (0, 3].  The strictly positive clamp floor keeps
every scaling mass positive, which in turn guarantees a positive
probability for every symbol, seen or not.

Scoring runs in log space; trained models are immutable and safe to share
across threads.
"""

from __future__ import annotations

import gzip
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import LabelRegistry, LanguageLabel
from .ngrams import (
    END,
    START,
    UNK,
    NGramTable,
    continuation_counts,
    count_corpus,
    counts_of_counts,
)

MODEL_FORMAT = "shortlid-model"
MODEL_VERSION = 1

# Discounts estimated from degenerate counts-of-counts fall back to these.
FALLBACK_DISCOUNTS = (0.5, 1.0, 1.5)
# Lower clamp bound; strictly positive so no context's scaling mass
# vanishes (a zero would let unseen symbols reach probability zero).
DISCOUNT_FLOOR = 1e-6


class ModelFormatError(Exception):
    """Raised when a model file cannot be read or has the wrong version."""


@dataclass(frozen=True)
class Discounts:
    """Per-order discount triple for counts of 1, 2, and 3 or more."""

    d1: float
    d2: float
    d3plus: float

    def for_count(self, count: int) -> float:
        if count <= 0:
            return 0.0
        if count == 1:
            return self.d1
        if count == 2:
            return self.d2
        return self.d3plus


def discounts_from_counts_of_counts(n1: int, n2: int, n3: int, n4: int) -> Discounts:
    """Closed-form discount estimates, with fallback and clamping."""
    if n1 == 0 or n2 == 0 or n3 == 0:
        return Discounts(*FALLBACK_DISCOUNTS)
    y = n1 / (n1 + 2 * n2)
    d1 = 1.0 - 2.0 * y * n2 / n1
    d2 = 2.0 - 3.0 * y * n3 / n2
    d3 = 3.0 - 4.0 * y * n4 / n3
    return Discounts(
        d1=min(max(d1, DISCOUNT_FLOOR), 1.0),
        d2=min(max(d2, DISCOUNT_FLOOR), 2.0),
        d3plus=min(max(d3, DISCOUNT_FLOOR), 3.0),
    )


def estimate_discounts(table: NGramTable) -> Discounts:
    return discounts_from_counts_of_counts(*table.counts_of_counts)


class LanguageModel:
    """Smoothed character n-gram model for a single language.

    ``vocab`` is the scoring support minus the unknown symbol: all symbols
    that may appear as a predicted outcome (characters seen in training
    plus the end marker).  Inside a multi-language model the vocabulary is
    shared globally so scores are comparable across languages.
    """

    def __init__(
        self,
        label: str,
        tables: Mapping[int, NGramTable],
        discounts: Mapping[int, Discounts],
        vocab: frozenset[str],
    ):
        self.label = label
        self.max_order = max(tables)
        if sorted(tables) != list(range(1, self.max_order + 1)):
            raise ValueError("tables must cover orders 1..max_order")
        self.tables = dict(tables)
        self.discounts = dict(discounts)
        self.vocab = vocab
        self._build_indexes()

    def _build_indexes(self) -> None:
        # Per order: successor counts by context, context totals, and the
        # per-context (N1, N2, N3+) tallies the scaling mass needs.  The
        # top order indexes raw counts, lower orders continuation counts.
        self._succ: dict[int, dict[str, dict[str, int]]] = {}
        self._totals: dict[int, dict[str, int]] = {}
        self._gamma_stats: dict[int, dict[str, tuple[int, int, int]]] = {}
        for order in range(1, self.max_order + 1):
            table = self.tables[order]
            usage = table.counts if order == self.max_order else table.continuation
            succ: dict[str, dict[str, int]] = {}
            totals: dict[str, int] = {}
            stats: dict[str, list[int]] = {}
            for gram, count in usage.items():
                if count <= 0:
                    continue
                ctx, sym = gram[:-1], gram[-1]
                succ.setdefault(ctx, {})[sym] = count
                totals[ctx] = totals.get(ctx, 0) + count
                bucket = stats.setdefault(ctx, [0, 0, 0])
                bucket[min(count, 3) - 1] += 1
            self._succ[order] = succ
            self._totals[order] = totals
            self._gamma_stats[order] = {c: (b[0], b[1], b[2]) for c, b in stats.items()}

    @property
    def base_probability(self) -> float:
        """Uniform floor over the support: seen symbols plus unknown."""
        return 1.0 / (len(self.vocab) + 1)

    def map_symbol(self, symbol: str) -> str:
        return symbol if symbol in self.vocab else UNK

    def map_context(self, context: str) -> str:
        # Start markers are legitimate context symbols; anything else
        # unseen degrades to the unknown symbol.
        return "".join(
            ch if (ch == START or ch in self.vocab) else UNK for ch in context
        )

    def _levels(
        self, ctx: str, order: int
    ) -> list[tuple[dict[str, int], int, Discounts, tuple[int, int, int]]]:
        """Observed (successors, total, discounts, gamma stats), top first."""
        levels = []
        for k in range(order, 0, -1):
            sub = ctx[len(ctx) - (k - 1) :] if k > 1 else ""
            total = self._totals[k].get(sub, 0)
            if total > 0:
                levels.append(
                    (self._succ[k][sub], total, self.discounts[k], self._gamma_stats[k][sub])
                )
        return levels

    def p_kn(self, context: str, symbol: str, order: int | None = None) -> float:
        """Smoothed conditional probability of ``symbol`` after ``context``.

        ``context`` must hold exactly ``order - 1`` symbols; unseen symbols
        are mapped to the unknown symbol.  Contexts never observed at some
        order pass their whole mass to the next lower order.
        """
        if order is None:
            order = self.max_order
        if not 1 <= order <= self.max_order:
            raise ValueError(f"order must be in 1..{self.max_order}, got {order}")
        if len(context) != order - 1:
            raise ValueError(
                f"context must have {order - 1} symbols for order {order}, got {len(context)}"
            )
        ctx = self.map_context(context)
        sym = self.map_symbol(symbol)
        return self._prob(ctx, sym, order)

    def _prob(self, ctx: str, sym: str, order: int) -> float:
        p = self.base_probability
        for succ, total, disc, stats in reversed(self._levels(ctx, order)):
            count = succ.get(sym, 0)
            numerator = count - disc.for_count(count)
            gamma = (
                disc.d1 * stats[0] + disc.d2 * stats[1] + disc.d3plus * stats[2]
            ) / total
            p = numerator / total + gamma * p
        return p

    def log_p_text(self, text: str) -> float:
        """Sum of log conditional probabilities over the padded windows."""
        if not text:
            raise ValueError("cannot score an empty text")
        mapped = "".join(self.map_symbol(ch) for ch in text)
        seq = START * (self.max_order - 1) + mapped + END
        total = 0.0
        for i in range(len(mapped) + 1):
            window = seq[i : i + self.max_order]
            total += math.log(self._prob(window[:-1], window[-1], self.max_order))
        return total

    def conditional_distribution(self, context: str, order: int | None = None) -> dict[str, float]:
        """Full distribution over the support for one context.

        Agrees with :meth:`p_kn` symbol by symbol; one pass over the
        context's observed successors instead of one recursion per symbol.
        """
        if order is None:
            order = self.max_order
        if len(context) != order - 1:
            raise ValueError(f"context must have {order - 1} symbols for order {order}")
        ctx = self.map_context(context)
        const = self.base_probability
        sparse: dict[str, float] = {}
        for succ, total, disc, stats in reversed(self._levels(ctx, order)):
            gamma = (
                disc.d1 * stats[0] + disc.d2 * stats[1] + disc.d3plus * stats[2]
            ) / total
            new_sparse: dict[str, float] = {}
            for sym in set(succ) | set(sparse):
                count = succ.get(sym, 0)
                numerator = count - disc.for_count(count)
                new_sparse[sym] = numerator / total + gamma * sparse.get(sym, const)
            const = gamma * const
            sparse = new_sparse
        out = {sym: sparse.get(sym, const) for sym in self.vocab}
        out[UNK] = sparse.get(UNK, const)
        return out


def fit_language_model(
    texts: Sequence[str],
    label: str = "",
    max_order: int = 4,
    vocab: frozenset[str] | None = None,
) -> LanguageModel:
    """Count one corpus at orders 1..max_order and estimate its discounts.

    ``vocab`` overrides the scoring support (used to share a global
    vocabulary across the languages of a combined model); by default it is
    the model's own order-1 key set.
    """
    if not 1 <= max_order <= 4:
        raise ValueError(f"max_order must be in 1..4, got {max_order}")
    tables = {order: count_corpus(texts, order) for order in range(1, max_order + 1)}
    discounts = {order: estimate_discounts(tables[order]) for order in tables}
    if vocab is None:
        vocab = frozenset(tables[1].counts)
    return LanguageModel(label=label, tables=tables, discounts=discounts, vocab=vocab)


class KnModel:
    """Trained multi-language model: one smoothed model per registry label.

    All per-language models score against one shared global vocabulary so
    their log-probabilities are directly comparable.
    """

    def __init__(self, registry: LabelRegistry, models: dict[str, LanguageModel], max_order: int):
        if sorted(models) != list(registry.codes):
            raise ValueError("models must cover exactly the registry labels")
        self.registry = registry
        self.models = models
        self.max_order = max_order

    @classmethod
    def train(
        cls,
        corpus: Iterable[tuple[str, str]],
        max_order: int = 4,
        registry: LabelRegistry | None = None,
    ) -> "KnModel":
        """Train from (clean_text, label_code) pairs.

        Every registry label must come with at least one text; by default
        the registry is derived from the labels present in the corpus.
        """
        by_label: dict[str, list[str]] = {}
        for text, label in corpus:
            by_label.setdefault(label, []).append(text)
        if not by_label:
            raise ValueError("empty training corpus")
        if registry is None:
            registry = LabelRegistry.from_codes(by_label)
        missing = [code for code in registry.codes if not by_label.get(code)]
        if missing:
            raise ValueError(f"no training texts for labels: {', '.join(missing)}")
        extraneous = sorted(set(by_label) - set(registry.codes))
        if extraneous:
            raise ValueError(f"training texts for unregistered labels: {', '.join(extraneous)}")

        tables_by_label = {
            code: {order: count_corpus(by_label[code], order) for order in range(1, max_order + 1)}
            for code in registry.codes
        }
        global_vocab = frozenset().union(*(t[1].counts for t in tables_by_label.values()))
        models = {
            code: LanguageModel(
                label=code,
                tables=tables,
                discounts={order: estimate_discounts(t) for order, t in tables.items()},
                vocab=global_vocab,
            )
            for code, tables in tables_by_label.items()
        }
        return cls(registry=registry, models=models, max_order=max_order)

    @property
    def vocab(self) -> frozenset[str]:
        return next(iter(self.models.values())).vocab

    def score_text(self, clean_text: str) -> dict[str, float]:
        """Log-probability of the text under every language model."""
        return {code: self.models[code].log_p_text(clean_text) for code in self.registry.codes}

    def to_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "max_order": self.max_order,
            "labels": [
                {"code": code, "display_name": self.registry.get(code).display_name}
                for code in self.registry.codes
            ],
            "models": {
                code: {
                    "counts": {
                        str(order): model.tables[order].counts
                        for order in range(1, self.max_order + 1)
                    },
                    "discounts": {
                        str(order): [d.d1, d.d2, d.d3plus]
                        for order, d in sorted(model.discounts.items())
                    },
                }
                for code, model in self.models.items()
            },
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "KnModel":
        if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
            raise ModelFormatError("not a recognized model file")
        version = payload.get("version")
        if version != MODEL_VERSION:
            raise ModelFormatError(
                f"unsupported model version {version!r}; this build reads version {MODEL_VERSION}"
            )
        max_order = int(payload["max_order"])
        registry = LabelRegistry(
            LanguageLabel(code=e["code"], display_name=e.get("display_name", ""))
            for e in payload["labels"]
        )
        models: dict[str, LanguageModel] = {}
        raw_models = payload["models"]
        vocabs = [
            frozenset(raw_models[code]["counts"]["1"]) for code in registry.codes
        ]
        global_vocab = frozenset().union(*vocabs) if vocabs else frozenset()
        for code in registry.codes:
            entry = raw_models[code]
            tables = {}
            for order in range(1, max_order + 1):
                counts = {g: int(c) for g, c in entry["counts"][str(order)].items()}
                # The top order has no stored higher-order counts; its
                # continuation map is unused by scoring and left empty.
                higher = entry["counts"].get(str(order + 1), {})
                tables[order] = NGramTable(
                    order=order,
                    counts=counts,
                    continuation=continuation_counts(higher.keys()),
                    counts_of_counts=counts_of_counts(counts),
                )
            discounts = {
                int(order): Discounts(d1=v[0], d2=v[1], d3plus=v[2])
                for order, v in entry["discounts"].items()
            }
            models[code] = LanguageModel(
                label=code, tables=tables, discounts=discounts, vocab=global_vocab
            )
        return cls(registry=registry, models=models, max_order=max_order)

    def save(self, path: str | Path) -> None:
        """Write the versioned, deterministic (byte-reproducible) model file."""
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        path = Path(path)
        with open(path, "wb") as fp:
            with gzip.GzipFile(fileobj=fp, mode="wb", mtime=0) as gz:
                gz.write(payload.encode("utf-8"))

    @classmethod
    def load(cls, path: str | Path) -> "KnModel":
        try:
            with gzip.open(path, "rb") as gz:
                payload = json.loads(gz.read().decode("utf-8"))
        except (OSError, EOFError, json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ModelFormatError(f"cannot read model file {path}: {exc}") from exc
        return cls.from_dict(payload)

