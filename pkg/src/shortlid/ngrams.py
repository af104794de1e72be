"""Character n-gram extraction and counting with boundary padding.

A text of length L padded for order ``n`` carries ``n - 1`` start markers
and one end marker, so it yields exactly ``L + 1`` overlapping windows at
every order; that convention makes the per-text probability a product of
``L + 1`` conditional factors regardless of text length.

Grams are plain strings of Unicode scalar values.  The marker and unknown
symbols are control code points that the cleaning pipeline guarantees can
never occur in a CleanText.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

START = "\x02"
END = "\x03"
UNK = "\x01"
RESERVED_SYMBOLS = frozenset((START, END, UNK))

PaddedSequence = str


def pad(text: str, order: int) -> PaddedSequence:
    """Prepend ``order - 1`` start markers and append one end marker."""
    if not 1 <= order:
        raise ValueError(f"order must be >= 1, got {order}")
    return START * (order - 1) + text + END


def extract(seq: PaddedSequence, order: int) -> list[str]:
    """All overlapping windows of ``order`` characters, in order."""
    if order > len(seq):
        raise ValueError(f"order {order} exceeds sequence length {len(seq)}")
    return [seq[i : i + order] for i in range(len(seq) - order + 1)]


@dataclass
class NGramTable:
    """Counts for one order: raw counts, continuation counts, counts-of-counts.

    ``continuation[g]`` is the number of distinct symbols observed
    immediately before ``g`` at order ``order + 1``; it backs the
    lower-order distributions of the smoothed model.  ``counts_of_counts``
    holds ``(n1, n2, n3, n4)`` where ``n_x`` is the number of distinct
    grams with raw count exactly ``x``.
    """

    order: int
    counts: dict[str, int]
    continuation: dict[str, int]
    counts_of_counts: tuple[int, int, int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def counts_of_counts(counts: dict[str, int]) -> tuple[int, int, int, int]:
    hist = Counter(counts.values())
    return (hist[1], hist[2], hist[3], hist[4])


def continuation_counts(higher_counts: Iterable[str]) -> dict[str, int]:
    """Distinct-predecessor counts derived from the next order's gram keys."""
    cont: dict[str, int] = {}
    for gram in higher_counts:
        suffix = gram[1:]
        cont[suffix] = cont.get(suffix, 0) + 1
    return cont


def count_corpus(texts: Sequence[str], order: int) -> NGramTable:
    """Count all padded n-grams of ``order`` over a corpus.

    An empty corpus yields a valid table with empty maps.
    """
    if not 1 <= order <= 4:
        raise ValueError(f"order must be in 1..4, got {order}")
    counts: Counter[str] = Counter()
    higher: Counter[str] = Counter()
    for text in texts:
        counts.update(extract(pad(text, order), order))
        higher.update(extract(pad(text, order + 1), order + 1))
    return NGramTable(
        order=order,
        counts=dict(counts),
        continuation=continuation_counts(higher.keys()),
        counts_of_counts=counts_of_counts(counts),
    )
