"""Bloom-filter dictionary classifier: most word-list hits wins.

Each language's word list is stored as a bloom filter sized for a target
false-positive rate; membership tests never produce false negatives.  At
classification time the cleaned text is split on whitespace, every token is
checked against every filter, and the language with the most hits wins
(ties broken by lexicographic label code).  Scripts without word lists
(Thai, Arabic, Korean, Japanese, Chinese) are handled by the Unicode
script gate before any token counting.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .script_gate import DEFAULT_GATE_THRESHOLD, gate

_MAGIC = b"SLBF"
_FILTER_VERSION = 1
DEFAULT_TARGET_FPR = 0.01


class FilterFormatError(Exception):
    """Raised when a serialized bloom filter cannot be read."""


class BloomFilter:
    """Bit-array set membership with configurable false-positive rate.

    Uses double hashing over a keyed 128-bit blake2b digest, so results
    are stable across processes and Python versions.
    """

    def __init__(self, num_bits: int, num_hashes: int, seed: int = 0):
        if num_bits < 8:
            raise ValueError("num_bits must be >= 8")
        if num_hashes < 1:
            raise ValueError("num_hashes must be >= 1")
        self.num_bits = num_bits
        self.num_hashes = num_hashes
        self.seed = seed
        self.inserted = 0
        self._bits = bytearray((num_bits + 7) // 8)

    @classmethod
    def with_capacity(cls, capacity: int, target_fpr: float, seed: int = 0) -> "BloomFilter":
        """Size the filter for ``capacity`` items at ``target_fpr``.

        m = ceil(-n ln p / (ln 2)^2), h = round((m/n) ln 2).
        """
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        if not 0 < target_fpr < 0.5:
            raise ValueError(f"target_fpr must be in (0, 0.5), got {target_fpr}")
        num_bits = max(8, math.ceil(-capacity * math.log(target_fpr) / math.log(2) ** 2))
        num_hashes = max(1, round(num_bits / capacity * math.log(2)))
        return cls(num_bits=num_bits, num_hashes=num_hashes, seed=seed)

    def _indexes(self, item: str) -> list[int]:
        digest = hashlib.blake2b(
            item.encode("utf-8"), digest_size=16, key=self.seed.to_bytes(8, "little")
        ).digest()
        h1 = int.from_bytes(digest[:8], "little")
        h2 = int.from_bytes(digest[8:], "little") | 1
        return [(h1 + i * h2) % self.num_bits for i in range(self.num_hashes)]

    def add(self, item: str) -> None:
        for idx in self._indexes(item):
            self._bits[idx >> 3] |= 1 << (idx & 7)
        self.inserted += 1

    def __contains__(self, item: str) -> bool:
        return all(self._bits[idx >> 3] & (1 << (idx & 7)) for idx in self._indexes(item))

    _HEADER = ">4sHQIQQ"

    def to_bytes(self) -> bytes:
        header = struct.pack(
            self._HEADER, _MAGIC, _FILTER_VERSION, self.num_bits, self.num_hashes,
            self.seed, self.inserted,
        )
        return header + bytes(self._bits)

    @classmethod
    def from_bytes(cls, blob: bytes) -> "BloomFilter":
        header_size = struct.calcsize(cls._HEADER)
        if len(blob) < header_size:
            raise FilterFormatError("truncated bloom filter blob")
        magic, version, num_bits, num_hashes, seed, inserted = struct.unpack(
            cls._HEADER, blob[:header_size]
        )
        if magic != _MAGIC:
            raise FilterFormatError("not a bloom filter blob")
        if version != _FILTER_VERSION:
            raise FilterFormatError(f"unsupported bloom filter version {version}")
        bits = blob[header_size:]
        if len(bits) != (num_bits + 7) // 8:
            raise FilterFormatError("bloom filter bit array has the wrong length")
        bf = cls(num_bits=num_bits, num_hashes=num_hashes, seed=seed)
        bf.inserted = inserted
        bf._bits = bytearray(bits)
        return bf


def build_filter(words: Iterable[str], target_fpr: float = DEFAULT_TARGET_FPR, seed: int = 0) -> BloomFilter:
    """Build a filter holding every given word (lowercased)."""
    words = [w.strip().lower() for w in words]
    words = [w for w in words if w]
    if not words:
        raise ValueError("word list is empty")
    bf = BloomFilter.with_capacity(len(words), target_fpr, seed=seed)
    for word in words:
        bf.add(word)
    return bf


@dataclass
class DictionaryPack:
    """Per-language bloom filters plus word-list provenance."""

    filters: dict[str, BloomFilter]
    provenance: dict[str, dict] = field(default_factory=dict)

    @classmethod
    def from_word_lists(
        cls,
        word_lists: Mapping[str, Iterable[str]],
        target_fpr: float = DEFAULT_TARGET_FPR,
        seed: int = 0,
    ) -> "DictionaryPack":
        filters: dict[str, BloomFilter] = {}
        provenance: dict[str, dict] = {}
        for code in sorted(word_lists):
            words = [w.strip().lower() for w in word_lists[code] if w.strip()]
            filters[code] = build_filter(words, target_fpr=target_fpr, seed=seed)
            provenance[code] = {"source": "word_list", "word_count": len(words)}
        return cls(filters=filters, provenance=provenance)

    @classmethod
    def from_directory(
        cls,
        directory: str | Path,
        target_fpr: float = DEFAULT_TARGET_FPR,
        seed: int = 0,
        codes: Iterable[str] | None = None,
    ) -> "DictionaryPack":
        """Load ``<code>.txt`` word lists (UTF-8, one word per line)."""
        directory = Path(directory)
        paths = sorted(directory.glob("*.txt"))
        wanted = set(codes) if codes is not None else None
        word_lists = {}
        for path in paths:
            code = path.stem
            if wanted is not None and code not in wanted:
                continue
            word_lists[code] = path.read_text("utf-8").splitlines()
        if not word_lists:
            raise ValueError(f"no word lists found under {directory}")
        pack = cls.from_word_lists(word_lists, target_fpr=target_fpr, seed=seed)
        for code in pack.provenance:
            pack.provenance[code]["source"] = str(directory / f"{code}.txt")
        return pack


def classify_dict(
    text: str,
    pack: DictionaryPack,
    threshold: float = DEFAULT_GATE_THRESHOLD,
) -> str | None:
    """Dictionary-hit classification with the script gate applied first.

    Returns the winning label code, or None when no word of the text is in
    any dictionary (the designated unknown outcome).
    """
    gated = gate(text, threshold)
    if gated is not None:
        return gated
    tokens = text.split()
    best_code: str | None = None
    best_hits = 0
    for code in sorted(pack.filters):
        bf = pack.filters[code]
        hits = sum(1 for tok in tokens if tok in bf)
        if hits > best_hits:
            best_code, best_hits = code, hits
    return best_code
