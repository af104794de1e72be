"""Threshold-based Unicode script pre-classifier.

Texts dominated by Thai, Arabic, or Hangul characters are labeled directly;
texts dominated by CJK characters are split into Japanese (any kana present)
or Chinese (han only).  Everything else falls through to the statistical
model.  Character ratios are taken over non-space characters.

Code point ranges:
    Thai      U+0E00-U+0E7F
    Arabic    U+0600-U+06FF, U+0750-U+077F, U+08A0-U+08FF
    Hangul    U+AC00-U+D7AF, U+1100-U+11FF, U+3130-U+318F
    Hiragana  U+3040-U+309F
    Katakana  U+30A0-U+30FF
    Han       U+4E00-U+9FFF, U+3400-U+4DBF
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

GATE_THAI = "th"
GATE_ARABIC = "ar"
GATE_KOREAN = "ko"
GATE_JAPANESE = "ja"
GATE_CHINESE = "zh"

DEFAULT_GATE_THRESHOLD = 0.3

_RANGES = {
    "thai": ((0x0E00, 0x0E7F),),
    "arabic": ((0x0600, 0x06FF), (0x0750, 0x077F), (0x08A0, 0x08FF)),
    "hangul": ((0xAC00, 0xD7AF), (0x1100, 0x11FF), (0x3130, 0x318F)),
    "kana": ((0x3040, 0x309F), (0x30A0, 0x30FF)),
    "han": ((0x4E00, 0x9FFF), (0x3400, 0x4DBF)),
}


@lru_cache(maxsize=4096)
def _bucket(ch: str) -> str:
    cp = ord(ch)
    for name, ranges in _RANGES.items():
        if any(lo <= cp <= hi for lo, hi in ranges):
            return name
    return "other"


@dataclass(frozen=True)
class ScriptProfile:
    """Per-script fractions of the non-space characters of a text."""

    thai: float
    arabic: float
    hangul: float
    kana: float
    han: float
    other: float


def profile(text: str) -> ScriptProfile:
    """Character-ratio profile; requires at least one non-space character."""
    chars = [ch for ch in text if not ch.isspace()]
    if not chars:
        raise ValueError("cannot profile a text without non-space characters")
    tallies = {"thai": 0, "arabic": 0, "hangul": 0, "kana": 0, "han": 0, "other": 0}
    for ch in chars:
        tallies[_bucket(ch)] += 1
    n = len(chars)
    return ScriptProfile(**{name: count / n for name, count in tallies.items()})


def gate(text: str, threshold: float = DEFAULT_GATE_THRESHOLD) -> str | None:
    """Label a text whose dominant script exceeds ``threshold``, else None.

    Within the CJK branch, any kana at all means Japanese; han without
    kana means Chinese.
    """
    if not 0 < threshold < 1:
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    prof = profile(text)
    if prof.thai > threshold:
        return GATE_THAI
    if prof.arabic > threshold:
        return GATE_ARABIC
    if prof.hangul > threshold:
        return GATE_KOREAN
    if prof.kana + prof.han > threshold:
        return GATE_JAPANESE if prof.kana > 0 else GATE_CHINESE
    return None
