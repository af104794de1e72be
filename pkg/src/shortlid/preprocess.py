"""Normalization of raw short texts into a canonical, comparable form.

The cleaning pipeline applies, in this exact order: URL removal, @-mention
removal, emoticon removal, lowercasing, punctuation removal, whitespace
collapsing and trimming.  The order is part of the contract: emoticons such
as ``:P`` must be removed as whole tokens before the punctuation pass would
otherwise strip the ``:`` and leave a stray letter behind.
"""

from __future__ import annotations

import re
import unicodedata
from importlib import resources

# A cleaned text is a plain string satisfying the pipeline's postconditions.
CleanText = str

# Tokens starting with a URL scheme or "www.", up to the next whitespace.
_URL_RE = re.compile(r"(?<!\S)(?:https?://|www\.)\S*")
# @ followed by at least one word character, as a whitespace-delimited token.
_MENTION_RE = re.compile(r"(?<!\S)@\w+")

# Code point ranges treated as emoji, removed wherever they occur.
_EMOJI_RANGES = (
    (0x1F1E6, 0x1F1FF),  # regional indicators (flags)
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
    (0xFE00, 0xFE0F),    # variation selectors
)

_WS_RE = re.compile(r"\s+")


def _load_emoticons() -> tuple[str, ...]:
    text = resources.files("shortlid.data").joinpath("emoticons.txt").read_text("utf-8")
    tokens = [line.strip() for line in text.splitlines()]
    return tuple(t for t in tokens if t and not t.startswith("#"))


EMOTICONS = _load_emoticons()

# Longest-first so ":-))" wins over ":-)" where both are listed.
_EMOTICON_RE = re.compile(
    r"(?<!\S)(?:" + "|".join(re.escape(t) for t in sorted(EMOTICONS, key=len, reverse=True)) + r")(?!\S)",
    re.IGNORECASE,
)


def _is_emoji(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def _strip_punctuation(text: str) -> str:
    # Punctuation (P*), symbols (S*) and control/format/unassigned characters
    # (C*) are replaced by a space so word boundaries survive; whitespace is
    # left for the final collapsing pass.  Stripping C* guarantees that the
    # reserved n-gram marker code points can never occur in a CleanText.
    out = []
    for ch in text:
        if ch.isspace():
            out.append(ch)
            continue
        cat = unicodedata.category(ch)
        if cat[0] in "PSC":
            out.append(" ")
        else:
            out.append(ch)
    return "".join(out)


def clean(raw: str) -> CleanText:
    """Normalize a raw text for classification.

    Always succeeds; the result may be empty (e.g. for a mention-only text).
    Idempotent: ``clean(clean(x)) == clean(x)``.
    """
    text = _URL_RE.sub(" ", raw)
    text = _MENTION_RE.sub(" ", text)
    text = _EMOTICON_RE.sub(" ", text)
    text = "".join(" " if _is_emoji(ch) else ch for ch in text)
    text = text.lower()
    text = _strip_punctuation(text)
    text = _WS_RE.sub(" ", text).strip()
    return text


def is_classifiable(text: CleanText) -> bool:
    """True iff the text has at least one non-whitespace character."""
    return bool(text.strip())
