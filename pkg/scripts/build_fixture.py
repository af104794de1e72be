#!/usr/bin/env python3
"""Regenerate the bundled benchmark corpus (deterministic; seed pinned).

Usage: python scripts/build_fixture.py
"""

from pathlib import Path

from shortlid.fixtures import generate_fixture_corpus, save_jsonl

OUT = Path(__file__).resolve().parent.parent / "src" / "shortlid" / "data" / "fixture" / "corpus.jsonl"


def main() -> None:
    samples = generate_fixture_corpus(seed=72012, per_lang=200)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    save_jsonl(samples, OUT)
    langs = sorted({s.label for s in samples})
    print(f"wrote {len(samples)} samples, {len(langs)} languages -> {OUT}")


if __name__ == "__main__":
    main()
