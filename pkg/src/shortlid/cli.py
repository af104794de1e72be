"""Command-line interface: train, classify, evaluate, priors.

Examples:

    shortlid train --data corpus.jsonl --out model.json.gz
    shortlid classify --model model.json.gz --input texts.txt
    echo '{"text": "buenos días", "user_id": "u1"}' | \\
        shortlid classify --model model.json.gz --jsonl --priors priors.jsonl
    shortlid evaluate --data corpus.jsonl --method kn --k 5 --out reports/kn
    shortlid priors show --store priors.jsonl --model model.json.gz
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import UnclassifiableTextError, predict
from .config import Config, ConfigError, load_config
from .corpus import DatasetError, Sample, filter_min_samples, load_dataset
from .evaluation import METHODS, run_cv
from .kneser_ney import KnModel, ModelFormatError
from .preprocess import clean, is_classifiable
from .user_priors import UserPriorStore


def _load_config(args: argparse.Namespace) -> Config:
    config = load_config(args.config) if getattr(args, "config", None) else Config()
    for name in ("max_order", "gate_threshold", "prior_init", "ui_boost", "dict_fpr", "seed"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)
    if getattr(args, "gate_in_kn", False):
        config.gate_in_kn = True
    if getattr(args, "wordlists", None):
        config.wordlists_dir = args.wordlists
    return config


def _parse_aliases(pairs: list[str]) -> dict[str, str]:
    alias = {}
    for pair in pairs:
        if "=" not in pair:
            raise DatasetError(f"bad alias {pair!r}, expected FROM=TO")
        src, _, dst = pair.partition("=")
        alias[src.strip()] = dst.strip()
    return alias


def cmd_train(args: argparse.Namespace) -> int:
    config = _load_config(args)
    samples = load_dataset(args.data, format=args.format, alias=_parse_aliases(args.alias))
    if args.min_samples > 1:
        samples, discarded = filter_min_samples(samples, args.min_samples)
        if discarded:
            print(f"discarded rare labels: {discarded}", file=sys.stderr)
    pairs = []
    for s in samples:
        if s.label is None:
            continue
        text = clean(s.text)
        if is_classifiable(text):
            pairs.append((text, s.label))
    model = KnModel.train(pairs, max_order=config.max_order)
    model.save(args.out)
    print(f"trained {len(model.registry)} languages from {len(pairs)} texts")
    print(f"{'label':<8}{'texts':>8}{'chars':>10}{'vocab':>8}")
    by_label: dict[str, list[str]] = {}
    for text, label in pairs:
        by_label.setdefault(label, []).append(text)
    for code in model.registry.codes:
        texts = by_label[code]
        vocab_size = len(model.models[code].tables[1].counts)
        print(f"{code:<8}{len(texts):>8}{sum(len(t) for t in texts):>10}{vocab_size:>8}")
    print(f"model written to {args.out}")
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    config = _load_config(args)
    model = KnModel.load(args.model)
    store = None
    if args.priors:
        if Path(args.priors).exists():
            store = UserPriorStore.load(
                args.priors, model.registry,
                init_value=config.prior_init, ui_boost=config.ui_boost,
            )
        else:
            store = UserPriorStore(
                model.registry, init_value=config.prior_init, ui_boost=config.ui_boost
            )

    stream = sys.stdin if args.input in (None, "-") else open(args.input, encoding="utf-8")
    try:
        for line in stream:
            line = line.rstrip("\n")
            if args.jsonl:
                try:
                    record = json.loads(line) if line.strip() else {}
                except json.JSONDecodeError:
                    record = {}
                sample = Sample(
                    text=str(record.get("text", "")),
                    user_id=record.get("user_id"),
                    ui_lang=record.get("ui_lang"),
                )
            else:
                sample = Sample(text=line)
            if not sample.text:
                print(json.dumps({"error": "unclassifiable"}))
                continue
            try:
                prediction = predict(
                    model, sample, store,
                    use_gate=config.gate_in_kn,
                    gate_threshold=config.gate_threshold,
                )
            except UnclassifiableTextError:
                print(json.dumps({"error": "unclassifiable"}))
                continue
            print(
                json.dumps(
                    {
                        "label": prediction.label,
                        "distribution": {
                            k: round(v, 6) for k, v in prediction.distribution.items()
                        },
                        "source": prediction.source,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
            )
    finally:
        if stream is not sys.stdin:
            stream.close()
    if store is not None:
        store.save(args.priors)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load_config(args)
    samples = load_dataset(args.data, format=args.format, alias=_parse_aliases(args.alias))
    if args.min_samples > 1:
        samples, _ = filter_min_samples(samples, args.min_samples)
    word_lists = None
    if config.wordlists_dir:
        from .dictionary import DictionaryPack  # noqa: F401  (validated below)

        word_lists = {
            p.stem: p.read_text("utf-8").splitlines()
            for p in sorted(Path(config.wordlists_dir).glob("*.txt"))
        }
    report = run_cv(
        samples,
        k=args.k,
        method=args.method,
        seed=config.seed,
        max_order=config.max_order,
        prior_init=config.prior_init,
        ui_boost=config.ui_boost,
        gate_threshold=config.gate_threshold,
        gate_in_kn=config.gate_in_kn,
        word_lists=word_lists,
        dict_fpr=config.dict_fpr,
    )
    print(report.to_text())
    if args.out:
        report.write(args.out)
        print(f"report written to {args.out}")
    return 0


def cmd_priors(args: argparse.Namespace) -> int:
    if args.priors_command == "reset":
        Path(args.store).write_text("", "utf-8")
        print(f"cleared prior store {args.store}")
        return 0
    model = KnModel.load(args.model)
    store = UserPriorStore.load(args.store, model.registry)
    users = [args.user] if args.user else sorted(store.user_ids)
    for user_id in users:
        if user_id not in store:
            print(f"{user_id}: not in store", file=sys.stderr)
            return 1
        prior = store.get_prior(user_id)
        top = sorted(prior.counts.items(), key=lambda kv: (-kv[1], kv[0]))[:5]
        rendered = ", ".join(f"{code}={count:g}" for code, count in top)
        print(f"{user_id}: {rendered}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shortlid", description="Language identification for short noisy texts"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--max-order", dest="max_order", type=int)
        p.add_argument("--gate-threshold", dest="gate_threshold", type=float)
        p.add_argument("--gate-in-kn", dest="gate_in_kn", action="store_true")
        p.add_argument("--prior-init", dest="prior_init", type=float)
        p.add_argument("--ui-boost", dest="ui_boost", type=float)
        p.add_argument("--dict-fpr", dest="dict_fpr", type=float)
        p.add_argument("--seed", type=int)

    p_train = sub.add_parser("train", help="train a model from a labeled dataset")
    p_train.add_argument("--data", required=True)
    p_train.add_argument("--out", required=True)
    p_train.add_argument("--format", choices=("jsonl", "csv"))
    p_train.add_argument("--alias", action="append", default=[], metavar="FROM=TO")
    p_train.add_argument("--min-samples", type=int, default=1)
    add_common(p_train)
    p_train.set_defaults(func=cmd_train)

    p_classify = sub.add_parser("classify", help="classify texts from a file or stdin")
    p_classify.add_argument("--model", required=True)
    p_classify.add_argument("--input", help="input file; '-' or omitted for stdin")
    p_classify.add_argument("--jsonl", action="store_true",
                            help="input lines are JSON objects with text/user_id/ui_lang")
    p_classify.add_argument("--priors", help="prior store JSONL, updated after the run")
    add_common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_eval = sub.add_parser("evaluate", help="k-fold cross-validation of one method")
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--method", required=True, choices=METHODS)
    p_eval.add_argument("--k", type=int, default=5)
    p_eval.add_argument("--format", choices=("jsonl", "csv"))
    p_eval.add_argument("--alias", action="append", default=[], metavar="FROM=TO")
    p_eval.add_argument("--min-samples", type=int, default=1)
    p_eval.add_argument("--out", help="directory for report.json/report.txt/confusion.csv")
    p_eval.add_argument("--wordlists", help="directory of <code>.txt word lists")
    add_common(p_eval)
    p_eval.set_defaults(func=cmd_evaluate)

    p_priors = sub.add_parser("priors", help="inspect or reset a prior store")
    priors_sub = p_priors.add_subparsers(dest="priors_command", required=True)
    p_show = priors_sub.add_parser("show")
    p_show.add_argument("--store", required=True)
    p_show.add_argument("--model", required=True)
    p_show.add_argument("--user")
    p_show.set_defaults(func=cmd_priors)
    p_reset = priors_sub.add_parser("reset")
    p_reset.add_argument("--store", required=True)
    p_reset.set_defaults(func=cmd_priors)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, ModelFormatError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
