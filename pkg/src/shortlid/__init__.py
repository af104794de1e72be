"""shortlid: language identification for short, noisy texts.

Character 1-4-gram models with modified Kneser-Ney smoothing, optionally
combined with per-user evidence-accumulation priors and UI-language
boosting, a Unicode script gate for Thai/Arabic/Korean/Japanese/Chinese,
and a bloom-filter dictionary baseline.  Ships a train/evaluate/benchmark
harness and a CLI.
"""

from .classify import Prediction, UnclassifiableTextError, predict
from .corpus import (
    FoldPlan,
    LabelRegistry,
    LanguageLabel,
    Sample,
    load_dataset,
    make_folds,
)
from .dictionary import BloomFilter, DictionaryPack, build_filter, classify_dict
from .evaluation import ConfusionMatrix, EvalReport, f1, micro_macro, run_cv
from .kneser_ney import (
    Discounts,
    KnModel,
    LanguageModel,
    estimate_discounts,
    fit_language_model,
)
from .ngrams import NGramTable, count_corpus, extract, pad
from .preprocess import CleanText, clean, is_classifiable
from .script_gate import ScriptProfile, gate, profile
from .user_priors import UserPrior, UserPriorStore, combine

__version__ = "0.1.0"

__all__ = [
    "BloomFilter",
    "CleanText",
    "ConfusionMatrix",
    "DictionaryPack",
    "Discounts",
    "EvalReport",
    "FoldPlan",
    "KnModel",
    "LabelRegistry",
    "LanguageLabel",
    "LanguageModel",
    "NGramTable",
    "Prediction",
    "Sample",
    "ScriptProfile",
    "UnclassifiableTextError",
    "UserPrior",
    "UserPriorStore",
    "build_filter",
    "classify_dict",
    "clean",
    "combine",
    "count_corpus",
    "estimate_discounts",
    "extract",
    "f1",
    "fit_language_model",
    "gate",
    "is_classifiable",
    "load_dataset",
    "make_folds",
    "micro_macro",
    "pad",
    "predict",
    "profile",
    "run_cv",
    "__version__",
]
