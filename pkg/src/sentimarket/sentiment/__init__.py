from .engine import (
    NEUTRAL_BAND,
    SentimentLabel,
    SentimentResult,
    analyze_polarity,
    analyze_valence,
    classify,
    combine,
    score_text,
    tokenize,
)
from .lexicon import (
    DEFAULT_BOOSTERS,
    DEFAULT_NEGATORS,
    Lexicon,
    LexiconError,
    default_lexicon_path,
    load_default_lexicon,
    load_lexicon,
)

__all__ = [
    "NEUTRAL_BAND",
    "SentimentLabel",
    "SentimentResult",
    "analyze_polarity",
    "analyze_valence",
    "classify",
    "combine",
    "score_text",
    "tokenize",
    "DEFAULT_BOOSTERS",
    "DEFAULT_NEGATORS",
    "Lexicon",
    "LexiconError",
    "default_lexicon_path",
    "load_default_lexicon",
    "load_lexicon",
]
