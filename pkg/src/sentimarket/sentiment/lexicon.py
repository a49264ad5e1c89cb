"""Sentiment lexicon: word valences plus the booster and negator tables.

The lexicon file carries only `token<TAB>valence` entries; booster and
negator words are part of the rule set and live here as constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

# Mean intensity shift contributed by a degree adverb.
BOOSTER_INCREMENT = 0.293

_INTENSIFIERS = [
    "absolutely", "amazingly", "completely", "considerably", "decidedly",
    "deeply", "enormously", "entirely", "especially", "exceptionally",
    "extremely", "extraordinarily", "fully", "greatly", "highly", "hugely",
    "incredibly", "insanely", "intensely", "majorly", "particularly",
    "purely", "really", "remarkably", "seriously", "so", "substantially",
    "thoroughly", "totally", "tremendously", "truly", "unbelievably",
    "unusually", "utterly", "very",
]

_DAMPENERS = [
    "almost", "barely", "hardly", "just", "kinda", "less", "little",
    "marginally", "mildly", "occasionally", "partly", "scarcely",
    "slightly", "somewhat", "sorta",
]

DEFAULT_BOOSTERS: dict[str, float] = {
    **{w: BOOSTER_INCREMENT for w in _INTENSIFIERS},
    **{w: -BOOSTER_INCREMENT for w in _DAMPENERS},
}

DEFAULT_NEGATORS: frozenset[str] = frozenset([
    "not", "no", "never", "none", "nobody", "nothing", "neither", "nor",
    "nowhere", "without", "rarely", "seldom", "despite",
    "isnt", "isn't", "arent", "aren't", "wasnt", "wasn't", "werent",
    "weren't", "cant", "can't", "cannot", "couldnt", "couldn't",
    "shouldnt", "shouldn't", "wont", "won't", "wouldnt", "wouldn't",
    "dont", "don't", "doesnt", "doesn't", "didnt", "didn't",
    "aint", "ain't", "hasnt", "hasn't", "havent", "haven't",
])


class LexiconError(ValueError):
    """Raised for unreadable or malformed lexicon files."""


@dataclass(frozen=True)
class Lexicon:
    """Immutable word-valence table with booster/negator vocabularies.

    Entry keys are lowercase, whitespace-free tokens; valences are finite
    reals (typically in [-4, 4]). The negator set must be disjoint from
    the booster keys.
    """

    entries: dict[str, float]
    boosters: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_BOOSTERS))
    negators: frozenset[str] = DEFAULT_NEGATORS

    def __post_init__(self) -> None:
        for token, valence in self.entries.items():
            if token != token.lower() or any(c.isspace() for c in token) or not token:
                raise LexiconError(f"invalid lexicon token: {token!r}")
            if not math.isfinite(valence):
                raise LexiconError(f"non-finite valence for token {token!r}")
        for token, increment in self.boosters.items():
            if not math.isfinite(increment):
                raise LexiconError(f"non-finite booster increment for {token!r}")
        overlap = self.negators & self.boosters.keys()
        if overlap:
            raise LexiconError(f"negators overlap boosters: {sorted(overlap)}")

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(path: str | Path) -> Lexicon:
    """Parse a `token<TAB>valence` lexicon file into a Lexicon.

    Tokens are lowercased; on duplicates the last line wins. `#` lines and
    blank lines are skipped. Raises LexiconError with the offending line
    number for malformed records.
    """
    path = Path(path)
    if not path.is_file():
        raise LexiconError(f"lexicon file not found: {path}")
    entries: dict[str, float] = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LexiconError(f"{path}:{lineno}: expected `token<TAB>valence`")
            token, valence_text = parts[0].strip().lower(), parts[1].strip()
            if not token or any(c.isspace() for c in token):
                raise LexiconError(f"{path}:{lineno}: bad token {parts[0]!r}")
            try:
                valence = float(valence_text)
            except ValueError:
                raise LexiconError(f"{path}:{lineno}: bad valence {valence_text!r}") from None
            if not math.isfinite(valence):
                raise LexiconError(f"{path}:{lineno}: non-finite valence")
            entries[token] = valence
    return Lexicon(entries=entries)


def default_lexicon_path() -> Path:
    """Path of the curated lexicon shipped with the package."""
    return Path(str(resources.files("sentimarket").joinpath("data/lexicon.txt")))


def load_default_lexicon() -> Lexicon:
    return load_lexicon(default_lexicon_path())
