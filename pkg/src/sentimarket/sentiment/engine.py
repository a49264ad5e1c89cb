"""Rule-based sentiment scoring.

Two independent analyzers score free text against the same lexicon:

* the valence analyzer sums rule-adjusted word valences and squashes the
  sum through s/sqrt(s^2 + alpha);
* the polarity analyzer averages per-word polarities with intensifier
  and negation modifiers.

The combined score follows the agreement rule: when both analyzers land
in the same label band the valence score is returned, otherwise the text
counts as neutral (0.0).
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from enum import Enum

from .lexicon import Lexicon

# Valence rule constants.
NORMALIZATION_ALPHA = 15.0
CAPS_EMPHASIS = 0.733
NEGATION_FACTOR = -0.74
NEGATION_WINDOW = 3
BOOSTER_DISTANCE_DAMPING = (1.0, 0.95, 0.9)
EXCLAMATION_STEP = 0.292
MAX_EXCLAMATIONS = 3
CONTRAST_BEFORE_WEIGHT = 0.5
CONTRAST_AFTER_WEIGHT = 1.5
CONTRAST_TOKEN = "but"

# Polarity rule constants.
POLARITY_SCALE = 4.0
POLARITY_NEGATION_WINDOW = 2
POLARITY_NEGATION_FACTOR = -0.5

# Scores within this distance of zero count as neutral.
NEUTRAL_BAND = 0.05

_STRIP_CHARS = string.punctuation


class SentimentLabel(str, Enum):
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    POSITIVE = "positive"


@dataclass(frozen=True)
class SentimentResult:
    """Scores of both analyzers plus the combined value and its label."""

    valence: float
    polarity: float
    sentiment: float
    label: SentimentLabel


def tokenize(text: str) -> list[str]:
    """Split on Unicode whitespace and strip edge punctuation per token.

    Internal punctuation survives (``don't`` stays intact); tokens that
    are punctuation-only disappear. Case is preserved for the caps rule.
    """
    tokens = []
    for raw in text.split():
        token = raw.strip(_STRIP_CHARS)
        if token:
            tokens.append(token)
    return tokens


def _clamp(value: float) -> float:
    return max(-1.0, min(1.0, value))


def _mixed_case(tokens: list[str]) -> bool:
    # Caps emphasis only applies when SOME but not all tokens shout.
    upper = sum(1 for t in tokens if t.isupper())
    return 0 < upper < len(tokens)


def analyze_valence(text: str, lexicon: Lexicon) -> float:
    """Summing analyzer: rule-adjusted valences normalized to [-1, 1].

    Rules, in application order per sentiment-bearing token: all-caps
    emphasis, booster adjustment from up to three preceding tokens
    (damped with distance), negation flip per negator in the same window;
    then contrast reweighting around the first "but", exclamation
    amplification of the sum, and s/sqrt(s^2 + alpha) normalization.
    """
    tokens = tokenize(text)
    if not tokens:
        return 0.0
    lowered = [t.lower() for t in tokens]
    mixed_case = _mixed_case(tokens)

    scored: list[tuple[int, float]] = []
    for i, token_lower in enumerate(lowered):
        if token_lower in lexicon.boosters or token_lower in lexicon.negators:
            continue
        valence = lexicon.entries.get(token_lower)
        if valence is None:
            continue
        if tokens[i].isupper() and mixed_case:
            valence += CAPS_EMPHASIS if valence > 0 else -CAPS_EMPHASIS
        for distance in range(1, NEGATION_WINDOW + 1):
            j = i - distance
            if j < 0:
                break
            increment = lexicon.boosters.get(lowered[j])
            if increment is not None:
                if valence < 0:
                    increment = -increment
                valence += increment * BOOSTER_DISTANCE_DAMPING[distance - 1]
        for distance in range(1, NEGATION_WINDOW + 1):
            j = i - distance
            if j < 0:
                break
            if lowered[j] in lexicon.negators:
                valence *= NEGATION_FACTOR
        scored.append((i, valence))

    if CONTRAST_TOKEN in lowered:
        pivot = lowered.index(CONTRAST_TOKEN)
        scored = [
            (i, v * (CONTRAST_BEFORE_WEIGHT if i < pivot else CONTRAST_AFTER_WEIGHT))
            for i, v in scored
            if i != pivot
        ]

    total = sum(v for _, v in scored)
    if total != 0.0:
        amplifier = min(text.count("!"), MAX_EXCLAMATIONS) * EXCLAMATION_STEP
        total += amplifier if total > 0 else -amplifier
    return _clamp(total / math.sqrt(total * total + NORMALIZATION_ALPHA))


def analyze_polarity(text: str, lexicon: Lexicon) -> float:
    """Averaging analyzer: mean of matched per-token polarities.

    A token's polarity is its valence scaled into [-1, 1]; an immediately
    preceding booster multiplies it by (1 + increment) and a negator
    within the two preceding tokens multiplies it by -0.5. Texts without
    any matched token score 0.0.
    """
    tokens = tokenize(text)
    if not tokens:
        return 0.0
    lowered = [t.lower() for t in tokens]

    polarities: list[float] = []
    for i, token_lower in enumerate(lowered):
        if token_lower in lexicon.boosters or token_lower in lexicon.negators:
            continue
        valence = lexicon.entries.get(token_lower)
        if valence is None:
            continue
        polarity = _clamp(valence / POLARITY_SCALE)
        if i > 0:
            increment = lexicon.boosters.get(lowered[i - 1])
            if increment is not None:
                polarity *= 1.0 + increment
        window = lowered[max(0, i - POLARITY_NEGATION_WINDOW):i]
        if any(w in lexicon.negators for w in window):
            polarity *= POLARITY_NEGATION_FACTOR
        polarities.append(_clamp(polarity))

    if not polarities:
        return 0.0
    return _clamp(sum(polarities) / len(polarities))


def classify(score: float, band: float = NEUTRAL_BAND) -> SentimentLabel:
    """Map a score to a label; the band boundary itself is neutral."""
    if score < -band:
        return SentimentLabel.NEGATIVE
    if score > band:
        return SentimentLabel.POSITIVE
    return SentimentLabel.NEUTRAL


def combine(valence: float, polarity: float) -> float:
    """Agreement rule: the valence score when labels agree, else 0.0."""
    if classify(valence) == classify(polarity):
        return valence
    return 0.0


def score_text(text: str, lexicon: Lexicon) -> SentimentResult:
    """Run both analyzers and combine them."""
    valence = analyze_valence(text, lexicon)
    polarity = analyze_polarity(text, lexicon)
    sentiment = combine(valence, polarity)
    return SentimentResult(
        valence=valence,
        polarity=polarity,
        sentiment=sentiment,
        label=classify(sentiment),
    )
