import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ref_polarity, ref_valence
from sentimarket.sentiment.engine import (
    SentimentLabel,
    analyze_polarity,
    analyze_valence,
    classify,
    combine,
    score_text,
    tokenize,
)
from sentimarket.sentiment.lexicon import Lexicon


def row_for(oracle_rows, text):
    return next(r for r in oracle_rows if r["text"] == text)


class TestTokenize:
    def test_strips_edge_punctuation_keeps_inner(self):
        assert tokenize("don't panic!!") == ["don't", "panic"]

    def test_splits_on_unicode_whitespace(self):
        assert tokenize("a b\tc\nd") == ["a", "b", "c", "d"]

    def test_punctuation_only_tokens_vanish(self):
        assert tokenize("!!! ... ??") == []


class TestValence:
    def test_empty_text_scores_zero(self, lexicon):
        assert analyze_valence("", lexicon) == 0.0

    def test_unknown_words_score_zero(self, lexicon):
        assert analyze_valence("the quick brown fox", lexicon) == 0.0

    def test_matches_frozen_oracle(self, lexicon, oracle_rows):
        for row in oracle_rows:
            assert analyze_valence(row["text"], lexicon) == pytest.approx(
                row["valence"], abs=1e-9), row["text"]

    def test_negation_flips_sign_and_damps(self, lexicon, oracle_rows):
        good = row_for(oracle_rows, "good")["valence"]
        not_good = row_for(oracle_rows, "not good")["valence"]
        assert analyze_valence("good", lexicon) == good > 0
        assert analyze_valence("not good", lexicon) == not_good
        assert not_good < 0 and not_good < good

    def test_booster_amplifies(self, lexicon):
        assert analyze_valence("very good", lexicon) > analyze_valence("good", lexicon)

    def test_dampener_reduces(self, lexicon):
        assert 0 < analyze_valence("slightly good", lexicon) < analyze_valence("good", lexicon)

    def test_caps_emphasis_needs_mixed_case(self, lexicon):
        shouting_one_word = analyze_valence("GOOD", lexicon)
        assert shouting_one_word == analyze_valence("good", lexicon)
        assert analyze_valence("GOOD stuff", lexicon) > analyze_valence("good stuff", lexicon)

    def test_exclamations_amplify_capped(self, lexicon):
        base = analyze_valence("good", lexicon)
        one = analyze_valence("good!", lexicon)
        three = analyze_valence("good!!!", lexicon)
        four = analyze_valence("good!!!!", lexicon)
        assert base < one < three
        assert three == four  # cap at 3

    def test_contrast_clause_reweights(self, lexicon):
        # weight after "but" dominates: positive tail wins
        assert analyze_valence("bad but good", lexicon) > 0
        assert analyze_valence("good but bad", lexicon) < 0


class TestPolarity:
    def test_empty_and_unmatched_score_zero(self, lexicon):
        assert analyze_polarity("", lexicon) == 0.0
        assert analyze_polarity("lorem ipsum dolor", lexicon) == 0.0

    def test_matches_frozen_oracle(self, lexicon, oracle_rows):
        for row in oracle_rows:
            assert analyze_polarity(row["text"], lexicon) == pytest.approx(
                row["polarity"], abs=1e-9), row["text"]

    def test_averages_instead_of_summing(self, lexicon):
        assert analyze_polarity("great great", lexicon) == analyze_polarity("great", lexicon)

    def test_negator_flips_and_damps(self, lexicon):
        great = analyze_polarity("great", lexicon)
        not_great = analyze_polarity("not great", lexicon)
        assert not_great == -0.5 * great

    def test_intensifier_multiplies_following_token(self, lexicon):
        assert analyze_polarity("very good", lexicon) == pytest.approx(
            analyze_polarity("good", lexicon) * 1.293)


class TestCombine:
    def test_agreement_returns_valence_value(self):
        assert combine(0.6, 0.4) == 0.6

    def test_disagreement_returns_zero(self):
        assert combine(0.6, -0.3) == 0.0

    def test_both_neutral_agree(self):
        assert combine(0.0, 0.0) == 0.0

    def test_agreement_is_exact_passthrough(self):
        value = 0.12345678901234567
        assert combine(value, 0.9) is not None
        assert combine(value, 0.9) == value

    def test_grid_exhaustive(self):
        grid = [i / 20 for i in range(-20, 21)]
        for v in grid:
            for p in grid:
                expected = v if classify(v) == classify(p) else 0.0
                assert combine(v, p) == expected


class TestClassify:
    @pytest.mark.parametrize("score,label", [
        (0.0, SentimentLabel.NEUTRAL),
        (0.5, SentimentLabel.POSITIVE),
        (-0.5, SentimentLabel.NEGATIVE),
        (-0.05, SentimentLabel.NEUTRAL),   # band boundary is inclusive
        (0.05, SentimentLabel.NEUTRAL),
        (0.050000001, SentimentLabel.POSITIVE),
    ])
    def test_band(self, score, label):
        assert classify(score) == label

    def test_custom_band(self):
        assert classify(0.2, band=0.3) == SentimentLabel.NEUTRAL
        assert classify(0.2, band=0.1) == SentimentLabel.POSITIVE


class TestCombinedPipeline:
    def test_matches_frozen_oracle(self, lexicon, oracle_rows):
        for row in oracle_rows:
            result = score_text(row["text"], lexicon)
            assert result.sentiment == pytest.approx(row["sentiment"], abs=1e-9)
            assert result.label.value == row["label"]

    def test_determinism_bit_identical(self, lexicon, oracle_rows):
        for row in oracle_rows:
            a = score_text(row["text"], lexicon)
            b = score_text(row["text"], lexicon)
            assert (a.valence, a.polarity, a.sentiment) == (b.valence, b.polarity, b.sentiment)


# --- property tests ----------------------------------------------------------

text_strategy = st.text(max_size=200)


@given(text=text_strategy)
@settings(max_examples=300, deadline=None)
def test_scores_always_in_range_and_total(text):
    lexicon = _hypothesis_lexicon()
    v = analyze_valence(text, lexicon)
    p = analyze_polarity(text, lexicon)
    assert -1.0 <= v <= 1.0 and math.isfinite(v)
    assert -1.0 <= p <= 1.0 and math.isfinite(p)
    c = combine(v, p)
    assert c == v or c == 0.0


@given(text=text_strategy)
@settings(max_examples=200, deadline=None)
def test_engine_equals_reference_on_arbitrary_text(text):
    lexicon = _hypothesis_lexicon()
    entries = lexicon.entries
    boosters = lexicon.boosters
    negators = set(lexicon.negators)
    assert analyze_valence(text, lexicon) == ref_valence(text, entries, boosters, negators)
    assert analyze_polarity(text, lexicon) == ref_polarity(text, entries, boosters, negators)


@given(v=st.floats(min_value=-1, max_value=1), p=st.floats(min_value=-1, max_value=1))
@settings(max_examples=500, deadline=None)
def test_combine_properties(v, p):
    c = combine(v, p)
    if classify(v) == classify(p):
        assert c == v
    else:
        assert c == 0.0


_LEXICON_CACHE = None


def _hypothesis_lexicon() -> Lexicon:
    global _LEXICON_CACHE
    if _LEXICON_CACHE is None:
        from sentimarket.sentiment.lexicon import load_default_lexicon
        _LEXICON_CACHE = load_default_lexicon()
    return _LEXICON_CACHE
