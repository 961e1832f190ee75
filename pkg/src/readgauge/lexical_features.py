"""Traditional readability formulas and lexical-diversity measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .textcore import Document

MTLD_THRESHOLD = 0.72
MTLD_MIN_TOKENS = 10

TRADITIONAL_FEATURE_NAMES = [
    "number_of_sentences",
    "mean_sentence_length",
    "number_of_characters",
    "number_of_syllables",
    "flesch_kincaid",
    "flesch",
    "automated_readability_index",
    "coleman_liau",
    "smog",
    "fog",
    "forcast",
    "lix",
]

TTR_FEATURE_NAMES = [
    "type_token_ratio",
    "corrected_type_token_ratio",
    "root_type_token_ratio",
    "bilogarithmic_type_token_ratio",
    "uber_index",
    "mtld",
]


@dataclass(frozen=True)
class SurfaceStats:
    n_sentences: int
    n_words: int
    n_characters: int
    n_syllables: int
    words_per_sentence: float
    syllables_per_word: float
    characters_per_word: float
    sentences_per_word: float
    prop_polysyllabic: float
    prop_monosyllabic: float
    prop_long_words: float
    polysyllabic_per_sentence: float


@dataclass(frozen=True)
class TraditionalScores:
    flesch_kincaid: float
    flesch: float
    ari: float
    coleman_liau: float
    smog: float
    fog: float
    forcast: float
    lix: float


def surface_stats(doc: Document) -> SurfaceStats:
    """Counts and per-unit rates over word tokens; punctuation is excluded.

    Polysyllabic means more than two syllables, long means seven or more
    characters; every zero denominator yields zero.
    """
    words = doc.word_tokens
    n_sentences = len(doc.sentences)
    n_words = len(words)
    n_characters = sum(t.char_count for t in words)
    n_syllables = sum(t.syllables for t in words)
    poly = sum(1 for t in words if t.syllables > 2)
    mono = sum(1 for t in words if t.syllables == 1)
    long_words = sum(1 for t in words if t.char_count >= 7)

    def ratio(num: float, den: float) -> float:
        return num / den if den else 0.0

    return SurfaceStats(
        n_sentences=n_sentences,
        n_words=n_words,
        n_characters=n_characters,
        n_syllables=n_syllables,
        words_per_sentence=ratio(n_words, n_sentences),
        syllables_per_word=ratio(n_syllables, n_words),
        characters_per_word=ratio(n_characters, n_words),
        sentences_per_word=ratio(n_sentences, n_words),
        prop_polysyllabic=ratio(poly, n_words),
        prop_monosyllabic=ratio(mono, n_words),
        prop_long_words=ratio(long_words, n_words),
        polysyllabic_per_sentence=ratio(poly, n_sentences),
    )


def traditional_scores(stats: SurfaceStats) -> TraditionalScores:
    """The eight closed-form readability formulas over surface stats."""
    wps = stats.words_per_sentence
    spw = stats.syllables_per_word
    cpw = stats.characters_per_word
    return TraditionalScores(
        flesch_kincaid=11.8 * spw + 0.39 * wps - 15.59,
        flesch=206.835 - 1.015 * wps - 84.6 * spw,
        ari=4.71 * cpw + 0.5 * wps - 21.43,
        coleman_liau=-29.5873 * stats.sentences_per_word + 5.8799 * cpw - 15.8007,
        smog=1.0430 * math.sqrt(30.0 * stats.polysyllabic_per_sentence) + 3.1291,
        fog=(wps + stats.prop_polysyllabic) * 0.4,
        forcast=20.0 - 15.0 * stats.prop_monosyllabic,
        lix=wps + stats.prop_long_words * 100.0,
    )


def ttr_measures(doc: Document) -> dict[str, float]:
    """Type-token ratio family plus MTLD over lowercased word surfaces."""
    tokens = [t.lowercased for t in doc.word_tokens]
    n = len(tokens)
    types = len(set(tokens))

    def ratio(num: float, den: float) -> float:
        return num / den if den else 0.0

    bilog = 0.0
    if n > 1 and types >= 1:
        bilog = ratio(math.log(types), math.log(n))
    uber = 0.0
    if types and n and types != n:
        uber = (math.log(types)) ** 2 / math.log(n / types)
    return {
        "type_token_ratio": ratio(types, n),
        "corrected_type_token_ratio": ratio(types, math.sqrt(2 * n)) if n else 0.0,
        "root_type_token_ratio": ratio(types, math.sqrt(n)) if n else 0.0,
        "bilogarithmic_type_token_ratio": bilog,
        "uber_index": uber,
        "mtld": mtld(tokens),
    }


def _mtld_factors(tokens: list[str], threshold: float) -> float:
    """Factor count for one scan direction, with the partial-factor tail."""
    factors = 0.0
    seen: set[str] = set()
    count = 0
    ttr = 1.0
    for tok in tokens:
        count += 1
        seen.add(tok)
        ttr = len(seen) / count
        if ttr < threshold:
            factors += 1.0
            seen.clear()
            count = 0
            ttr = 1.0
    if count > 0:
        factors += (1.0 - ttr) / (1.0 - threshold)
    return factors


def mtld(tokens: list[str], threshold: float = MTLD_THRESHOLD) -> float:
    """Bidirectional measure of textual lexical diversity.

    Returns tokens divided by the mean forward/backward factor count; zero
    for fewer than ten tokens or when no factor completes.
    """
    n = len(tokens)
    if n < MTLD_MIN_TOKENS:
        return 0.0
    forward = _mtld_factors(tokens, threshold)
    backward = _mtld_factors(list(reversed(tokens)), threshold)
    mean_factors = (forward + backward) / 2.0
    if mean_factors == 0.0:
        return 0.0
    return n / mean_factors
