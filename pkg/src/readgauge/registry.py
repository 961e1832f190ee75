"""Feature registry: named feature sets with stable ordering.

The registry is the single source of truth for feature names and their
order, so CSV headers, model files and fold reports never drift. Every
member of a set resolves to one extractor group; groups are computed at
most once per document.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from . import lexical_features, parse_features, pos_features
from .cky import Parser
from .errors import MissingResource, NoParse
from .lexicons import NormTable, SenseTable, mean_rating, sense_features
from .textcore import Document, word_type_proportions

log = logging.getLogger(__name__)

PSYCHOLINGUISTIC_FEATURE_NAMES = [
    "aoa_kuperman",
    "aoa_kuperman_lemmas",
    "aoa_bird_lemmas",
    "aoa_bristol_lemmas",
    "aoa_cortese_khanna_lemmas",
    "mrc_familiarity",
    "mrc_concreteness",
    "mrc_imageability",
    "mrc_colorado_meaningfulness",
    "mrc_pavio_meaningfulness",
    "mrc_aoa",
]

NOVEL_POS_FEATURE_NAMES = ["posd_dev", "pos_div"]

NOVEL_SYNTACTIC_FEATURE_NAMES = ["pd_2", "pd_10", "pdm_10"] + NOVEL_POS_FEATURE_NAMES

DEFAULT_KBEST_K = 10
SENTENCE_LENGTH_CAP = 40


@dataclass(frozen=True)
class FeatureSet:
    name: str
    members: tuple[str, ...]


@dataclass
class Resources:
    parser: Optional[Parser] = None
    tag_lexicon: Optional[dict[str, str]] = None
    norm_tables: Optional[dict[str, NormTable]] = None
    sense_table: Optional[SenseTable] = None
    vocab: Optional[list[str]] = None
    kbest_k: int = DEFAULT_KBEST_K
    sentence_cap: int = SENTENCE_LENGTH_CAP


def _compute_traditional(doc: Document, res: Resources) -> dict[str, float]:
    stats = lexical_features.surface_stats(doc)
    scores = lexical_features.traditional_scores(stats)
    return {
        "number_of_sentences": float(stats.n_sentences),
        "mean_sentence_length": stats.words_per_sentence,
        "number_of_characters": float(stats.n_characters),
        "number_of_syllables": float(stats.n_syllables),
        "flesch_kincaid": scores.flesch_kincaid,
        "flesch": scores.flesch,
        "automated_readability_index": scores.ari,
        "coleman_liau": scores.coleman_liau,
        "smog": scores.smog,
        "fog": scores.fog,
        "forcast": scores.forcast,
        "lix": scores.lix,
    }


def _compute_pos(doc: Document, res: Resources) -> dict[str, float]:
    if res.tag_lexicon is None:
        raise MissingResource("pos features require a tag lexicon")
    tagged = pos_features.tag(doc, res.tag_lexicon)
    return pos_features.pos_ratios(tagged)


def _compute_novel_pos(doc: Document, res: Resources) -> dict[str, float]:
    if res.tag_lexicon is None:
        raise MissingResource("posd_dev/pos_div require a tag lexicon")
    tagged = pos_features.tag(doc, res.tag_lexicon)
    return {
        "posd_dev": pos_features.pos_deviation(tagged),
        "pos_div": pos_features.pos_divergence(tagged),
    }


def _compute_syntactic(doc: Document, res: Resources) -> dict[str, float]:
    if res.parser is None:
        raise MissingResource("syntactic features require a grammar")
    trees = []
    kbest_lists = []
    skipped = 0
    for sent in doc.sentences:
        tokens = [t.lowercased for t in sent.word_tokens]
        if not tokens or len(tokens) > res.sentence_cap:
            skipped += 1
            continue
        try:
            kb = res.parser.kbest(tokens, res.kbest_k)
        except NoParse:
            skipped += 1
            continue
        trees.append(kb.parses[0])
        kbest_lists.append(kb)
    if skipped:
        log.info("doc %s: %d sentence(s) skipped by the parser", doc.doc_id, skipped)
    return parse_features.syntactic_ratios(trees, doc, kbest_lists)


def _compute_ttr(doc: Document, res: Resources) -> dict[str, float]:
    return lexical_features.ttr_measures(doc)


def _compute_senses(doc: Document, res: Resources) -> dict[str, float]:
    if res.sense_table is None:
        raise MissingResource("sense features require a sense table")
    return sense_features(doc, res.sense_table)


def _compute_psycholinguistic(doc: Document, res: Resources) -> dict[str, float]:
    if res.norm_tables is None:
        raise MissingResource("psycholinguistic features require norm tables")
    out = {}
    for name in PSYCHOLINGUISTIC_FEATURE_NAMES:
        table = res.norm_tables.get(name)
        if table is None and name.endswith("_lemmas"):
            # Without lemma data the lemma variant equals the surface one.
            table = res.norm_tables.get(name[: -len("_lemmas")])
        if table is None:
            raise MissingResource(f"norms file has no column for {name!r}")
        mean, _coverage = mean_rating(doc, table)
        out[name] = mean
    return out


# group name -> (feature names, compute function)
GROUPS = {
    "traditional": (tuple(lexical_features.TRADITIONAL_FEATURE_NAMES), _compute_traditional),
    "pos": (tuple(pos_features.POS_FEATURE_NAMES), _compute_pos),
    "syntactic": (tuple(parse_features.SYNTACTIC_FEATURE_NAMES), _compute_syntactic),
    "ttr": (tuple(lexical_features.TTR_FEATURE_NAMES), _compute_ttr),
    "senses": (("senses_per_word", "hypernyms_per_word", "hyponyms_per_word"), _compute_senses),
    "psycholinguistic": (tuple(PSYCHOLINGUISTIC_FEATURE_NAMES), _compute_psycholinguistic),
    "novel_pos": (tuple(NOVEL_POS_FEATURE_NAMES), _compute_novel_pos),
}

NAME_TO_GROUP = {
    name: group for group, (names, _fn) in GROUPS.items() for name in names
}


def _dedup(names: list[str]) -> tuple[str, ...]:
    seen = set()
    out = []
    for n in names:
        if n not in seen:
            seen.add(n)
            out.append(n)
    return tuple(out)


LEXICAL_DIVERSITY_MEMBERS = _dedup(
    list(lexical_features.TTR_FEATURE_NAMES)
    + ["senses_per_word", "hypernyms_per_word", "hyponyms_per_word"]
)

LINGUISTIC_MEMBERS = _dedup(
    list(lexical_features.TRADITIONAL_FEATURE_NAMES)
    + list(pos_features.POS_FEATURE_NAMES)
    + list(parse_features.SYNTACTIC_FEATURE_NAMES)
    + list(LEXICAL_DIVERSITY_MEMBERS)
    + PSYCHOLINGUISTIC_FEATURE_NAMES
    + NOVEL_SYNTACTIC_FEATURE_NAMES
)

FEATURE_SETS: dict[str, FeatureSet] = {
    "flesch": FeatureSet("flesch", tuple(lexical_features.TRADITIONAL_FEATURE_NAMES)),
    "traditional": FeatureSet("traditional", tuple(lexical_features.TRADITIONAL_FEATURE_NAMES)),
    "pos": FeatureSet("pos", tuple(pos_features.POS_FEATURE_NAMES)),
    "syntactic": FeatureSet("syntactic", tuple(parse_features.SYNTACTIC_FEATURE_NAMES)),
    "lexical_diversity": FeatureSet("lexical_diversity", LEXICAL_DIVERSITY_MEMBERS),
    "psycholinguistic": FeatureSet("psycholinguistic", tuple(PSYCHOLINGUISTIC_FEATURE_NAMES)),
    "novel_syntactic": FeatureSet("novel_syntactic", tuple(NOVEL_SYNTACTIC_FEATURE_NAMES)),
    "linguistic": FeatureSet("linguistic", LINGUISTIC_MEMBERS),
}

# "word_types" is resolved dynamically from a fitted vocabulary.
DYNAMIC_SETS = {"word_types"}
KNOWN_SET_NAMES = set(FEATURE_SETS) | DYNAMIC_SETS


def resolve_set(name: str, vocab: Optional[list[str]] = None) -> FeatureSet:
    if name in FEATURE_SETS:
        return FEATURE_SETS[name]
    if name == "word_types":
        if vocab is None:
            raise MissingResource("word_types requires a fitted vocabulary")
        return FeatureSet("word_types", tuple(f"wt_{w}" for w in vocab))
    raise MissingResource(f"unknown feature set {name!r}")


def union_sets(names: list[str], vocab: Optional[list[str]] = None) -> FeatureSet:
    """Set-union with registry order: members ordered by first occurrence."""
    members: list[str] = []
    for name in names:
        members.extend(resolve_set(name, vocab).members)
    return FeatureSet("+".join(names), _dedup(members))


def extract(doc: Document, feature_set: FeatureSet, resources: Resources) -> dict[str, float]:
    """Compute every member of the set, in order, all values finite."""
    cache: dict[str, dict[str, float]] = {}
    wt_cache: Optional[dict[str, float]] = None
    out: dict[str, float] = {}
    for member in feature_set.members:
        if member.startswith("wt_"):
            if wt_cache is None:
                if resources.vocab is None:
                    raise MissingResource("word_types requires a fitted vocabulary")
                props = word_type_proportions(doc, resources.vocab)
                wt_cache = {f"wt_{w}": v for w, v in props.items()}
            out[member] = wt_cache[member]
            continue
        group = NAME_TO_GROUP.get(member)
        if group is None:
            raise MissingResource(f"no extractor registered for feature {member!r}")
        if group not in cache:
            cache[group] = GROUPS[group][1](doc, resources)
        out[member] = cache[group][member]
    return out
