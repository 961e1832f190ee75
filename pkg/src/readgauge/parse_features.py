"""Parse-derived features: ambiguity measures and constituent ratios.

The ambiguity measures summarize the distribution of the top-x parse
log-probabilities per sentence; constituent counting uses Penn-style labels
with fixed heuristics for clauses, t-units and complex nominals so the
features stay reproducible across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cky import KBestList, ParseTree
from .errors import EmptyKBest
from .textcore import Document

CLAUSE_LABELS = {"S", "SBAR", "SINV", "SQ"}
WH_PHRASE_LABELS = {"WHNP", "WHPP", "WHADVP", "WHADJP"}
ROOT_WRAPPERS = {"ROOT", "TOP"}

SYNTACTIC_FEATURE_NAMES = [
    "mean_t_unit_length",
    "mean_parse_tree_height",
    "subtrees_per_sentence",
    "sbars_per_sentence",
    "nps_per_sentence",
    "vps_per_sentence",
    "pps_per_sentence",
    "mean_np_size",
    "mean_vp_size",
    "mean_pp_size",
    "whps_per_sentence",
    "rrcs_per_sentence",
    "conjps_per_sentence",
    "clauses_per_sentence",
    "t_units_per_sentence",
    "clauses_per_t_unit",
    "complex_t_unit_ratio",
    "dependent_clauses_per_clause",
    "dependent_clauses_per_t_unit",
    "coordinate_clauses_per_clause",
    "coordinate_clauses_per_t_unit",
    "complex_nominals_per_clause",
    "complex_nominals_per_t_unit",
    "vps_per_t_unit",
    "pd_2",
    "pd_10",
    "pdm_10",
]


def _top_logprobs(kbest: KBestList, x: int) -> list[float]:
    if not kbest.parses:
        raise EmptyKBest("k-best list has no parses")
    if x < 1:
        raise ValueError("x must be >= 1")
    return [t.log_prob for t in kbest.parses[: min(x, len(kbest.parses))]]


def parse_deviation(kbest: KBestList, x: int) -> float:
    """Population std of the top-x parse log-probs (all parses if fewer)."""
    lps = _top_logprobs(kbest, x)
    mean = sum(lps) / len(lps)
    return math.sqrt(sum((lp - mean) ** 2 for lp in lps) / len(lps))


def parse_deviation_from_max(kbest: KBestList, x: int) -> float:
    """Best parse log-prob minus the mean of the top-x log-probs."""
    lps = _top_logprobs(kbest, x)
    return max(lps) - sum(lps) / len(lps)


@dataclass
class TreeCounts:
    labels: dict[str, int]
    clauses: int = 0
    dependent_clauses: int = 0
    coordinate_clauses: int = 0
    t_units: int = 0
    complex_t_units: int = 0
    complex_nominals: int = 0
    subtrees: int = 0
    height: int = 0
    np_children: int = 0
    vp_children: int = 0
    pp_children: int = 0


def _internal_nodes(tree: ParseTree):
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        for c in node.children:
            if isinstance(c, ParseTree):
                stack.append(c)


def _height(node) -> int:
    if isinstance(node, str):
        return 0
    if not node.children:
        return 0
    return 1 + max(_height(c) for c in node.children)


def _is_clause(node) -> bool:
    return isinstance(node, ParseTree) and node.label in CLAUSE_LABELS


def _has_dependent_clause(node: ParseTree, under_sbar: bool = False) -> bool:
    for c in node.children:
        if not isinstance(c, ParseTree):
            continue
        if under_sbar and c.label in CLAUSE_LABELS:
            return True
        if _has_dependent_clause(c, under_sbar or c.label == "SBAR"):
            return True
    return False


def _t_unit_roots(tree: ParseTree) -> list[ParseTree]:
    """Main-clause extraction: top-level clauses, expanding coordinations."""
    root = tree
    if root.label in ROOT_WRAPPERS:
        units: list[ParseTree] = []
        for c in root.children:
            if isinstance(c, ParseTree):
                units.extend(_t_unit_roots(c))
        return units
    if root.label not in CLAUSE_LABELS:
        return []
    clause_children = [c for c in root.children if _is_clause(c)]
    has_cc = any(isinstance(c, ParseTree) and c.label == "CC" for c in root.children)
    if has_cc and len(clause_children) >= 2:
        return clause_children
    return [root]


def _is_complex_nominal(node: ParseTree) -> bool:
    if node.label != "NP":
        return False
    phrase_children = sum(1 for c in node.children if isinstance(c, ParseTree))
    leaf_children = sum(1 for c in node.children if isinstance(c, str))
    if phrase_children + leaf_children > 1:
        return True
    return any(
        isinstance(c, ParseTree) and c.label in {"SBAR", "PP", "VP"}
        for c in node.children
    )


def constituent_counts(tree: ParseTree) -> TreeCounts:
    """Label counts plus derived clause/t-unit/nominal counters for one tree."""
    counts = TreeCounts(labels={})
    nodes = list(_internal_nodes(tree))
    parents: dict[int, ParseTree] = {}
    for node in nodes:
        for c in node.children:
            if isinstance(c, ParseTree):
                parents[id(c)] = node

    for node in nodes:
        counts.labels[node.label] = counts.labels.get(node.label, 0) + 1
        if node.label in CLAUSE_LABELS:
            counts.clauses += 1
            # Dependent: dominated by an SBAR somewhere above.
            anc = parents.get(id(node))
            while anc is not None:
                if anc.label == "SBAR":
                    counts.dependent_clauses += 1
                    break
                anc = parents.get(id(anc))
            parent = parents.get(id(node))
            if parent is not None and any(
                isinstance(c, ParseTree) and c.label == "CC" for c in parent.children
            ):
                counts.coordinate_clauses += 1
        if _is_complex_nominal(node):
            counts.complex_nominals += 1
        if node.label == "NP":
            counts.np_children += len(node.children)
        elif node.label == "VP":
            counts.vp_children += len(node.children)
        elif node.label == "PP":
            counts.pp_children += len(node.children)

    units = _t_unit_roots(tree)
    counts.t_units = len(units)
    counts.complex_t_units = sum(1 for u in units if _has_dependent_clause(u))
    counts.subtrees = max(len(nodes) - 1, 0)  # proper subtrees, root excluded
    counts.height = _height(tree)
    return counts


def syntactic_ratios(
    doc_trees: list[ParseTree],
    doc: Document,
    kbest_lists: list[KBestList] | None = None,
) -> dict[str, float]:
    """Document-level syntactic feature vector from per-sentence best parses.

    ``doc_trees`` holds one best parse per successfully parsed sentence;
    skipped sentences still count toward the sentence denominator. The
    ambiguity features average per-sentence values over ``kbest_lists``.
    """

    def ratio(num: float, den: float) -> float:
        return num / den if den else 0.0

    n_sentences = len(doc.sentences)
    totals = [constituent_counts(t) for t in doc_trees]

    def label_sum(*labels: str) -> int:
        return sum(c.labels.get(lab, 0) for c in totals for lab in labels)

    n_words = sum(len(t.yield_) for t in doc_trees)
    clauses = sum(c.clauses for c in totals)
    t_units = sum(c.t_units for c in totals)
    dep_clauses = sum(c.dependent_clauses for c in totals)
    coord_clauses = sum(c.coordinate_clauses for c in totals)
    complex_nominals = sum(c.complex_nominals for c in totals)
    complex_t_units = sum(c.complex_t_units for c in totals)
    nps = label_sum("NP")
    vps = label_sum("VP")
    pps = label_sum("PP")

    feats = {
        "mean_t_unit_length": ratio(n_words, t_units),
        "mean_parse_tree_height": ratio(sum(c.height for c in totals), n_sentences),
        "subtrees_per_sentence": ratio(sum(c.subtrees for c in totals), n_sentences),
        "sbars_per_sentence": ratio(label_sum("SBAR"), n_sentences),
        "nps_per_sentence": ratio(nps, n_sentences),
        "vps_per_sentence": ratio(vps, n_sentences),
        "pps_per_sentence": ratio(pps, n_sentences),
        "mean_np_size": ratio(sum(c.np_children for c in totals), nps),
        "mean_vp_size": ratio(sum(c.vp_children for c in totals), vps),
        "mean_pp_size": ratio(sum(c.pp_children for c in totals), pps),
        "whps_per_sentence": ratio(label_sum(*WH_PHRASE_LABELS), n_sentences),
        "rrcs_per_sentence": ratio(label_sum("RRC"), n_sentences),
        "conjps_per_sentence": ratio(label_sum("CONJP"), n_sentences),
        "clauses_per_sentence": ratio(clauses, n_sentences),
        "t_units_per_sentence": ratio(t_units, n_sentences),
        "clauses_per_t_unit": ratio(clauses, t_units),
        "complex_t_unit_ratio": ratio(complex_t_units, t_units),
        "dependent_clauses_per_clause": ratio(dep_clauses, clauses),
        "dependent_clauses_per_t_unit": ratio(dep_clauses, t_units),
        "coordinate_clauses_per_clause": ratio(coord_clauses, clauses),
        "coordinate_clauses_per_t_unit": ratio(coord_clauses, t_units),
        "complex_nominals_per_clause": ratio(complex_nominals, clauses),
        "complex_nominals_per_t_unit": ratio(complex_nominals, t_units),
        "vps_per_t_unit": ratio(vps, t_units),
    }

    if kbest_lists:
        pd2 = [parse_deviation(kb, 2) for kb in kbest_lists]
        pd10 = [parse_deviation(kb, 10) for kb in kbest_lists]
        pdm10 = [parse_deviation_from_max(kb, 10) for kb in kbest_lists]
        feats["pd_2"] = sum(pd2) / len(pd2)
        feats["pd_10"] = sum(pd10) / len(pd10)
        feats["pdm_10"] = sum(pdm10) / len(pdm10)
    else:
        feats["pd_2"] = feats["pd_10"] = feats["pdm_10"] = 0.0
    return feats
