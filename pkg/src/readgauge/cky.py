"""Exact k-best CKY parsing over a binarized PCFG.

Chart items carry the de-binarized original tree and its serialization;
candidates are ordered by (-log_prob, serialization) so ties break
deterministically and the k-best list matches exhaustive enumeration.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Union

from .errors import NoParse
from .grammar import CnfRule, Grammar, binarize_cnf, is_intermediate

Child = Union["ParseTree", str]


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple[Child, ...]
    log_prob: float = 0.0

    def serialize(self) -> str:
        return _serialize(self)

    @property
    def yield_(self) -> tuple[str, ...]:
        out: list[str] = []
        _collect_yield(self, out)
        return tuple(out)


def _serialize(node: Child) -> str:
    if isinstance(node, str):
        return node
    inner = " ".join(_serialize(c) for c in node.children)
    return f"({node.label} {inner})"


def _collect_yield(node: Child, out: list[str]) -> None:
    if isinstance(node, str):
        out.append(node)
        return
    for c in node.children:
        _collect_yield(c, out)


@dataclass(frozen=True)
class KBestList:
    parses: tuple[ParseTree, ...]
    requested_k: int


# A chart item is (neg_log_prob, serial, payload); payload is a ParseTree
# for real symbols and a tuple of spliceable children for intermediates.
Item = tuple[float, str, tuple[Child, ...]]


def _child_lp(child: Child) -> float:
    return child.log_prob if isinstance(child, ParseTree) else 0.0


def _wrap_chain(rule: CnfRule, children: tuple[Child, ...]) -> ParseTree:
    """Build the original-label node and re-expand a collapsed unary chain.

    Log-probs are accumulated in a canonical order (rule first, then each
    child subtree left to right, then unary steps bottom-up) so equal
    derivations get bit-identical floats regardless of chart split points.
    """
    lp = rule.rule_lp
    for c in children:
        lp += _child_lp(c)
    node = ParseTree(label=rule.chain[-1], children=children, log_prob=lp)
    for label, step_lp in zip(reversed(rule.chain[:-1]), reversed(rule.chain_lps)):
        lp = step_lp + lp
        node = ParseTree(label=label, children=(node,), log_prob=lp)
    return node


def _apply_rule(rule: CnfRule, left: Item, right: Item) -> Item:
    children = left[2] + right[2]
    if is_intermediate(rule.lhs):
        lp = 0.0
        for c in children:
            lp += _child_lp(c)
        serial = " ".join(_serialize(c) for c in children)
        return (-lp, serial, children)
    tree = _wrap_chain(rule, children)
    return (-tree.log_prob, tree.serialize(), (tree,))


class Parser:
    """Reusable parser holding the binarized form of a grammar."""

    def __init__(self, grammar: Grammar):
        self.grammar = grammar
        cnf = binarize_cnf(grammar)
        self.lexical: dict[str, list[CnfRule]] = {}
        self.binary: list[CnfRule] = []
        for rule in cnf:
            if rule.is_lexical:
                self.lexical.setdefault(rule.rhs[0], []).append(rule)
            else:
                self.binary.append(rule)

    def kbest(self, tokens: list[str], k: int) -> KBestList:
        if k < 1:
            raise ValueError("k must be >= 1")
        if not tokens:
            raise NoParse("empty token sequence")
        oov = sorted({t for t in tokens if t not in self.grammar.terminals})
        if oov:
            raise NoParse(f"tokens not in grammar terminals: {oov}")
        n = len(tokens)
        chart: dict[tuple[int, int], dict[str, list[Item]]] = {}

        for i, tok in enumerate(tokens):
            cell: dict[str, list[Item]] = {}
            for rule in self.lexical.get(tok, []):
                if rule.lifted:
                    item: Item = (0.0, tok, (tok,))
                else:
                    tree = _wrap_chain(rule, (tok,))
                    item = (-tree.log_prob, tree.serialize(), (tree,))
                cell.setdefault(rule.lhs, []).append(item)
            # Lexical lists stay untruncated; they are bounded by the
            # number of rules over one terminal.
            for items in cell.values():
                items.sort(key=lambda it: (it[0], it[1]))
            chart[(i, i + 1)] = cell

        for span in range(2, n + 1):
            for i in range(0, n - span + 1):
                j = i + span
                # Candidate sources per LHS: (rule, left list, right list).
                options: dict[str, list[tuple[CnfRule, list[Item], list[Item]]]] = {}
                for rule in self.binary:
                    b, c = rule.rhs
                    for m in range(i + 1, j):
                        lefts = chart[(i, m)].get(b)
                        rights = chart[(m, j)].get(c)
                        if lefts and rights:
                            options.setdefault(rule.lhs, []).append((rule, lefts, rights))
                cell = {}
                for lhs, opts in options.items():
                    cell[lhs] = _merge_kbest(opts, k)
                chart[(i, j)] = cell

        root = chart[(0, n)].get(self.grammar.start, [])
        if not root:
            raise NoParse(f"no derivation for {tokens!r} rooted at {self.grammar.start}")
        parses = []
        for neg_lp, _serial, payload in root[:k]:
            tree = payload[0]
            assert isinstance(tree, ParseTree)
            parses.append(tree)
        return KBestList(parses=tuple(parses), requested_k=k)


# Successor expansion can misorder mathematically equal candidates whose
# floats differ in the last bits, so pop a little past the k-th item and
# let a final exact sort settle the order.
_TIE_MARGIN = 1e-9


def _merge_kbest(options: list[tuple[CnfRule, list[Item], list[Item]]], k: int) -> list[Item]:
    """Top-k of the union of item products, by lazy heap expansion."""
    heap: list[tuple[float, str, int, int, int]] = []
    seen: set[tuple[int, int, int]] = set()
    built: dict[tuple[int, int, int], Item] = {}

    def push(oi: int, li: int, ri: int) -> None:
        if (oi, li, ri) in seen:
            return
        rule, lefts, rights = options[oi]
        if li >= len(lefts) or ri >= len(rights):
            return
        seen.add((oi, li, ri))
        item = _apply_rule(rule, lefts[li], rights[ri])
        built[(oi, li, ri)] = item
        heapq.heappush(heap, (item[0], item[1], oi, li, ri))

    for oi in range(len(options)):
        push(oi, 0, 0)
    out: list[Item] = []
    boundary: Optional[float] = None
    while heap:
        if boundary is not None and heap[0][0] > boundary + _TIE_MARGIN:
            break
        neg_lp, serial, oi, li, ri = heapq.heappop(heap)
        out.append(built.pop((oi, li, ri)))
        if boundary is None and len(out) == k:
            boundary = max(it[0] for it in out)
        push(oi, li + 1, ri)
        push(oi, li, ri + 1)
    out.sort(key=lambda it: (it[0], it[1]))
    # Keep near-ties of the k-th item: a derivation that loses a local
    # last-bit comparison can still head the final list after rebuilding.
    if len(out) > k:
        cut = out[k - 1][0] + _TIE_MARGIN
        end = k
        while end < len(out) and out[end][0] <= cut:
            end += 1
        del out[end:]
    return out


def cky_kbest(grammar: Grammar, tokens: list[str], k: int) -> KBestList:
    """One-shot k-best parse (builds a Parser; reuse Parser for many calls)."""
    return Parser(grammar).kbest(tokens, k)
