"""Word-norm tables (age-of-acquisition, MRC-style ratings, sense counts)."""

from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass, field

from .errors import MalformedRow, MissingFile
from .textcore import Document

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormTable:
    name: str
    entries: dict[str, float]

    def __contains__(self, word: str) -> bool:
        return word in self.entries


@dataclass(frozen=True)
class SenseTable:
    entries: dict[str, tuple[int, int, int]]  # word -> (senses, hypernyms, hyponyms)


def load_norms(path: str) -> dict[str, NormTable]:
    """Load a norms CSV (header ``word,<rating-columns...>``).

    Returns one NormTable per rating column. Duplicate words win last with a
    logged warning; a non-numeric rating rejects the file naming the row.
    """
    if not os.path.isfile(path):
        raise MissingFile(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRow(f"{path}: empty file, header required")
        if not header or header[0].strip().lower() != "word":
            raise MalformedRow(f"{path}: first header column must be 'word'")
        columns = [c.strip() for c in header[1:]]
        tables: dict[str, dict[str, float]] = {c: {} for c in columns}
        for rownum, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise MalformedRow(f"{path}: row {rownum} has {len(row)} fields, expected {len(header)}")
            word = row[0].strip().lower()
            for col, raw in zip(columns, row[1:]):
                try:
                    value = float(raw)
                except ValueError:
                    raise MalformedRow(f"{path}: row {rownum}: non-numeric rating {raw!r}")
                if not math.isfinite(value):
                    raise MalformedRow(f"{path}: row {rownum}: non-finite rating {raw!r}")
                if word in tables[col]:
                    log.warning("duplicate word %r in %s (row %d), last wins", word, path, rownum)
                tables[col][word] = value
    return {c: NormTable(name=c, entries=tables[c]) for c in columns}


def load_senses(path: str) -> SenseTable:
    """Load a sense-count CSV (``word,senses,hypernyms,hyponyms``)."""
    if not os.path.isfile(path):
        raise MissingFile(path)
    entries: dict[str, tuple[int, int, int]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            next(reader)
        except StopIteration:
            raise MalformedRow(f"{path}: empty file, header required")
        for rownum, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise MalformedRow(f"{path}: row {rownum} has {len(row)} fields, expected 4")
            word = row[0].strip().lower()
            try:
                counts = tuple(int(c) for c in row[1:])
            except ValueError:
                raise MalformedRow(f"{path}: row {rownum}: non-integer count")
            if any(c < 0 for c in counts):
                raise MalformedRow(f"{path}: row {rownum}: negative count")
            if word in entries:
                log.warning("duplicate word %r in %s (row %d), last wins", word, path, rownum)
            entries[word] = counts  # type: ignore[assignment]
    return SenseTable(entries=entries)


def mean_rating(doc: Document, table: NormTable) -> tuple[float, float]:
    """Mean rating over covered word tokens, plus the coverage fraction.

    Uncovered words are skipped; with no coverage both values are zero.
    """
    words = [t.lowercased for t in doc.word_tokens]
    if not words:
        return 0.0, 0.0
    hits = [table.entries[w] for w in words if w in table.entries]
    if not hits:
        return 0.0, 0.0
    return sum(hits) / len(hits), len(hits) / len(words)


def sense_features(doc: Document, senses: SenseTable) -> dict[str, float]:
    """Senses/hypernyms/hyponyms per word token (absent words count zero)."""
    words = [t.lowercased for t in doc.word_tokens]
    n = len(words)
    if n == 0:
        return {"senses_per_word": 0.0, "hypernyms_per_word": 0.0, "hyponyms_per_word": 0.0}
    totals = [0, 0, 0]
    for w in words:
        if w in senses.entries:
            s, hyper, hypo = senses.entries[w]
            totals[0] += s
            totals[1] += hyper
            totals[2] += hypo
    return {
        "senses_per_word": totals[0] / n,
        "hypernyms_per_word": totals[1] / n,
        "hyponyms_per_word": totals[2] / n,
    }
