# Copyright (c) 2026 Bivex
#
# Author: Bivex
# Available for contact via email: support@b-b.top
# For up-to-date contact information:
# https://github.com/bivex
#
# Created: 2026-10-12T09:14:02
# Last Updated: 2026-10-19T08:40:11
#
# Licensed under the MIT License.
# Commercial licensing available upon request.

"""Bigram statistics over training names and the non-copy probability"""

from collections import defaultdict
from typing import Iterable, Optional, Sequence

import numpy as np

from app.models.decoding import BigramStats
from app.services.embedding_service import EON, Vocabulary


def build_bigram_stats(names: Iterable[Sequence[str]], vocab: Optional[Vocabulary] = None) -> BigramStats:
    """Count unigrams and bigrams over names framed by EON.

    Names may already end in EON. With a vocabulary, transitions touching a
    token outside it are not counted.
    """
    unigrams = defaultdict(int)
    bigrams = defaultdict(lambda: defaultdict(int))

    for name in names:
        body = list(name[:-1]) if name and name[-1] == EON else list(name)
        framed = [EON] + body + [EON]
        for prev, token in zip(framed, framed[1:]):
            if vocab is not None and (prev not in vocab or token not in vocab):
                continue
            unigrams[prev] += 1
            bigrams[prev][token] += 1

    return BigramStats(
        unigrams=dict(sorted(unigrams.items())),
        bigrams={prev: dict(sorted(follow.items())) for prev, follow in sorted(bigrams.items())},
    )


def prob_noncopy(prev: str, candidate: str, stats: BigramStats, dic_all: frozenset) -> float:
    """Probability that ``candidate`` must not follow ``prev``.

    0 when ``prev`` was never seen in training, 1 for candidates outside the
    training vocabulary or predecessors with no recorded successor, else
    1 - count(candidate | prev) / count(prev).
    """
    if prev not in dic_all:
        return 0.0
    if candidate not in dic_all:
        return 1.0
    total = stats.count(prev)
    if total == 0:
        return 1.0
    return 1.0 - stats.pair_count(prev, candidate) / total


def noncopy_table(stats: BigramStats, vocab: Vocabulary) -> np.ndarray:
    """|V| x |V| matrix of prob_noncopy(prev=row, candidate=column)"""
    dic_all = vocab.dic_all
    size = len(vocab)
    table = np.zeros((size, size), dtype=np.float64)
    for prev_id, prev in enumerate(vocab.tokens):
        if prev not in dic_all:
            continue
        table[prev_id, :] = 1.0
        total = stats.count(prev)
        if total == 0:
            continue
        for token, count in stats.bigrams.get(prev, {}).items():
            if token in dic_all:
                table[prev_id, vocab.index[token]] = 1.0 - count / total
    return table
