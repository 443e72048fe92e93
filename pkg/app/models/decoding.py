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

"""Decoder-side records: name bigram statistics and step distributions"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class BigramStats(BaseModel):
    """Counts over training names framed as [EON, y_1, ..., y_n, EON].

    ``unigrams[a]`` counts the positions where ``a`` is followed by another
    token, so ``bigrams[a][b] <= unigrams[a]`` always.
    """
    model_config = ConfigDict(frozen=True)

    unigrams: Dict[str, int] = Field(default_factory=dict)
    bigrams: Dict[str, Dict[str, int]] = Field(default_factory=dict)

    def count(self, token: str) -> int:
        return self.unigrams.get(token, 0)

    def pair_count(self, prev: str, token: str) -> int:
        return self.bigrams.get(prev, {}).get(token, 0)


class StepDistribution(BaseModel):
    """One decoding step: final probabilities plus the factor breakdown"""

    candidates: List[str]
    probabilities: List[float]
    generation: List[float]
    copy_scores: Dict[str, List[float]] = Field(default_factory=dict)  # per context kind
    noncopy: List[float]
    degenerate: bool = False

    def probability(self, token: str) -> float:
        try:
            return self.probabilities[self.candidates.index(token)]
        except ValueError:
            return 0.0

    def best(self) -> Optional[str]:
        if not self.candidates:
            return None
        return self.candidates[max(range(len(self.candidates)), key=lambda i: (self.probabilities[i], -i))]
