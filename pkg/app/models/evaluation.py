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

"""Metric records and report layout"""

from typing import List, Optional

from pydantic import BaseModel, Field


class ClassificationCounts(BaseModel):
    """Confusion counts with IC (inconsistent name) as the positive class"""
    tp: int = Field(default=0, ge=0)
    fp: int = Field(default=0, ge=0)
    tn: int = Field(default=0, ge=0)
    fn: int = Field(default=0, ge=0)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


class ClassMetrics(BaseModel):
    precision: float = 0.0
    recall: float = 0.0
    f_score: float = 0.0
    undefined: List[str] = Field(default_factory=list)  # metrics whose denominator was zero


class ClassificationReport(BaseModel):
    counts: ClassificationCounts
    inconsistent: ClassMetrics
    consistent: ClassMetrics
    accuracy: float
    undefined: List[str] = Field(default_factory=list)


class SubtokenScore(BaseModel):
    precision: float
    recall: float
    f_score: float
    undefined: bool = False  # P + R was zero


class SuggestionScores(BaseModel):
    precision: float = Field(ge=0.0, le=1.0)
    recall: float = Field(ge=0.0, le=1.0)
    f_score: float = Field(ge=0.0, le=1.0)
    exmatch_rate: float = Field(ge=0.0, le=1.0)
    count: int = 0


class PredictionPair(BaseModel):
    """Expected name against the ranked recommendations for one method"""
    method_id: str
    expected: str
    recommended: List[str]
    line_count: int = 1

    @property
    def top(self) -> str:
        return self.recommended[0] if self.recommended else ""


class BucketScores(BaseModel):
    low: int
    high: Optional[int] = None
    scores: Optional[SuggestionScores] = None  # None when no method falls in the bucket

    @property
    def label(self) -> str:
        return f"{self.low}-{self.high}" if self.high is not None else f"{self.low}+"


class EvaluationReport(BaseModel):
    suggestion: Optional[SuggestionScores] = None
    top_k: Optional[float] = None
    k: Optional[int] = None
    case_sensitive_rate: Optional[float] = None
    by_size: List[BucketScores] = Field(default_factory=list)
    unseen: Optional[SuggestionScores] = None
    checking: Optional[ClassificationReport] = None


class AblationRow(BaseModel):
    variant: str
    axis: str
    contexts: List[str]
    use_copy: bool
    use_noncopy: bool
    learn_context_weights: bool
    scores: SuggestionScores
    checking: Optional[ClassificationReport] = None
    final_loss: Optional[float] = None


class AblationReport(BaseModel):
    rows: List[AblationRow] = Field(default_factory=list)
