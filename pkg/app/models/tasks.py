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

"""Records produced by consistency checking and name suggestion"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.services.identifiers import recompose


class ConsistencyLabel(str, Enum):
    CONSISTENT = "Consistent"
    INCONSISTENT = "Inconsistent"
    SKIPPED = "Skipped"


class SkipReason(str, Enum):
    """Why a method got a placeholder line instead of a result"""
    EMPTY_CONTEXT = "empty_context"
    NO_SUBTOKENS = "no_subtokens"


class MethodRepresentation(BaseModel):
    """Greedy decoder output of one method: the emitted tokens and their embedding rows"""
    model_config = ConfigDict(frozen=True)

    method_id: str
    tokens: List[str] = Field(default_factory=list)
    vectors: List[List[float]] = Field(default_factory=list)
    empty: bool = False

    @model_validator(mode="after")
    def _check_alignment(self) -> "MethodRepresentation":
        if len(self.tokens) != len(self.vectors):
            raise ValueError("One vector per emitted token")
        return self


class ConsistencyVerdict(BaseModel):
    method_id: str
    existing_name: str
    score: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    label: ConsistencyLabel
    skipped: Optional[SkipReason] = None

    @model_validator(mode="after")
    def _check_skipped(self) -> "ConsistencyVerdict":
        if (self.label is ConsistencyLabel.SKIPPED) != (self.skipped is not None):
            raise ValueError("A skip reason goes with the Skipped label and only with it")
        if (self.score is None) != (self.skipped is not None):
            raise ValueError("Scored verdicts carry a score, skipped ones do not")
        return self

    @classmethod
    def from_score(cls, method_id: str, existing_name: str, score: float, threshold: float) -> "ConsistencyVerdict":
        label = ConsistencyLabel.CONSISTENT if score >= threshold else ConsistencyLabel.INCONSISTENT
        return cls(method_id=method_id, existing_name=existing_name, score=score, label=label)

    @classmethod
    def placeholder(cls, method_id: str, existing_name: str, reason: SkipReason) -> "ConsistencyVerdict":
        return cls(method_id=method_id, existing_name=existing_name, label=ConsistencyLabel.SKIPPED, skipped=reason)

    def to_export(self) -> dict:
        return self.model_dump(mode="json", exclude_none=True)


class Suggestion(BaseModel):
    subtokens: List[str] = Field(min_length=1)
    rendered: str
    score: float

    @model_validator(mode="after")
    def _check_rendering(self) -> "Suggestion":
        if self.rendered != recompose(self.subtokens):
            raise ValueError(f"{self.rendered!r} is not the camelCase form of {self.subtokens}")
        return self

    @classmethod
    def of(cls, subtokens: List[str], score: float) -> "Suggestion":
        return cls(subtokens=subtokens, rendered=recompose(subtokens), score=score)


class MethodSuggestions(BaseModel):
    method_id: str
    candidates: List[Suggestion] = Field(default_factory=list)
    skipped: Optional[SkipReason] = None

    @classmethod
    def placeholder(cls, method_id: str, reason: SkipReason) -> "MethodSuggestions":
        return cls(method_id=method_id, skipped=reason)

    def to_export(self) -> dict:
        exported = {
            "method_id": self.method_id,
            "candidates": [{"name": c.rendered, "score": c.score} for c in self.candidates],
        }
        if self.skipped is not None:
            exported["skipped"] = self.skipped.value
        return exported
