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

"""Context data models: token sequences and the four-context bundle"""

from enum import Enum
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

PAD = "\u0000PAD"


class ContextKind(str, Enum):
    INTERNAL = "internal"
    INTERACTION = "interaction"
    SIBLING = "sibling"
    ENCLOSING = "enclosing"


class ContextMode(str, Enum):
    """Checking sees callers in the interaction context, suggestion does not"""
    CHECKING = "checking"
    SUGGESTION = "suggestion"


CONTEXT_ORDER: Tuple[ContextKind, ...] = (
    ContextKind.INTERNAL,
    ContextKind.INTERACTION,
    ContextKind.SIBLING,
    ContextKind.ENCLOSING,
)


class TokenSeq(BaseModel):
    """Sub-token sequence, possibly PAD-filled past ``true_length``"""
    model_config = ConfigDict(frozen=True)

    tokens: List[str] = Field(default_factory=list)
    true_length: int = Field(default=0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _default_length(cls, data):
        if isinstance(data, dict) and "true_length" not in data:
            data = {**data, "true_length": len(data.get("tokens", []))}
        return data

    @model_validator(mode="after")
    def _check_padding(self) -> "TokenSeq":
        if self.true_length > len(self.tokens):
            raise ValueError("true_length exceeds sequence capacity")
        if any(token != PAD for token in self.tokens[self.true_length:]):
            raise ValueError("tokens past true_length must be PAD")
        return self

    @classmethod
    def of(cls, tokens: List[str]) -> "TokenSeq":
        return cls(tokens=list(tokens), true_length=len(tokens))

    @property
    def content(self) -> List[str]:
        """Tokens without the PAD tail"""
        return self.tokens[: self.true_length]

    def __len__(self) -> int:
        return len(self.tokens)


class ContextBundle(BaseModel):
    """The four context sequences of one method"""
    model_config = ConfigDict(frozen=True)

    method_id: str
    mode: ContextMode
    internal: TokenSeq
    interaction: TokenSeq
    sibling: TokenSeq
    enclosing: TokenSeq

    def get(self, kind: ContextKind) -> TokenSeq:
        return getattr(self, kind.value)

    def sequences(self) -> Dict[ContextKind, TokenSeq]:
        return {kind: self.get(kind) for kind in CONTEXT_ORDER}

    def padded(self, l_max: int) -> "ContextBundle":
        from app.services.context_builder import pad_truncate

        return self.model_copy(update={
            kind.value: pad_truncate(self.get(kind), l_max) for kind in CONTEXT_ORDER
        })

    def input_tokens(self, kinds=CONTEXT_ORDER) -> List[str]:
        """Copy candidates: distinct non-PAD tokens across the given contexts, first occurrence order"""
        seen: Dict[str, None] = {}
        for kind in kinds:
            for token in self.get(kind).content:
                seen.setdefault(token, None)
        return list(seen)

    def to_export(self) -> dict:
        return {
            "method_id": self.method_id,
            "mode": self.mode.value,
            **{kind.value: self.get(kind).tokens for kind in CONTEXT_ORDER},
        }
