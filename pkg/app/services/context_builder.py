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

"""Builds the four naming contexts of a method"""

import json
from pathlib import Path
from typing import Dict, Iterable, List, Union

import structlog

from app.models.context import PAD, ContextBundle, ContextMode, TokenSeq
from app.models.corpus import CallGraph, Corpus, MethodRecord
from app.services.identifiers import split_all, split_identifier

logger = structlog.get_logger(__name__)

VOID = "void"


def build_internal_context(method: MethodRecord) -> TokenSeq:
    """Body sub-tokens, then each parameter's type and name, then the return type"""
    tokens = split_all(method.body_tokens)
    for param_type, param_name in method.params:
        tokens += split_identifier(param_type) + split_identifier(param_name)
    if method.return_type != VOID:
        tokens += split_identifier(method.return_type)
    return TokenSeq.of(tokens)


def pad_truncate(seq: TokenSeq, l_max: int) -> TokenSeq:
    """Keep the first ``l_max`` tokens and PAD-fill the tail"""
    if l_max < 1:
        raise ValueError("l_max must be at least 1")
    content = seq.content[:l_max]
    return TokenSeq(tokens=content + [PAD] * (l_max - len(content)), true_length=len(content))


class ContextBuilder:
    """Context construction over one corpus and its call graph"""

    def __init__(self, corpus: Corpus, graph: CallGraph):
        self.corpus = corpus
        self.graph = graph
        self._internal: Dict[str, List[str]] = {}

    def internal(self, method: MethodRecord) -> List[str]:
        if method.id not in self._internal:
            self._internal[method.id] = build_internal_context(method).tokens
        return self._internal[method.id]

    def _described(self, method_ids: Iterable[str]) -> List[str]:
        tokens: List[str] = []
        for method_id in method_ids:
            other = self.corpus.method(method_id)
            tokens += other.name_subtokens + self.internal(other)
        return tokens

    def build_internal_context(self, method: MethodRecord) -> TokenSeq:
        return TokenSeq.of(self.internal(method))

    def build_interaction_context(self, method: MethodRecord, mode: ContextMode) -> TokenSeq:
        """Callees in call-site order, then callers in id order when checking"""
        tokens = self._described(self.graph.callees_of(method.id))
        if mode == ContextMode.CHECKING:
            tokens += self._described(self.graph.callers_of(method.id))
        return TokenSeq.of(tokens)

    def build_sibling_context(self, method: MethodRecord) -> TokenSeq:
        return TokenSeq.of(self._described(s.id for s in self.corpus.siblings_of(method)))

    def build_enclosing_context(self, method: MethodRecord) -> TokenSeq:
        owner = self.corpus.klass(method.class_id)
        return TokenSeq.of(split_identifier(owner.name) + split_all(owner.entity_names))

    def build_bundle(self, method: MethodRecord, mode: ContextMode) -> ContextBundle:
        """All four contexts, unpadded"""
        return ContextBundle(
            method_id=method.id,
            mode=mode,
            internal=self.build_internal_context(method),
            interaction=self.build_interaction_context(method, mode),
            sibling=self.build_sibling_context(method),
            enclosing=self.build_enclosing_context(method),
        )

    def build_all(self, mode: ContextMode) -> List[ContextBundle]:
        bundles = [self.build_bundle(method, mode) for method in self.corpus.methods]
        logger.debug("Built context bundles", mode=mode.value, count=len(bundles))
        return bundles


def export_bundles(path: Union[str, Path], bundles: Iterable[ContextBundle]) -> int:
    """Write bundles as JSON lines; PAD appears as the escaped string "\\u0000PAD"."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for bundle in bundles:
            f.write(json.dumps(bundle.to_export()) + "\n")
            count += 1
    logger.info("Exported context bundles", path=str(path), count=count)
    return count
