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

"""Tensor batches from context bundles"""

from typing import Dict, List, NamedTuple, Optional, Sequence

import torch
from torch import Tensor

from app.models.context import PAD, CONTEXT_ORDER, ContextBundle, ContextKind
from app.services.embedding_service import EON_ID, PAD_ID, UNK_ID, Vocabulary


class ContextBatch(NamedTuple):
    """Padded bundles of B methods, all contexts of length L.

    ``ids`` index the embedding matrix (UNK for unknown tokens); ``copy_ids``
    index the extended candidate space, where the k-th unknown token of a
    method gets id |V| + k.
    """
    ids: Dict[ContextKind, Tensor]       # (B, L)
    copy_ids: Dict[ContextKind, Tensor]  # (B, L)
    mask: Dict[ContextKind, Tensor]      # (B, L) True at real tokens
    oov: List[List[str]]
    vocab_size: int
    targets: Optional[Tensor] = None       # (B, T) candidate ids, EON-terminated
    target_mask: Optional[Tensor] = None   # (B, T)

    @property
    def size(self) -> int:
        return len(self.oov)

    @property
    def extended_size(self) -> int:
        return self.vocab_size + max((len(tokens) for tokens in self.oov), default=0)

    def candidate_token(self, row: int, candidate: int, vocab: Vocabulary) -> str:
        if candidate < self.vocab_size:
            return vocab.tokens[candidate]
        return self.oov[row][candidate - self.vocab_size]


def candidate_id(token: str, vocab: Vocabulary, oov: Sequence[str]) -> int:
    """Id of a target token: vocabulary id, else its extended id, else UNK"""
    if token in vocab.index and token != PAD:
        return vocab.index[token]
    if token in oov:
        return len(vocab) + list(oov).index(token)
    return UNK_ID


def collate(
    bundles: Sequence[ContextBundle],
    vocab: Vocabulary,
    l_max: int,
    names: Optional[Sequence[Sequence[str]]] = None,
) -> ContextBatch:
    """Pad bundles to ``l_max`` and index them.

    ``names`` are gold sub-token lists without EON; EON is appended here.
    """
    padded = [bundle.padded(l_max) for bundle in bundles]
    oov: List[List[str]] = []
    for bundle in padded:
        unknown: Dict[str, None] = {}
        for token in bundle.input_tokens():
            if token not in vocab.index:
                unknown.setdefault(token, None)
        oov.append(list(unknown))

    ids, copy_ids, mask = {}, {}, {}
    for kind in CONTEXT_ORDER:
        rows, copy_rows = [], []
        for bundle, unknown in zip(padded, oov):
            tokens = bundle.get(kind).tokens
            rows.append([PAD_ID if t == PAD else vocab.id(t) for t in tokens])
            copy_rows.append([PAD_ID if t == PAD else candidate_id(t, vocab, unknown) for t in tokens])
        ids[kind] = torch.tensor(rows, dtype=torch.long).reshape(len(padded), l_max)
        copy_ids[kind] = torch.tensor(copy_rows, dtype=torch.long).reshape(len(padded), l_max)
        mask[kind] = torch.tensor(
            [[i < bundle.get(kind).true_length for i in range(l_max)] for bundle in padded],
            dtype=torch.bool,
        ).reshape(len(padded), l_max)

    targets = target_mask = None
    if names is not None:
        framed = [[candidate_id(t, vocab, unknown) for t in name] + [EON_ID] for name, unknown in zip(names, oov)]
        length = max((len(row) for row in framed), default=1)
        targets = torch.full((len(framed), length), EON_ID, dtype=torch.long)
        target_mask = torch.zeros((len(framed), length), dtype=torch.bool)
        for row, ids_row in enumerate(framed):
            targets[row, :len(ids_row)] = torch.tensor(ids_row, dtype=torch.long)
            target_mask[row, :len(ids_row)] = True

    return ContextBatch(ids, copy_ids, mask, oov, len(vocab), targets, target_mask)


def select_rows(batch: ContextBatch, rows: Sequence[int]) -> ContextBatch:
    index = torch.tensor(list(rows), dtype=torch.long)

    def pick(tensors):
        return {kind: tensor.index_select(0, index) for kind, tensor in tensors.items()}

    return ContextBatch(
        pick(batch.ids), pick(batch.copy_ids), pick(batch.mask),
        [batch.oov[r] for r in rows], batch.vocab_size,
        None if batch.targets is None else batch.targets.index_select(0, index),
        None if batch.target_mask is None else batch.target_mask.index_select(0, index),
    )


def has_input(bundle: ContextBundle, kinds: Sequence[ContextKind]) -> bool:
    """True when at least one of the active contexts holds a real token"""
    return any(bundle.get(kind).true_length > 0 for kind in kinds)
