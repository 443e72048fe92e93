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

"""Output-layer scoring: generation, copy and non-copy terms and their combination.

All scores of one step share a single normaliser Z over the generation
logits and every copy logit, computed after subtracting their joint maximum:

    p_GEN(y) = exp(u_GEN(y) - m) / Z
    p_i(y)   = sum_{j in context i, v_j = y} exp(u_CPY(h_j) - m) / Z
    raw(y)   = p_GEN(y) + sum_i W_i p_i(y) + W_NON p_NON(y_prev, y)

Negative raw scores are clamped to 0 and the rest renormalised.
"""

from typing import Sequence, Tuple

import torch
from torch import Tensor

from app.services.embedding_service import EON_ID, PAD_ID


class DegenerateDistribution(Exception):
    """Every candidate clamped to zero"""
    pass


def generation_mask(vocab_size: int, size: int, device=None) -> Tensor:
    """Candidates the generation path may score: UNK, EON and regular tokens"""
    mask = torch.zeros(size, dtype=torch.bool, device=device)
    mask[PAD_ID + 1:vocab_size] = True
    return mask


def training_vocabulary_mask(vocab_size: int, size: int, device=None) -> Tensor:
    """Training vocabulary within a candidate space of ``size``: EON and regular tokens"""
    mask = torch.zeros(size, dtype=torch.bool, device=device)
    mask[EON_ID:vocab_size] = True
    return mask


def score_generation(logits: Tensor, shift: Tensor, size: int) -> Tensor:
    """exp(u_GEN - m) over (B, V) logits, zero for PAD and for extended candidates"""
    batch, vocab_size = logits.shape
    valid = generation_mask(vocab_size, vocab_size, logits.device)
    scores = torch.exp(logits.masked_fill(~valid, float("-inf")) - shift)
    return torch.cat([scores, logits.new_zeros(batch, size - vocab_size)], dim=1)


def copy_logits(projected: Tensor, decoder_state: Tensor) -> Tensor:
    """u_CPY(h_j) = tanh(W_c h_j) . h'_t, from the (B, N, h) projections tanh(W_c h_j)"""
    return torch.bmm(projected, decoder_state.unsqueeze(2)).squeeze(2)


def score_copy(logits: Tensor, mask: Tensor, copy_ids: Tensor, size: int, shift: Tensor) -> Tensor:
    """Sum of exp(u_CPY - m) over the positions holding each candidate -> (B, size)"""
    weights = torch.exp(logits.masked_fill(~mask, float("-inf")) - shift)
    return logits.new_zeros(logits.shape[0], size).scatter_add(1, copy_ids, weights)


def score_new(copy_probs: Sequence[Tensor], noncopy: Tensor, context_weights: Tensor, noncopy_weight: Tensor) -> Tensor:
    """sum_i W_i p_i(y, CPY) + W_NON p(y, NON | y_prev); may be negative"""
    combined = noncopy_weight * noncopy
    for i, probs in enumerate(copy_probs):
        combined = combined + context_weights[i] * probs
    return combined


def combine(p_gen: Tensor, new: Tensor, candidate_mask: Tensor, vocab_size: int, strict: bool = False) -> Tuple[Tensor, Tensor]:
    """Clamp, mask and renormalise the raw scores.

    Rows whose scores all clamp to zero fall back to a uniform distribution
    over the training vocabulary and are flagged, or raise when ``strict``.

    Returns:
        probabilities (B, S) and the (B,) degenerate flags
    """
    raw = (p_gen + new).clamp(min=0.0) * candidate_mask
    total = raw.sum(dim=1, keepdim=True)
    degenerate = (total <= 0).squeeze(1)

    if bool(degenerate.any()):
        if strict:
            raise DegenerateDistribution(f"{int(degenerate.sum())} rows have no positive candidate")
        fallback = training_vocabulary_mask(vocab_size, raw.shape[1], raw.device).to(raw.dtype)
        uniform = (fallback / fallback.sum()).expand_as(raw)
        return torch.where(degenerate.unsqueeze(1), uniform, raw / total.clamp(min=1e-300)), degenerate

    return raw / total, degenerate
