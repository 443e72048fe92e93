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

"""Additive attention over the pooled encoder memory"""

import math
from typing import Optional, Tuple

import torch
from torch import Tensor, nn

from app.nn.gru import DTYPE


class AllMasked(Exception):
    """No real token to attend to"""
    pass


class AttentionParams(nn.Module):
    """score(s, h_j) = v . tanh(W_s s + W_h h_j + b)"""

    def __init__(self, state_size: int, memory_size: int, attention_size: int):
        super().__init__()
        self.W_s = nn.Parameter(torch.empty(attention_size, state_size, dtype=DTYPE))
        self.W_h = nn.Parameter(torch.empty(attention_size, memory_size, dtype=DTYPE))
        self.b = nn.Parameter(torch.zeros(attention_size, dtype=DTYPE))
        self.v = nn.Parameter(torch.empty(attention_size, dtype=DTYPE))

    def reset_parameters(self, generator: Optional[torch.Generator] = None) -> None:
        bound = 1.0 / math.sqrt(self.W_s.shape[0])
        with torch.no_grad():
            for weight in (self.W_s, self.W_h, self.v):
                weight.uniform_(-bound, bound, generator=generator)
            self.b.zero_()

    def scores(self, state: Tensor, memory: Tensor) -> Tensor:
        """(B, h) state against (B, N, h) memory -> (B, N) scores"""
        hidden = torch.tanh((state @ self.W_s.T).unsqueeze(1) + memory @ self.W_h.T + self.b)
        return hidden @ self.v


def attend(state: Tensor, memory: Tensor, mask: Tensor, p: AttentionParams) -> Tuple[Tensor, Tensor]:
    """Context vector and weights from the previous decoder state.

    Args:
        state: (B, h) previous decoder state
        memory: (B, N, h) encoder states of every active context, concatenated
        mask: (B, N) True at real tokens

    Returns:
        C_t (B, h) and alpha (B, N), zero at masked positions
    """
    if not bool(mask.any(dim=1).all()):
        raise AllMasked("Every memory position is padding")
    scores = p.scores(state, memory).masked_fill(~mask, float("-inf"))
    alpha = torch.softmax(scores, dim=1)
    context = torch.bmm(alpha.unsqueeze(1), memory).squeeze(1)
    return context, alpha
