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

"""GRU cell and context encoder"""

import math
from typing import Optional, Tuple

import torch
from torch import Tensor, nn

DTYPE = torch.float64


class DimensionMismatch(Exception):
    """Input or state width disagrees with the cell"""
    pass


class GruParams(nn.Module):
    """Update, reset and candidate gates of one GRU.

    h_t = z * h_prev + (1 - z) * n, with
    z = sigmoid(W_z v + U_z h_prev + b_z), r = sigmoid(W_r v + U_r h_prev + b_r)
    and n = tanh(W v + r * (U h_prev) + b_h).
    """

    def __init__(self, input_size: int, hidden_size: int):
        super().__init__()
        self.input_size = input_size
        self.hidden_size = hidden_size

        self.W_z = nn.Parameter(torch.empty(hidden_size, input_size, dtype=DTYPE))
        self.W_r = nn.Parameter(torch.empty(hidden_size, input_size, dtype=DTYPE))
        self.W = nn.Parameter(torch.empty(hidden_size, input_size, dtype=DTYPE))
        self.U_z = nn.Parameter(torch.empty(hidden_size, hidden_size, dtype=DTYPE))
        self.U_r = nn.Parameter(torch.empty(hidden_size, hidden_size, dtype=DTYPE))
        self.U = nn.Parameter(torch.empty(hidden_size, hidden_size, dtype=DTYPE))
        self.bias_z = nn.Parameter(torch.zeros(hidden_size, dtype=DTYPE))
        self.bias_r = nn.Parameter(torch.zeros(hidden_size, dtype=DTYPE))
        self.bias_h = nn.Parameter(torch.zeros(hidden_size, dtype=DTYPE))

    def reset_parameters(self, generator: Optional[torch.Generator] = None) -> None:
        bound = 1.0 / math.sqrt(self.hidden_size)
        with torch.no_grad():
            for weight in (self.W_z, self.W_r, self.W, self.U_z, self.U_r, self.U):
                weight.uniform_(-bound, bound, generator=generator)
            for bias in (self.bias_z, self.bias_r, self.bias_h):
                bias.zero_()


def gru_step(v: Tensor, h_prev: Tensor, p: GruParams) -> Tensor:
    """One recurrence step; works on (d,) / (h,) vectors or (B, d) / (B, h) batches"""
    if v.shape[-1] != p.input_size or h_prev.shape[-1] != p.hidden_size or v.shape[:-1] != h_prev.shape[:-1]:
        raise DimensionMismatch(
            f"GRU expects input {p.input_size} and state {p.hidden_size}, "
            f"got {tuple(v.shape)} and {tuple(h_prev.shape)}"
        )
    z = torch.sigmoid(v @ p.W_z.T + h_prev @ p.U_z.T + p.bias_z)
    r = torch.sigmoid(v @ p.W_r.T + h_prev @ p.U_r.T + p.bias_r)
    n = torch.tanh(v @ p.W.T + r * (h_prev @ p.U.T) + p.bias_h)
    return z * h_prev + (1 - z) * n


def encode_context(vectors: Tensor, mask: Tensor, p: GruParams) -> Tuple[Tensor, Tensor]:
    """Run the GRU over a padded batch.

    Args:
        vectors: (B, L, d) embedded tokens
        mask: (B, L) True at real tokens; padding sits at the tail

    Returns:
        states (B, L, h), one per position, and the last real state per row
        (zeros for rows with no real token)
    """
    if vectors.dim() != 3 or mask.shape != vectors.shape[:2]:
        raise DimensionMismatch(f"Expected (B, L, d) vectors with (B, L) mask, got {tuple(vectors.shape)}")
    batch, length, _ = vectors.shape
    h = vectors.new_zeros(batch, p.hidden_size)
    states = []
    for t in range(length):
        h = gru_step(vectors[:, t], h, p)
        states.append(h)
    states = torch.stack(states, dim=1) if states else vectors.new_zeros(batch, 0, p.hidden_size)

    lengths = mask.sum(dim=1)
    last_index = (lengths - 1).clamp(min=0)
    last = states[torch.arange(batch), last_index] if length else vectors.new_zeros(batch, p.hidden_size)
    last = last * (lengths > 0).unsqueeze(1).to(last.dtype)
    return states, last
