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

"""Two-channel convolutional consistency classifier"""

import torch
from torch import Tensor, nn

from app.nn.gru import DTYPE

CONSISTENT = 1
INCONSISTENT = 0


class ConsistencyCNN(nn.Module):
    """Classifies a (2, length, dim) pair of name matrices.

    Channel 0 holds the vectors the decoder produced for the method,
    channel 1 the embedded existing name. Output class 1 is "consistent".
    """

    def __init__(self, dim: int, length: int, filters: int = 16, features: int = 32, seed: int = 0):
        super().__init__()
        self.dim = dim
        self.length = length
        self.conv1 = nn.Conv2d(2, filters, kernel_size=(3, dim), padding=(1, 0), dtype=DTYPE)
        self.conv2 = nn.Conv1d(filters, features, kernel_size=3, padding=1, dtype=DTYPE)
        self.fc = nn.Linear(features, 2, dtype=DTYPE)
        self.reset_parameters(seed)

    def reset_parameters(self, seed: int) -> None:
        generator = torch.Generator().manual_seed(seed)
        with torch.no_grad():
            for layer in (self.conv1, self.conv2, self.fc):
                fan_in = layer.weight[0].numel()
                bound = fan_in ** -0.5
                layer.weight.uniform_(-bound, bound, generator=generator)
                layer.bias.zero_()

    def forward(self, x: Tensor) -> Tensor:
        """(B, 2, length, dim) -> (B, 2) logits"""
        hidden = torch.relu(self.conv1(x)).squeeze(3)   # (B, filters, length)
        hidden = torch.relu(self.conv2(hidden))         # (B, features, length)
        pooled = hidden.amax(dim=2)
        return self.fc(pooled)

    def probabilities(self, x: Tensor) -> Tensor:
        return torch.softmax(self.forward(x), dim=1)
