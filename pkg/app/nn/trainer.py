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

"""Teacher-forced training of the name model"""

import math
from typing import Callable, List, Optional

import structlog
import torch

from config import defaults
from app.nn.batching import ContextBatch, select_rows
from app.nn.model import NameModel

logger = structlog.get_logger(__name__)


class NonFiniteLoss(Exception):
    """Loss became NaN or infinite"""

    def __init__(self, epoch: int, step: int, value: float):
        self.epoch = epoch
        self.step = step
        self.value = value
        super().__init__(f"Non-finite loss {value} at epoch {epoch}, step {step}")


def train_model(
    model: NameModel,
    batch: ContextBatch,
    epochs: int = defaults.EPOCHS,
    learning_rate: float = defaults.LEARNING_RATE,
    momentum: float = defaults.MOMENTUM,
    grad_clip: float = defaults.GRAD_CLIP,
    batch_size: int = defaults.BATCH_SIZE,
    seed: int = defaults.SEED,
    on_epoch: Optional[Callable[[int, float], None]] = None,
) -> List[float]:
    """Train on a collated batch that carries targets.

    Minibatches are drawn from a permutation seeded with ``seed``.

    Returns:
        mean loss per epoch
    """
    if batch.targets is None or batch.size == 0:
        raise ValueError("Training needs a non-empty batch with targets")

    optimizer = torch.optim.SGD(model.parameters(), lr=learning_rate, momentum=momentum)
    generator = torch.Generator().manual_seed(seed)
    history: List[float] = []

    model.train()
    for epoch in range(1, epochs + 1):
        order = torch.randperm(batch.size, generator=generator).tolist()
        total, weight = 0.0, 0
        for step, start in enumerate(range(0, batch.size, batch_size)):
            rows = order[start:start + batch_size]
            part = select_rows(batch, rows)
            optimizer.zero_grad()
            loss = model.loss(part)
            value = float(loss.detach())
            if not math.isfinite(value):
                logger.error("Training diverged", epoch=epoch, step=step, loss=value)
                raise NonFiniteLoss(epoch, step, value)
            loss.backward()
            torch.nn.utils.clip_grad_norm_(model.parameters(), grad_clip)
            optimizer.step()
            total += value * len(rows)
            weight += len(rows)

        mean = total / weight
        history.append(mean)
        if on_epoch is not None:
            on_epoch(epoch, mean)
        if epoch == 1 or epoch == epochs or epoch % 10 == 0:
            logger.info("Epoch finished", epoch=epoch, loss=round(mean, 6),
                        noncopy_weight=float(model.noncopy_weight.detach()))
        else:
            logger.debug("Epoch finished", epoch=epoch, loss=mean)

    model.eval()
    return history
