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

"""Finite-difference check of the training-loss gradients"""

from typing import Dict, Iterable, Optional

import structlog
import torch
from pydantic import BaseModel

from app.nn.batching import ContextBatch
from app.nn.model import NameModel

logger = structlog.get_logger(__name__)

RELATIVE_FLOOR = 1e-4


class GradCheckReport(BaseModel):
    groups: Dict[str, float]   # max relative error per parameter group
    checked: Dict[str, int]    # number of entries compared per group

    @property
    def max_error(self) -> float:
        return max(self.groups.values(), default=0.0)


def relative_error(analytic: float, numeric: float) -> float:
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), RELATIVE_FLOOR)


def grad_check(
    model: NameModel,
    batch: ContextBatch,
    epsilon: float = 1e-5,
    groups: Optional[Iterable[str]] = None,
    max_entries: Optional[int] = None,
    seed: int = 0,
) -> GradCheckReport:
    """Compare autograd gradients of ``model.loss`` with central differences.

    ``groups`` restricts the check to some parameter groups (see
    ``NameModel.parameter_groups``); ``max_entries`` samples that many
    entries per parameter instead of checking all of them.
    """
    selected = model.parameter_groups()
    if groups is not None:
        wanted = set(groups)
        unknown = wanted - set(selected)
        if unknown:
            raise ValueError(f"Unknown parameter groups: {', '.join(sorted(unknown))}")
        selected = {name: params for name, params in selected.items() if name in wanted}

    model.zero_grad()
    model.loss(batch).backward()
    generator = torch.Generator().manual_seed(seed)

    errors: Dict[str, float] = {}
    checked: Dict[str, int] = {}
    with torch.no_grad():
        for group, params in selected.items():
            worst, count = 0.0, 0
            for name, param in params:
                analytic = param.grad if param.grad is not None else torch.zeros_like(param)
                flat = param.view(-1)
                entries = range(flat.numel())
                if max_entries is not None and flat.numel() > max_entries:
                    entries = torch.randperm(flat.numel(), generator=generator)[:max_entries].tolist()
                for index in entries:
                    original = float(flat[index])
                    flat[index] = original + epsilon
                    plus = float(model.loss(batch))
                    flat[index] = original - epsilon
                    minus = float(model.loss(batch))
                    flat[index] = original
                    numeric = (plus - minus) / (2 * epsilon)
                    worst = max(worst, relative_error(float(analytic.view(-1)[index]), numeric))
                    count += 1
            errors[group] = worst
            checked[group] = count
            logger.debug("Gradient group checked", group=group, entries=count, max_error=worst)

    model.zero_grad()
    return GradCheckReport(groups=errors, checked=checked)
