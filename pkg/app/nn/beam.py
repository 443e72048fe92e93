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

"""Length-normalised beam search over decoder steps"""

from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import torch

from config import defaults
from app.nn.batching import ContextBatch
from app.nn.model import NameModel
from app.services.embedding_service import EON_ID


class BeamResult(NamedTuple):
    ids: Tuple[int, ...]   # candidate ids, EON excluded
    score: float           # log probability / length
    log_prob: float
    ended: bool            # True when the sequence emitted EON

    @property
    def length(self) -> int:
        return len(self.ids) + (1 if self.ended else 0)


class _Hypothesis(NamedTuple):
    ids: Tuple[int, ...]
    log_prob: float
    state: Optional[torch.Tensor]
    ended: bool


def _rank_key(hypothesis: _Hypothesis):
    return (-hypothesis.log_prob, hypothesis.ids + ((EON_ID,) if hypothesis.ended else ()))


@torch.no_grad()
def beam_decode(model: NameModel, batch: ContextBatch, k: int, max_len: int,
                beam_width: Optional[int] = None) -> List[BeamResult]:
    """Ranked sub-token id sequences for the single method in ``batch``.

    Each step keeps the ``beam_width`` best hypotheses by cumulative log
    probability, finished ones included; ties go to the smaller id sequence.
    A smaller ``k`` returns a prefix of a larger one. Results are ranked by
    log probability per emitted step (EON counted) and cut to ``k``.
    """
    width = beam_width or defaults.BEAM_WIDTH
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > width:
        raise ValueError(f"k={k} exceeds the beam width {width}")
    if batch.size != 1:
        raise ValueError("beam_decode works on one method at a time")

    memory = model.encode(batch)
    live = [_Hypothesis((), 0.0, memory.init_state[0], False)]
    finished: List[_Hypothesis] = []

    for _ in range(max_len):
        rows = torch.zeros(len(live), dtype=torch.long)
        state = torch.stack([h.state for h in live])
        y_prev = torch.tensor([h.ids[-1] if h.ids else EON_ID for h in live], dtype=torch.long)
        step = model.decode_step(memory.select(rows), state, y_prev)
        log_probs = torch.log(step.probs).numpy()

        pool = list(finished)
        for i, hypothesis in enumerate(live):
            scores = log_probs[i]
            ids = np.arange(scores.shape[0])
            order = np.lexsort((ids, -scores))[:width]
            for candidate in order.tolist():
                if not np.isfinite(scores[candidate]):
                    break
                total = hypothesis.log_prob + float(scores[candidate])
                if candidate == EON_ID:
                    pool.append(_Hypothesis(hypothesis.ids, total, None, True))
                else:
                    pool.append(_Hypothesis(hypothesis.ids + (candidate,), total, step.state[i], False))

        pool.sort(key=_rank_key)
        kept = pool[:width]
        finished = [h for h in kept if h.ended]
        live = [h for h in kept if not h.ended]
        if not live:
            break

    finished.extend(h._replace(state=None) for h in live)
    results = [
        BeamResult(h.ids, h.log_prob / max(len(h.ids) + (1 if h.ended else 0), 1), h.log_prob, h.ended)
        for h in finished
    ]
    results.sort(key=lambda r: (-r.score, r.ids))
    return results[:k]
