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

"""Name suggestion: beam search, vector rollback and camelCase rendering"""

from typing import List, Optional, Sequence

import numpy as np
import structlog

from config import defaults
from app.models.context import ContextBundle
from app.models.tasks import MethodSuggestions, Suggestion
from app.nn.batching import collate
from app.nn.beam import beam_decode
from app.nn.model import NameModel
from app.services.embedding_service import UNK_ID, Vocabulary, nearest_token

logger = structlog.get_logger(__name__)


def roll_back(ids: Sequence[int], oov: Sequence[str], vocab: Vocabulary, embeddings: np.ndarray) -> List[str]:
    """Map decoded ids to sub-tokens through their vectors.

    UNK steps are dropped; copied tokens outside the vocabulary are kept as they are.
    """
    tokens = []
    for candidate in ids:
        if candidate == UNK_ID:
            continue
        if candidate >= len(vocab):
            tokens.append(oov[candidate - len(vocab)])
        else:
            tokens.append(nearest_token(embeddings[candidate], embeddings, vocab))
    return tokens


def suggest_name(
    bundle: ContextBundle,
    model: NameModel,
    vocab: Vocabulary,
    embeddings: np.ndarray,
    l_max: int,
    max_len: int,
    k: int = defaults.BEAM_WIDTH,
    beam_width: Optional[int] = None,
) -> MethodSuggestions:
    """Top ``k`` distinct names for one method, best first.

    The beam is ``beam_width`` wide whatever ``k`` is; ``k`` above it is rejected.
    """
    width = beam_width or defaults.BEAM_WIDTH
    if k > width:
        raise ValueError(f"k={k} exceeds the beam width {width}")
    batch = collate([bundle], vocab, l_max)
    results = beam_decode(model, batch, k=width, max_len=max_len, beam_width=width)

    seen = set()
    candidates: List[Suggestion] = []
    for result in results:
        subtokens = roll_back(result.ids, batch.oov[0], vocab, embeddings)
        if not subtokens:
            continue
        suggestion = Suggestion.of(subtokens, result.score)
        if suggestion.rendered in seen:
            continue
        seen.add(suggestion.rendered)
        candidates.append(suggestion)
        if len(candidates) == k:
            break

    if not candidates:
        logger.debug("No usable suggestion", method_id=bundle.method_id)
    return MethodSuggestions(method_id=bundle.method_id, candidates=candidates)


def suggest_names(bundles: Sequence[ContextBundle], model: NameModel, vocab: Vocabulary, embeddings: np.ndarray,
                  l_max: int, max_len: int, k: int = defaults.BEAM_WIDTH,
                  beam_width: Optional[int] = None) -> List[MethodSuggestions]:
    return [suggest_name(b, model, vocab, embeddings, l_max, max_len, k, beam_width) for b in bundles]


def greedy_names(bundles: Sequence[ContextBundle], model: NameModel, vocab: Vocabulary, embeddings: np.ndarray,
                 l_max: int, max_len: int, chunk: int = 64) -> List[List[str]]:
    """Top-1 sub-tokens per method by argmax decoding, rolled back like suggestions"""
    names = []
    for start in range(0, len(bundles), chunk):
        batch = collate(bundles[start:start + chunk], vocab, l_max)
        for row, ids in enumerate(model.greedy_decode(batch, max_len)):
            names.append(roll_back(ids, batch.oov[row], vocab, embeddings))
    return names
