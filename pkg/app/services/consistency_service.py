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

"""Consistency checking: method representations and the two-channel classifier"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog
import torch

from config import defaults
from app.models.context import ContextBundle
from app.models.tasks import ConsistencyVerdict, MethodRepresentation
from app.nn.batching import collate
from app.nn.cnn import CONSISTENT, INCONSISTENT, ConsistencyCNN
from app.nn.gru import DTYPE
from app.nn.model import NameModel
from app.services.embedding_service import PAD_ID, UNK_ID, Vocabulary, embed_sequence
from app.services.identifiers import EmptyName, require_subtokens

logger = structlog.get_logger(__name__)

REPRESENTATION_CHUNK = 64


def represent_methods(
    bundles: Sequence[ContextBundle],
    model: NameModel,
    vocab: Vocabulary,
    embeddings: np.ndarray,
    l_max: int,
    max_len: int,
) -> List[MethodRepresentation]:
    """Greedy-decode each method and collect the embedding row of every emitted token.

    Tokens copied from outside the training vocabulary contribute the UNK row.
    """
    representations = []
    for start in range(0, len(bundles), REPRESENTATION_CHUNK):
        chunk = bundles[start:start + REPRESENTATION_CHUNK]
        batch = collate(chunk, vocab, l_max)
        for row, (bundle, ids) in enumerate(zip(chunk, model.greedy_decode(batch, max_len))):
            tokens = [batch.candidate_token(row, i, vocab) for i in ids]
            rows = [i if i < len(vocab) else UNK_ID for i in ids]
            vectors = embeddings[rows].reshape(len(rows), embeddings.shape[1]).tolist()
            representations.append(MethodRepresentation(
                method_id=bundle.method_id, tokens=tokens, vectors=vectors, empty=not ids,
            ))
            if not ids:
                logger.debug("Empty method representation", method_id=bundle.method_id)
    return representations


def represent_method(bundle: ContextBundle, model: NameModel, vocab: Vocabulary, embeddings: np.ndarray,
                     l_max: int, max_len: int) -> MethodRepresentation:
    return represent_methods([bundle], model, vocab, embeddings, l_max, max_len)[0]


def classifier_input(representation: MethodRepresentation, name_subtokens: Sequence[str],
                     vocab: Vocabulary, embeddings: np.ndarray, length: int) -> np.ndarray:
    """(2, length, d) matrix: decoded vectors in channel 0, the embedded name in channel 1, zero padded"""
    dim = embeddings.shape[1]
    matrix = np.zeros((2, length, dim), dtype=np.float64)
    current = np.asarray(representation.vectors, dtype=np.float64).reshape(-1, dim)[:length]
    existing = embed_sequence(list(name_subtokens)[:length], embeddings, vocab)
    matrix[0, :len(current)] = current
    matrix[1, :len(existing)] = existing
    return matrix


def corrupt_name(subtokens: Sequence[str], pool: Sequence[str], rng: np.random.Generator,
                 visible: Optional[int] = None) -> List[str]:
    """Replace one randomly chosen sub-token with a different one from ``pool``.

    ``visible`` limits the replaced position to the prefix the classifier sees.
    """
    if not subtokens:
        raise EmptyName("Cannot corrupt an empty name")
    limit = len(subtokens) if visible is None else max(1, min(len(subtokens), visible))
    position = int(rng.integers(limit))
    choices = sorted(set(pool) - {subtokens[position]})
    if not choices:
        raise ValueError("No substitute sub-token available")
    corrupted = list(subtokens)
    corrupted[position] = choices[int(rng.integers(len(choices)))]
    return corrupted


def name_id_matrix(names: Sequence[Sequence[str]], vocab: Vocabulary, length: int) -> Tuple[np.ndarray, np.ndarray]:
    """(N, length) vocabulary ids of the truncated names, PAD filled, and the visible length of each"""
    ids = np.full((len(names), length), PAD_ID, dtype=np.int64)
    lengths = np.zeros(len(names), dtype=np.int64)
    for row, name in enumerate(names):
        visible = vocab.ids(list(name)[:length])
        ids[row, :len(visible)] = visible
        lengths[row] = len(visible)
    return ids, lengths


def corrupt_ids(ids: np.ndarray, lengths: np.ndarray, pool: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One visible position per row replaced by a different id drawn uniformly from the sorted ``pool``"""
    rows = np.arange(len(ids))
    positions = (rng.random(len(ids)) * lengths).astype(np.int64)
    original = ids[rows, positions]
    draws = rng.integers(len(pool) - 1, size=len(ids))
    draws += draws >= np.searchsorted(pool, original)
    corrupted = ids.copy()
    corrupted[rows, positions] = pool[draws]
    return corrupted


def train_consistency_classifier(
    representations: Sequence[MethodRepresentation],
    names: Sequence[Sequence[str]],
    vocab: Vocabulary,
    embeddings: np.ndarray,
    length: int,
    epochs: int = defaults.CNN_EPOCHS,
    learning_rate: float = defaults.CNN_LEARNING_RATE,
    seed: int = defaults.SEED,
    negatives: int = defaults.CNN_NEGATIVES,
) -> Tuple[ConsistencyCNN, List[float]]:
    """Fit the CNN on original names (consistent) against corrupted copies (inconsistent).

    Every epoch draws ``negatives`` fresh single-substitution corruptions per
    method. The loss is the mean of the per-class losses, so both classes
    weigh the same whatever the ratio.
    """
    if negatives < 1:
        raise ValueError("negatives must be at least 1")
    kept = [(r, n) for r, n in zip(representations, names) if n]
    if not kept:
        raise ValueError("No named methods to train the classifier on")

    rng = np.random.default_rng(seed)
    dim = embeddings.shape[1]
    positives = np.stack([classifier_input(r, n, vocab, embeddings, length) for r, n in kept])
    ids, lengths = name_id_matrix([n for _, n in kept], vocab, length)
    pool = np.unique(ids[ids != PAD_ID])
    if len(pool) < 2:
        raise ValueError("No substitute sub-token available")

    current = np.repeat(positives[:, 0], negatives, axis=0)
    repeated_ids, repeated_lengths = np.repeat(ids, negatives, axis=0), np.repeat(lengths, negatives)
    x_pos = torch.from_numpy(positives).to(DTYPE)
    y_pos = torch.full((len(kept),), CONSISTENT, dtype=torch.long)
    y_neg = torch.full((len(repeated_ids),), INCONSISTENT, dtype=torch.long)
    cnn = ConsistencyCNN(dim, length, seed=seed)
    optimizer = torch.optim.Adam(cnn.parameters(), lr=learning_rate)

    history: List[float] = []
    cnn.train()
    for epoch in range(1, epochs + 1):
        corrupted = embeddings[corrupt_ids(repeated_ids, repeated_lengths, pool, rng)].reshape(-1, length, dim)
        x_neg = torch.from_numpy(np.stack([current, corrupted], axis=1)).to(DTYPE)
        optimizer.zero_grad()
        loss = 0.5 * (torch.nn.functional.cross_entropy(cnn(x_pos), y_pos)
                      + torch.nn.functional.cross_entropy(cnn(x_neg), y_neg))
        loss.backward()
        optimizer.step()
        history.append(float(loss.detach()))
        if epoch == epochs or epoch % 50 == 0:
            logger.info("Classifier epoch finished", epoch=epoch, loss=round(history[-1], 6))
    cnn.eval()
    return cnn, history


@torch.no_grad()
def consistency_scores(cnn: ConsistencyCNN, matrices: Sequence[np.ndarray]) -> List[float]:
    if not matrices:
        return []
    probabilities = cnn.probabilities(torch.from_numpy(np.stack(matrices)).to(DTYPE))
    return probabilities[:, CONSISTENT].tolist()


def check_methods(
    bundles: Sequence[ContextBundle],
    existing_names: Sequence[str],
    model: NameModel,
    cnn: ConsistencyCNN,
    vocab: Vocabulary,
    embeddings: np.ndarray,
    l_max: int,
    max_len: int,
    threshold: float = defaults.CONSISTENCY_THRESHOLD,
    representations: Optional[Sequence[MethodRepresentation]] = None,
) -> List[ConsistencyVerdict]:
    """Verdict for every (bundle, existing name) pair, in input order"""
    subtokens = [require_subtokens(name) for name in existing_names]
    if representations is None:
        representations = represent_methods(bundles, model, vocab, embeddings, l_max, max_len)
    matrices = [classifier_input(r, s, vocab, embeddings, cnn.length) for r, s in zip(representations, subtokens)]
    scores = consistency_scores(cnn, matrices)
    return [
        ConsistencyVerdict.from_score(bundle.method_id, name, min(max(score, 0.0), 1.0), threshold)
        for bundle, name, score in zip(bundles, existing_names, scores)
    ]


def check_consistency(bundle: ContextBundle, existing_name: str, model: NameModel, cnn: ConsistencyCNN,
                      vocab: Vocabulary, embeddings: np.ndarray, l_max: int, max_len: int,
                      threshold: float = defaults.CONSISTENCY_THRESHOLD) -> ConsistencyVerdict:
    return check_methods([bundle], [existing_name], model, cnn, vocab, embeddings, l_max, max_len, threshold)[0]
