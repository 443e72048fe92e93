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

"""Model and classifier checkpoints"""

from pathlib import Path
from typing import Tuple, Union

import numpy as np
import structlog
import torch

from app.models.context import ContextMode
from app.models.decoding import BigramStats
from app.nn.cnn import ConsistencyCNN
from app.nn.model import ModelConfig, NameModel
from app.services.bigram_stats import noncopy_table
from app.services.embedding_service import Vocabulary

logger = structlog.get_logger(__name__)

CHECKPOINT_SCHEMA = 1


class CheckpointError(Exception):
    """Checkpoint missing, malformed or built for another vocabulary"""
    pass


def _load(path: Union[str, Path], kind: str, vocab: Vocabulary) -> dict:
    path = Path(path)
    if not path.is_file():
        raise CheckpointError(f"Checkpoint not found: {path}")
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except Exception as e:
        raise CheckpointError(f"Unreadable checkpoint {path}: {e}") from e
    if not isinstance(payload, dict) or payload.get("kind") != kind:
        raise CheckpointError(f"{path} is not a {kind} checkpoint")
    if payload.get("schema") != CHECKPOINT_SCHEMA:
        raise CheckpointError(f"Unsupported checkpoint schema {payload.get('schema')} in {path}")
    if payload.get("fingerprint") != vocab.fingerprint():
        raise CheckpointError(f"{path} was trained with a different vocabulary")
    return payload


def save_model(path: Union[str, Path], model: NameModel, vocab: Vocabulary, stats: BigramStats,
               mode: ContextMode) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save({
        "kind": "name-model",
        "schema": CHECKPOINT_SCHEMA,
        "mode": mode.value,
        "config": model.config.model_dump(mode="json"),
        "fingerprint": vocab.fingerprint(),
        "state_dict": model.state_dict(),
        "unigrams": stats.unigrams,
        "bigrams": stats.bigrams,
    }, path)
    logger.info("Model checkpoint written", path=str(path), mode=mode.value)


def load_model(path: Union[str, Path], vocab: Vocabulary,
               embeddings: np.ndarray) -> Tuple[NameModel, BigramStats, ContextMode]:
    """Rebuild a model; embeddings and the non-copy table come from outside the checkpoint"""
    payload = _load(path, "name-model", vocab)
    config = ModelConfig(**payload["config"])
    stats = BigramStats(unigrams=payload["unigrams"], bigrams=payload["bigrams"])
    model = NameModel(config, embeddings, noncopy_table(stats, vocab))
    try:
        model.load_state_dict(payload["state_dict"])
    except RuntimeError as e:
        raise CheckpointError(f"State does not fit the stored configuration: {e}") from e
    model.eval()
    return model, stats, ContextMode(payload["mode"])


def save_cnn(path: Union[str, Path], cnn: ConsistencyCNN, vocab: Vocabulary) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save({
        "kind": "cnn",
        "schema": CHECKPOINT_SCHEMA,
        "fingerprint": vocab.fingerprint(),
        "dim": cnn.dim,
        "length": cnn.length,
        "state_dict": cnn.state_dict(),
    }, path)
    logger.info("Classifier checkpoint written", path=str(path))


def load_cnn(path: Union[str, Path], vocab: Vocabulary) -> ConsistencyCNN:
    payload = _load(path, "cnn", vocab)
    cnn = ConsistencyCNN(payload["dim"], payload["length"])
    cnn.load_state_dict(payload["state_dict"])
    cnn.eval()
    return cnn
