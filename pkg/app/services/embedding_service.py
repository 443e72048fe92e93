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

"""Sub-token vocabulary and GloVe embeddings.

The GloVe objective is

    J = sum_ij f(X_ij) (w_i . w~_j + b_i + b~_j - log X_ij)^2,
    f(x) = min(1, (x / x_max) ** alpha)

minimised with AdaGrad over the non-zero co-occurrence entries. The final
embedding of token i is w_i + w~_i; the PAD row is zero.
"""

import hashlib
import struct
from collections import Counter, defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from config import defaults
from app.models.context import PAD, TokenSeq

logger = structlog.get_logger(__name__)

UNK = "\u0000UNK"
EON = "\u0000EON"
SPECIALS = (PAD, UNK, EON)
PAD_ID, UNK_ID, EON_ID = 0, 1, 2

MAGIC = b"NCEMB\x00\x00\x00"
FORMAT_VERSION = 1

GloveParams = Dict[str, np.ndarray]  # W, W_tilde, b, b_tilde


class DegenerateCorpus(Exception):
    """Too few distinct tokens to train embeddings"""
    pass


class EmbeddingFileError(Exception):
    """Embedding checkpoint unreadable"""
    pass


class Vocabulary:
    """Dense token ids: PAD, UNK and EON first, then tokens in lexicographic order"""

    def __init__(self, tokens: Sequence[str], counts: Optional[Sequence[int]] = None):
        tokens = list(tokens)
        if tuple(tokens[:3]) != SPECIALS:
            raise ValueError("Vocabulary must start with PAD, UNK, EON")
        self.tokens: List[str] = tokens
        self.counts: List[int] = list(counts) if counts is not None else [0] * len(tokens)
        self.index: Dict[str, int] = {token: i for i, token in enumerate(tokens)}
        if len(self.index) != len(tokens):
            raise ValueError("Duplicate tokens in vocabulary")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def id(self, token: str) -> int:
        """Index of a token, UNK for tokens outside the vocabulary"""
        return self.index.get(token, UNK_ID)

    def ids(self, tokens: Iterable[str]) -> List[int]:
        return [self.id(token) for token in tokens]

    @property
    def dic_all(self) -> frozenset:
        """Tokens seen in training: every non-special token plus EON"""
        return frozenset(self.tokens[EON_ID:])

    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        for token in self.tokens:
            encoded = token.encode("utf-8")
            digest.update(struct.pack("<I", len(encoded)))
            digest.update(encoded)
        return digest.hexdigest()


def build_vocabulary(sequences: Iterable[Sequence[str]], min_count: int = defaults.MIN_COUNT) -> Vocabulary:
    """Vocabulary over every non-special token occurring at least ``min_count`` times"""
    frequency: Counter = Counter()
    for sequence in sequences:
        frequency.update(token for token in sequence if token not in SPECIALS)

    kept = sorted(token for token, count in frequency.items() if count >= min_count)
    counts = [0, 0, 0] + [frequency[token] for token in kept]
    logger.debug("Built vocabulary", size=len(kept) + len(SPECIALS), dropped=len(frequency) - len(kept))
    return Vocabulary(list(SPECIALS) + kept, counts)


class CooccurrenceTable:
    """Symmetric window co-occurrence counts keyed by token pair"""

    def __init__(self):
        self.counts: Dict[Tuple[str, str], float] = defaultdict(float)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, pair: Tuple[str, str]) -> float:
        return self.counts.get(pair, 0.0)

    def add(self, a: str, b: str, weight: float) -> None:
        self.counts[(a, b)] += weight
        if a != b:
            self.counts[(b, a)] += weight

    def tokens(self) -> set:
        return {a for a, _ in self.counts}

    def to_arrays(self, vocab: Vocabulary) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(rows, cols, values) over pairs whose tokens both have ids, in sorted pair order"""
        rows, cols, values = [], [], []
        for (a, b), value in sorted(self.counts.items()):
            if a in vocab and b in vocab:
                rows.append(vocab.index[a])
                cols.append(vocab.index[b])
                values.append(value)
        return np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64), np.asarray(values, dtype=np.float64)


def build_cooccurrence(sequences: Iterable[Sequence[str]], window: int = defaults.GLOVE_WINDOW) -> CooccurrenceTable:
    """Add 1/k to X_ij and X_ji for every pair of positions k <= window apart"""
    if window < 1:
        raise ValueError("window must be at least 1")
    table = CooccurrenceTable()
    for sequence in sequences:
        tokens = [token for token in sequence if token != PAD]
        for i, a in enumerate(tokens):
            for k in range(1, window + 1):
                if i + k >= len(tokens):
                    break
                table.add(a, tokens[i + k], 1.0 / k)
    return table


def _weights(x: np.ndarray, x_max: float, alpha: float) -> np.ndarray:
    return np.minimum(1.0, (x / x_max) ** alpha)


def glove_objective(params: GloveParams, rows: np.ndarray, cols: np.ndarray, x: np.ndarray,
                    x_max: float = defaults.GLOVE_X_MAX, alpha: float = defaults.GLOVE_ALPHA) -> float:
    diff = (np.einsum("nd,nd->n", params["W"][rows], params["W_tilde"][cols])
            + params["b"][rows] + params["b_tilde"][cols] - np.log(x))
    return float(np.sum(_weights(x, x_max, alpha) * diff ** 2))


def glove_gradients(params: GloveParams, rows: np.ndarray, cols: np.ndarray, x: np.ndarray,
                    x_max: float = defaults.GLOVE_X_MAX, alpha: float = defaults.GLOVE_ALPHA) -> GloveParams:
    """Analytic gradient of ``glove_objective`` with respect to every parameter"""
    w, w_tilde = params["W"][rows], params["W_tilde"][cols]
    diff = np.einsum("nd,nd->n", w, w_tilde) + params["b"][rows] + params["b_tilde"][cols] - np.log(x)
    scale = 2.0 * _weights(x, x_max, alpha) * diff

    grads = {name: np.zeros_like(value) for name, value in params.items()}
    np.add.at(grads["W"], rows, scale[:, None] * w_tilde)
    np.add.at(grads["W_tilde"], cols, scale[:, None] * w)
    np.add.at(grads["b"], rows, scale)
    np.add.at(grads["b_tilde"], cols, scale)
    return grads


def init_glove_params(vocab_size: int, dim: int, rng: np.random.Generator) -> GloveParams:
    return {
        "W": (rng.random((vocab_size, dim)) - 0.5) / dim,
        "W_tilde": (rng.random((vocab_size, dim)) - 0.5) / dim,
        "b": (rng.random(vocab_size) - 0.5) / dim,
        "b_tilde": (rng.random(vocab_size) - 0.5) / dim,
    }


def train_embeddings(
    table: CooccurrenceTable,
    vocab: Vocabulary,
    dim: int = defaults.EMBEDDING_DIM,
    epochs: int = defaults.GLOVE_EPOCHS,
    seed: int = defaults.SEED,
    learning_rate: float = defaults.GLOVE_LEARNING_RATE,
    x_max: float = defaults.GLOVE_X_MAX,
    alpha: float = defaults.GLOVE_ALPHA,
    chunk_size: int = 64,
) -> Tuple[np.ndarray, List[float]]:
    """Fit GloVe vectors with AdaGrad.

    Returns:
        the |V| x dim float64 embedding matrix and the objective after each epoch
    """
    if dim < 2:
        raise ValueError("Embedding dimension must be at least 2")
    rows, cols, x = table.to_arrays(vocab)
    distinct = set(rows.tolist()) | set(cols.tolist())
    if len(distinct) < 2:
        raise DegenerateCorpus(f"Need at least 2 distinct co-occurring tokens, found {len(distinct)}")

    rng = np.random.default_rng(seed)
    params = init_glove_params(len(vocab), dim, rng)
    grad_sq = {name: np.ones_like(value) for name, value in params.items()}

    history: List[float] = []
    for epoch in range(epochs):
        order = rng.permutation(len(x))
        for start in range(0, len(order), chunk_size):
            batch = order[start:start + chunk_size]
            grads = glove_gradients(params, rows[batch], cols[batch], x[batch], x_max, alpha)
            for name, grad in grads.items():
                grad_sq[name] += grad ** 2
                params[name] -= learning_rate * grad / np.sqrt(grad_sq[name])
        history.append(glove_objective(params, rows, cols, x, x_max, alpha))
        logger.debug("GloVe epoch", epoch=epoch + 1, objective=history[-1])

    embeddings = params["W"] + params["W_tilde"]
    embeddings[PAD_ID] = 0.0
    if not np.all(np.isfinite(embeddings)):
        raise DegenerateCorpus("Embedding training diverged")

    logger.info("Trained embeddings", vocab=len(vocab), dim=dim, epochs=epochs,
                objective=history[-1] if history else None)
    return embeddings, history


def embed_sequence(seq: Union[TokenSeq, Sequence[str]], embeddings: np.ndarray, vocab: Vocabulary) -> np.ndarray:
    """Row per token, in order; PAD maps to the zero row and unknown tokens to UNK"""
    tokens = seq.tokens if isinstance(seq, TokenSeq) else list(seq)
    return embeddings[np.asarray(vocab.ids(tokens), dtype=np.int64)].reshape(len(tokens), embeddings.shape[1])


def nearest_token(vector: np.ndarray, embeddings: np.ndarray, vocab: Vocabulary) -> str:
    """Regular token whose row has the highest cosine similarity; lowest index wins ties"""
    candidates = embeddings[EON_ID + 1:]
    if len(candidates) == 0:
        raise DegenerateCorpus("Vocabulary holds no regular tokens")
    norms = np.linalg.norm(candidates, axis=1) * max(float(np.linalg.norm(vector)), 1e-300)
    similarity = (candidates @ vector) / np.maximum(norms, 1e-300)
    return vocab.tokens[EON_ID + 1 + int(np.argmax(similarity))]


def save_embeddings(path: Union[str, Path], vocab: Vocabulary, embeddings: np.ndarray) -> None:
    """Write the binary embedding checkpoint (layout in docs/file-formats.md)"""
    size, dim = embeddings.shape
    if size != len(vocab):
        raise ValueError("Embedding rows do not match vocabulary size")
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<III", FORMAT_VERSION, size, dim))
        for token in vocab.tokens:
            encoded = token.encode("utf-8")
            f.write(struct.pack("<I", len(encoded)))
            f.write(encoded)
        f.write(np.asarray(vocab.counts, dtype="<u8").tobytes())
        f.write(np.ascontiguousarray(embeddings, dtype="<f8").tobytes())
    logger.info("Saved embeddings", path=str(path), vocab=size, dim=dim)


def load_embeddings(path: Union[str, Path]) -> Tuple[Vocabulary, np.ndarray]:
    data = Path(path).read_bytes()
    if not data.startswith(MAGIC):
        raise EmbeddingFileError(f"{path}: not an embedding checkpoint")
    offset = len(MAGIC)
    try:
        version, size, dim = struct.unpack_from("<III", data, offset)
        if version != FORMAT_VERSION:
            raise EmbeddingFileError(f"{path}: unsupported version {version}")
        offset += 12
        tokens = []
        for _ in range(size):
            (length,) = struct.unpack_from("<I", data, offset)
            offset += 4
            tokens.append(data[offset:offset + length].decode("utf-8"))
            offset += length
        counts = np.frombuffer(data, dtype="<u8", count=size, offset=offset)
        offset += 8 * size
        matrix = np.frombuffer(data, dtype="<f8", count=size * dim, offset=offset).reshape(size, dim)
    except (struct.error, ValueError, UnicodeDecodeError) as e:
        raise EmbeddingFileError(f"{path}: truncated or corrupt: {e}") from e

    try:
        vocab = Vocabulary(tokens, counts.tolist())
    except ValueError as e:
        raise EmbeddingFileError(f"{path}: {e}") from e
    return vocab, matrix.astype(np.float64).copy()
