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

"""Context encoder-decoder with copy and non-copy output terms"""

from typing import Dict, List, NamedTuple, Tuple, Union

import numpy as np
import structlog
import torch
import torch.nn.functional as F
from pydantic import BaseModel, ConfigDict
from torch import Tensor, nn

from config import defaults
from app.models.context import ContextKind
from app.models.decoding import StepDistribution
from app.nn.attention import AttentionParams, attend
from app.nn.batching import ContextBatch
from app.nn.decoder import (
    combine,
    copy_logits,
    generation_mask,
    score_copy,
    score_generation,
    score_new,
    training_vocabulary_mask,
)
from app.nn.gru import DTYPE, GruParams, encode_context, gru_step
from app.services.embedding_service import EON_ID, UNK_ID, Vocabulary

logger = structlog.get_logger(__name__)

MIN_PROBABILITY = 1e-12


class ModelConfig(BaseModel):
    """Shape and switches of a NameModel"""
    model_config = ConfigDict(frozen=True)

    vocab_size: int
    embedding_dim: int
    hidden_size: int = defaults.HIDDEN_SIZE
    contexts: List[ContextKind]
    use_copy: bool = True
    use_noncopy: bool = True
    learn_context_weights: bool = True
    noncopy_init: float = defaults.NONCOPY_INIT


class Memory(NamedTuple):
    """Encoded contexts of a batch, ready for decoding"""
    states: Tensor          # (B, N, h), contexts concatenated
    projected: Tensor       # (B, N, h) tanh(W_c h_j)
    mask: Tensor            # (B, N)
    copy_ids: Tensor        # (B, N)
    init_state: Tensor      # (B, h)
    candidate_mask: Tensor  # (B, S)
    context_length: int

    @property
    def extended_size(self) -> int:
        return self.candidate_mask.shape[1]

    def select(self, index: Tensor) -> "Memory":
        return Memory(
            self.states.index_select(0, index),
            self.projected.index_select(0, index),
            self.mask.index_select(0, index),
            self.copy_ids.index_select(0, index),
            self.init_state.index_select(0, index),
            self.candidate_mask.index_select(0, index),
            self.context_length,
        )


class StepOutput(NamedTuple):
    probs: Tensor               # (B, S)
    state: Tensor               # (B, h)
    generation: Tensor          # (B, S) p_GEN
    copies: List[Tensor]        # per active context, (B, S) p_i
    noncopy: Tensor             # (B, S) p_NON
    degenerate: Tensor          # (B,)
    attention: Tensor           # (B, N)


def _as_tensor(values: Union[np.ndarray, Tensor]) -> Tensor:
    if isinstance(values, Tensor):
        return values.detach().to(DTYPE).clone()
    return torch.from_numpy(np.ascontiguousarray(values, dtype=np.float64)).clone()


class NameModel(nn.Module):
    """Encoders per context, shared attention and a decoder emitting name sub-tokens.

    Embeddings and the non-copy table are frozen buffers rebuilt from the
    embedding checkpoint and bigram statistics, so they stay out of the
    state dict.
    """

    def __init__(self, config: ModelConfig, embeddings: Union[np.ndarray, Tensor],
                 noncopy: Union[np.ndarray, Tensor], seed: int = defaults.SEED):
        super().__init__()
        self.config = config
        self.contexts = list(config.contexts)
        vocab_size, dim, hidden = config.vocab_size, config.embedding_dim, config.hidden_size

        embeddings = _as_tensor(embeddings)
        noncopy = _as_tensor(noncopy)
        if embeddings.shape != (vocab_size, dim):
            raise ValueError(f"Embeddings must be {vocab_size}x{dim}, got {tuple(embeddings.shape)}")
        if noncopy.shape != (vocab_size, vocab_size):
            raise ValueError(f"Non-copy table must be {vocab_size}x{vocab_size}")
        self.register_buffer("embeddings", embeddings, persistent=False)
        self.register_buffer("noncopy_table", noncopy, persistent=False)

        self.encoders = nn.ModuleDict({kind.value: GruParams(dim, hidden) for kind in self.contexts})
        self.decoder = GruParams(hidden + dim, hidden)
        self.attention = AttentionParams(hidden, hidden, hidden)
        self.gen = nn.Linear(2 * hidden + dim, vocab_size, dtype=DTYPE)
        self.copy = nn.Linear(hidden, hidden, bias=False, dtype=DTYPE)

        count = len(self.contexts)
        if config.learn_context_weights:
            self.context_weights = nn.Parameter(torch.ones(count, dtype=DTYPE))
        else:
            self.register_buffer("context_weights", torch.full((count,), 1.0 / count, dtype=DTYPE))
        self.theta_noncopy = nn.Parameter(torch.tensor(config.noncopy_init, dtype=DTYPE))

        self.reset_parameters(seed)

    def reset_parameters(self, seed: int) -> None:
        generator = torch.Generator().manual_seed(seed)
        for encoder in self.encoders.values():
            encoder.reset_parameters(generator)
        self.decoder.reset_parameters(generator)
        self.attention.reset_parameters(generator)
        bound = 1.0 / np.sqrt(self.gen.in_features)
        with torch.no_grad():
            self.gen.weight.uniform_(-bound, bound, generator=generator)
            self.gen.bias.zero_()
            self.copy.weight.uniform_(-bound, bound, generator=generator)

    @property
    def vocab_size(self) -> int:
        return self.config.vocab_size

    @property
    def noncopy_weight(self) -> Tensor:
        """W_NON = -softplus(theta_NON), negative for every theta"""
        return -F.softplus(self.theta_noncopy)

    def parameter_groups(self) -> Dict[str, List[Tuple[str, nn.Parameter]]]:
        """Trainable parameters by role"""
        groups: Dict[str, List[Tuple[str, nn.Parameter]]] = {
            "encoders": [], "decoder": [], "attention": [], "gen": [], "copy": [],
            "context_weights": [], "noncopy": [],
        }
        prefixes = {"encoders.": "encoders", "decoder.": "decoder", "attention.": "attention",
                    "gen.": "gen", "copy.": "copy", "context_weights": "context_weights",
                    "theta_noncopy": "noncopy"}
        for name, param in self.named_parameters():
            for prefix, group in prefixes.items():
                if name.startswith(prefix):
                    groups[group].append((name, param))
                    break
        return groups

    # Encoding

    def encode(self, batch: ContextBatch) -> Memory:
        states, masks, copy_ids, lasts, present = [], [], [], [], []
        for kind in self.contexts:
            mask = batch.mask[kind]
            vectors = self.embeddings[batch.ids[kind]]
            context_states, last = encode_context(vectors, mask, self.encoders[kind.value])
            states.append(context_states)
            masks.append(mask)
            copy_ids.append(batch.copy_ids[kind])
            lasts.append(last)
            present.append(mask.any(dim=1))

        states = torch.cat(states, dim=1)
        present = torch.stack(present, dim=1).to(DTYPE)  # (B, I)
        init = (torch.stack(lasts, dim=1) * present.unsqueeze(2)).sum(dim=1)
        init = init / present.sum(dim=1, keepdim=True).clamp(min=1.0)

        size = batch.extended_size
        candidate_mask = generation_mask(self.vocab_size, size).unsqueeze(0).repeat(batch.size, 1)
        for row, unknown in enumerate(batch.oov):
            candidate_mask[row, self.vocab_size:self.vocab_size + len(unknown)] = True

        return Memory(
            states=states,
            projected=torch.tanh(self.copy(states)),
            mask=torch.cat(masks, dim=1),
            copy_ids=torch.cat(copy_ids, dim=1),
            init_state=init,
            candidate_mask=candidate_mask,
            context_length=batch.mask[self.contexts[0]].shape[1],
        )

    # Decoding

    def noncopy_rows(self, y_prev: Tensor, size: int) -> Tensor:
        """p_NON(y_prev, y) for every candidate y -> (B, S)"""
        in_vocab = y_prev < self.vocab_size
        rows = self.noncopy_table[torch.where(in_vocab, y_prev, torch.full_like(y_prev, UNK_ID))]
        prev_seen = (in_vocab & (y_prev >= EON_ID)).to(DTYPE).unsqueeze(1)
        extended = prev_seen.expand(-1, size - self.vocab_size)
        return torch.cat([rows, extended], dim=1)

    def decode_step(self, memory: Memory, state: Tensor, y_prev: Tensor, strict: bool = False) -> StepOutput:
        """One decoder step from state h'_{t-1} and previous token ids (B,)"""
        context, alpha = attend(state, memory.states, memory.mask, self.attention)
        prev = torch.where(y_prev < self.vocab_size, y_prev, torch.full_like(y_prev, UNK_ID))
        e_prev = self.embeddings[prev]
        new_state = gru_step(torch.cat([context, e_prev], dim=1), state, self.decoder)

        logits = self.gen(torch.cat([new_state, context, e_prev], dim=1))
        valid = generation_mask(self.vocab_size, self.vocab_size)
        shift = logits.masked_fill(~valid, float("-inf")).amax(dim=1)

        size = memory.extended_size
        copy_scores: List[Tensor] = []
        if self.config.use_copy:
            cpy = copy_logits(memory.projected, new_state)
            shift = torch.maximum(shift, cpy.masked_fill(~memory.mask, float("-inf")).amax(dim=1))
        shift = shift.detach().unsqueeze(1)

        gen_scores = score_generation(logits, shift, size)
        total = gen_scores.sum(dim=1, keepdim=True)
        if self.config.use_copy:
            length = memory.context_length
            for i in range(len(self.contexts)):
                block = slice(i * length, (i + 1) * length)
                scores = score_copy(cpy[:, block], memory.mask[:, block], memory.copy_ids[:, block], size, shift)
                copy_scores.append(scores)
                total = total + scores.sum(dim=1, keepdim=True)

        p_gen = gen_scores / total
        p_copy = [scores / total for scores in copy_scores]
        noncopy = self.noncopy_rows(y_prev, size) if self.config.use_noncopy else p_gen.new_zeros(p_gen.shape)

        new = score_new(p_copy, noncopy, self.context_weights, self.noncopy_weight)
        probs, degenerate = combine(p_gen, new, memory.candidate_mask, self.vocab_size, strict)
        if bool(degenerate.any()):
            logger.warning("Degenerate step distribution", rows=int(degenerate.sum()))
        return StepOutput(probs, new_state, p_gen, p_copy, noncopy, degenerate, alpha)

    def loss(self, batch: ContextBatch) -> Tensor:
        """Mean negative log-probability of the gold tokens under teacher forcing"""
        if batch.targets is None:
            raise ValueError("Batch carries no targets")
        memory = self.encode(batch)
        state = memory.init_state
        y_prev = torch.full((batch.size,), EON_ID, dtype=torch.long)
        total = state.new_zeros(())
        for t in range(batch.targets.shape[1]):
            step = self.decode_step(memory, state, y_prev)
            gold = batch.targets[:, t]
            p_gold = step.probs.gather(1, gold.unsqueeze(1)).squeeze(1).clamp(min=MIN_PROBABILITY)
            total = total - (torch.log(p_gold) * batch.target_mask[:, t]).sum()
            state, y_prev = step.state, gold
        return total / batch.target_mask.sum()

    @torch.no_grad()
    def greedy_decode(self, batch: ContextBatch, max_len: int) -> List[List[int]]:
        """Argmax decoding per row; sequences exclude the terminating EON"""
        memory = self.encode(batch)
        state = memory.init_state
        y_prev = torch.full((batch.size,), EON_ID, dtype=torch.long)
        outputs: List[List[int]] = [[] for _ in range(batch.size)]
        done = [False] * batch.size
        for _ in range(max_len):
            step = self.decode_step(memory, state, y_prev)
            y_prev = step.probs.argmax(dim=1)
            state = step.state
            for row, token in enumerate(y_prev.tolist()):
                if done[row]:
                    continue
                if token == EON_ID:
                    done[row] = True
                else:
                    outputs[row].append(token)
            if all(done):
                break
        return outputs


def step_distribution(model: NameModel, step: StepOutput, batch: ContextBatch, vocab: Vocabulary,
                      row: int = 0) -> StepDistribution:
    """Readable view of one row of a decoder step, PAD left out"""
    size = step.probs.shape[1]
    real = list(range(1, batch.vocab_size)) + list(range(batch.vocab_size, batch.vocab_size + len(batch.oov[row])))
    real = [candidate for candidate in real if candidate < size]

    def values(tensor: Tensor) -> List[float]:
        return [float(tensor[row, candidate]) for candidate in real]

    return StepDistribution(
        candidates=[batch.candidate_token(row, candidate, vocab) for candidate in real],
        probabilities=values(step.probs),
        generation=values(step.generation),
        copy_scores={kind.value: values(scores) for kind, scores in zip(model.contexts, step.copies)},
        noncopy=values(step.noncopy),
        degenerate=bool(step.degenerate[row]),
    )
