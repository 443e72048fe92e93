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


"""
GRU, attention and output-layer scoring of the name model
"""

import math

import numpy as np
import pytest
import torch

from app.models.context import CONTEXT_ORDER, ContextKind
from app.nn.attention import AllMasked, AttentionParams, attend
from app.nn.batching import collate
from app.nn.decoder import DegenerateDistribution, combine, score_copy, score_generation, score_new
from app.nn.gru import DTYPE, DimensionMismatch, GruParams, encode_context, gru_step
from app.nn.model import step_distribution
from app.nn.trainer import train_model
from app.services.embedding_service import EON, EON_ID, PAD_ID, UNK_ID
from tests.conftest import make_bundle, make_model, make_vocab

pytestmark = pytest.mark.unit

I, X, S, E = ContextKind.INTERNAL, ContextKind.INTERACTION, ContextKind.SIBLING, ContextKind.ENCLOSING


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def _initialised_gru(input_size, hidden_size, seed):
    gru = GruParams(input_size, hidden_size)
    gru.reset_parameters(torch.Generator().manual_seed(seed))
    generator = torch.Generator().manual_seed(seed + 1)
    with torch.no_grad():
        for bias in (gru.bias_z, gru.bias_r, gru.bias_h):
            bias.normal_(generator=generator)
    return gru


def _brute_force_step(model, batch, memory, state, prev):
    """decode_step for row 0 spelled out token by token"""
    vocab_size = model.vocab_size
    with torch.no_grad():
        context, _ = attend(state, memory.states, memory.mask, model.attention)
        e_prev = model.embeddings[torch.tensor([prev])]
        new_state = gru_step(torch.cat([context, e_prev], 1), state, model.decoder)
        logits = model.gen(torch.cat([new_state, context, e_prev], 1))[0].tolist()
        copy_logits = (torch.tanh(model.copy(memory.states))[0] @ new_state[0]).tolist()

    valid = [j for j in range(memory.mask.shape[1]) if memory.mask[0, j]]
    z = sum(math.exp(logits[y]) for y in range(1, vocab_size)) + sum(math.exp(copy_logits[j]) for j in valid)
    weights = model.context_weights.tolist()
    w_non = float(model.noncopy_weight)
    length = memory.context_length

    raw = [0.0] * batch.extended_size
    for y in range(1, batch.extended_size):
        if y >= vocab_size + len(batch.oov[0]):
            continue
        value = math.exp(logits[y]) / z if y < vocab_size else 0.0
        for i in range(len(model.contexts)):
            for j in range(i * length, (i + 1) * length):
                if j in valid and int(memory.copy_ids[0, j]) == y:
                    value += weights[i] * math.exp(copy_logits[j]) / z
        noncopy = float(model.noncopy_table[prev, y]) if y < vocab_size else 1.0
        raw[y] = max(value + w_non * noncopy, 0.0)
    total = sum(raw)
    return [r / total for r in raw]


class TestGru:
    """Recurrence equations"""

    def test_all_zero_step(self):
        gru = GruParams(3, 2)
        with torch.no_grad():
            for param in gru.parameters():
                param.zero_()
        h = gru_step(torch.zeros(3, dtype=DTYPE), torch.zeros(2, dtype=DTYPE), gru)
        assert torch.equal(h, torch.zeros(2, dtype=DTYPE))

    def test_matches_straight_line_equations(self):
        gru = _initialised_gru(3, 4, seed=2)
        rng = np.random.default_rng(0)
        v, h_prev = rng.normal(size=3), rng.normal(size=4)
        p = {name: param.detach().numpy() for name, param in gru.named_parameters()}

        z = _sigmoid(p["W_z"] @ v + p["U_z"] @ h_prev + p["bias_z"])
        r = _sigmoid(p["W_r"] @ v + p["U_r"] @ h_prev + p["bias_r"])
        n = np.tanh(p["W"] @ v + r * (p["U"] @ h_prev) + p["bias_h"])
        expected = z * h_prev + (1 - z) * n

        actual = gru_step(torch.from_numpy(v), torch.from_numpy(h_prev), gru).detach().numpy()
        np.testing.assert_allclose(actual, expected, rtol=0, atol=1e-12)

    def test_batched_rows_are_independent(self):
        gru = _initialised_gru(2, 3, seed=4)
        v = torch.randn(5, 2, dtype=DTYPE, generator=torch.Generator().manual_seed(0))
        h = torch.randn(5, 3, dtype=DTYPE, generator=torch.Generator().manual_seed(1))
        batched = gru_step(v, h, gru)
        for row in range(5):
            assert torch.allclose(batched[row], gru_step(v[row], h[row], gru), atol=1e-14)

    @pytest.mark.edge_case
    def test_dimension_mismatch(self):
        gru = GruParams(3, 2)
        with pytest.raises(DimensionMismatch):
            gru_step(torch.zeros(4, dtype=DTYPE), torch.zeros(2, dtype=DTYPE), gru)
        with pytest.raises(DimensionMismatch):
            gru_step(torch.zeros(3, dtype=DTYPE), torch.zeros(5, dtype=DTYPE), gru)


class TestEncodeContext:
    """Padded sequence encoding"""

    def setup_method(self):
        self.gru = _initialised_gru(2, 3, seed=7)

    def test_single_token(self):
        vectors = torch.randn(1, 1, 2, dtype=DTYPE, generator=torch.Generator().manual_seed(3))
        states, last = encode_context(vectors, torch.ones(1, 1, dtype=torch.bool), self.gru)
        expected = gru_step(vectors[0, 0], torch.zeros(3, dtype=DTYPE), self.gru)
        assert states.shape == (1, 1, 3)
        assert torch.allclose(states[0, 0], expected, atol=1e-14)
        assert torch.allclose(last[0], expected, atol=1e-14)

    def test_last_state_skips_padding(self):
        vectors = torch.randn(2, 4, 2, dtype=DTYPE, generator=torch.Generator().manual_seed(5))
        mask = torch.tensor([[True, True, False, False], [True, True, True, True]])
        states, last = encode_context(vectors, mask, self.gru)
        assert torch.equal(last[0], states[0, 1])
        assert torch.equal(last[1], states[1, 3])

    @pytest.mark.edge_case
    def test_all_padding_row(self):
        vectors = torch.zeros(1, 3, 2, dtype=DTYPE)
        _, last = encode_context(vectors, torch.zeros(1, 3, dtype=torch.bool), self.gru)
        assert torch.equal(last, torch.zeros(1, 3, dtype=DTYPE))


class TestAttention:
    """Softmax weights over pooled memory"""

    def setup_method(self):
        self.params = AttentionParams(3, 3, 4)
        self.params.reset_parameters(torch.Generator().manual_seed(0))
        generator = torch.Generator().manual_seed(1)
        self.state = torch.randn(2, 3, dtype=DTYPE, generator=generator)
        self.memory = torch.randn(2, 5, 3, dtype=DTYPE, generator=generator)

    def test_single_unmasked_position(self):
        mask = torch.tensor([[False, False, True, False, False]] * 2)
        context, alpha = attend(self.state, self.memory, mask, self.params)
        assert torch.equal(alpha, mask.to(DTYPE))
        assert torch.allclose(context, self.memory[:, 2], atol=1e-14)

    def test_identical_states_share_weight(self):
        memory = self.memory[:, :1].expand(-1, 4, -1).contiguous()
        _, alpha = attend(self.state, memory, torch.ones(2, 4, dtype=torch.bool), self.params)
        assert torch.allclose(alpha, torch.full((2, 4), 0.25, dtype=DTYPE), atol=1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_brute_force(self, seed):
        generator = torch.Generator().manual_seed(seed)
        p = AttentionParams(3, 3, 4)
        p.reset_parameters(generator)
        state = torch.randn(2, 3, dtype=DTYPE, generator=generator)
        memory = torch.randn(2, 5, 3, dtype=DTYPE, generator=generator)
        mask = torch.rand(2, 5, generator=generator) < 0.6
        mask[:, 0] = True
        context, alpha = attend(state, memory, mask, p)
        for row in range(2):
            scores = []
            for j in range(5):
                hidden = torch.tanh(p.W_s @ state[row] + p.W_h @ memory[row, j] + p.b)
                scores.append(float(p.v @ hidden))
            valid = [j for j in range(5) if mask[row, j]]
            top = max(scores[j] for j in valid)
            weights = {j: math.exp(scores[j] - top) for j in valid}
            total = sum(weights.values())
            expected = torch.zeros(3, dtype=DTYPE)
            for j in valid:
                assert float(alpha[row, j]) == pytest.approx(weights[j] / total, abs=1e-12)
                expected = expected + weights[j] / total * memory[row, j]
            assert torch.allclose(context[row], expected, atol=1e-12)
            assert float(alpha[row].sum()) == pytest.approx(1.0, abs=1e-9)
            assert not alpha[row, ~mask[row]].any()

    @pytest.mark.edge_case
    def test_all_masked(self):
        mask = torch.tensor([[True] * 5, [False] * 5])
        with pytest.raises(AllMasked):
            attend(self.state, self.memory, mask, self.params)


class TestScoringFunctions:
    """Generation, copy and combination terms"""

    def test_generation_excludes_pad_and_extended(self):
        logits = torch.tensor([[0.5, 1.0, -1.0, 2.0]], dtype=DTYPE)
        shift = torch.tensor([[2.0]], dtype=DTYPE)
        scores = score_generation(logits, shift, size=6)
        assert scores.shape == (1, 6)
        assert scores[0, PAD_ID] == 0
        assert not scores[0, 4:].any()
        for candidate in (1, 2, 3):
            assert float(scores[0, candidate]) == pytest.approx(math.exp(float(logits[0, candidate]) - 2.0))

    def test_copy_sums_over_positions(self):
        logits = torch.tensor([[0.3, 0.3, -0.2]], dtype=DTYPE)
        copy_ids = torch.tensor([[4, 4, 5]])
        mask = torch.tensor([[True, True, True]])
        scores = score_copy(logits, mask, copy_ids, size=7, shift=torch.zeros(1, 1, dtype=DTYPE))
        assert float(scores[0, 4]) == pytest.approx(2 * math.exp(0.3))
        assert float(scores[0, 5]) == pytest.approx(math.exp(-0.2))
        assert float(scores[0, 3]) == 0.0

    def test_copy_ignores_masked_positions(self):
        logits = torch.tensor([[0.3, 0.9]], dtype=DTYPE)
        scores = score_copy(logits, torch.tensor([[True, False]]), torch.tensor([[4, PAD_ID]]), 6,
                            torch.zeros(1, 1, dtype=DTYPE))
        assert float(scores[0, PAD_ID]) == 0.0

    def test_score_new_arithmetic(self):
        combined = score_new([torch.tensor([0.3], dtype=DTYPE)], torch.tensor([0.4], dtype=DTYPE),
                             torch.tensor([1.0], dtype=DTYPE), torch.tensor(-0.5, dtype=DTYPE))
        assert float(combined[0]) == pytest.approx(0.1)

    def test_score_new_without_noncopy(self):
        copies = [torch.tensor([0.2, 0.1], dtype=DTYPE), torch.tensor([0.05, 0.3], dtype=DTYPE)]
        weights = torch.tensor([0.7, 1.5], dtype=DTYPE)
        combined = score_new(copies, torch.zeros(2, dtype=DTYPE), weights, torch.tensor(-2.0, dtype=DTYPE))
        assert torch.allclose(combined, 0.7 * copies[0] + 1.5 * copies[1])

    def test_combine_clamps_negative_scores(self):
        p_gen = torch.tensor([[0.0, 0.2, 0.3, 0.5]], dtype=DTYPE)
        new = torch.tensor([[0.0, -0.4, 0.1, 0.0]], dtype=DTYPE)
        mask = torch.tensor([[False, True, True, True]])
        probs, degenerate = combine(p_gen, new, mask, vocab_size=4)
        assert probs[0, 1] == 0
        assert float(probs[0, 2]) == pytest.approx(0.4 / 0.9)
        assert float(probs.sum()) == pytest.approx(1.0)
        assert not degenerate.any()

    @pytest.mark.edge_case
    def test_combine_degenerate_row(self):
        p_gen = torch.tensor([[0.0, 0.2, 0.3, 0.5]], dtype=DTYPE)
        new = torch.full((1, 4), -1.0, dtype=DTYPE)
        mask = torch.ones(1, 4, dtype=torch.bool)
        probs, degenerate = combine(p_gen, new, mask, vocab_size=4)
        assert degenerate.tolist() == [True]
        assert probs[0].tolist() == pytest.approx([0.0, 0.0, 0.5, 0.5])
        with pytest.raises(DegenerateDistribution):
            combine(p_gen, new, mask, vocab_size=4, strict=True)


class TestDecodeStep:
    """Distribution contracts of one decoder step"""

    def setup_method(self):
        self.vocab = make_vocab(["get", "name", "set", "size"])
        self.bundle = make_bundle(internal=["get", "size", "zzz"], enclosing=["set", "name", "zzz", "qqq"])

    def _step(self, model, bundle=None):
        batch = collate([bundle or self.bundle], self.vocab, l_max=6)
        memory = model.encode(batch)
        y_prev = torch.full((1,), EON_ID, dtype=torch.long)
        return batch, model.decode_step(memory, memory.init_state, y_prev)

    def test_distribution_contract(self):
        model = make_model(self.vocab, contexts=[I, X, S, E], names=[["get", "size"]])
        batch, step = self._step(model)
        assert step.probs.shape == (1, batch.extended_size)
        assert float(step.probs.sum()) == pytest.approx(1.0, abs=1e-9)
        assert bool((step.probs >= 0).all())
        assert step.probs[0, PAD_ID] == 0
        assert float(step.attention.sum()) == pytest.approx(1.0, abs=1e-9)
        assert not step.degenerate.any()

    def test_matches_brute_force_scores(self):
        model = make_model(self.vocab, contexts=[I, E], names=[["get", "size"], ["set", "name"]], noncopy_init=-3.0)
        batch, step = self._step(model)
        memory = model.encode(batch)
        expected = _brute_force_step(model, batch, memory, memory.init_state, EON_ID)
        np.testing.assert_allclose(step.probs[0].detach().numpy(), expected, rtol=1e-10, atol=1e-12)

    @pytest.mark.parametrize("seed", range(25))
    def test_two_token_vocabularies_match_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        vocab = make_vocab(["alpha", "beta"])
        kinds = [kind for kind in CONTEXT_ORDER if rng.random() < 0.5] or [I]
        pool = ["alpha", "beta", "zzz", "qqq"]
        bundle = make_bundle(**{kind.value: rng.choice(pool, size=int(rng.integers(1, 4))).tolist()
                                for kind in CONTEXT_ORDER})
        names = [rng.choice(["alpha", "beta"], size=int(rng.integers(1, 3))).tolist() for _ in range(3)]
        model = make_model(vocab, dim=3, hidden=3, contexts=kinds, names=names, seed=seed,
                           noncopy_init=float(rng.uniform(-8.0, -3.0)))
        batch = collate([bundle], vocab, l_max=3)
        memory = model.encode(batch)
        generator = torch.Generator().manual_seed(seed)
        for prev in (EON_ID, vocab.index["alpha"], vocab.index["beta"]):
            state = torch.randn(1, 3, dtype=DTYPE, generator=generator)
            with torch.no_grad():
                step = model.decode_step(memory, state, torch.tensor([prev]))
            expected = _brute_force_step(model, batch, memory, state, prev)
            np.testing.assert_allclose(step.probs[0].numpy(), expected, rtol=0, atol=1e-12)

    def test_copy_reaches_unknown_tokens(self):
        with_copy = make_model(self.vocab, contexts=[I, E])
        batch, step = self._step(with_copy)
        zzz = len(self.vocab) + batch.oov[0].index("zzz")
        assert float(step.probs[0, zzz]) > 0

        without_copy = make_model(self.vocab, contexts=[I, E], use_copy=False)
        _, step = self._step(without_copy)
        assert float(step.probs[0, zzz]) == 0.0
        assert step.copies == []

    def test_generation_only_reduces_to_softmax(self):
        model = make_model(self.vocab, contexts=[I], use_copy=False, use_noncopy=False)
        _, step = self._step(model)
        assert torch.allclose(step.probs, step.generation, atol=1e-15)
        assert float(step.generation.sum()) == pytest.approx(1.0, abs=1e-12)
        assert not step.noncopy.any()

    def test_noncopy_pushes_unseen_bigram_down(self):
        model = make_model(self.vocab, contexts=[I], names=[["get", "name"]], use_copy=False)
        get, size = self.vocab.index["get"], self.vocab.index["size"]
        with torch.no_grad():
            model.gen.weight[size] = model.gen.weight[get]
            model.gen.bias[size] = model.gen.bias[get]
        _, step = self._step(model, make_bundle(internal=["set"]))
        assert float(step.generation[0, get]) == pytest.approx(float(step.generation[0, size]))
        assert float(step.noncopy[0, get]) < float(step.noncopy[0, size])
        assert float(step.probs[0, get]) > float(step.probs[0, size])

    @pytest.mark.parametrize("theta", [-20.0, -1.0, 0.0, 3.0])
    def test_noncopy_weight_is_negative(self, theta):
        model = make_model(self.vocab, contexts=[I], noncopy_init=theta)
        assert float(model.noncopy_weight) < 0

    def test_frozen_weights_are_not_parameters(self):
        model = make_model(self.vocab, contexts=[I, E], learn_context_weights=False)
        assert model.context_weights.tolist() == [0.5, 0.5]
        assert model.parameter_groups()["context_weights"] == []
        assert "embeddings" not in model.state_dict()

    def test_step_distribution_view(self):
        model = make_model(self.vocab, contexts=[I, E], names=[["get", "size"]])
        batch, step = self._step(model)
        view = step_distribution(model, step, batch, self.vocab)
        assert view.candidates[0] == self.vocab.tokens[UNK_ID]
        assert view.candidates[-2:] == batch.oov[0]
        assert sum(view.probabilities) == pytest.approx(1.0, abs=1e-9)
        assert set(view.copy_scores) == {"internal", "enclosing"}
        assert view.best() == view.candidates[int(np.argmax(view.probabilities))]
        assert view.probability("absent") == 0.0


class TestModelDecoding:
    """Loss and greedy decoding"""

    def setup_method(self):
        self.vocab = make_vocab(["get", "name", "set", "size"])
        self.bundles = [make_bundle("A", internal=["get", "size"]), make_bundle("B", internal=["set", "name", "zzz"])]

    def test_loss_is_positive_and_finite(self):
        model = make_model(self.vocab)
        batch = collate(self.bundles, self.vocab, 4, [["get", "size"], ["set", "zzz"]])
        loss = model.loss(batch)
        assert loss.dtype == DTYPE
        assert math.isfinite(float(loss)) and float(loss) > 0

    def test_loss_needs_targets(self):
        model = make_model(self.vocab)
        with pytest.raises(ValueError):
            model.loss(collate(self.bundles, self.vocab, 4))

    def test_greedy_decode_shapes(self):
        model = make_model(self.vocab)
        outputs = model.greedy_decode(collate(self.bundles, self.vocab, 4), max_len=3)
        assert len(outputs) == 2
        for ids in outputs:
            assert len(ids) <= 3
            assert EON_ID not in ids
            assert PAD_ID not in ids


class TestRandomisedContracts:
    """Distribution contracts and the non-copy ranking over many random instances"""

    POOL = ["get", "set", "size", "name", "value", "list", "item"]

    def _random_model(self, rng, seed, **switches):
        tokens = sorted(rng.choice(self.POOL, size=int(rng.integers(2, len(self.POOL) + 1)), replace=False).tolist())
        vocab = make_vocab(tokens)
        kinds = [kind for kind in CONTEXT_ORDER if rng.random() < 0.5] or [I]
        names = [rng.choice(tokens, size=int(rng.integers(1, 4))).tolist() for _ in range(int(rng.integers(0, 6)))]
        model = make_model(vocab, dim=int(rng.integers(2, 6)), hidden=int(rng.integers(2, 6)), contexts=kinds,
                           names=names, seed=seed, **switches)
        return vocab, tokens, model

    @pytest.mark.parametrize("seed", range(20))
    def test_ten_thousand_steps(self, seed):
        """20 models x 50 methods x 10 steps"""
        rng = np.random.default_rng(seed)
        vocab, tokens, model = self._random_model(
            rng, seed, noncopy_init=float(rng.uniform(-8.0, 2.0)),
            use_copy=bool(rng.random() < 0.8), use_noncopy=bool(rng.random() < 0.8),
        )
        pool = tokens + ["zzz", "qqq", "www"]
        bundles = [
            make_bundle(f"M{i}", **{kind.value: rng.choice(pool, size=int(rng.integers(1, 6))).tolist()
                                    for kind in CONTEXT_ORDER})
            for i in range(50)
        ]
        batch = collate(bundles, vocab, l_max=5)
        generator = torch.Generator().manual_seed(seed)
        steps = 0
        with torch.no_grad():
            memory = model.encode(batch)
            state = memory.init_state
            y_prev = torch.full((50,), EON_ID, dtype=torch.long)
            for _ in range(10):
                step = model.decode_step(memory, state, y_prev)
                assert bool((step.probs >= 0).all())
                assert float((step.probs.sum(dim=1) - 1.0).abs().max()) <= 1e-9
                assert float((step.attention.sum(dim=1) - 1.0).abs().max()) <= 1e-9
                assert not step.probs[:, PAD_ID].any()
                state = step.state
                y_prev = torch.multinomial(step.probs, 1, generator=generator).squeeze(1)
                steps += len(bundles)
        assert steps == 500

    def test_noncopy_weight_stays_negative_while_training(self):
        vocab = make_vocab(["get", "name", "set", "size"])
        names = [["get", "size"], ["set", "name"], ["get", "name"]]
        bundles = [make_bundle(str(i), internal=name, enclosing=["size"]) for i, name in enumerate(names)]
        batch = collate(bundles, vocab, l_max=3, names=names)
        model = make_model(vocab, contexts=[I, E], names=names, noncopy_init=-4.0)
        weights = []
        train_model(model, batch, epochs=40, learning_rate=0.5, batch_size=1,
                    on_epoch=lambda epoch, loss: weights.append(float(model.noncopy_weight)))
        assert len(weights) == 40
        assert all(w < 0 for w in weights)

    def test_seen_bigram_outranks_unseen_in_500_constructions(self):
        rng = np.random.default_rng(2024)
        failures = []
        for case in range(500):
            tokens = sorted(rng.choice(self.POOL, size=int(rng.integers(3, len(self.POOL) + 1)), replace=False).tolist())
            vocab = make_vocab(tokens)
            seen, unseen = rng.choice(tokens, size=2, replace=False).tolist()
            prev = EON if rng.random() < 0.3 else str(rng.choice([t for t in tokens if t not in (seen, unseen)]))

            def follows(name):
                framed = [EON] + name + [EON]
                return any(a == prev and b == unseen for a, b in zip(framed, framed[1:]))

            names = [rng.choice(tokens, size=int(rng.integers(1, 4))).tolist() for _ in range(int(rng.integers(0, 6)))]
            names = [name for name in names if not follows(name)]
            names.append([seen] if prev == EON else [prev, seen])

            others = [t for t in tokens if t not in (seen, unseen)] + ["zzz"]
            kinds = [kind for kind in CONTEXT_ORDER if rng.random() < 0.5] or [I]
            model = make_model(vocab, dim=3, hidden=3, contexts=kinds, names=names, seed=case,
                               noncopy_init=float(rng.uniform(-8.0, -2.0)), use_copy=bool(rng.random() < 0.5))
            a, b = vocab.index[seen], vocab.index[unseen]
            with torch.no_grad():
                model.gen.weight[a] = 0.0
                model.gen.weight[b] = 0.0
                model.gen.bias[a] = 6.0
                model.gen.bias[b] = 6.0
                bundle = make_bundle(**{kind.value: rng.choice(others, size=int(rng.integers(1, 4))).tolist()
                                        for kind in CONTEXT_ORDER})
                batch = collate([bundle], vocab, l_max=3)
                memory = model.encode(batch)
                step = model.decode_step(memory, memory.init_state, torch.tensor([vocab.index[prev]]))
            assert float(step.generation[0, a]) == float(step.generation[0, b])
            assert all(float(c[0, a]) == float(c[0, b]) == 0.0 for c in step.copies)
            if not float(step.probs[0, a]) > float(step.probs[0, b]):
                failures.append((case, prev, seen, unseen))
        assert failures == []
