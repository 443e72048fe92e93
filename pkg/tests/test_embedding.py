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
Vocabulary, co-occurrence counting and GloVe embeddings
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.models.context import PAD, TokenSeq
from app.services.embedding_service import (
    EON,
    EON_ID,
    PAD_ID,
    UNK,
    UNK_ID,
    DegenerateCorpus,
    EmbeddingFileError,
    build_cooccurrence,
    build_vocabulary,
    embed_sequence,
    glove_gradients,
    glove_objective,
    init_glove_params,
    load_embeddings,
    nearest_token,
    save_embeddings,
    train_embeddings,
)
from tests.conftest import make_vocab, random_embeddings

pytestmark = pytest.mark.unit


class TestVocabulary:
    """Dense ids with reserved specials"""

    def test_specials_first_then_sorted(self):
        vocab = build_vocabulary([["size", "get", "get"], ["name", PAD, EON]])
        assert vocab.tokens == [PAD, UNK, EON, "get", "name", "size"]
        assert vocab.counts == [0, 0, 0, 2, 1, 1]
        assert (vocab.id(PAD), vocab.id(UNK), vocab.id(EON)) == (PAD_ID, UNK_ID, EON_ID)

    def test_unknown_tokens_map_to_unk(self):
        vocab = make_vocab(["get"])
        assert vocab.id("missing") == UNK_ID
        assert vocab.ids(["get", "missing"]) == [3, UNK_ID]

    def test_min_count_filters(self):
        vocab = build_vocabulary([["get", "get", "rare"]], min_count=2)
        assert "rare" not in vocab
        assert "get" in vocab

    def test_dic_all_holds_eon_and_regular_tokens(self):
        vocab = make_vocab(["get", "size"])
        assert vocab.dic_all == frozenset({EON, "get", "size"})

    def test_fingerprint_tracks_tokens(self):
        assert make_vocab(["a", "b"]).fingerprint() == make_vocab(["b", "a"]).fingerprint()
        assert make_vocab(["a", "b"]).fingerprint() != make_vocab(["a", "c"]).fingerprint()

    @pytest.mark.edge_case
    def test_rejects_missing_specials(self):
        from app.services.embedding_service import Vocabulary

        with pytest.raises(ValueError):
            Vocabulary(["get", "size"])


class TestCooccurrence:
    """Symmetric windowed counts"""

    def test_adjacent_pair(self):
        table = build_cooccurrence([["a", "b"]], window=1)
        assert table["a", "b"] == 1.0
        assert table["b", "a"] == 1.0
        assert len(table) == 2

    def test_distance_weighting(self):
        table = build_cooccurrence([["a", "b", "a"]], window=2)
        assert table["a", "b"] == pytest.approx(2.0)
        assert table["b", "a"] == pytest.approx(2.0)
        assert table["a", "a"] == pytest.approx(0.5)

    def test_pad_is_ignored(self):
        table = build_cooccurrence([["a", PAD, "b", PAD]], window=1)
        assert table["a", "b"] == 1.0
        assert table.tokens() == {"a", "b"}

    @pytest.mark.edge_case
    def test_empty_corpus(self):
        assert len(build_cooccurrence([], window=3)) == 0
        assert len(build_cooccurrence([[]], window=3)) == 0

    @pytest.mark.edge_case
    def test_rejects_zero_window(self):
        with pytest.raises(ValueError):
            build_cooccurrence([["a"]], window=0)

    @given(st.lists(st.lists(st.sampled_from("abcde"), max_size=8), max_size=6), st.integers(1, 4))
    def test_symmetry(self, sequences, window):
        table = build_cooccurrence(sequences, window)
        for (a, b), value in table.counts.items():
            assert table[b, a] == pytest.approx(value)


class TestGlove:
    """GloVe objective, gradients and training"""

    def setup_method(self):
        sequences = [["get", "size", "of", "list"], ["get", "name", "of", "user"], ["set", "name", "of", "user"]]
        self.vocab = build_vocabulary(sequences)
        self.table = build_cooccurrence(sequences, window=2)

    def test_gradients_match_finite_differences(self):
        rows, cols, x = self.table.to_arrays(self.vocab)
        params = init_glove_params(len(self.vocab), 3, np.random.default_rng(1))
        grads = glove_gradients(params, rows, cols, x)
        eps = 1e-6
        for name in ("W", "W_tilde", "b", "b_tilde"):
            flat = params[name].reshape(-1)
            for index in range(0, flat.size, 5):
                original = flat[index]
                flat[index] = original + eps
                plus = glove_objective(params, rows, cols, x)
                flat[index] = original - eps
                minus = glove_objective(params, rows, cols, x)
                flat[index] = original
                numeric = (plus - minus) / (2 * eps)
                assert grads[name].reshape(-1)[index] == pytest.approx(numeric, rel=1e-5, abs=1e-7)

    def test_objective_decreases(self):
        _, history = train_embeddings(self.table, self.vocab, dim=4, epochs=50, seed=3)
        assert len(history) == 50
        assert history[-1] < history[0]

    def test_single_pair_objective_is_monotone(self):
        table = build_cooccurrence([["get", "size"]], window=1)
        vocab = build_vocabulary([["get", "size"]])
        _, history = train_embeddings(table, vocab, dim=2, epochs=500, seed=0)
        assert all(later <= earlier + 1e-12 for earlier, later in zip(history, history[1:]))

    def test_deterministic_for_seed(self):
        first, _ = train_embeddings(self.table, self.vocab, dim=4, epochs=10, seed=7)
        second, _ = train_embeddings(self.table, self.vocab, dim=4, epochs=10, seed=7)
        assert np.array_equal(first, second)

    def test_shape_and_pad_row(self):
        embeddings, _ = train_embeddings(self.table, self.vocab, dim=5, epochs=3)
        assert embeddings.shape == (len(self.vocab), 5)
        assert embeddings.dtype == np.float64
        assert not embeddings[PAD_ID].any()

    @pytest.mark.slow
    def test_cliques_separate(self):
        rng = np.random.default_rng(0)
        left, right = ["alpha", "beta", "gamma"], ["delta", "epsilon", "zeta"]
        sequences = [list(rng.permutation(left)) for _ in range(60)] + [list(rng.permutation(right)) for _ in range(60)]
        vocab = build_vocabulary(sequences)
        embeddings, _ = train_embeddings(build_cooccurrence(sequences, 2), vocab, dim=8, epochs=200, seed=0)

        def cosine(a, b):
            u, v = embeddings[vocab.index[a]], embeddings[vocab.index[b]]
            return float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))

        within = np.mean([cosine(a, b) for group in (left, right) for a in group for b in group if a != b])
        across = np.mean([cosine(a, b) for a in left for b in right])
        assert within > across

    @pytest.mark.edge_case
    def test_degenerate_corpus(self):
        vocab = build_vocabulary([["only"]])
        with pytest.raises(DegenerateCorpus):
            train_embeddings(build_cooccurrence([["only"]], 2), vocab, dim=4)

    @pytest.mark.edge_case
    def test_rejects_tiny_dimension(self):
        with pytest.raises(ValueError):
            train_embeddings(self.table, self.vocab, dim=1)


class TestLookup:
    """embed_sequence and nearest_token"""

    def setup_method(self):
        self.vocab = make_vocab(["get", "name", "set", "size"])
        self.embeddings = random_embeddings(len(self.vocab), 4, seed=5)

    def test_rows_in_order(self):
        vectors = embed_sequence(TokenSeq.of(["size", "get"]), self.embeddings, self.vocab)
        assert np.array_equal(vectors, self.embeddings[[self.vocab.index["size"], self.vocab.index["get"]]])

    def test_pad_and_unknown(self):
        vectors = embed_sequence([PAD, PAD, "held_out"], self.embeddings, self.vocab)
        assert not vectors[:2].any()
        assert np.array_equal(vectors[2], self.embeddings[UNK_ID])

    @pytest.mark.edge_case
    def test_empty_sequence(self):
        assert embed_sequence([], self.embeddings, self.vocab).shape == (0, 4)

    def test_self_nearest(self):
        for token in ("get", "name", "set", "size"):
            assert nearest_token(self.embeddings[self.vocab.index[token]], self.embeddings, self.vocab) == token

    def test_tie_goes_to_lower_index(self):
        embeddings = np.zeros((len(self.vocab), 2))
        embeddings[self.vocab.index["get"]] = [1.0, 0.0]
        embeddings[self.vocab.index["name"]] = [0.0, 1.0]
        embeddings[self.vocab.index["set"]] = [-1.0, 0.0]
        embeddings[self.vocab.index["size"]] = [0.0, -1.0]
        assert nearest_token(np.array([1.0, 1.0]), embeddings, self.vocab) == "get"

    @settings(max_examples=50)
    @given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    def test_matches_exhaustive_scan(self, values):
        vector = np.asarray(values, dtype=np.float64)
        if not np.linalg.norm(vector):
            vector = np.ones(4)
        best, best_score = None, -np.inf
        for index in range(EON_ID + 1, len(self.vocab)):
            row = self.embeddings[index]
            score = row @ vector / (np.linalg.norm(row) * np.linalg.norm(vector))
            if score > best_score + 1e-12:
                best, best_score = self.vocab.tokens[index], score
        assert nearest_token(vector, self.embeddings, self.vocab) == best


class TestEmbeddingFile:
    """Binary embedding checkpoint"""

    def test_save_and_load(self, tmp_path):
        vocab = build_vocabulary([["get", "size", "get"]])
        embeddings = random_embeddings(len(vocab), 3)
        path = tmp_path / "embeddings.bin"
        save_embeddings(path, vocab, embeddings)

        loaded_vocab, loaded = load_embeddings(path)
        assert loaded_vocab.tokens == vocab.tokens
        assert loaded_vocab.counts == vocab.counts
        assert loaded_vocab.fingerprint() == vocab.fingerprint()
        assert np.array_equal(loaded, embeddings)

    def test_layout_header(self, tmp_path):
        vocab = make_vocab(["a"])
        path = tmp_path / "e.bin"
        save_embeddings(path, vocab, random_embeddings(len(vocab), 2))
        data = path.read_bytes()
        assert data[:8] == b"NCEMB\x00\x00\x00"
        assert int.from_bytes(data[8:12], "little") == 1
        assert int.from_bytes(data[12:16], "little") == 4
        assert int.from_bytes(data[16:20], "little") == 2

    @pytest.mark.edge_case
    def test_rejects_foreign_file(self, tmp_path):
        path = tmp_path / "e.bin"
        path.write_bytes(b"not an embedding file")
        with pytest.raises(EmbeddingFileError):
            load_embeddings(path)

    @pytest.mark.edge_case
    def test_rejects_truncated_file(self, tmp_path):
        vocab = make_vocab(["a", "b"])
        path = tmp_path / "e.bin"
        save_embeddings(path, vocab, random_embeddings(len(vocab), 2))
        path.write_bytes(path.read_bytes()[:-9])
        with pytest.raises(EmbeddingFileError):
            load_embeddings(path)

    @pytest.mark.edge_case
    def test_rejects_row_mismatch(self, tmp_path):
        with pytest.raises(ValueError):
            save_embeddings(tmp_path / "e.bin", make_vocab(["a"]), np.zeros((2, 2)))
