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
Shared helpers and fixtures for the namecheck test suite
"""

from pathlib import Path
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
import pytest

from app.config import RunConfig
from app.models.context import CONTEXT_ORDER, ContextBundle, ContextKind, ContextMode, TokenSeq
from app.models.corpus import CallGraph, Corpus
from app.nn.model import ModelConfig, NameModel
from app.services.bigram_stats import build_bigram_stats, noncopy_table
from app.services.call_graph import build_call_graph
from app.services.embedding_service import SPECIALS, PAD_ID, Vocabulary
from app.services.java_parser import java_parser

FIXTURES = Path(__file__).parent / "fixtures" / "java"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def parse_fixture(name: str):
    return java_parser.parse_source(fixture_text(name), name)


def index_sources(sources: Dict[str, str]) -> Tuple[Corpus, CallGraph]:
    """Parse in-memory files in name order and build the call graph"""
    classes, methods = [], []
    for file_name in sorted(sources):
        parsed = java_parser.parse_source(sources[file_name], file_name)
        classes += parsed.classes
        methods += parsed.methods
    corpus = Corpus(classes, methods)
    graph, _ = build_call_graph(corpus)
    return corpus, graph


def index_fixtures(*names: str) -> Tuple[Corpus, CallGraph]:
    return index_sources({name: fixture_text(name) for name in names})


def write_sources(root: Path, sources: Dict[str, str]) -> Path:
    root.mkdir(parents=True, exist_ok=True)
    for file_name, text in sources.items():
        path = root / file_name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return root


def make_vocab(tokens: Iterable[str]) -> Vocabulary:
    return Vocabulary(list(SPECIALS) + sorted(set(tokens)))


def random_embeddings(size: int, dim: int, seed: int = 0) -> np.ndarray:
    embeddings = np.random.default_rng(seed).normal(size=(size, dim))
    embeddings[PAD_ID] = 0.0
    return embeddings


def make_bundle(method_id: str = "T.java#T.m/0", mode: ContextMode = ContextMode.SUGGESTION,
                **contexts: Sequence[str]) -> ContextBundle:
    """Bundle from keyword token lists; missing contexts are empty"""
    return ContextBundle(
        method_id=method_id,
        mode=mode,
        **{kind.value: TokenSeq.of(list(contexts.get(kind.value, []))) for kind in CONTEXT_ORDER},
    )


def make_model(
    vocab: Vocabulary,
    dim: int = 4,
    hidden: int = 4,
    contexts: Sequence[ContextKind] = CONTEXT_ORDER,
    names: Optional[Sequence[Sequence[str]]] = None,
    embeddings: Optional[np.ndarray] = None,
    seed: int = 0,
    **switches,
) -> NameModel:
    """Small float64 model; bigram statistics come from ``names`` when given"""
    if embeddings is None:
        embeddings = random_embeddings(len(vocab), dim, seed)
    stats = build_bigram_stats(names or [], vocab)
    config = ModelConfig(vocab_size=len(vocab), embedding_dim=embeddings.shape[1], hidden_size=hidden,
                         contexts=list(contexts), **switches)
    return NameModel(config, embeddings, noncopy_table(stats, vocab), seed=seed)


def small_run_config(tmp_path: Path, **overrides) -> RunConfig:
    """Run configuration sized for tests: tiny model, few epochs"""
    values = dict(
        corpus_dir=tmp_path / "corpus",
        checkpoint_dir=tmp_path / "checkpoints",
        l_max=16,
        embedding_dim=8,
        glove_epochs=20,
        hidden_size=16,
        max_name_length=4,
        epochs=3,
        batch_size=8,
        learning_rate=0.05,
        cnn_epochs=5,
        beam_width=3,
    )
    values.update(overrides)
    return RunConfig(**values)


@pytest.fixture
def flow_panel_corpus():
    return index_fixtures("FlowPanel.java")


@pytest.fixture
def tiny_vocab():
    return make_vocab(["get", "size", "name", "set", "value"])
