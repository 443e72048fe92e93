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

"""Pipeline shared by the CLI and the HTTP API: ingest, train, check, suggest"""

import json
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import structlog
import torch
from pydantic import BaseModel, Field

from app.config import RunConfig
from app.models.context import ContextBundle, ContextMode
from app.models.corpus import CallGraph, Corpus, CorpusDiagnostics, MethodRecord
from app.models.decoding import BigramStats
from app.models.tasks import ConsistencyVerdict, MethodRepresentation, MethodSuggestions, SkipReason
from app.nn.batching import collate, has_input
from app.nn.checkpoint import load_cnn, load_model, save_cnn, save_model
from app.nn.cnn import ConsistencyCNN
from app.nn.model import ModelConfig, NameModel
from app.nn.trainer import train_model
from app.services.bigram_stats import build_bigram_stats, noncopy_table
from app.services.call_graph import build_call_graph
from app.services.consistency_service import check_methods, represent_methods, train_consistency_classifier
from app.services.context_builder import ContextBuilder, export_bundles
from app.services.corpus_store import read_corpus, write_corpus
from app.services.embedding_service import (
    EON,
    Vocabulary,
    build_cooccurrence,
    build_vocabulary,
    load_embeddings,
    save_embeddings,
    train_embeddings,
)
from app.services.identifiers import split_identifier
from app.services.java_parser import java_parser
from app.services.suggestion_service import suggest_names

logger = structlog.get_logger(__name__)


class TrainingData(NamedTuple):
    """Methods usable for training, their bundles and gold sub-tokens (EON not appended)"""
    methods: List[MethodRecord]
    bundles: List[ContextBundle]
    names: List[List[str]]


class TrainSummary(BaseModel):
    mode: ContextMode
    methods: int
    vocab_size: int
    embedding_objective: List[float] = Field(default_factory=list)
    losses: List[float] = Field(default_factory=list)
    cnn_losses: List[float] = Field(default_factory=list)


class InferenceSession:
    """Checkpoints loaded for one mode"""

    def __init__(self, config: RunConfig, vocab: Vocabulary, embeddings: np.ndarray, model: NameModel,
                 stats: BigramStats, mode: ContextMode, cnn: Optional[ConsistencyCNN] = None):
        self.config = config
        self.vocab = vocab
        self.embeddings = embeddings
        self.model = model
        self.stats = stats
        self.mode = mode
        self.cnn = cnn

    @classmethod
    def load(cls, config: RunConfig, with_cnn: bool = False) -> "InferenceSession":
        vocab, embeddings = load_embeddings(config.embeddings_path)
        model, stats, mode = load_model(config.model_path, vocab, embeddings)
        if mode != config.mode:
            logger.warning("Checkpoint mode differs from requested mode", checkpoint=mode.value,
                           requested=config.mode.value)
        cnn = load_cnn(config.cnn_path, vocab) if with_cnn else None
        logger.info("Loaded checkpoints", mode=mode.value, vocab=len(vocab), cnn=cnn is not None)
        return cls(config, vocab, embeddings, model, stats, mode, cnn)

    def skip_reason(self, bundle: ContextBundle, name: Optional[str] = None) -> Optional[SkipReason]:
        """Why ``bundle`` cannot be scored, or None when it can"""
        if not has_input(bundle, self.model.contexts):
            return SkipReason.EMPTY_CONTEXT
        if name is not None and not split_identifier(name):
            return SkipReason.NO_SUBTOKENS
        return None

    def check(self, bundles: Sequence[ContextBundle], names: Dict[str, str]) -> List[ConsistencyVerdict]:
        """One verdict per bundle, in order; unusable methods get a Skipped placeholder"""
        if self.cnn is None:
            raise RuntimeError("Session was loaded without a classifier")
        reasons = [self.skip_reason(b, names[b.method_id]) for b in bundles]
        kept = [b for b, reason in zip(bundles, reasons) if reason is None]
        scored = iter(check_methods(
            kept, [names[b.method_id] for b in kept], self.model, self.cnn, self.vocab, self.embeddings,
            self.config.l_max, self.config.max_name_length, self.config.consistency_threshold,
        ))
        _log_skipped(bundles, reasons)
        return [
            next(scored) if reason is None
            else ConsistencyVerdict.placeholder(b.method_id, names[b.method_id], reason)
            for b, reason in zip(bundles, reasons)
        ]

    def suggest(self, bundles: Sequence[ContextBundle], k: int) -> List[MethodSuggestions]:
        """One result per bundle, in order; methods without context get an empty placeholder"""
        reasons = [self.skip_reason(b) for b in bundles]
        kept = [b for b, reason in zip(bundles, reasons) if reason is None]
        suggested = iter(suggest_names(kept, self.model, self.vocab, self.embeddings, self.config.l_max,
                                       self.config.max_name_length, k, self.config.beam_width))
        _log_skipped(bundles, reasons)
        return [
            next(suggested) if reason is None else MethodSuggestions.placeholder(b.method_id, reason)
            for b, reason in zip(bundles, reasons)
        ]


def _log_skipped(bundles: Sequence[ContextBundle], reasons: Sequence[Optional[SkipReason]]) -> None:
    for bundle, reason in zip(bundles, reasons):
        if reason is not None:
            logger.warning("Method skipped, placeholder emitted", method_id=bundle.method_id, reason=reason.value)


def write_jsonl(path: Optional[Union[str, Path]], records: Iterable[dict]) -> List[str]:
    """Serialise records one per line; also returns the lines"""
    lines = [json.dumps(record, sort_keys=True) for record in records]
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.writelines(line + "\n" for line in lines)
    return lines


class PipelineService:
    """Ingestion, training and inference over corpus directories and checkpoints"""

    # Corpus

    def ingest(self, root: Union[str, Path], out_dir: Union[str, Path], workers: int = 4,
               strict: bool = False) -> CorpusDiagnostics:
        parsed = java_parser.ingest_directory(root, workers=workers, strict=strict)
        corpus = parsed.index()
        graph, stats = build_call_graph(corpus)
        return write_corpus(out_dir, parsed, graph, stats)

    def load_corpus(self, config: RunConfig) -> Tuple[Corpus, CallGraph]:
        if config.corpus_dir is None:
            raise ValueError("corpus_dir is not configured")
        return read_corpus(config.corpus_dir)

    def corpus_from_source(self, text: str, file_name: str = "Snippet.java") -> Tuple[Corpus, CallGraph]:
        parsed = java_parser.parse_source(text, file_name)
        corpus = Corpus(parsed.classes, parsed.methods)
        graph, _ = build_call_graph(corpus)
        return corpus, graph

    def export_contexts(self, config: RunConfig, path: Union[str, Path]) -> int:
        corpus, graph = self.load_corpus(config)
        bundles = [b.padded(config.l_max) for b in ContextBuilder(corpus, graph).build_all(config.mode)]
        return export_bundles(path, bundles)

    # Training

    def training_data(self, corpus: Corpus, graph: CallGraph, config: RunConfig,
                      mode: Optional[ContextMode] = None) -> TrainingData:
        """Bundles of methods with a splittable name and at least one non-empty active context"""
        builder = ContextBuilder(corpus, graph)
        methods, bundles, names = [], [], []
        skipped = 0
        for method in corpus.methods:
            bundle = builder.build_bundle(method, mode or config.mode)
            if not method.name_subtokens or not has_input(bundle, config.contexts):
                skipped += 1
                continue
            methods.append(method)
            bundles.append(bundle)
            names.append(list(method.name_subtokens))
        if skipped:
            logger.warning("Methods left out of training", count=skipped)
        if not bundles:
            raise ValueError("No method is usable for training")
        return TrainingData(methods, bundles, names)

    def fit_embeddings(self, corpus: Corpus, graph: CallGraph, config: RunConfig) -> Tuple[Vocabulary, np.ndarray, List[float]]:
        """GloVe over every context of every method plus the names, identical for both modes"""
        builder = ContextBuilder(corpus, graph)
        sentences: List[List[str]] = []
        for method in corpus.methods:
            bundle = builder.build_bundle(method, ContextMode.CHECKING)
            sentences.extend(seq.content for seq in bundle.sequences().values() if seq.true_length)
            if method.name_subtokens:
                sentences.append(list(method.name_subtokens) + [EON])
        vocab = build_vocabulary(sentences, config.min_count)
        table = build_cooccurrence(sentences, config.glove_window)
        embeddings, history = train_embeddings(
            table, vocab, dim=config.embedding_dim, epochs=config.glove_epochs, seed=config.seed,
            learning_rate=config.glove_learning_rate, x_max=config.glove_x_max, alpha=config.glove_alpha,
        )
        return vocab, embeddings, history

    def fit_name_model(self, data: TrainingData, vocab: Vocabulary, embeddings: np.ndarray,
                       config: RunConfig) -> Tuple[NameModel, BigramStats, List[float]]:
        torch.manual_seed(config.seed)
        stats = build_bigram_stats(data.names, vocab)
        model = NameModel(
            ModelConfig(
                vocab_size=len(vocab),
                embedding_dim=embeddings.shape[1],
                hidden_size=config.hidden_size,
                contexts=config.contexts,
                use_copy=config.use_copy,
                use_noncopy=config.use_noncopy,
                learn_context_weights=config.learn_context_weights,
                noncopy_init=config.noncopy_init,
            ),
            embeddings,
            noncopy_table(stats, vocab),
            seed=config.seed,
        )
        batch = collate(data.bundles, vocab, config.l_max, data.names)
        history = train_model(
            model, batch, epochs=config.epochs, learning_rate=config.learning_rate,
            momentum=config.momentum, grad_clip=config.grad_clip, batch_size=config.batch_size,
            seed=config.seed,
        )
        return model, stats, history

    def fit_classifier(self, data: TrainingData, model: NameModel, vocab: Vocabulary, embeddings: np.ndarray,
                       config: RunConfig) -> Tuple[ConsistencyCNN, List[float], List[MethodRepresentation]]:
        representations = represent_methods(data.bundles, model, vocab, embeddings, config.l_max,
                                             config.max_name_length)
        cnn, history = train_consistency_classifier(
            representations, data.names, vocab, embeddings, config.max_name_length + 1,
            epochs=config.cnn_epochs, learning_rate=config.cnn_learning_rate, seed=config.seed,
            negatives=config.cnn_negatives,
        )
        return cnn, history, representations

    def train(self, config: RunConfig) -> TrainSummary:
        """Embeddings, name model and, when checking, the classifier; all written to checkpoint_dir"""
        corpus, graph = self.load_corpus(config)
        vocab, embeddings, objective = self.fit_embeddings(corpus, graph, config)
        config.checkpoint_dir.mkdir(parents=True, exist_ok=True)
        save_embeddings(config.embeddings_path, vocab, embeddings)

        data = self.training_data(corpus, graph, config)
        logger.info("Training name model", mode=config.mode.value, methods=len(data.bundles),
                    contexts=[kind.value for kind in config.contexts])
        model, stats, losses = self.fit_name_model(data, vocab, embeddings, config)
        save_model(config.model_path, model, vocab, stats, config.mode)

        summary = TrainSummary(mode=config.mode, methods=len(data.bundles), vocab_size=len(vocab),
                               embedding_objective=objective, losses=losses)
        if config.mode == ContextMode.CHECKING:
            cnn, cnn_losses, _ = self.fit_classifier(data, model, vocab, embeddings, config)
            save_cnn(config.cnn_path, cnn, vocab)
            summary.cnn_losses = cnn_losses

        run_path = config.checkpoint_dir / f"run-{config.mode.value}.json"
        run_path.write_text(config.model_dump_json(indent=2) + "\n", encoding="utf-8")
        log_path = config.checkpoint_dir / f"loss-{config.mode.value}.json"
        log_path.write_text(summary.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info("Training finished", mode=config.mode.value, final_loss=losses[-1] if losses else None)
        return summary

    # Inference

    def check(self, config: RunConfig, names: Optional[Dict[str, str]] = None) -> List[ConsistencyVerdict]:
        """Verdicts for every method of the configured corpus, optionally against replacement names"""
        corpus, graph = self.load_corpus(config)
        session = InferenceSession.load(config, with_cnn=True)
        bundles = ContextBuilder(corpus, graph).build_all(ContextMode.CHECKING)
        existing = {m.id: m.name for m in corpus.methods}
        if names:
            unknown = sorted(set(names) - set(existing))
            if unknown:
                logger.warning("Replacement names for unknown methods ignored", count=len(unknown))
            existing.update({k: v for k, v in names.items() if k in existing})
        verdicts = session.check(bundles, existing)
        write_jsonl(config.output_path, (v.to_export() for v in verdicts))
        return verdicts

    def suggest(self, config: RunConfig, k: int) -> List[MethodSuggestions]:
        corpus, graph = self.load_corpus(config)
        session = InferenceSession.load(config)
        bundles = ContextBuilder(corpus, graph).build_all(ContextMode.SUGGESTION)
        suggestions = session.suggest(bundles, k)
        write_jsonl(config.output_path, (s.to_export() for s in suggestions))
        return suggestions


def read_names(path: Union[str, Path]) -> Dict[str, str]:
    """Replacement names from JSON lines of {method_id, name}"""
    names = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                record = json.loads(line)
                names[record["method_id"]] = record["name"]
    return names


def run_config_for(checkpoint_dir: Union[str, Path], mode: ContextMode) -> RunConfig:
    """The configuration a checkpoint was trained with, defaults when it was not recorded"""
    checkpoint_dir = Path(checkpoint_dir)
    path = checkpoint_dir / f"run-{mode.value}.json"
    if path.is_file():
        recorded = RunConfig.model_validate_json(path.read_text(encoding="utf-8"))
        return recorded.model_copy(update={"checkpoint_dir": checkpoint_dir, "output_path": None})
    return RunConfig(checkpoint_dir=checkpoint_dir, mode=mode)


class SessionRegistry:
    """Inference sessions per mode, loaded once for the HTTP API"""

    def __init__(self):
        self.sessions: Dict[ContextMode, InferenceSession] = {}

    def load(self, checkpoint_dir: Union[str, Path]) -> None:
        self.sessions.clear()
        for mode in ContextMode:
            config = run_config_for(checkpoint_dir, mode)
            if not config.model_path.is_file():
                logger.info("No checkpoint for mode", mode=mode.value, path=str(config.model_path))
                continue
            try:
                self.sessions[mode] = InferenceSession.load(
                    config, with_cnn=mode == ContextMode.CHECKING and config.cnn_path.is_file())
            except Exception as e:
                logger.error("Failed to load checkpoints", mode=mode.value, error=str(e))

    def get(self, mode: ContextMode) -> Optional[InferenceSession]:
        return self.sessions.get(mode)

    def status(self) -> Dict[str, dict]:
        return {
            mode.value: {
                "loaded": mode in self.sessions,
                "classifier": mode in self.sessions and self.sessions[mode].cnn is not None,
                "vocab_size": len(self.sessions[mode].vocab) if mode in self.sessions else None,
            }
            for mode in ContextMode
        }


# Global pipeline instances
pipeline_service = PipelineService()
session_registry = SessionRegistry()
