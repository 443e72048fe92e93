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

"""Ablation runs over contexts, output mechanisms and context weights"""

from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import structlog

from app.config import RunConfig
from app.models.context import CONTEXT_ORDER, ContextKind, ContextMode
from app.models.evaluation import AblationReport, AblationRow, ClassificationReport
from app.models.tasks import ConsistencyLabel
from app.services.consistency_service import (
    classifier_input,
    consistency_scores,
    corrupt_name,
)
from app.services.evaluation_service import classification_metrics, count_labels, set_metrics
from app.services.identifiers import recompose
from app.services.pipeline_service import PipelineService, TrainingData, pipeline_service
from app.services.suggestion_service import greedy_names

logger = structlog.get_logger(__name__)

I, X, S, E = ContextKind.INTERNAL, ContextKind.INTERACTION, ContextKind.SIBLING, ContextKind.ENCLOSING


class Variant(NamedTuple):
    axis: str
    name: str
    contexts: Tuple[ContextKind, ...]
    use_copy: bool = True
    use_noncopy: bool = True
    learn_context_weights: bool = True

    @property
    def key(self) -> tuple:
        return self.contexts, self.use_copy, self.use_noncopy, self.learn_context_weights


def _ordered(kinds) -> Tuple[ContextKind, ...]:
    return tuple(kind for kind in CONTEXT_ORDER if kind in kinds)


def ablation_variants(axes: Sequence[str], contexts: Sequence[ContextKind] = CONTEXT_ORDER) -> List[Variant]:
    """Rows of the ablation grid.

    contexts: A (internal), B (A + enclosing), C (B + sibling), full, and
    full without each kind; mechanisms: seq2seq, +copy, +copy+noncopy;
    weights: equal versus learned. Rows outside the contexts axis use
    ``contexts``.
    """
    full = _ordered(contexts)
    variants: List[Variant] = []
    if "contexts" in axes:
        variants += [
            Variant("contexts", "A", _ordered({I})),
            Variant("contexts", "B", _ordered({I, E})),
            Variant("contexts", "C", _ordered({I, E, S})),
            Variant("contexts", "full", _ordered(CONTEXT_ORDER)),
        ]
        variants += [Variant("contexts", f"-{kind.value}", _ordered(set(CONTEXT_ORDER) - {kind}))
                     for kind in CONTEXT_ORDER]
    if "mechanisms" in axes:
        variants += [
            Variant("mechanisms", "seq2seq", full, use_copy=False, use_noncopy=False),
            Variant("mechanisms", "copy", full, use_noncopy=False),
            Variant("mechanisms", "copy+noncopy", full),
        ]
    if "weights" in axes:
        variants += [
            Variant("weights", "equal", full, learn_context_weights=False),
            Variant("weights", "learned", full),
        ]
    return variants


def _checking_report(data: TrainingData, representations, vocab, embeddings, cnn, config: RunConfig) -> ClassificationReport:
    """Checking metrics on the training methods against seeded corrupted names"""
    rng = np.random.default_rng(config.seed + 1)
    pool = sorted({token for name in data.names for token in name})
    matrices, gold = [], []
    for representation, name in zip(representations, data.names):
        matrices.append(classifier_input(representation, name, vocab, embeddings, cnn.length))
        gold.append(ConsistencyLabel.CONSISTENT)
        matrices.append(classifier_input(representation, corrupt_name(name, pool, rng, cnn.length),
                                         vocab, embeddings, cnn.length))
        gold.append(ConsistencyLabel.INCONSISTENT)
    predicted = [
        ConsistencyLabel.CONSISTENT if score >= config.consistency_threshold else ConsistencyLabel.INCONSISTENT
        for score in consistency_scores(cnn, matrices)
    ]
    return classification_metrics(count_labels(zip(gold, predicted)))


def ablation_run(config: RunConfig, service: Optional[PipelineService] = None) -> AblationReport:
    """Train and score every variant of the configured grid on the training methods.

    Variants with identical settings are trained once. Embeddings are shared.
    """
    service = service or pipeline_service
    corpus, graph = service.load_corpus(config)
    vocab, embeddings, _ = service.fit_embeddings(corpus, graph, config)

    cache: Dict[tuple, AblationRow] = {}
    report = AblationReport()
    for variant in ablation_variants(config.ablation_grid, config.contexts):
        if variant.key not in cache:
            variant_config = config.model_copy(update={
                "contexts": list(variant.contexts),
                "use_copy": variant.use_copy,
                "use_noncopy": variant.use_noncopy,
                "learn_context_weights": variant.learn_context_weights,
            })
            data = service.training_data(corpus, graph, variant_config)
            model, _, losses = service.fit_name_model(data, vocab, embeddings, variant_config)
            predicted = greedy_names(data.bundles, model, vocab, embeddings, config.l_max, config.max_name_length)
            scores = set_metrics((m.name, recompose(p)) for m, p in zip(data.methods, predicted))

            checking = None
            if config.ablation_checking and config.mode == ContextMode.CHECKING:
                cnn, _, representations = service.fit_classifier(data, model, vocab, embeddings, variant_config)
                checking = _checking_report(data, representations, vocab, embeddings, cnn, variant_config)

            cache[variant.key] = AblationRow(
                variant=variant.name, axis=variant.axis, contexts=[k.value for k in variant.contexts],
                use_copy=variant.use_copy, use_noncopy=variant.use_noncopy,
                learn_context_weights=variant.learn_context_weights, scores=scores, checking=checking,
                final_loss=losses[-1] if losses else None,
            )
            logger.info("Ablation variant scored", axis=variant.axis, variant=variant.name,
                        exmatch=round(scores.exmatch_rate, 4), f_score=round(scores.f_score, 4))
        row = cache[variant.key].model_copy(update={"axis": variant.axis, "variant": variant.name})
        report.rows.append(row)
    return report
