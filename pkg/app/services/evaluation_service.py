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

"""Suggestion and checking metrics, prediction files and report rendering"""

import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import structlog
from pydantic import BaseModel

from app.models.evaluation import (
    AblationReport,
    BucketScores,
    ClassificationCounts,
    ClassificationReport,
    ClassMetrics,
    EvaluationReport,
    PredictionPair,
    SubtokenScore,
    SuggestionScores,
)
from app.models.tasks import ConsistencyLabel
from app.services.corpus_store import read_corpus
from app.services.identifiers import require_subtokens, split_identifier

logger = structlog.get_logger(__name__)


def _ratio(numerator: float, denominator: float) -> Tuple[float, bool]:
    if denominator == 0:
        return 0.0, True
    return numerator / denominator, False


def _harmonic(precision: float, recall: float) -> Tuple[float, bool]:
    if precision + recall == 0:
        return 0.0, True
    return 2 * precision * recall / (precision + recall), False


# Suggestion metrics

def subtoken_metrics(expected: str, recommended: str) -> SubtokenScore:
    """Precision, recall and F over case-insensitive sub-token sets"""
    e = set(require_subtokens(expected))
    r = set(require_subtokens(recommended))
    common = len(e & r)
    precision = common / len(r)
    recall = common / len(e)
    f_score, undefined = _harmonic(precision, recall)
    return SubtokenScore(precision=precision, recall=recall, f_score=f_score, undefined=undefined)


def exmatch(expected: str, recommended: str) -> bool:
    """Same sub-tokens in the same order, ignoring case"""
    e = split_identifier(expected)
    return bool(e) and e == split_identifier(recommended)


def case_sensitive_match(expected: str, recommended: str) -> bool:
    return bool(expected) and expected == recommended


def topk_exmatch(ranked: Sequence[str], expected: str, k: int) -> bool:
    return any(exmatch(expected, candidate) for candidate in ranked[:k])


def _pair_score(expected: str, recommended: str) -> SubtokenScore:
    if not split_identifier(expected):
        logger.warning("Expected name has no sub-tokens, pair scored as undefined", expected=expected)
        return SubtokenScore(precision=0.0, recall=0.0, f_score=0.0, undefined=True)
    if not split_identifier(recommended):
        return SubtokenScore(precision=0.0, recall=0.0, f_score=0.0, undefined=True)
    return subtoken_metrics(expected, recommended)


def set_metrics(pairs: Iterable[Tuple[str, str]]) -> SuggestionScores:
    """Means of per-pair precision, recall and F plus the ExMatch rate.

    A pair without a usable recommendation or without a splittable expected
    name scores zero.
    """
    pairs = list(pairs)
    if not pairs:
        return SuggestionScores(precision=0.0, recall=0.0, f_score=0.0, exmatch_rate=0.0, count=0)
    scores = [_pair_score(expected, recommended) for expected, recommended in pairs]
    n = len(pairs)
    return SuggestionScores(
        precision=sum(s.precision for s in scores) / n,
        recall=sum(s.recall for s in scores) / n,
        f_score=sum(s.f_score for s in scores) / n,
        exmatch_rate=sum(exmatch(e, r) for e, r in pairs) / n,
        count=n,
    )


def accuracy_by_size(pairs: Sequence[PredictionPair],
                     buckets: Sequence[Tuple[int, Optional[int]]]) -> List[BucketScores]:
    """set_metrics per method-size bucket; empty buckets carry no scores"""
    report = []
    for low, high in buckets:
        members = [p for p in pairs if p.line_count >= low and (high is None or p.line_count <= high)]
        scores = set_metrics((p.expected, p.top) for p in members) if members else None
        report.append(BucketScores(low=low, high=high, scores=scores))
    return report


def unseen_name_metrics(pairs: Sequence[PredictionPair], training_names: Iterable[str]) -> Optional[SuggestionScores]:
    """set_metrics over pairs whose expected name never occurs in training"""
    seen = {tuple(split_identifier(name)) for name in training_names}
    unseen = [(p.expected, p.top) for p in pairs if tuple(split_identifier(p.expected)) not in seen]
    if not unseen:
        return None
    return set_metrics(unseen)


# Checking metrics

def classification_metrics(counts: ClassificationCounts) -> ClassificationReport:
    """Per-class precision, recall and F with IC as the positive class, plus accuracy"""
    undefined: List[str] = []

    def class_metrics(prefix: str, hit: int, false_alarm: int, miss: int) -> ClassMetrics:
        flags = []
        precision, flag = _ratio(hit, hit + false_alarm)
        if flag:
            flags.append(f"{prefix}_precision")
        recall, flag = _ratio(hit, hit + miss)
        if flag:
            flags.append(f"{prefix}_recall")
        f_score, flag = _harmonic(precision, recall)
        if flag:
            flags.append(f"{prefix}_f_score")
        undefined.extend(flags)
        return ClassMetrics(precision=precision, recall=recall, f_score=f_score, undefined=flags)

    inconsistent = class_metrics("ic", counts.tp, counts.fp, counts.fn)
    consistent = class_metrics("c", counts.tn, counts.fn, counts.fp)
    accuracy, flag = _ratio(counts.tp + counts.tn, counts.total)
    if flag:
        undefined.append("accuracy")
    return ClassificationReport(counts=counts, inconsistent=inconsistent, consistent=consistent,
                                accuracy=accuracy, undefined=undefined)


def count_labels(pairs: Iterable[Tuple[ConsistencyLabel, ConsistencyLabel]]) -> ClassificationCounts:
    """Confusion counts from (gold, predicted) label pairs"""
    counts = {"tp": 0, "fp": 0, "tn": 0, "fn": 0}
    for gold, predicted in pairs:
        gold_ic = gold == ConsistencyLabel.INCONSISTENT
        predicted_ic = predicted == ConsistencyLabel.INCONSISTENT
        if gold_ic and predicted_ic:
            counts["tp"] += 1
        elif predicted_ic:
            counts["fp"] += 1
        elif gold_ic:
            counts["fn"] += 1
        else:
            counts["tn"] += 1
    return ClassificationCounts(**counts)


# Files

class GoldEntry(BaseModel):
    name: str
    line_count: int = 1
    label: Optional[ConsistencyLabel] = None


class PredictionEntry(BaseModel):
    ranked: List[str] = []
    label: Optional[ConsistencyLabel] = None


def _read_jsonl(path: Path) -> List[dict]:
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def load_gold(path: Union[str, Path]) -> Dict[str, GoldEntry]:
    """Gold names from a corpus directory or a JSON-lines file of {method_id, name[, line_count, label]}"""
    path = Path(path)
    if path.is_dir():
        corpus, _ = read_corpus(path)
        return {m.id: GoldEntry(name=m.name, line_count=m.line_count) for m in corpus.methods}
    gold = {}
    for record in _read_jsonl(path):
        name = record.get("name", record.get("existing_name", ""))
        gold[record["method_id"]] = GoldEntry(name=name, line_count=record.get("line_count", 1),
                                              label=record.get("label"))
    return gold


def load_predictions(path: Union[str, Path]) -> Dict[str, PredictionEntry]:
    """Read ``suggest`` or ``check`` output; a line with a plain ``name`` counts as one candidate"""
    predictions = {}
    for record in _read_jsonl(Path(path)):
        if "candidates" in record:
            ranked = [c["name"] for c in record["candidates"]]
        elif "name" in record:
            ranked = [record["name"]]
        else:
            ranked = []
        predictions[record["method_id"]] = PredictionEntry(ranked=ranked, label=record.get("label"))
    return predictions


def evaluate(
    predictions: Dict[str, PredictionEntry],
    gold: Dict[str, GoldEntry],
    buckets: Sequence[Tuple[int, Optional[int]]],
    k: int = 10,
    training_names: Optional[Iterable[str]] = None,
) -> EvaluationReport:
    extra = sorted(set(predictions) - set(gold))
    if extra:
        logger.warning("Predictions without gold entries ignored", count=len(extra))

    pairs = []
    label_pairs = []
    for method_id, entry in gold.items():
        prediction = predictions.get(method_id, PredictionEntry())
        if prediction.ranked or prediction.label is None:
            pairs.append(PredictionPair(method_id=method_id, expected=entry.name,
                                        recommended=prediction.ranked, line_count=entry.line_count))
        if entry.label is not None and prediction.label not in (None, ConsistencyLabel.SKIPPED):
            label_pairs.append((entry.label, prediction.label))

    report = EvaluationReport()
    if pairs:
        report.suggestion = set_metrics((p.expected, p.top) for p in pairs)
        report.k = k
        report.top_k = sum(topk_exmatch(p.recommended, p.expected, k) for p in pairs) / len(pairs)
        report.case_sensitive_rate = sum(case_sensitive_match(p.expected, p.top) for p in pairs) / len(pairs)
        report.by_size = accuracy_by_size(pairs, buckets)
        if training_names is not None:
            report.unseen = unseen_name_metrics(pairs, training_names)
    if label_pairs:
        report.checking = classification_metrics(count_labels(label_pairs))
    return report


# Rendering

def _table(header: List[str], rows: List[List[str]]) -> str:
    widths = [max(len(cell) for cell in column) for column in zip(header, *rows)]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
             for row in [header, *rows]]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.4f}"


def _scores_row(label: str, scores: Optional[SuggestionScores]) -> List[str]:
    if scores is None:
        return [label, "-", "-", "-", "-", "0"]
    return [label, _fmt(scores.precision), _fmt(scores.recall), _fmt(scores.f_score),
            _fmt(scores.exmatch_rate), str(scores.count)]


def _checking_lines(report: ClassificationReport) -> str:
    rows = [
        ["IC", _fmt(report.inconsistent.precision), _fmt(report.inconsistent.recall), _fmt(report.inconsistent.f_score)],
        ["C", _fmt(report.consistent.precision), _fmt(report.consistent.recall), _fmt(report.consistent.f_score)],
    ]
    text = _table(["class", "precision", "recall", "f_score"], rows)
    return f"{text}\naccuracy {_fmt(report.accuracy)}"


def render_report(report: Union[EvaluationReport, AblationReport], fmt: str = "json") -> str:
    """JSON or aligned plain-text rendering"""
    if fmt == "json":
        return report.model_dump_json(indent=2, exclude_none=True)
    if fmt != "text":
        raise ValueError(f"Unknown report format {fmt!r}")

    header = ["", "precision", "recall", "f_score", "exmatch", "n"]
    if isinstance(report, AblationReport):
        rows = [_scores_row(f"{row.axis}:{row.variant}", row.scores) for row in report.rows]
        text = _table(["variant"] + header[1:], rows)
        checked = [row for row in report.rows if row.checking is not None]
        if checked:
            text += "\n\n" + _table(["variant", "accuracy", "ic_f", "c_f"], [
                [f"{row.axis}:{row.variant}", _fmt(row.checking.accuracy),
                 _fmt(row.checking.inconsistent.f_score), _fmt(row.checking.consistent.f_score)]
                for row in checked
            ])
        return text

    sections = []
    if report.suggestion is not None:
        rows = [_scores_row("all", report.suggestion)]
        rows += [_scores_row(bucket.label, bucket.scores) for bucket in report.by_size]
        if report.unseen is not None:
            rows.append(_scores_row("unseen", report.unseen))
        sections.append(_table(header, rows))
        sections.append(f"top-{report.k} exmatch {_fmt(report.top_k)}\n"
                        f"case-sensitive match {_fmt(report.case_sensitive_rate)}")
    if report.checking is not None:
        sections.append(_checking_lines(report.checking))
    return "\n\n".join(sections)
