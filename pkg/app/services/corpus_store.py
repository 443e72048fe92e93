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

"""On-disk corpus store: JSON-lines records, call graph and diagnostics"""

import json
from pathlib import Path
from typing import Tuple, Union

import structlog
from pydantic import ValidationError

from app.models.corpus import (
    SCHEMA_VERSION,
    CallGraph,
    CallGraphStats,
    ClassRecord,
    Corpus,
    CorpusDiagnostics,
    MethodRecord,
    ParsedCorpus,
)

logger = structlog.get_logger(__name__)

METHODS_FILE = "methods.jsonl"
CLASSES_FILE = "classes.jsonl"
CALLGRAPH_FILE = "callgraph.json"
DIAGNOSTICS_FILE = "diagnostics.json"


class CorpusStoreError(Exception):
    """Corpus directory missing, incomplete or of another schema"""
    pass


def diagnostics_for(parsed: ParsedCorpus, stats: CallGraphStats) -> CorpusDiagnostics:
    return CorpusDiagnostics(
        files=len(parsed.files),
        classes=len(parsed.classes),
        methods=len(parsed.methods),
        parse_failures=parsed.failures,
        **stats.model_dump(),
    )


def write_corpus(out_dir: Union[str, Path], parsed: ParsedCorpus, graph: CallGraph,
                 stats: CallGraphStats) -> CorpusDiagnostics:
    """Write the corpus files; output is byte-identical for identical input"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    with open(out_dir / METHODS_FILE, "w", encoding="utf-8", newline="\n") as f:
        for method in parsed.methods:
            f.write(method.model_dump_json(by_alias=True) + "\n")

    with open(out_dir / CLASSES_FILE, "w", encoding="utf-8", newline="\n") as f:
        for klass in parsed.classes:
            f.write(klass.model_dump_json(by_alias=True) + "\n")

    (out_dir / CALLGRAPH_FILE).write_text(graph.model_dump_json(by_alias=True, indent=2) + "\n",
                                          encoding="utf-8")

    diagnostics = diagnostics_for(parsed, stats)
    (out_dir / DIAGNOSTICS_FILE).write_text(diagnostics.model_dump_json(indent=2) + "\n", encoding="utf-8")

    logger.info("Wrote corpus", path=str(out_dir), methods=len(parsed.methods), classes=len(parsed.classes))
    return diagnostics


def _read_lines(path: Path, model):
    records = []
    with open(path, encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            data = json.loads(line)
            if data.get("schema") != SCHEMA_VERSION:
                raise CorpusStoreError(f"{path.name}:{number}: unsupported schema {data.get('schema')!r}")
            try:
                records.append(model.model_validate(data))
            except ValidationError as e:
                raise CorpusStoreError(f"{path.name}:{number}: invalid record: {e}") from e
    return records


def read_corpus(corpus_dir: Union[str, Path]) -> Tuple[Corpus, CallGraph]:
    """Load a corpus written by ``write_corpus``"""
    corpus_dir = Path(corpus_dir)
    missing = [name for name in (METHODS_FILE, CLASSES_FILE, CALLGRAPH_FILE)
               if not (corpus_dir / name).is_file()]
    if missing:
        raise CorpusStoreError(f"Corpus directory {corpus_dir} lacks {', '.join(missing)}")

    methods = _read_lines(corpus_dir / METHODS_FILE, MethodRecord)
    classes = _read_lines(corpus_dir / CLASSES_FILE, ClassRecord)
    graph = CallGraph.model_validate_json((corpus_dir / CALLGRAPH_FILE).read_text(encoding="utf-8"))

    try:
        corpus = Corpus(classes, methods)
    except ValueError as e:
        raise CorpusStoreError(str(e)) from e

    logger.debug("Loaded corpus", path=str(corpus_dir), methods=len(methods))
    return corpus, graph


def read_diagnostics(corpus_dir: Union[str, Path]) -> CorpusDiagnostics:
    return CorpusDiagnostics.model_validate_json(
        (Path(corpus_dir) / DIAGNOSTICS_FILE).read_text(encoding="utf-8"))
