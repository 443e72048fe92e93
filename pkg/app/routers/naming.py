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

"""Naming API routes: consistency checking and name suggestion over loaded checkpoints"""

from typing import Any, Dict, List, Optional

import structlog
from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.config import settings
from app.models.context import ContextMode
from app.models.tasks import ConsistencyVerdict, SkipReason
from app.services.context_builder import ContextBuilder
from app.services.java_parser import ParseError
from app.services.pipeline_service import InferenceSession, pipeline_service, session_registry

logger = structlog.get_logger(__name__)

router = APIRouter(prefix="/api/v1", tags=["naming"])


class SourceRequest(BaseModel):
    source: str
    file_name: str = "Snippet.java"


class SuggestRequest(SourceRequest):
    k: Optional[int] = Field(default=None, ge=1)


class Candidate(BaseModel):
    name: str
    score: float


class SuggestionResponse(BaseModel):
    method_id: str
    candidates: List[Candidate]
    skipped: Optional[SkipReason] = None


def _session(mode: ContextMode, with_cnn: bool = False) -> InferenceSession:
    session = session_registry.get(mode)
    if session is None or (with_cnn and session.cnn is None):
        raise HTTPException(status_code=503, detail=f"No {mode.value} checkpoints loaded")
    return session


def _bundles(request: SourceRequest, mode: ContextMode):
    try:
        corpus, graph = pipeline_service.corpus_from_source(request.source, request.file_name)
    except ParseError as e:
        raise HTTPException(status_code=422, detail={
            "error": "parse_error", "message": e.reason, "line": e.line, "column": e.column,
        })
    return corpus, ContextBuilder(corpus, graph).build_all(mode)


@router.get("/status")
def get_status() -> Dict[str, Any]:
    """Which checkpoints are loaded"""
    return {"checkpoint_dir": str(settings.checkpoint_dir), "modes": session_registry.status()}


@router.post("/check", response_model=List[ConsistencyVerdict], response_model_exclude_none=True)
def check_names(request: SourceRequest) -> List[ConsistencyVerdict]:
    """Consistency verdict for every method in the posted source"""
    session = _session(ContextMode.CHECKING, with_cnn=True)
    corpus, bundles = _bundles(request, ContextMode.CHECKING)
    verdicts = session.check(bundles, {m.id: m.name for m in corpus.methods})
    logger.info("Checked posted source", methods=len(corpus), verdicts=len(verdicts))
    return verdicts


@router.post("/suggest", response_model=List[SuggestionResponse], response_model_exclude_none=True)
def suggest_names(request: SuggestRequest) -> List[SuggestionResponse]:
    """Ranked name candidates for every method in the posted source"""
    session = _session(ContextMode.SUGGESTION)
    width = session.config.beam_width
    if request.k is not None and request.k > width:
        raise HTTPException(status_code=422, detail=f"k={request.k} exceeds the beam width {width}")
    corpus, bundles = _bundles(request, ContextMode.SUGGESTION)
    results = session.suggest(bundles, request.k or min(settings.default_k, width))
    logger.info("Suggested names for posted source", methods=len(corpus))
    return [SuggestionResponse(**result.to_export()) for result in results]
