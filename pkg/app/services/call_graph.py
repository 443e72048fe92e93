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

"""Static call graph over a parsed corpus.

Call sites resolve by (simple name, argument count) to every method in the
corpus with that signature. Receiver types and inheritance are ignored.
"""

from collections import defaultdict
from typing import Dict, List, Tuple

import structlog

from app.models.corpus import CallGraph, CallGraphStats, Corpus

logger = structlog.get_logger(__name__)


def build_call_graph(corpus: Corpus) -> Tuple[CallGraph, CallGraphStats]:
    """Resolve every call site in the corpus.

    Callee lists follow call-site order and hold each target once; when one
    site matches several methods they follow id order. Self-calls resolve but
    are dropped from the graph so a method never appears in its own
    interaction context. Callers are kept sorted by id.
    """
    signatures: Dict[Tuple[str, int], List[str]] = defaultdict(list)
    for method in corpus.methods:
        signatures[(method.name, method.arity)].append(method.id)
    for ids in signatures.values():
        ids.sort()

    stats = CallGraphStats()
    callees: Dict[str, List[str]] = {}
    callers: Dict[str, set] = defaultdict(set)

    for method in corpus.methods:
        targets: Dict[str, None] = {}
        for site in method.callee_sites:
            stats.call_sites += 1
            matches = signatures.get(site)
            if not matches:
                stats.unresolved_sites += 1
                continue
            for target in matches:
                if target == method.id:
                    stats.self_calls += 1
                    continue
                targets.setdefault(target, None)

        if targets:
            callees[method.id] = list(targets)
            for target in targets:
                callers[target].add(method.id)

    stats.resolved_edges = sum(len(ids) for ids in callees.values())
    graph = CallGraph(callees=callees, callers={k: sorted(v) for k, v in sorted(callers.items())})

    if stats.unresolved_sites:
        logger.warning("Unresolved call sites", unresolved=stats.unresolved_sites, total=stats.call_sites)
    logger.info("Built call graph", edges=stats.resolved_edges, self_calls=stats.self_calls)
    return graph, stats
