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

"""Generated Java corpora for experiments and tests"""

from itertools import product
from typing import Dict, List, Tuple

import numpy as np

NAME_VERBS = ("compute", "render", "load", "store", "parse", "format", "merge", "split",
              "send", "fetch", "update", "build", "close", "open", "print", "scan")
NAME_NOUNS = ("invoice", "order", "report", "customer", "ticket", "account", "payment", "message",
              "profile", "session", "record", "document", "channel", "buffer", "header", "folder")
WORKER_VERBS = ("handle", "process", "execute", "perform", "apply", "dispatch", "invoke", "operate",
                "serve", "run", "drive", "carry")
WORKER_NOUNS = ("task", "job", "step", "action", "work", "call", "request", "unit", "item", "entry",
                "stage", "phase")

GROUP_SIZE = 4


def _camel(*words: str) -> str:
    head, *tail = words
    return head + "".join(w.capitalize() for w in tail)


def _worker_variants(verb: str, noun: str) -> List[str]:
    """Four spellings that split to the same sub-tokens [verb, noun]"""
    return [_camel(verb, noun), f"{verb}_{noun}", _camel(verb.capitalize(), noun), verb + noun.upper()]


def delegation_corpus(n_methods: int = 100, seed: int = 0) -> Dict[str, str]:
    """Java files in which the name of a delegating method is only told by its callee.

    Methods come in groups of eight: four workers whose names split to the
    same sub-tokens and four delegations, each in its own class, that only
    call one worker. The delegations of a group share their internal and
    enclosing contexts; each worker's body mentions the name of the
    delegation calling it. Methods left over after the groups are
    standalone methods whose bodies spell their own names.

    Returns:
        file name -> Java source
    """
    rng = np.random.default_rng(seed)
    groups, standalone = divmod(n_methods, 2 * GROUP_SIZE)
    workers = list(product(WORKER_VERBS, WORKER_NOUNS))
    names = list(product(NAME_VERBS, NAME_NOUNS))
    if groups > len(workers) or groups * GROUP_SIZE + standalone > len(names):
        raise ValueError(f"Cannot generate {n_methods} distinct methods")
    worker_order = rng.permutation(len(workers))
    name_order = rng.permutation(len(names))
    pick = iter(name_order.tolist())

    files: Dict[str, str] = {}
    for g in range(groups):
        verb, noun = workers[int(worker_order[g])]
        lines: List[str] = [f"class Worker{g} {{"]
        delegations: List[Tuple[str, str]] = []
        for variant in _worker_variants(verb, noun):
            name_verb, name_noun = names[next(pick)]
            delegations.append((_camel(name_verb, name_noun), variant))
            local = _camel(name_verb, name_noun)
            lines += [
                f"    int {variant}(int value) {{",
                f"        int {local} = value + 1;",
                f"        return {local};",
                "    }",
            ]
        lines.append("}")
        for d, (delegation, worker) in enumerate(delegations):
            lines += [
                "",
                f"class Delegate{g * GROUP_SIZE + d} {{",
                f"    int {delegation}(int value) {{",
                f"        return new Worker{g}().{worker}(value);",
                "    }",
                "}",
            ]
        files[f"Group{g}.java"] = "\n".join(lines) + "\n"

    if standalone:
        lines = ["class Standalone {"]
        for _ in range(standalone):
            name_verb, name_noun = names[next(pick)]
            name = _camel(name_verb, name_noun)
            lines += [
                f"    String {name}(String text) {{",
                f"        String {name_noun} = text.trim();",
                f"        return {name_verb}({name_noun});",
                "    }",
            ]
        lines.append("}")
        files["Standalone.java"] = "\n".join(lines) + "\n"
    return files


RENAMING_CLASS = """\
class TopologyBuilder {
    private void declareGrouping(BoltDeclarer boltDeclarer, Node parent, String streamId, GroupingInfo grouping) {
        if (grouping == null) {
            boltDeclarer.shuffleGrouping(parent.getComponentId(), streamId);
        } else {
            grouping.declareGrouping(boltDeclarer, parent.getComponentId(), streamId, grouping.getFields());
        }
    }

    public String getComponentId(Node node) {
        String componentId = node.componentId;
        return componentId;
    }

    public Fields getFields(GroupingInfo grouping) {
        Fields fields = grouping.fields;
        return fields;
    }

    public void shuffleGrouping(BoltDeclarer boltDeclarer, String streamId) {
        boltDeclarer.shuffle(streamId);
    }
}
"""


def renaming_corpus(seed: int = 0, extra_methods: int = 24) -> Dict[str, str]:
    """A class whose grouping method was once misnamed declareStream, plus consistent filler methods.

    Filler methods declare, open or close streams and groupings so both
    sub-tokens of the old name are familiar to a trained model.
    """
    rng = np.random.default_rng(seed)
    verbs = ("declare", "open", "close", "emit", "reset", "register")
    nouns = ("stream", "grouping", "spout", "bolt", "tuple", "topology")
    pairs = list(product(verbs, nouns))
    chosen = [pairs[i] for i in rng.permutation(len(pairs))[:extra_methods].tolist()]
    chosen = [pair for pair in chosen if pair != ("declare", "grouping")]

    lines = ["class StreamRegistry {"]
    for verb, noun in chosen:
        name = _camel(verb, noun)
        lines += [
            f"    public void {name}(String {noun}Id) {{",
            f"        {noun.capitalize()} {noun} = lookup({noun}Id);",
            f"        {noun}.{verb}();",
            "    }",
        ]
    lines.append("}")
    return {"TopologyBuilder.java": RENAMING_CLASS, "StreamRegistry.java": "\n".join(lines) + "\n"}
