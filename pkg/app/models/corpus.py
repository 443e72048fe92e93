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

"""Corpus data models: parsed classes, methods and the static call graph"""

from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1


class MethodRecord(BaseModel):
    """One parsed method declaration"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    id: str
    name: str
    name_subtokens: List[str]
    return_type: str
    params: List[Tuple[str, str]] = Field(default_factory=list)  # (type, name)
    body_tokens: List[str] = Field(default_factory=list)
    class_id: str
    callee_sites: List[Tuple[str, int]] = Field(default_factory=list)  # (call name, arg count)
    line_count: int = Field(ge=1)
    file_path: str

    @property
    def arity(self) -> int:
        return len(self.params)


class ClassRecord(BaseModel):
    """One class, interface or enum declaration (nested ones included)"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    id: str
    name: str
    field_names: List[str] = Field(default_factory=list)
    method_ids: List[str] = Field(default_factory=list)
    entity_names: List[str] = Field(default_factory=list)
    file_path: str


class ParsedSource(BaseModel):
    """Records produced from a single source file"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    classes: List[ClassRecord] = Field(default_factory=list)
    methods: List[MethodRecord] = Field(default_factory=list)


class ParseFailure(BaseModel):
    """A file that could not be parsed"""
    file_path: str
    line: int
    column: int
    message: str


class CallGraph(BaseModel):
    """Resolved call edges; callers is the exact inverse of callees"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    callees: Dict[str, List[str]] = Field(default_factory=dict)
    callers: Dict[str, List[str]] = Field(default_factory=dict)  # sorted ids

    def callees_of(self, method_id: str) -> List[str]:
        return self.callees.get(method_id, [])

    def callers_of(self, method_id: str) -> List[str]:
        return self.callers.get(method_id, [])


class CorpusDiagnostics(BaseModel):
    """Counters reported by ingestion"""
    files: int = 0
    classes: int = 0
    methods: int = 0
    call_sites: int = 0
    resolved_edges: int = 0
    unresolved_sites: int = 0
    self_calls: int = 0
    parse_failures: List[ParseFailure] = Field(default_factory=list)


class Corpus:
    """Indexed, read-only view over the records of a corpus"""

    def __init__(self, classes: List[ClassRecord], methods: List[MethodRecord]):
        self.classes = list(classes)
        self.methods = list(methods)
        self._classes_by_id: Dict[str, ClassRecord] = {c.id: c for c in self.classes}
        self._methods_by_id: Dict[str, MethodRecord] = {m.id: m for m in self.methods}

        if len(self._methods_by_id) != len(self.methods):
            raise ValueError("Method ids are not unique")
        if len(self._classes_by_id) != len(self.classes):
            raise ValueError("Class ids are not unique")

    def method(self, method_id: str) -> MethodRecord:
        return self._methods_by_id[method_id]

    def klass(self, class_id: str) -> ClassRecord:
        return self._classes_by_id[class_id]

    def siblings_of(self, method: MethodRecord) -> List[MethodRecord]:
        """Other methods of the same class, declaration order"""
        owner = self._classes_by_id[method.class_id]
        return [self._methods_by_id[mid] for mid in owner.method_ids if mid != method.id]

    def __len__(self) -> int:
        return len(self.methods)


class ParsedCorpus(BaseModel):
    """Everything ingestion produced from one corpus root"""
    files: List[str] = Field(default_factory=list)  # relative posix paths, sorted
    classes: List[ClassRecord] = Field(default_factory=list)
    methods: List[MethodRecord] = Field(default_factory=list)
    failures: List[ParseFailure] = Field(default_factory=list)

    def index(self) -> Corpus:
        return Corpus(self.classes, self.methods)


class CallGraphStats(BaseModel):
    """Resolution counters from call graph construction"""
    call_sites: int = 0
    resolved_edges: int = 0
    unresolved_sites: int = 0
    self_calls: int = 0
