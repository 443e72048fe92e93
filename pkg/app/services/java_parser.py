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

"""Java source parsing into class and method records.

Parsing uses the tree-sitter Java grammar. Only names matter downstream, so
method bodies are reduced to the ordered stream of identifiers, type names
and call sites they contain. Generic type arguments, annotations, literals
and comments are dropped.
"""

import os
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import structlog
import tree_sitter_java as tsjava
from tree_sitter import Language, Node, Parser

from config import defaults
from app.models.corpus import ClassRecord, MethodRecord, ParsedCorpus, ParsedSource, ParseFailure
from app.services.identifiers import split_identifier

logger = structlog.get_logger(__name__)

TYPE_DECLARATIONS = frozenset({
    "class_declaration", "interface_declaration", "enum_declaration", "record_declaration",
})
PRIMITIVE_TYPES = frozenset({"integral_type", "floating_point_type", "boolean_type"})
NAME_NODES = frozenset({"identifier", "type_identifier"}) | PRIMITIVE_TYPES
SKIPPED_SUBTREES = frozenset({
    "type_arguments", "type_parameters", "annotation", "marker_annotation",
    "line_comment", "block_comment",
})
COMMENTS = frozenset({"line_comment", "block_comment"})


class ParseError(Exception):
    """Source that the supported Java subset cannot express"""

    def __init__(self, message: str, path: str = "<memory>", line: int = 1, column: int = 1):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column
        self.reason = message


class EmptyCorpusError(Exception):
    """Corpus root holds no Java files"""
    pass


def _iter_java_files(root: Path) -> Iterator[str]:
    for current, dirs, files in os.walk(root):
        dirs[:] = [d for d in dirs if d not in defaults.SKIPPED_DIRS]
        for file_name in files:
            if file_name.endswith(".java"):
                yield Path(current, file_name).relative_to(root).as_posix()


def _first_error(root: Node) -> Optional[Node]:
    stack = [root]
    while stack:
        node = stack.pop()
        if node.type == "ERROR" or node.is_missing:
            return node
        if node.has_error:
            stack.extend(reversed(node.children))
    return None


class _FileWalker:
    """Collects the records of one parsed file"""

    def __init__(self, source: bytes, file_path: str):
        self.source = source
        self.file_path = file_path
        self.classes: List[ClassRecord] = []
        self.methods: List[MethodRecord] = []
        self._id_counts: Counter = Counter()

    def text(self, node: Node) -> str:
        return self.source[node.start_byte:node.end_byte].decode("utf-8")

    def walk(self, root: Node) -> None:
        for child in root.named_children:
            if child.type in TYPE_DECLARATIONS:
                self.visit_type(child, [])

    # Declarations

    def visit_type(self, node: Node, outer: List[str]) -> None:
        path = outer + [self.text(node.child_by_field_name("name"))]
        class_id = f"{self.file_path}#{'.'.join(path)}"
        field_names: List[str] = []
        entity_names: List[str] = []
        method_ids: List[str] = []
        nested: List[Node] = []

        if node.type == "record_declaration":
            for _, component in self.parameters(node.child_by_field_name("parameters")):
                field_names.append(component)
                entity_names.append(component)

        for member in self.members(node.child_by_field_name("body")):
            kind = member.type
            if kind == "method_declaration":
                method_ids.append(self.visit_method(member, class_id, path).id)
            elif kind in ("field_declaration", "constant_declaration"):
                for declarator in member.children_by_field_name("declarator"):
                    field_names.append(self.text(declarator.child_by_field_name("name")))
                entity_names.extend(self.identifiers(member))
            elif kind in ("constructor_declaration", "compact_constructor_declaration"):
                for part in ("parameters", "body"):
                    child = member.child_by_field_name(part)
                    if child is not None:
                        entity_names.extend(self.identifiers(child))
            elif kind in ("static_initializer", "block"):
                entity_names.extend(self.identifiers(member))
            elif kind == "enum_constant":
                entity_names.append(self.text(member.child_by_field_name("name")))
                arguments = member.child_by_field_name("arguments")
                if arguments is not None:
                    entity_names.extend(self.identifiers(arguments))
            elif kind in TYPE_DECLARATIONS:
                nested.append(member)

        self.classes.append(ClassRecord(
            id=class_id,
            name=path[-1],
            field_names=field_names,
            method_ids=method_ids,
            entity_names=entity_names,
            file_path=self.file_path,
        ))
        for child in nested:
            self.visit_type(child, path)

    def members(self, body: Optional[Node]) -> List[Node]:
        if body is None:
            return []
        members = []
        for child in body.named_children:
            if child.type == "enum_body_declarations":
                members.extend(child.named_children)
            else:
                members.append(child)
        return members

    def visit_method(self, node: Node, class_id: str, path: List[str]) -> MethodRecord:
        name = self.text(node.child_by_field_name("name"))
        params = self.parameters(node.child_by_field_name("parameters"))
        body = node.child_by_field_name("body")
        body_tokens, callee_sites = self.body(body) if body is not None else ([], [])

        base_id = f"{self.file_path}#{'.'.join(path)}.{name}/{len(params)}"
        self._id_counts[base_id] += 1
        ordinal = self._id_counts[base_id]
        method_id = base_id if ordinal == 1 else f"{base_id}~{ordinal}"

        record = MethodRecord(
            id=method_id,
            name=name,
            name_subtokens=split_identifier(name),
            return_type=self.type_name(node.child_by_field_name("type")),
            params=params,
            body_tokens=body_tokens,
            class_id=class_id,
            callee_sites=callee_sites,
            line_count=node.end_point[0] - node.start_point[0] + 1,
            file_path=self.file_path,
        )
        self.methods.append(record)
        return record

    def parameters(self, node: Optional[Node]) -> List[Tuple[str, str]]:
        if node is None:
            return []
        params = []
        for child in node.named_children:
            if child.type == "formal_parameter":
                params.append((
                    self.type_name(child.child_by_field_name("type")),
                    self.text(child.child_by_field_name("name")),
                ))
            elif child.type == "spread_parameter":
                type_node, name = None, ""
                for part in child.named_children:
                    if part.type == "variable_declarator":
                        name = self.text(part.child_by_field_name("name"))
                    elif part.type != "modifiers" and type_node is None:
                        type_node = part
                params.append((self.type_name(type_node), name))
        return params

    def type_name(self, node: Optional[Node]) -> str:
        """Base identifier of a type: generics, arrays and qualifiers stripped"""
        if node is None:
            return ""
        if node.type == "generic_type":
            return self.type_name(node.named_children[0])
        if node.type == "array_type":
            return self.type_name(node.child_by_field_name("element"))
        if node.type in ("scoped_type_identifier", "annotated_type"):
            return self.type_name(node.named_children[-1])
        return self.text(node)

    # Bodies

    def body(self, body: Node) -> Tuple[List[str], List[Tuple[str, int]]]:
        """Ordered name stream and call sites of a method body"""
        tokens: List[str] = []
        sites: List[Tuple[int, str, int]] = []
        stack = [body]
        while stack:
            node = stack.pop()
            kind = node.type
            if kind in SKIPPED_SUBTREES:
                continue
            if kind in NAME_NODES:
                tokens.append(self.text(node))
                continue
            if kind == "method_invocation":
                name = node.child_by_field_name("name")
                arguments = node.child_by_field_name("arguments")
                arg_count = sum(1 for arg in arguments.named_children if arg.type not in COMMENTS)
                sites.append((name.start_byte, self.text(name), arg_count))
            stack.extend(reversed(node.children))

        sites.sort(key=lambda site: site[0])
        return tokens, [(name, arg_count) for _, name, arg_count in sites]

    def identifiers(self, node: Node) -> List[str]:
        """Declared and referenced entity names, type names excluded"""
        names = []
        stack = [node]
        while stack:
            current = stack.pop()
            if current.type in SKIPPED_SUBTREES or current.type == "class_body":
                continue
            if current.type == "identifier":
                names.append(self.text(current))
                continue
            stack.extend(reversed(current.children))
        return names


class JavaSourceParser:
    """Parses Java sources into corpus records"""

    def __init__(self):
        self.language = Language(tsjava.language())
        self._local = threading.local()

    def _parser(self) -> Parser:
        # tree-sitter parsers are not shared between threads
        parser = getattr(self._local, "parser", None)
        if parser is None:
            parser = Parser(self.language)
            self._local.parser = parser
        return parser

    def parse_source(self, text: str, file_path: str = "<memory>") -> ParsedSource:
        """Parse one source file.

        Raises:
            ParseError: with the position of the first malformed construct
        """
        source = text.encode("utf-8")
        root = self._parser().parse(source).root_node

        if root.has_error:
            node = _first_error(root) or root
            message = f"Missing {node.type}" if node.is_missing else "Unsupported or malformed syntax"
            raise ParseError(message, file_path, node.start_point[0] + 1, node.start_point[1] + 1)

        walker = _FileWalker(source, file_path)
        walker.walk(root)
        return ParsedSource(classes=walker.classes, methods=walker.methods)

    def _parse_file(self, root: Path, rel_path: str) -> Union[ParsedSource, ParseError]:
        try:
            text = (root / rel_path).read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            return ParseError(f"Not UTF-8: {e.reason}", rel_path)
        try:
            return self.parse_source(text, rel_path)
        except ParseError as e:
            return e

    def ingest_directory(
        self,
        root: Union[str, Path],
        workers: int = defaults.PARSE_WORKERS,
        strict: bool = False,
    ) -> ParsedCorpus:
        """Parse every Java file under ``root``.

        Files are parsed in a thread pool and merged in relative-path order.
        Files that fail to parse are reported and skipped unless ``strict``.
        """
        root = Path(root)
        if not root.is_dir():
            raise EmptyCorpusError(f"Corpus root is not a directory: {root}")

        files = sorted(_iter_java_files(root))
        if not files:
            raise EmptyCorpusError(f"No .java files under {root}")

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            outcomes = list(pool.map(lambda rel: self._parse_file(root, rel), files))

        corpus = ParsedCorpus(files=files)
        for rel_path, outcome in zip(files, outcomes):
            if isinstance(outcome, ParseError):
                if strict:
                    raise outcome
                logger.warning("Skipping unparsable file", path=rel_path, line=outcome.line,
                               column=outcome.column, reason=outcome.reason)
                corpus.failures.append(ParseFailure(
                    file_path=rel_path, line=outcome.line, column=outcome.column, message=outcome.reason,
                ))
                continue
            corpus.classes.extend(outcome.classes)
            corpus.methods.extend(outcome.methods)

        logger.info("Parsed corpus", root=str(root), files=len(files), classes=len(corpus.classes),
                    methods=len(corpus.methods), failures=len(corpus.failures))
        return corpus


# Global parser instance
java_parser = JavaSourceParser()
