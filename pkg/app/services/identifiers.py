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

"""Identifier splitting into lowercase sub-tokens and camelCase recomposition"""

import re
from typing import Iterable, List

# Single-letter Hungarian prefixes plus "str", only when an uppercase letter follows
HUNGARIAN_PREFIX = re.compile(r"^_*(?:str|[msgpbnfic])(?=[A-Z])")
NON_LETTERS = re.compile(r"[^A-Za-z]+")
CAMEL_PIECE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")

MIN_SUBTOKEN_LENGTH = 2


class EmptyName(Exception):
    """Identifier has no sub-token of two or more letters"""
    pass


def split_identifier(identifier: str) -> List[str]:
    """Split an identifier into lowercase sub-tokens.

    Splits on underscores, digits and any other non-letter, then on camelCase
    and acronym boundaries. Pieces shorter than two characters are dropped.

    >>> split_identifier("parseHTTP_Response2")
    ['parse', 'http', 'response']
    """
    stripped = HUNGARIAN_PREFIX.sub("", identifier)
    subtokens = []
    for word in NON_LETTERS.split(stripped):
        for piece in CAMEL_PIECE.findall(word):
            if len(piece) >= MIN_SUBTOKEN_LENGTH:
                subtokens.append(piece.lower())
    return subtokens


def split_all(identifiers: Iterable[str]) -> List[str]:
    """Concatenate the sub-tokens of several identifiers, order preserved"""
    return [subtoken for identifier in identifiers for subtoken in split_identifier(identifier)]


def recompose(subtokens: List[str]) -> str:
    """Render sub-tokens as a camelCase identifier"""
    if not subtokens:
        return ""
    head, *tail = subtokens
    return head.lower() + "".join(token[:1].upper() + token[1:].lower() for token in tail)


def require_subtokens(identifier: str) -> List[str]:
    """split_identifier, raising EmptyName instead of returning []"""
    subtokens = split_identifier(identifier)
    if not subtokens:
        raise EmptyName(f"No sub-tokens in name {identifier!r}")
    return subtokens
