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

"""Configuration validation for namecheck"""

from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Optional, Tuple

if TYPE_CHECKING:
    from app.config import RunConfig


class ConfigValidationError(Exception):
    pass


def validate_paths_exist(paths: dict[str, Optional[Path]]) -> None:
    """Validate that every named path is set and exists"""
    missing = []
    for name, path in paths.items():
        if path is None or not Path(path).exists():
            missing.append(f"{name}={path}")

    if missing:
        raise ConfigValidationError(f"Missing required paths: {', '.join(missing)}")


def validate_size_buckets(buckets: Iterable[Tuple[int, Optional[int]]]) -> None:
    """Validate that size buckets are ascending and non-overlapping"""
    previous_high = 0
    for low, high in buckets:
        if low <= previous_high:
            raise ConfigValidationError(f"Size bucket starting at {low} overlaps the previous one")
        if high is not None and high < low:
            raise ConfigValidationError(f"Size bucket {low}-{high} is empty")
        if high is None:
            previous_high = float("inf")  # type: ignore[assignment]
        else:
            previous_high = high


def validate_run_config(config: "RunConfig", require: Iterable[str] = ()) -> None:
    """Validate cross-field constraints of a run configuration.

    ``require`` names path keys that the calling command needs to exist
    (for example ``corpus_dir`` for training, ``checkpoint_dir`` for checking).
    """
    if not config.contexts:
        raise ConfigValidationError("At least one context kind must be active")

    if config.beam_width < 1:
        raise ConfigValidationError("beam_width must be at least 1")

    if config.l_max < 1:
        raise ConfigValidationError("l_max must be at least 1")

    if config.embedding_dim < 2:
        raise ConfigValidationError("embedding_dim must be at least 2")

    if not 0.0 <= config.consistency_threshold <= 1.0:
        raise ConfigValidationError("consistency_threshold must lie in [0, 1]")

    validate_size_buckets(config.size_buckets)

    validate_paths_exist({name: getattr(config, name) for name in require})
