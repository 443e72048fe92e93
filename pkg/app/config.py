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

"""Configuration settings for namecheck.

Two layers: ``Settings`` holds process settings read from the environment
and ``.env``; ``RunConfig`` holds everything a pipeline run needs and is
read from a plain-text key=value file.
"""

from pathlib import Path
from typing import Any, List, Optional, Tuple

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from config import defaults
from config.validation import ConfigValidationError
from app.models.context import ContextKind, ContextMode


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"  # Ignore extra fields in .env
    )

    # Application
    app_name: str = "namecheck"
    version: str = "0.1.0"
    debug: bool = False

    # Server
    host: str = defaults.API_HOST
    port: int = defaults.API_PORT

    # Logging
    log_level: str = defaults.LOG_LEVEL
    log_format: str = defaults.LOG_FORMAT  # "console" or "json"

    # Inference
    checkpoint_dir: Path = Path("checkpoints")
    default_k: int = defaults.BEAM_WIDTH
    parse_workers: int = defaults.PARSE_WORKERS

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Ensure the log level is one the logging module knows."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {', '.join(valid_levels)}")
        return v.upper()

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        if v.lower() not in ("console", "json"):
            raise ValueError("Log format must be 'console' or 'json'")
        return v.lower()


def _split_list(v: Any) -> Any:
    if isinstance(v, str):
        return [item.strip() for item in v.split(",") if item.strip()]
    return v


class RunConfig(BaseModel):
    """Hyper-parameters, switches and paths of one pipeline run"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # Paths
    corpus_dir: Optional[Path] = None
    checkpoint_dir: Path = Path("checkpoints")
    output_path: Optional[Path] = None

    mode: ContextMode = ContextMode.CHECKING

    # Contexts
    l_max: int = defaults.L_MAX
    contexts: List[ContextKind] = Field(default_factory=lambda: [ContextKind(k) for k in defaults.CONTEXT_KINDS])

    # GloVe
    embedding_dim: int = defaults.EMBEDDING_DIM
    glove_window: int = Field(default=defaults.GLOVE_WINDOW, ge=1)
    glove_x_max: float = Field(default=defaults.GLOVE_X_MAX, gt=0)
    glove_alpha: float = Field(default=defaults.GLOVE_ALPHA, gt=0)
    glove_epochs: int = Field(default=defaults.GLOVE_EPOCHS, ge=0)
    glove_learning_rate: float = Field(default=defaults.GLOVE_LEARNING_RATE, ge=0)
    min_count: int = Field(default=defaults.MIN_COUNT, ge=1)

    # Encoder-decoder
    hidden_size: int = Field(default=defaults.HIDDEN_SIZE, ge=1)
    beam_width: int = defaults.BEAM_WIDTH
    max_name_length: int = Field(default=defaults.MAX_NAME_LENGTH, ge=1)
    grad_clip: float = Field(default=defaults.GRAD_CLIP, gt=0)
    learning_rate: float = Field(default=defaults.LEARNING_RATE, ge=0)
    momentum: float = Field(default=defaults.MOMENTUM, ge=0, lt=1)
    epochs: int = Field(default=defaults.EPOCHS, ge=0)
    batch_size: int = Field(default=defaults.BATCH_SIZE, ge=1)
    noncopy_init: float = defaults.NONCOPY_INIT

    # Ablation switches
    use_copy: bool = True
    use_noncopy: bool = True
    learn_context_weights: bool = True

    # Consistency classifier
    cnn_epochs: int = Field(default=defaults.CNN_EPOCHS, ge=0)
    cnn_learning_rate: float = Field(default=defaults.CNN_LEARNING_RATE, ge=0)
    cnn_negatives: int = Field(default=defaults.CNN_NEGATIVES, ge=1)
    consistency_threshold: float = defaults.CONSISTENCY_THRESHOLD

    # Evaluation
    size_buckets: List[Tuple[int, Optional[int]]] = Field(default_factory=lambda: list(defaults.SIZE_BUCKETS))
    ablation_grid: List[str] = Field(default_factory=lambda: list(defaults.ABLATION_GRID))
    ablation_checking: bool = True

    seed: int = defaults.SEED

    @field_validator("contexts", "ablation_grid", mode="before")
    @classmethod
    def split_lists(cls, v: Any) -> Any:
        return _split_list(v)

    @field_validator("contexts")
    @classmethod
    def dedupe_contexts(cls, v: List[ContextKind]) -> List[ContextKind]:
        """Keep the canonical context order whatever order the file lists them in"""
        order = [ContextKind(k) for k in defaults.CONTEXT_KINDS]
        return [kind for kind in order if kind in v]

    @field_validator("ablation_grid")
    @classmethod
    def validate_grid(cls, v: List[str]) -> List[str]:
        unknown = [axis for axis in v if axis not in defaults.ABLATION_GRID]
        if unknown:
            raise ValueError(f"Unknown ablation axes: {', '.join(unknown)}")
        return v

    @field_validator("size_buckets", mode="before")
    @classmethod
    def parse_buckets(cls, v: Any) -> Any:
        """Parse ``1-5,6-10,26-`` into (low, high) pairs, open upper end as None"""
        if not isinstance(v, str):
            return v
        buckets = []
        for item in _split_list(v):
            low, _, high = item.partition("-")
            buckets.append((int(low), int(high) if high else None))
        return buckets

    @property
    def embeddings_path(self) -> Path:
        return self.checkpoint_dir / "embeddings.bin"

    @property
    def model_path(self) -> Path:
        return self.checkpoint_dir / f"model-{self.mode.value}.pt"

    @property
    def cnn_path(self) -> Path:
        return self.checkpoint_dir / "cnn.pt"


def load_run_config(path: Optional[Path] = None, **overrides: Any) -> RunConfig:
    """Load a run configuration from a key=value file, applying overrides.

    Overrides with value ``None`` are ignored so CLI flags that were not
    given leave the file value in place.
    """
    values: dict = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigValidationError(f"Config file not found: {path}")
        values = {key.strip().lower(): value for key, value in dotenv_values(path).items()}
        empty = [key for key, value in values.items() if value is None]
        if empty:
            raise ConfigValidationError(f"Keys without a value: {', '.join(empty)}")

    values.update({key: value for key, value in overrides.items() if value is not None})
    return RunConfig(**values)


# Global settings instance
settings = Settings()
