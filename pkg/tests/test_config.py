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


"""
Process settings and run configuration files
"""

from pathlib import Path

import pytest
from pydantic import ValidationError

from app.config import RunConfig, Settings, load_run_config
from app.models.context import ContextKind, ContextMode
from config import defaults
from config.validation import ConfigValidationError, validate_paths_exist, validate_run_config

pytestmark = pytest.mark.unit

EXAMPLE = Path(__file__).resolve().parent.parent / "config" / "run.example.cfg"


class TestRunConfigFile:
    def test_example_matches_defaults(self):
        config = load_run_config(EXAMPLE)
        assert config.mode == ContextMode.CHECKING
        assert config.l_max == defaults.L_MAX
        assert config.hidden_size == defaults.HIDDEN_SIZE
        assert config.size_buckets == list(defaults.SIZE_BUCKETS)
        assert config.ablation_grid == list(defaults.ABLATION_GRID)
        assert config.corpus_dir == Path("corpus")

    def test_overrides_win_and_none_is_ignored(self):
        config = load_run_config(EXAMPLE, seed=99, mode=None, output_path=None)
        assert config.seed == 99
        assert config.mode == ContextMode.CHECKING
        assert config.output_path is None

    def test_keys_are_case_insensitive(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("HIDDEN_SIZE=12\nMode=suggestion\n", encoding="utf-8")
        config = load_run_config(path)
        assert (config.hidden_size, config.mode) == (12, ContextMode.SUGGESTION)

    def test_contexts_keep_canonical_order(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("contexts=enclosing, internal,internal\n", encoding="utf-8")
        assert load_run_config(path).contexts == [ContextKind.INTERNAL, ContextKind.ENCLOSING]

    @pytest.mark.parametrize("text,buckets", [
        ("size_buckets=1-5,6-\n", [(1, 5), (6, None)]),
        ("size_buckets=1-100\n", [(1, 100)]),
    ])
    def test_size_buckets(self, tmp_path, text, buckets):
        path = tmp_path / "run.cfg"
        path.write_text(text, encoding="utf-8")
        assert load_run_config(path).size_buckets == buckets

    @pytest.mark.edge_case
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigValidationError):
            load_run_config(tmp_path / "absent.cfg")

    @pytest.mark.edge_case
    def test_key_without_value(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("epochs\n", encoding="utf-8")
        with pytest.raises(ConfigValidationError):
            load_run_config(path)

    @pytest.mark.edge_case
    @pytest.mark.parametrize("text", [
        "colour=blue\n",
        "ablation_grid=contexts,optimizers\n",
        "contexts=internal,callers\n",
        "momentum=1.0\n",
        "epochs=-1\n",
        "mode=training\n",
    ])
    def test_invalid_values(self, tmp_path, text):
        path = tmp_path / "run.cfg"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ValidationError):
            load_run_config(path)

    def test_frozen(self):
        with pytest.raises(ValidationError):
            RunConfig().seed = 1

    def test_checkpoint_paths(self, tmp_path):
        config = RunConfig(checkpoint_dir=tmp_path, mode=ContextMode.SUGGESTION)
        assert config.model_path == tmp_path / "model-suggestion.pt"
        assert config.embeddings_path == tmp_path / "embeddings.bin"
        assert config.cnn_path == tmp_path / "cnn.pt"


class TestValidation:
    """Cross-field checks applied by the CLI"""

    def test_defaults_are_valid(self):
        validate_run_config(RunConfig())

    @pytest.mark.parametrize("overrides", [
        {"contexts": []},
        {"beam_width": 0},
        {"l_max": 0},
        {"embedding_dim": 1},
        {"consistency_threshold": 1.5},
        {"size_buckets": [(1, 5), (5, 10)]},
        {"size_buckets": [(6, 5)]},
    ])
    def test_rejected(self, overrides):
        with pytest.raises(ConfigValidationError):
            validate_run_config(RunConfig(**overrides))

    def test_required_paths(self, tmp_path):
        validate_run_config(RunConfig(corpus_dir=tmp_path), require=["corpus_dir"])
        with pytest.raises(ConfigValidationError, match="corpus_dir"):
            validate_run_config(RunConfig(), require=["corpus_dir"])

    def test_paths_exist(self, tmp_path):
        validate_paths_exist({"here": tmp_path})
        with pytest.raises(ConfigValidationError, match="gone="):
            validate_paths_exist({"here": tmp_path, "gone": tmp_path / "gone"})


class TestSettings:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("PORT", raising=False)
        settings = Settings(_env_file=None)
        assert settings.port == defaults.API_PORT
        assert settings.default_k == defaults.BEAM_WIDTH

    def test_log_level_normalised(self):
        assert Settings(_env_file=None, log_level="debug").log_level == "DEBUG"

    @pytest.mark.edge_case
    def test_bad_log_settings(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, log_level="chatty")
        with pytest.raises(ValidationError):
            Settings(_env_file=None, log_format="xml")
