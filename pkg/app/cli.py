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
namecheck command-line interface
Ingest Java corpora, train models, check and suggest method names
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import structlog
from pydantic import ValidationError

from app.config import RunConfig, load_run_config, settings
from app.log import configure_logging
from app.models.context import ContextMode
from app.models.tasks import ConsistencyLabel
from app.services.ablation_service import ablation_run
from app.services.corpus_store import CorpusStoreError, read_corpus
from app.services.evaluation_service import evaluate, load_gold, load_predictions, render_report
from app.services.java_parser import EmptyCorpusError
from app.services.pipeline_service import pipeline_service, read_names, write_jsonl
from config.validation import ConfigValidationError, validate_paths_exist, validate_run_config

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def print_success(text: str):
    """Print success message"""
    print(f"✓ {text}", file=sys.stderr)


def print_info(text: str):
    """Print info message"""
    print(f"ℹ {text}", file=sys.stderr)


def emit(lines: List[str], out: Optional[Path]) -> None:
    """Results go to stdout unless they were already written to --out"""
    if out is None:
        for line in lines:
            print(line)


class NameCheckCommands:
    """One method per sub-command; each returns an exit code"""

    def __init__(self, args: argparse.Namespace):
        self.args = args

    def config(self, **overrides) -> RunConfig:
        values = {"seed": self.args.seed, "mode": self.args.mode, "output_path": self.args.out}
        values.update(overrides)
        return load_run_config(self.args.config, **values)

    def ingest(self) -> int:
        if self.args.out is None:
            raise ConfigValidationError("ingest needs --out DIR")
        diagnostics = pipeline_service.ingest(self.args.root, self.args.out, workers=self.args.workers,
                                              strict=self.args.strict)
        print_success(f"Parsed {diagnostics.methods} methods in {diagnostics.classes} classes "
                      f"from {diagnostics.files} files")
        print_info(f"Call sites: {diagnostics.call_sites}, resolved edges: {diagnostics.resolved_edges}, "
                   f"unresolved: {diagnostics.unresolved_sites}, parse failures: {len(diagnostics.parse_failures)}")
        return EXIT_OK

    def contexts(self) -> int:
        config = self.config()
        validate_run_config(config, require=["corpus_dir"])
        if config.output_path is None:
            raise ConfigValidationError("contexts needs output_path or --out")
        count = pipeline_service.export_contexts(config, config.output_path)
        print_success(f"Exported {count} context bundles to {config.output_path}")
        return EXIT_OK

    def train(self) -> int:
        config = self.config(output_path=None)
        validate_run_config(config, require=["corpus_dir"])
        summary = pipeline_service.train(config)
        print_success(f"Trained {summary.mode.value} model on {summary.methods} methods "
                      f"(vocabulary {summary.vocab_size})")
        if summary.losses:
            print_info(f"Final loss: {summary.losses[-1]:.6f}")
        return EXIT_OK

    def check(self) -> int:
        config = self.config(mode=ContextMode.CHECKING.value)
        validate_run_config(config, require=["corpus_dir"])
        validate_paths_exist({"embeddings": config.embeddings_path, "model": config.model_path,
                              "classifier": config.cnn_path})
        names = read_names(self.args.names) if self.args.names else None
        verdicts = pipeline_service.check(config, names)
        emit(write_jsonl(None, (v.to_export() for v in verdicts)), config.output_path)
        inconsistent = sum(v.label == ConsistencyLabel.INCONSISTENT for v in verdicts)
        skipped = sum(v.label == ConsistencyLabel.SKIPPED for v in verdicts)
        print_success(f"Checked {len(verdicts)} methods, {inconsistent} flagged inconsistent, {skipped} skipped")
        return EXIT_OK

    def suggest(self) -> int:
        if self.args.k is not None and self.args.k < 1:
            raise ConfigValidationError("--k must be at least 1")
        config = self.config(mode=self.args.mode or ContextMode.SUGGESTION.value)
        validate_run_config(config, require=["corpus_dir"])
        k = self.args.k if self.args.k is not None else min(settings.default_k, config.beam_width)
        if k > config.beam_width:
            raise ConfigValidationError(f"--k {k} exceeds beam_width {config.beam_width}")
        validate_paths_exist({"embeddings": config.embeddings_path, "model": config.model_path})
        suggestions = pipeline_service.suggest(config, k)
        emit(write_jsonl(None, (s.to_export() for s in suggestions)), config.output_path)
        skipped = sum(s.skipped is not None for s in suggestions)
        print_success(f"Suggested names for {len(suggestions)} methods, {skipped} skipped")
        return EXIT_OK

    def eval(self) -> int:
        validate_paths_exist({"predictions": self.args.predictions, "gold": self.args.gold})
        config = load_run_config(self.args.config) if self.args.config else RunConfig()
        validate_run_config(config)
        training_names = None
        if self.args.training_names:
            corpus, _ = read_corpus(self.args.training_names)
            training_names = [m.name for m in corpus.methods]
        report = evaluate(load_predictions(self.args.predictions), load_gold(self.args.gold),
                          config.size_buckets, k=self.args.k or settings.default_k,
                          training_names=training_names)
        self._write_report(render_report(report, self.args.format))
        return EXIT_OK

    def ablate(self) -> int:
        config = self.config()
        validate_run_config(config, require=["corpus_dir"])
        report = ablation_run(config)
        self._write_report(render_report(report, self.args.format))
        return EXIT_OK

    def _write_report(self, text: str) -> None:
        if self.args.out:
            Path(self.args.out).write_text(text + "\n", encoding="utf-8")
            print_success(f"Report written to {self.args.out}")
        else:
            print(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key=value run configuration file")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--mode", choices=[m.value for m in ContextMode], help="context mode")
    common.add_argument("--k", type=int, help="number of ranked suggestions")
    common.add_argument("--out", type=Path, help="output file or directory")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="namecheck",
        description="Method name consistency checking and suggestion for Java",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s ingest src/ --out corpus/             # Parse a Java tree
  %(prog)s train --config run.cfg                # Train embeddings, model and classifier
  %(prog)s check --config run.cfg --out v.jsonl  # Consistency verdicts
  %(prog)s suggest --config run.cfg --k 5        # Ranked name suggestions
  %(prog)s eval --predictions s.jsonl --gold corpus/
  %(prog)s ablate --config run.cfg --format text
        """,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    ingest = commands.add_parser("ingest", parents=[common], help="parse a Java source tree")
    ingest.add_argument("root", type=Path)
    ingest.add_argument("--workers", type=int, default=settings.parse_workers)
    ingest.add_argument("--strict", action="store_true", help="fail on the first unparsable file")

    commands.add_parser("contexts", parents=[common], help="export padded context bundles")
    commands.add_parser("train", parents=[common], help="train checkpoints for the configured mode")

    check = commands.add_parser("check", parents=[common], help="consistency verdicts")
    check.add_argument("--names", type=Path, help="JSON lines of {method_id, name} to check instead")

    commands.add_parser("suggest", parents=[common], help="ranked name suggestions")

    evaluate_cmd = commands.add_parser("eval", parents=[common], help="score predictions against gold names")
    evaluate_cmd.add_argument("--predictions", type=Path, required=True)
    evaluate_cmd.add_argument("--gold", type=Path, required=True)
    evaluate_cmd.add_argument("--training-names", type=Path, help="corpus directory for the unseen-name view")
    evaluate_cmd.add_argument("--format", choices=["json", "text"], default="json")

    ablate = commands.add_parser("ablate", parents=[common], help="train and score the ablation grid")
    ablate.add_argument("--format", choices=["json", "text"], default="json")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    configure_logging(args.log_level or settings.log_level, settings.log_format)
    commands = NameCheckCommands(args)
    try:
        return getattr(commands, args.command)()
    except (ConfigValidationError, ValidationError, EmptyCorpusError) as e:
        logger.error("Invalid configuration or input", command=args.command, error=str(e))
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_USAGE
    except CorpusStoreError as e:
        logger.error("Corpus store unreadable", command=args.command, error=str(e))
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error("Command failed", command=args.command, error=str(e), exc_info=True)
        print(f"✗ {args.command} failed: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
