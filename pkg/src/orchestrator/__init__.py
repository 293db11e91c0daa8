"""Command orchestration: config building, dispatch and report files."""

from src.orchestrator.builder import BuiltSequence, build_family, build_sequence
from src.orchestrator.runner import Command, RunResult, run
from src.orchestrator.validate import ValidationResult, run_validate

__all__ = [
    "BuiltSequence",
    "Command",
    "RunResult",
    "ValidationResult",
    "build_family",
    "build_sequence",
    "run",
    "run_validate",
]
