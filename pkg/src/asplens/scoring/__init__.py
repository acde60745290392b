"""Spec evaluation: fact ingestion, body compilation, violation counting,
cost scoring, and spec ranking."""

from .backend import BACKEND, available_backends, execute
from .compile import CompiledBody, EncodedFacts, UnsupportedBody, compile_body
from .engine import (
    DEFAULT_WITNESS_CAP,
    REPORT_SCHEMA_VERSION,
    UnknownConstraint,
    UnknownSpec,
    Violation,
    ViolationReport,
    evaluate_constraint,
    evaluate_spec,
    rank_specs,
    report_to_json,
    report_to_obj,
    reports_to_json,
    reports_to_obj,
    shared_violations,
    violations_of_constraint,
)
from .facts import FactSet, facts_from_program, facts_from_source

__all__ = [
    "BACKEND",
    "available_backends",
    "execute",
    "CompiledBody",
    "EncodedFacts",
    "UnsupportedBody",
    "compile_body",
    "DEFAULT_WITNESS_CAP",
    "REPORT_SCHEMA_VERSION",
    "UnknownConstraint",
    "UnknownSpec",
    "Violation",
    "ViolationReport",
    "evaluate_constraint",
    "evaluate_spec",
    "rank_specs",
    "report_to_json",
    "report_to_obj",
    "reports_to_json",
    "reports_to_obj",
    "shared_violations",
    "violations_of_constraint",
    "FactSet",
    "facts_from_program",
    "facts_from_source",
]
