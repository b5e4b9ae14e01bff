"""Benchmark answer aggregation and round-trip interoperability reporting."""

from .answers import (
    ANSWERS_SCHEMA_VERSION,
    AnswerRecord,
    Category,
    SupportScore,
    TimingBucket,
    read_answers_csv,
    read_answers_jsonl,
    write_answers_csv,
)
from .metrics import (
    FOLLOW_UP_QUESTIONS,
    SynthesisMatrix,
    consistency,
    pairwise_equality,
    reduce_scores,
    synthesis_csv,
    synthesis_markdown,
    synthesis_matrix,
    visibility_ratio,
)
from .roundtrip import (
    SIZE_RATIO_BAND,
    InteropReport,
    report_as_json,
    roundtrip_report,
)

__all__ = [
    "ANSWERS_SCHEMA_VERSION",
    "AnswerRecord",
    "Category",
    "FOLLOW_UP_QUESTIONS",
    "InteropReport",
    "SIZE_RATIO_BAND",
    "SupportScore",
    "SynthesisMatrix",
    "TimingBucket",
    "consistency",
    "pairwise_equality",
    "read_answers_csv",
    "read_answers_jsonl",
    "reduce_scores",
    "report_as_json",
    "roundtrip_report",
    "synthesis_csv",
    "synthesis_markdown",
    "synthesis_matrix",
    "visibility_ratio",
    "write_answers_csv",
]
