"""Aggregation metrics over benchmark answers: visibility ratios, respondent
consistency and the software-by-issue synthesis matrix."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from ..errors import NoAnswers, TooFewRespondents
from .answers import (
    TIMING_ORDER,
    AnswerRecord,
    Category,
    SupportScore,
    TimingBucket,
)

#: The follow-up questions asked per geometry item after "displayed".
FOLLOW_UP_QUESTIONS = ("position", "shading", "shape")
DISPLAYED_QUESTION = "displayed"

_TRUE_STRINGS = {"true", "yes", "y", "1", "displayed"}


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        return value.strip().lower() in _TRUE_STRINGS
    if isinstance(value, SupportScore):
        return value is SupportScore.FULL
    return bool(value)


def pairwise_equality(values: Sequence[Hashable]) -> float:
    """Fraction of equal unordered pairs among the answers.

    1.0 when everyone answers the same, 0.0 when all answers differ.
    """
    n = len(values)
    if n < 2:
        raise TooFewRespondents(f"need at least 2 answers, got {n}")
    counts = Counter(values)
    equal_pairs = sum(c * (c - 1) // 2 for c in counts.values())
    return equal_pairs / (n * (n - 1) // 2)


def _slot_answers(
    answers: Iterable[AnswerRecord], slot: str
) -> dict[tuple, dict[str, object]]:
    """question -> value per respondent for one grid slot."""
    per_respondent: dict[tuple, dict[str, object]] = defaultdict(dict)
    for record in answers:
        if record.category is not Category.GEOMETRY_ITEM:
            continue
        if record.item_slot != slot:
            continue
        per_respondent[record.respondent][record.question_id] = record.value
    return per_respondent


def visibility_ratio(answers: Iterable[AnswerRecord], slot: str) -> float:
    """Fraction of respondents that saw a shape in the slot."""
    votes = [
        _as_bool(qa[DISPLAYED_QUESTION])
        for qa in _slot_answers(answers, slot).values()
        if DISPLAYED_QUESTION in qa
    ]
    if not votes:
        raise NoAnswers(f"no displayed/not-displayed answers for slot {slot}")
    return sum(votes) / len(votes)


def consistency(answers: Iterable[AnswerRecord], slot: str) -> float:
    """Average pairwise equality over the three follow-up questions, skipping
    respondents that reported the shape as not displayed."""
    per_respondent = _slot_answers(answers, slot)
    eligible = [
        qa
        for qa in per_respondent.values()
        if _as_bool(qa.get(DISPLAYED_QUESTION, False))
    ]
    if len(eligible) < 2:
        raise TooFewRespondents(
            f"slot {slot}: need at least 2 respondents that saw the shape"
        )
    scores = []
    for question in FOLLOW_UP_QUESTIONS:
        values = [qa.get(question) for qa in eligible]
        scores.append(pairwise_equality(values))
    return sum(scores) / len(scores)


# --- synthesis matrix ---------------------------------------------------------

_SCORE_CATEGORIES = (
    Category.GEOREFERENCING,
    Category.SEMANTICS,
    Category.GEOMETRY,
    Category.VISUALIZATION,
    Category.EDITING,
    Category.QUERY,
    Category.ANALYSIS_TYPE_1,
    Category.ANALYSIS_TYPE_2,
    Category.EXPORT,
)


@dataclass
class SynthesisCell:
    score: SupportScore
    sample_count: int
    conflict: bool = False


@dataclass
class SynthesisMatrix:
    cells: dict[tuple[str, str], SynthesisCell]
    diagnostics: list[str]
    timing_distribution: dict[str, dict[TimingBucket, int]]
    success_rates: dict[str, float]

    def software(self) -> list[str]:
        return sorted({s for s, _ in self.cells})

    def issues(self) -> list[str]:
        return sorted({i for _, i in self.cells})


def reduce_scores(scores: Sequence[SupportScore]) -> tuple[SupportScore, bool]:
    """Deterministic multi-test reduction: average, snap to {0, 0.5, 1} with
    ties rounding down; a spread above 0.5 marks the cell as conflicting."""
    numeric = [s.value for s in scores if s is not SupportScore.NOT_APPLICABLE]
    if not numeric:
        return SupportScore.NOT_APPLICABLE, False
    mean = sum(numeric) / len(numeric)
    best = None
    for candidate in (SupportScore.NONE, SupportScore.PARTIAL, SupportScore.FULL):
        distance = abs(mean - candidate.value)
        if best is None or distance < best[0] - 1e-12:
            best = (distance, candidate)
    score = best[1]
    conflict = (max(numeric) - min(numeric)) > 0.5
    return score, conflict


def synthesis_matrix(answers: Iterable[AnswerRecord]) -> SynthesisMatrix:
    by_cell: dict[tuple[str, str], list[SupportScore]] = defaultdict(list)
    timing: dict[str, Counter] = defaultdict(Counter)
    totals: dict[str, int] = Counter()
    successes: dict[str, int] = Counter()
    diagnostics: list[str] = []

    for record in answers:
        if record.category in _SCORE_CATEGORIES and isinstance(
            record.value, SupportScore
        ):
            by_cell[(record.software, record.category.value)].append(record.value)
        elif record.category is Category.TIMING and isinstance(
            record.value, TimingBucket
        ):
            totals[record.dataset] += 1
            if record.value.successful:
                successes[record.dataset] += 1
                timing[record.dataset][record.value] += 1

    cells = {}
    for key, scores in by_cell.items():
        score, conflict = reduce_scores(scores)
        if conflict:
            diagnostics.append(
                f"{key[0]} / {key[1]}: conflicting scores "
                f"{sorted(s.value for s in scores if s is not SupportScore.NOT_APPLICABLE)}"
            )
        cells[key] = SynthesisCell(score, len(scores), conflict)

    distribution = {
        dataset: {bucket: counter.get(bucket, 0) for bucket in TIMING_ORDER}
        for dataset, counter in timing.items()
    }
    rates = {
        dataset: successes[dataset] / totals[dataset]
        for dataset in totals
        if totals[dataset]
    }
    return SynthesisMatrix(cells, diagnostics, distribution, rates)


def synthesis_markdown(matrix: SynthesisMatrix) -> str:
    issues = matrix.issues()
    lines = ["| Software | " + " | ".join(issues) + " |"]
    lines.append("| --- |" + " --- |" * len(issues))
    labels = {
        SupportScore.FULL: "1",
        SupportScore.PARTIAL: "0.5",
        SupportScore.NONE: "0",
        SupportScore.NOT_APPLICABLE: "n/a",
    }
    for software in matrix.software():
        row = [software]
        for issue in issues:
            cell = matrix.cells.get((software, issue))
            if cell is None:
                row.append("")
            else:
                row.append(labels[cell.score] + ("!" if cell.conflict else ""))
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def synthesis_csv(matrix: SynthesisMatrix) -> str:
    lines = ["software,issue,score,samples,conflict"]
    for (software, issue), cell in sorted(matrix.cells.items()):
        score = (
            "n/a"
            if cell.score is SupportScore.NOT_APPLICABLE
            else str(cell.score.value)
        )
        lines.append(
            f"{software},{issue},{score},{cell.sample_count},{int(cell.conflict)}"
        )
    return "\n".join(lines) + "\n"
