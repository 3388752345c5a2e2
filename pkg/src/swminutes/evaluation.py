"""Scoring selections against gold summaries; summary-length statistics."""

from __future__ import annotations

from dataclasses import dataclass
from statistics import mean
from typing import Mapping, Sequence

from .alignment import SummarySelection
from .corpus import CorpusError, GoldSummary, Transcript
from .metrics import PRF, mean_prf, rouge_n_multi


@dataclass(frozen=True)
class MeetingReport:
    """Evaluation results for one meeting."""

    meeting_id: str
    rouge1: PRF
    rouge2: PRF
    selection: PRF | None
    pct_utterances: float
    words: int


@dataclass(frozen=True)
class EvalReport:
    """Corpus-level evaluation: unweighted means over the meeting reports."""

    rouge1: PRF
    rouge2: PRF
    selection: PRF | None
    pct_utterances: float
    words: float
    per_meeting: tuple[MeetingReport, ...]


def evaluate_rouge(
    selection: SummarySelection,
    transcript: Transcript,
    golds: Sequence[GoldSummary],
) -> tuple[PRF, PRF]:
    """ROUGE-1 and ROUGE-2 of a selection against the meeting's references.

    The candidate is the concatenated tokens of the selected utterances in
    transcript order; extractive golds are rendered the same way, abstract
    golds are tokenized from their text.
    """
    if not golds:
        raise CorpusError(f"no gold summaries for meeting {transcript.meeting_id!r}")
    n = len(transcript.utterances)
    for i in selection.utterance_indices:
        if i >= n:
            raise CorpusError(f"selection references utterance {i}, but meeting "
                              f"{transcript.meeting_id!r} has {n} utterances")
    candidate = [tok for i in selection.utterance_indices for tok in transcript.utterances[i].tokens]
    references = [gold.reference_tokens(transcript) for gold in golds]
    return rouge_n_multi(candidate, references, 1), rouge_n_multi(candidate, references, 2)


def selection_prf(pred: SummarySelection, gold: GoldSummary) -> PRF | None:
    """Set precision/recall/F over utterance indices; None for abstract-only golds."""
    if gold.utterance_indices is None:
        return None
    pred_set = set(pred.utterance_indices)
    gold_set = set(gold.utterance_indices)
    overlap = len(pred_set & gold_set)
    return PRF.from_counts(overlap, len(pred_set), len(gold_set))


def length_stats(selection: SummarySelection, transcript: Transcript) -> tuple[float, int]:
    """(percent of utterances selected, total words over selected utterances)."""
    pct = 100.0 * len(selection.utterance_indices) / len(transcript.utterances)
    words = sum(len(transcript.utterances[i].tokens) for i in selection.utterance_indices)
    return pct, words


def evaluate_meeting(
    selection: SummarySelection,
    transcript: Transcript,
    golds: Sequence[GoldSummary],
) -> MeetingReport:
    rouge1, rouge2 = evaluate_rouge(selection, transcript, golds)
    per_gold = [score for gold in golds if (score := selection_prf(selection, gold)) is not None]
    pct, words = length_stats(selection, transcript)
    return MeetingReport(
        meeting_id=transcript.meeting_id,
        rouge1=rouge1,
        rouge2=rouge2,
        selection=mean_prf(per_gold) if per_gold else None,
        pct_utterances=pct,
        words=words,
    )


def evaluate_corpus(
    selections: Mapping[str, SummarySelection],
    transcripts: Mapping[str, Transcript],
    golds: Mapping[str, Sequence[GoldSummary]],
) -> EvalReport:
    """Evaluate every meeting and average the per-meeting scores, unweighted.

    The golds of one meeting act as multiple references of a single
    evaluation unit, not as separate units.
    """
    if not selections:
        raise ValueError("nothing to evaluate: no selections")
    reports = []
    for meeting_id in sorted(selections):
        transcript = transcripts.get(meeting_id)
        if transcript is None:
            raise CorpusError(f"no transcript for meeting {meeting_id!r}")
        reports.append(evaluate_meeting(selections[meeting_id], transcript, golds.get(meeting_id, ())))
    with_selection = [r.selection for r in reports if r.selection is not None]
    return EvalReport(
        rouge1=mean_prf([r.rouge1 for r in reports]),
        rouge2=mean_prf([r.rouge2 for r in reports]),
        selection=mean_prf(with_selection) if with_selection else None,
        pct_utterances=mean(r.pct_utterances for r in reports),
        words=mean(float(r.words) for r in reports),
        per_meeting=tuple(reports),
    )


def _prf_dict(score: PRF | None) -> dict | None:
    if score is None:
        return None
    return {"p": score.precision, "r": score.recall, "f": score.f1}


def report_to_dict(report: EvalReport) -> dict:
    """JSON-ready form of an evaluation report."""
    return {
        "rouge1": _prf_dict(report.rouge1),
        "rouge2": _prf_dict(report.rouge2),
        "selection": _prf_dict(report.selection),
        "pct_utterances": report.pct_utterances,
        "words": report.words,
        "per_meeting": [
            {
                "meeting_id": m.meeting_id,
                "rouge1": _prf_dict(m.rouge1),
                "rouge2": _prf_dict(m.rouge2),
                "selection": _prf_dict(m.selection),
                "pct_utterances": m.pct_utterances,
                "words": m.words,
            }
            for m in report.per_meeting
        ],
    }


def _row(label: str, rouge1: PRF, rouge2: PRF, pct: float, words: float) -> str:
    cells = [
        f"{label:<16}",
        f"{100 * rouge1.precision:6.1f}", f"{100 * rouge1.recall:6.1f}", f"{100 * rouge1.f1:6.1f}",
        f"{100 * rouge2.precision:6.1f}", f"{100 * rouge2.recall:6.1f}", f"{100 * rouge2.f1:6.1f}",
        f"{pct:7.1f}", f"{words:8.0f}",
    ]
    return " ".join(cells)


def format_report_table(report: EvalReport, system_name: str = "sw") -> str:
    """Aligned plain-text table: ROUGE-1/2 P/R/F plus summary length columns."""
    header = (
        f"{'System':<16} {'R1-P':>6} {'R1-R':>6} {'R1-F':>6} "
        f"{'R2-P':>6} {'R2-R':>6} {'R2-F':>6} {'%Uttrs':>7} {'#Wrds':>8}"
    )
    lines = [header, _row(system_name, report.rouge1, report.rouge2, report.pct_utterances, report.words)]
    if len(report.per_meeting) > 1:
        for m in report.per_meeting:
            lines.append(_row(f"  {m.meeting_id}", m.rouge1, m.rouge2, m.pct_utterances, float(m.words)))
    return "\n".join(lines)
