"""Diagnostics: configuration sweeps, support positions, abstract lengths."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from statistics import mean
from typing import Iterable, Mapping, Sequence

from .alignment import (
    DEFAULT_THRESHOLDS,
    AlignmentThresholds,
    SummarySelection,
    SupportLink,
    consolidate,
    find_supports,
)
from .corpus import GoldSummary, Transcript
from .evaluation import evaluate_corpus
from .metrics import PRF
from .summarizer import Abstract, BackendError, summarize_windows
from .windowing import Window, WindowConfig, build_windows, grid_configs

logger = logging.getLogger(__name__)

POSITION_BINS = 5
LENGTH_BIN_WIDTH = 50
LENGTH_BIN_MAX = 1000


@dataclass(frozen=True)
class MeetingRun:
    """Everything the pipeline produced for one meeting at one configuration."""

    transcript: Transcript
    config: WindowConfig
    windows: tuple[Window, ...]
    abstracts: tuple[Abstract, ...]
    links: tuple[SupportLink, ...]
    selection: SummarySelection


def run_meeting(
    transcript: Transcript,
    config: WindowConfig,
    backend,
    thresholds: AlignmentThresholds = DEFAULT_THRESHOLDS,
    max_words: int | None = None,
) -> MeetingRun:
    """Window, summarize, align, and consolidate a single meeting."""
    windows = build_windows(transcript, config)
    abstracts = summarize_windows(windows, backend, max_words=max_words)
    by_index = {w.window_index: w for w in windows}
    links: list[SupportLink] = []
    for abstract in abstracts:
        links.extend(find_supports(by_index[abstract.window_index], abstract, transcript, thresholds))
    selection = consolidate(links, transcript)
    return MeetingRun(
        transcript=transcript,
        config=config,
        windows=tuple(windows),
        abstracts=tuple(abstracts),
        links=tuple(links),
        selection=selection,
    )


@dataclass(frozen=True)
class SweepRecord:
    """Results for one (stride, window) combination; error set when it failed."""

    stride: int
    window: int
    rouge1: PRF | None = None
    rouge2: PRF | None = None
    selection: PRF | None = None
    pct_supporting_per_meeting: float | None = None
    pct_supporting_per_window: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    """One record per grid configuration."""

    records: tuple[SweepRecord, ...]

    def ranked(self) -> list[SweepRecord]:
        """Records sorted by ROUGE-2 F1, best first; failed configs last."""
        return sorted(
            self.records,
            key=lambda rec: (
                rec.error is not None,
                -(rec.rouge2.f1 if rec.rouge2 is not None else 0.0),
                rec.stride,
                rec.window,
            ),
        )


def sweep(
    transcripts: Mapping[str, Transcript],
    golds: Mapping[str, Sequence[GoldSummary]],
    backend,
    thresholds: AlignmentThresholds = DEFAULT_THRESHOLDS,
    max_words: int | None = None,
) -> SweepResult:
    """Run the full pipeline for every grid configuration.

    A backend failure marks that configuration's record and the sweep moves
    on to the remaining ones.
    """
    records = []
    for config in grid_configs():
        try:
            runs = {
                meeting_id: run_meeting(transcripts[meeting_id], config, backend, thresholds, max_words)
                for meeting_id in sorted(transcripts)
            }
        except BackendError as exc:
            logger.warning("sweep config (stride=%d, window=%d) failed: %s", config.stride, config.window, exc)
            records.append(SweepRecord(stride=config.stride, window=config.window, error=str(exc)))
            continue
        selections = {meeting_id: run.selection for meeting_id, run in runs.items()}
        report = evaluate_corpus(selections, transcripts, golds)
        per_meeting, per_window = support_percentages(
            selections, transcripts, {meeting_id: run.windows for meeting_id, run in runs.items()}
        )
        records.append(
            SweepRecord(
                stride=config.stride,
                window=config.window,
                rouge1=report.rouge1,
                rouge2=report.rouge2,
                selection=report.selection,
                pct_supporting_per_meeting=per_meeting,
                pct_supporting_per_window=per_window,
            )
        )
    return SweepResult(records=tuple(records))


@dataclass(frozen=True)
class PositionHistogram:
    """Counts of supporting utterances over five relative-position bins."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != POSITION_BINS:
            raise ValueError(f"expected {POSITION_BINS} bins, got {len(self.counts)}")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __add__(self, other: "PositionHistogram") -> "PositionHistogram":
        return PositionHistogram(tuple(a + b for a, b in zip(self.counts, other.counts)))

    @classmethod
    def empty(cls) -> "PositionHistogram":
        return cls((0,) * POSITION_BINS)


def position_histogram(
    links: Iterable[SupportLink],
    windows: Sequence[Window],
    transcript: Transcript,
) -> PositionHistogram:
    """Where supporting utterances start within their window's realized span.

    The relative position divides by the window's realized token count, so
    it stays in [0, 1) even for short trailing windows.
    """
    by_index = {w.window_index: w for w in windows}
    counts = [0] * POSITION_BINS
    for link in links:
        window = by_index.get(link.window_index)
        if window is None:
            raise ValueError(f"link references window {link.window_index}, which is not present")
        utterance = transcript.utterances[link.utterance_index]
        relpos = (utterance.start_offset - window.first_token_offset) / window.token_count
        counts[min(POSITION_BINS - 1, int(relpos * POSITION_BINS))] += 1
    return PositionHistogram(tuple(counts))


@dataclass(frozen=True)
class AbstractLengthStats:
    """Mean character length plus a fixed-width histogram of abstract lengths."""

    mean_chars: float
    bin_width: int
    counts: tuple[int, ...]
    overflow: int

    @property
    def total(self) -> int:
        return sum(self.counts) + self.overflow


def abstract_length_stats(abstracts: Sequence[Abstract]) -> AbstractLengthStats:
    """Character-length distribution over abstracts (50-char bins up to 1000)."""
    if not abstracts:
        raise ValueError("abstract_length_stats needs at least one abstract")
    counts = [0] * (LENGTH_BIN_MAX // LENGTH_BIN_WIDTH)
    overflow = 0
    for abstract in abstracts:
        if abstract.char_length >= LENGTH_BIN_MAX:
            overflow += 1
        else:
            counts[abstract.char_length // LENGTH_BIN_WIDTH] += 1
    return AbstractLengthStats(
        mean_chars=mean(a.char_length for a in abstracts),
        bin_width=LENGTH_BIN_WIDTH,
        counts=tuple(counts),
        overflow=overflow,
    )


def support_percentages(
    selections: Mapping[str, SummarySelection],
    transcripts: Mapping[str, Transcript],
    windows: Mapping[str, Sequence[Window]],
) -> tuple[float, float]:
    """(% supporting utterances per meeting, % per window), each averaged.

    Per meeting: share of the meeting's utterances that were selected.
    Per window: share of the window's utterances that support its abstract,
    averaged over every window of every meeting.
    """
    meeting_pcts = []
    window_pcts = []
    for meeting_id in sorted(transcripts):
        transcript = transcripts[meeting_id]
        selection = selections[meeting_id]
        meeting_pcts.append(100.0 * len(selection.utterance_indices) / len(transcript.utterances))
        supported = Counter(link.window_index for link in selection.links)
        for window in windows[meeting_id]:
            window_pcts.append(100.0 * supported[window.window_index] / len(window.utterance_indices))
    per_meeting = mean(meeting_pcts) if meeting_pcts else 0.0
    per_window = mean(window_pcts) if window_pcts else 0.0
    return per_meeting, per_window
