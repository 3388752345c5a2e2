"""Supporting-utterance identification and meeting-level consolidation.

A window utterance supports the window's abstract when it is longer than
the token gate and its LCS against the abstract clears both ratio
thresholds; the meeting summary is the union of supporting utterances.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Transcript, tokenize
from .metrics import rouge_l
from .summarizer import Abstract
from .windowing import Window

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlignmentThresholds:
    """Gates a window utterance must clear to support an abstract.

    ``min_utterance_tokens`` and both ratio thresholds are strict
    (an utterance of exactly ``min_utterance_tokens`` tokens, or with
    recall/precision exactly at a threshold, does not qualify).
    """

    min_utterance_tokens: int = 5
    min_recall: float = 0.5
    min_precision: float = 0.1

    def __post_init__(self):
        if self.min_utterance_tokens < 0:
            raise ValueError("min_utterance_tokens must be >= 0")
        if not (0.0 <= self.min_recall <= 1.0 and 0.0 <= self.min_precision <= 1.0):
            raise ValueError("recall/precision thresholds must lie in [0, 1]")


DEFAULT_THRESHOLDS = AlignmentThresholds()


@dataclass(frozen=True, order=True)
class SupportLink:
    """Records that an utterance supports one window's abstract.

    ``recall`` is LCS/|utterance tokens| (how much of the utterance the
    abstract covers); ``precision`` is LCS/|abstract tokens|.
    """

    utterance_index: int
    window_index: int
    recall: float
    precision: float


@dataclass(frozen=True)
class SummarySelection:
    """The selected utterance set for one meeting, with its support links."""

    meeting_id: str
    utterance_indices: tuple[int, ...]
    links: tuple[SupportLink, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "utterance_indices", tuple(sorted(set(self.utterance_indices))))
        object.__setattr__(self, "links", tuple(sorted(set(self.links))))


def find_supports(
    window: Window,
    abstract: Abstract,
    transcript: Transcript,
    thresholds: AlignmentThresholds = DEFAULT_THRESHOLDS,
) -> list[SupportLink]:
    """Supporting utterances of one window's abstract.

    Scores each window utterance against the abstract with token-level LCS;
    an utterance qualifies only if it has more than ``min_utterance_tokens``
    tokens and both ratios strictly exceed their thresholds.
    """
    if abstract.window_index != window.window_index:
        raise ValueError(f"abstract is for window {abstract.window_index}, not {window.window_index}")
    abstract_tokens = tokenize(abstract.text)
    links = []
    for i in window.utterance_indices:
        utterance = transcript.utterances[i]
        if len(utterance.tokens) <= thresholds.min_utterance_tokens:
            continue
        score = rouge_l(abstract_tokens, utterance.tokens)
        # rouge_l(candidate=abstract, reference=utterance): precision is
        # LCS/|abstract| and recall is LCS/|utterance|.
        if score.recall > thresholds.min_recall and score.precision > thresholds.min_precision:
            links.append(
                SupportLink(
                    utterance_index=i,
                    window_index=window.window_index,
                    recall=score.recall,
                    precision=score.precision,
                )
            )
    return links


def consolidate(links: Iterable[SupportLink], transcript: Transcript) -> SummarySelection:
    """Union all supporting utterances into one meeting-level selection.

    Duplicate links collapse; distinct links for the same utterance (one
    per supported abstract) are all kept. The result is independent of
    link order.
    """
    links = tuple(links)
    n = len(transcript.utterances)
    for link in links:
        if not (0 <= link.utterance_index < n):
            raise ValueError(f"link references utterance {link.utterance_index}, but meeting "
                             f"{transcript.meeting_id!r} has {n} utterances")
    indices = {link.utterance_index for link in links}
    if not indices:
        logger.warning("no supporting utterances found for meeting %r", transcript.meeting_id)
    return SummarySelection(
        meeting_id=transcript.meeting_id,
        utterance_indices=tuple(indices),
        links=links,
    )


@dataclass(frozen=True)
class MinutesDocument:
    """Plain-text and JSON renderings of a selection."""

    meeting_id: str
    entries: tuple[tuple[int, str, str], ...]  # (utterance index, speaker, text)

    @property
    def text(self) -> str:
        return "\n".join(f"{speaker}: {text}" for _, speaker, text in self.entries)

    def as_dict(self) -> dict:
        return {
            "meeting_id": self.meeting_id,
            "utterances": [
                {"index": index, "speaker": speaker, "text": text} for index, speaker, text in self.entries
            ],
        }


def render_minutes(selection: SummarySelection, transcript: Transcript) -> MinutesDocument:
    """Emit the selected utterances in transcript order, speaker-prefixed."""
    n = len(transcript.utterances)
    for i in selection.utterance_indices:
        if i >= n:
            raise ValueError(f"selection references utterance {i}, but meeting "
                             f"{transcript.meeting_id!r} has {n} utterances")
    if not selection.utterance_indices:
        logger.warning("rendering empty minutes for meeting %r", transcript.meeting_id)
    entries = tuple(
        (i, transcript.utterances[i].speaker, transcript.utterances[i].text) for i in selection.utterance_indices
    )
    return MinutesDocument(meeting_id=transcript.meeting_id, entries=entries)


def selection_to_dict(selection: SummarySelection) -> dict:
    """JSON-ready form of a selection."""
    return {
        "meeting_id": selection.meeting_id,
        "utterance_indices": list(selection.utterance_indices),
        "links": [
            {"utterance": link.utterance_index, "window": link.window_index, "r": link.recall, "p": link.precision}
            for link in selection.links
        ],
    }


def selection_from_dict(data: dict) -> SummarySelection:
    """Rebuild a selection from its JSON form."""
    if not isinstance(data, dict) or not isinstance(data.get("meeting_id"), str):
        raise ValueError("selection JSON must be an object with a string 'meeting_id'")
    indices = data.get("utterance_indices", [])
    if not isinstance(indices, list) or any(not isinstance(i, int) or isinstance(i, bool) for i in indices):
        raise ValueError("selection 'utterance_indices' must be a list of integers")
    links = []
    for record in data.get("links", []):
        if not isinstance(record, dict):
            raise ValueError("selection 'links' must be a list of objects")
        links.append(
            SupportLink(
                utterance_index=int(record["utterance"]),
                window_index=int(record["window"]),
                recall=float(record["r"]),
                precision=float(record["p"]),
            )
        )
    return SummarySelection(meeting_id=data["meeting_id"], utterance_indices=tuple(indices), links=tuple(links))
