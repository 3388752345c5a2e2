"""Transcript and gold-summary ingestion, tokenization, and corpus statistics."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

SOURCES = ("human", "asr")
FORMATS = ("jsonl", "tsv")

_EDGE_PUNCT = re.compile(r"^\W+|\W+$")


class CorpusError(ValueError):
    """Base class for transcript and gold-summary file problems."""


class ParseError(CorpusError):
    """A record could not be parsed; the message names the offending line."""

    def __init__(self, path: str | Path, line: int, message: str):
        super().__init__(f"{path}, line {line}: {message}")
        self.path = str(path)
        self.line = line


class EmptyInputError(CorpusError):
    """The input contains no usable content."""


def tokenize(text: str) -> list[str]:
    """Normalize text into tokens.

    Lowercases, splits on whitespace, and strips leading/trailing
    punctuation from each token; internal apostrophes and hyphens survive
    ("Tilman's," -> "tilman's"). Tokens that end up empty are dropped.
    """
    out = []
    for raw in text.lower().split():
        tok = _EDGE_PUNCT.sub("", raw)
        if tok:
            out.append(tok)
    return out


@dataclass(frozen=True)
class Utterance:
    """One speaker turn; the atomic unit of transcripts and summaries.

    ``start_offset`` is the cumulative token offset of this utterance's
    first token within the meeting.
    """

    index: int
    speaker: str
    text: str
    tokens: tuple[str, ...]
    start_offset: int

    @property
    def token_count(self) -> int:
        return len(self.tokens)

    @property
    def end_offset(self) -> int:
        return self.start_offset + len(self.tokens)


@dataclass(frozen=True)
class Transcript:
    """The ordered utterance sequence of one meeting."""

    meeting_id: str
    utterances: tuple[Utterance, ...]
    source: str = "human"

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown transcript source {self.source!r}")
        if not self.utterances:
            raise EmptyInputError(f"transcript {self.meeting_id!r} has no utterances")
        offset = 0
        for i, u in enumerate(self.utterances):
            if u.index != i:
                raise ValueError(f"utterance index {u.index} at position {i}: indices must be contiguous from 0")
            if u.start_offset != offset:
                raise ValueError(f"utterance {i}: start_offset {u.start_offset} != cumulative token count {offset}")
            offset += len(u.tokens)
        if offset == 0:
            raise EmptyInputError(f"transcript {self.meeting_id!r} has no tokens after normalization")

    @property
    def total_tokens(self) -> int:
        last = self.utterances[-1]
        return last.start_offset + len(last.tokens)

    def __len__(self) -> int:
        return len(self.utterances)


def make_transcript(meeting_id: str, turns: Sequence[tuple[str, str]], source: str = "human") -> Transcript:
    """Build a Transcript from (speaker, text) pairs, tokenizing each turn."""
    utterances = []
    offset = 0
    for i, (speaker, text) in enumerate(turns):
        tokens = tuple(tokenize(text))
        utterances.append(Utterance(index=i, speaker=speaker, text=text, tokens=tokens, start_offset=offset))
        offset += len(tokens)
    if not utterances:
        raise EmptyInputError(f"no utterances for meeting {meeting_id!r}")
    return Transcript(meeting_id=meeting_id, utterances=tuple(utterances), source=source)


def _infer_format(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix in (".jsonl", ".json"):
        return "jsonl"
    if suffix in (".tsv", ".txt"):
        return "tsv"
    raise CorpusError(f"cannot infer transcript format from {path.name!r}; pass format explicitly")


def _parse_jsonl_turn(path: Path, lineno: int, line: str) -> tuple[str, str]:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(path, lineno, f"invalid JSON ({exc.msg})") from exc
    if not isinstance(record, dict):
        raise ParseError(path, lineno, "expected a JSON object per line")
    for key in ("speaker", "text"):
        if key not in record:
            raise ParseError(path, lineno, f"missing {key!r} field")
        if not isinstance(record[key], str):
            raise ParseError(path, lineno, f"{key!r} must be a string")
    return record["speaker"], record["text"]


def _parse_tsv_turn(path: Path, lineno: int, line: str) -> tuple[str, str]:
    if "\t" not in line:
        raise ParseError(path, lineno, "expected speaker<TAB>text")
    speaker, text = line.split("\t", 1)
    return speaker, text


def load_transcript(
    path: str | Path,
    format: str | None = None,
    meeting_id: str | None = None,
    source: str = "human",
) -> Transcript:
    """Load one meeting transcript from a JSONL or TSV file.

    JSONL records need "speaker" and "text" string fields (extra keys such
    as start_time are ignored). TSV rows are speaker<TAB>text. The meeting
    id defaults to the file stem.
    """
    path = Path(path)
    fmt = format or _infer_format(path)
    if fmt not in FORMATS:
        raise CorpusError(f"unknown transcript format {fmt!r} (expected one of {FORMATS})")
    parse = _parse_jsonl_turn if fmt == "jsonl" else _parse_tsv_turn
    turns = []
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            turns.append(parse(path, lineno, line))
    if not turns:
        raise EmptyInputError(f"{path}: no utterances found")
    return make_transcript(meeting_id or path.stem, turns, source=source)


def save_transcript(transcript: Transcript, path: str | Path, format: str | None = None) -> None:
    """Write a transcript back to disk in JSONL or TSV form."""
    path = Path(path)
    fmt = format or _infer_format(path)
    with path.open("w", encoding="utf-8") as handle:
        for u in transcript.utterances:
            if fmt == "jsonl":
                handle.write(json.dumps({"speaker": u.speaker, "text": u.text}, ensure_ascii=False) + "\n")
            else:
                if "\t" in u.speaker or any(c in u.text for c in "\t\n") or "\n" in u.speaker:
                    raise CorpusError(f"utterance {u.index} cannot be written as TSV; use jsonl")
                handle.write(f"{u.speaker}\t{u.text}\n")


@dataclass(frozen=True)
class GoldSummary:
    """A human reference summary: utterance indices, free text, or both."""

    meeting_id: str
    annotator_id: str
    utterance_indices: tuple[int, ...] | None = None
    text: str | None = None

    def __post_init__(self):
        if self.utterance_indices is None and self.text is None:
            raise CorpusError(f"gold summary for {self.meeting_id!r} needs utterance_indices or text")
        if self.utterance_indices is not None:
            indices = tuple(sorted(set(self.utterance_indices)))
            if indices and indices[0] < 0:
                raise CorpusError(f"gold summary for {self.meeting_id!r} has a negative utterance index")
            object.__setattr__(self, "utterance_indices", indices)

    @property
    def is_extractive(self) -> bool:
        return self.utterance_indices is not None

    def reference_tokens(self, transcript: Transcript) -> list[str]:
        """Token sequence used when this gold serves as a reference."""
        if self.utterance_indices is not None:
            n = len(transcript.utterances)
            for i in self.utterance_indices:
                if i >= n:
                    raise CorpusError(
                        f"gold summary by {self.annotator_id!r} references utterance {i} "
                        f"but meeting {transcript.meeting_id!r} has {n} utterances"
                    )
            return [tok for i in self.utterance_indices for tok in transcript.utterances[i].tokens]
        return tokenize(self.text or "")


def _gold_from_record(path: Path, record: object) -> GoldSummary:
    if not isinstance(record, dict):
        raise CorpusError(f"{path}: expected a JSON object per gold summary")
    for key in ("meeting_id", "annotator_id"):
        if not isinstance(record.get(key), str):
            raise CorpusError(f"{path}: gold summary needs a string {key!r} field")
    indices = record.get("utterance_indices")
    if indices is not None:
        if not isinstance(indices, list) or any(not isinstance(i, int) or isinstance(i, bool) for i in indices):
            raise CorpusError(f"{path}: utterance_indices must be a list of integers")
        indices = tuple(indices)
    text = record.get("text")
    if text is not None and not isinstance(text, str):
        raise CorpusError(f"{path}: gold summary text must be a string")
    if indices is None and text is None:
        raise CorpusError(f"{path}: gold summary needs utterance_indices or text")
    return GoldSummary(
        meeting_id=record["meeting_id"],
        annotator_id=record["annotator_id"],
        utterance_indices=indices,
        text=text,
    )


def load_gold_summaries(path: str | Path) -> list[GoldSummary]:
    """Load gold summaries from a JSON file holding one object or an array."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{path}: invalid JSON ({exc.msg})") from exc
    records = data if isinstance(data, list) else [data]
    if not records:
        raise EmptyInputError(f"{path}: no gold summaries found")
    return [_gold_from_record(path, record) for record in records]


@dataclass(frozen=True)
class CorpusStats:
    """Aggregate transcript statistics."""

    meetings: int
    utterances: int
    tokens: int
    utterances_per_meeting: float
    words_per_utterance: float


def corpus_stats(transcripts: Sequence[Transcript]) -> CorpusStats:
    """Mean utterances per meeting and mean words (tokens) per utterance."""
    if not transcripts:
        raise ValueError("corpus_stats needs at least one transcript")
    n_utt = sum(len(t) for t in transcripts)
    n_tok = sum(t.total_tokens for t in transcripts)
    return CorpusStats(
        meetings=len(transcripts),
        utterances=n_utt,
        tokens=n_tok,
        utterances_per_meeting=n_utt / len(transcripts),
        words_per_utterance=n_tok / n_utt if n_utt else 0.0,
    )
