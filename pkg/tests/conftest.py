"""Shared builders for synthetic transcripts."""

from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from swminutes.corpus import Transcript, make_transcript


def transcript_from_counts(counts, meeting_id="m", speakers=("A", "B", "C")) -> Transcript:
    """Utterance i gets counts[i] globally unique tokens."""
    turns = []
    for i, count in enumerate(counts):
        text = " ".join(f"u{i:03d}t{j:03d}" for j in range(count))
        turns.append((speakers[i % len(speakers)], text))
    return make_transcript(meeting_id, turns)


def random_transcript(rng: random.Random, meeting_id="m", max_utterances=30, max_tokens=20,
                      vocab=None, allow_empty=False) -> Transcript:
    """Random transcript; unique tokens unless a vocabulary is given."""
    n = rng.randint(1, max_utterances)
    low = 0 if allow_empty else 1
    counts = [rng.randint(low, max_tokens) for _ in range(n)]
    if sum(counts) == 0:
        counts[rng.randrange(n)] = 1
    if vocab is None:
        return transcript_from_counts(counts, meeting_id=meeting_id)
    turns = []
    for i, count in enumerate(counts):
        turns.append((f"S{i % 3}", " ".join(rng.choice(vocab) for _ in range(count))))
    return make_transcript(meeting_id, turns)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
