"""Extractive meeting minutes from long transcripts.

A token-budgeted sliding window walks the utterance stream, a pluggable
abstractive backend summarizes each window, and utterances that align with
those abstracts (token-level LCS thresholds) are consolidated into the
meeting-level summary. Includes ROUGE metrics, four unsupervised baselines,
an evaluation harness, and diagnostic analyses.
"""

__version__ = "0.1.0"

from .alignment import (
    AlignmentThresholds,
    MinutesDocument,
    SummarySelection,
    SupportLink,
    consolidate,
    find_supports,
    render_minutes,
)
from .corpus import (
    CorpusStats,
    GoldSummary,
    Transcript,
    Utterance,
    corpus_stats,
    load_gold_summaries,
    load_transcript,
    make_transcript,
    save_transcript,
    tokenize,
)
from .metrics import PRF, rouge_l, rouge_n, rouge_n_multi
from .summarizer import (
    Abstract,
    ExecBackend,
    HttpBackend,
    StubBackend,
    SummaryRequest,
    create_backend,
    stub_summarize,
    summarize_windows,
)
from .windowing import Window, WindowConfig, build_windows, grid_configs, visit_count

__all__ = [
    "AlignmentThresholds",
    "Abstract",
    "CorpusStats",
    "ExecBackend",
    "GoldSummary",
    "HttpBackend",
    "MinutesDocument",
    "PRF",
    "StubBackend",
    "SummaryRequest",
    "SummarySelection",
    "SupportLink",
    "Transcript",
    "Utterance",
    "Window",
    "WindowConfig",
    "build_windows",
    "consolidate",
    "corpus_stats",
    "create_backend",
    "find_supports",
    "grid_configs",
    "load_gold_summaries",
    "load_transcript",
    "make_transcript",
    "render_minutes",
    "rouge_l",
    "rouge_n",
    "rouge_n_multi",
    "save_transcript",
    "stub_summarize",
    "summarize_windows",
    "tokenize",
    "visit_count",
]
