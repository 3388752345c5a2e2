"""Summarizer implementations behind the wire protocol.

``lead:N`` is a dependency-free deterministic summarizer (first N words);
any other identifier is treated as a pretrained abstractive model loaded
through the transformers pipeline API.
"""

from __future__ import annotations

import logging

logger = logging.getLogger(__name__)

DEFAULT_LEAD_WORDS = 40


class LeadSummarizer:
    """Copies the first words of the input; deterministic and model-free."""

    def __init__(self, words: int = DEFAULT_LEAD_WORDS):
        if words < 1:
            raise ValueError(f"lead word count must be >= 1, got {words}")
        self.words = words
        self.name = f"lead:{words}"

    def summarize(self, text: str, max_words: int) -> str:
        return " ".join(text.split()[: min(self.words, max_words)])


class TransformersSummarizer:
    """Wraps a pretrained seq2seq summarization model.

    The model and its tokenizer are loaded lazily on first use; generation
    runs with the model's published defaults, and the tokenizer truncates
    inputs at the model's own limit.
    """

    def __init__(self, model_id: str):
        self.model_id = model_id
        self.name = model_id
        self._pipeline = None

    def _load(self):
        if self._pipeline is None:
            try:
                from transformers import pipeline
            except ImportError as exc:
                raise RuntimeError(
                    f"model {self.model_id!r} needs the 'model' extra (pip install 'minutes-backend[model]')"
                ) from exc
            logger.info("loading summarization model %s", self.model_id)
            self._pipeline = pipeline("summarization", model=self.model_id)
        return self._pipeline

    def summarize(self, text: str, max_words: int) -> str:
        result = self._load()(text, truncation=True)
        summary = result[0]["summary_text"].strip()
        words = summary.split()
        if len(words) > max_words:
            summary = " ".join(words[:max_words])
        return summary


def build_summarizer(identifier: str):
    """Resolve a model identifier to a summarizer instance."""
    if identifier == "lead":
        return LeadSummarizer()
    if identifier.startswith("lead:"):
        try:
            words = int(identifier.split(":", 1)[1])
        except ValueError as exc:
            raise ValueError(f"bad lead summarizer spec {identifier!r} (expected lead:<words>)") from exc
        return LeadSummarizer(words)
    return TransformersSummarizer(identifier)
