"""Reference summarizer backend for the batch summarization wire protocol."""

__version__ = "0.1.0"

from .protocol import BackendConfig, SummaryService, handle_batch, handle_request, validate_request
from .summarizers import LeadSummarizer, TransformersSummarizer, build_summarizer

__all__ = [
    "BackendConfig",
    "LeadSummarizer",
    "SummaryService",
    "TransformersSummarizer",
    "build_summarizer",
    "handle_batch",
    "handle_request",
    "validate_request",
]
