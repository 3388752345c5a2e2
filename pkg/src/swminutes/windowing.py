"""Token-budgeted sliding windows of whole utterances."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .corpus import Transcript, Utterance

GRID_SIZES = (128, 256, 512, 1024)


@dataclass(frozen=True)
class WindowConfig:
    """Window size and stride, both in tokens. Requires window >= stride >= 1."""

    window: int
    stride: int

    def __post_init__(self):
        if not (self.window >= self.stride >= 1):
            raise ValueError(f"need window >= stride >= 1, got window={self.window}, stride={self.stride}")


@dataclass(frozen=True)
class Window:
    """A concrete span of whole utterances.

    An utterance belongs to window k iff its start_offset falls in the
    nominal token interval [k*stride, k*stride + window). Utterances are
    included whole, so the realized token span may overrun the nominal end.
    """

    window_index: int
    nominal_start: int
    nominal_end: int
    utterance_indices: tuple[int, ...]
    text: str
    first_token_offset: int
    token_count: int


def build_windows(transcript: Transcript, config: WindowConfig) -> list[Window]:
    """Enumerate all non-empty windows of a transcript for one configuration.

    Windows are generated for k = 0, 1, ... while k*stride < total_tokens;
    windows containing no utterance start are omitted.
    """
    starts = [u.start_offset for u in transcript.utterances]
    total = transcript.total_tokens
    windows = []
    k = 0
    while k * config.stride < total:
        lo = k * config.stride
        hi = lo + config.window
        left = bisect_left(starts, lo)
        right = bisect_left(starts, hi)
        if right > left:
            members = transcript.utterances[left:right]
            windows.append(
                Window(
                    window_index=k,
                    nominal_start=lo,
                    nominal_end=hi,
                    utterance_indices=tuple(range(left, right)),
                    text=" ".join(tok for u in members for tok in u.tokens),
                    first_token_offset=members[0].start_offset,
                    token_count=sum(len(u.tokens) for u in members),
                )
            )
        k += 1
    return windows


def grid_configs() -> list[WindowConfig]:
    """The ten (stride, window) combinations over {128, 256, 512, 1024}.

    Ordered by ascending stride, then ascending window.
    """
    return [
        WindowConfig(window=window, stride=stride)
        for stride in GRID_SIZES
        for window in GRID_SIZES
        if window >= stride
    ]


def visit_count(utterance: Utterance, config: WindowConfig, total_tokens: int) -> int:
    """How many windows contain the utterance, in closed form.

    Window k holds the utterance iff k*S <= start_offset < k*S + W, with
    k >= 0 and k*S < total_tokens; count the integer k in that range.
    """
    offset = utterance.start_offset
    stride, window = config.stride, config.window
    k_min = max(0, -((window - 1 - offset) // stride))
    k_max = min(offset // stride, (total_tokens - 1) // stride)
    return max(0, k_max - k_min + 1)
