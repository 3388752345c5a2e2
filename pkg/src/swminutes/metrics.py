"""ROUGE-1/2/L precision, recall, and F1 over token sequences."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class PRF:
    """A precision/recall/F1 triple, each in [0, 1]."""

    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, overlap: float, candidate_total: int, reference_total: int) -> "PRF":
        p = overlap / candidate_total if candidate_total else 0.0
        r = overlap / reference_total if reference_total else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(p, r, f)

    @classmethod
    def zero(cls) -> "PRF":
        return cls(0.0, 0.0, 0.0)


def mean_prf(scores: Sequence[PRF]) -> PRF:
    """Componentwise arithmetic mean of PRF triples."""
    if not scores:
        raise ValueError("mean_prf needs at least one score")
    n = len(scores)
    return PRF(
        precision=sum(s.precision for s in scores) / n,
        recall=sum(s.recall for s in scores) / n,
        f1=sum(s.f1 for s in scores) / n,
    )


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> PRF:
    """N-gram overlap with clipped (multiset-intersection) counts.

    Precision divides by the candidate's n-gram count, recall by the
    reference's; degenerate inputs yield zeros.
    """
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    cand = _ngram_counts(candidate, n)
    ref = _ngram_counts(reference, n)
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    return PRF.from_counts(overlap, max(0, len(candidate) - n + 1), max(0, len(reference) - n + 1))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of the longest common subsequence (order-preserving, gaps allowed)."""
    if not a or not b:
        return 0
    if len(b) > len(a):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        row = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                row.append(prev[j - 1] + 1)
            else:
                row.append(max(prev[j], row[-1]))
        prev = row
    return prev[-1]


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> PRF:
    """LCS-based overlap: precision = LCS/|candidate|, recall = LCS/|reference|."""
    overlap = lcs_length(candidate, reference)
    return PRF.from_counts(overlap, len(candidate), len(reference))


def rouge_n_multi(candidate: Sequence[str], references: Sequence[Sequence[str]], n: int) -> PRF:
    """Average the per-reference PRF components over multiple references."""
    if not references:
        raise ValueError("rouge_n_multi needs at least one reference")
    return mean_prf([rouge_n(candidate, reference, n) for reference in references])


def rouge_l_multi(candidate: Sequence[str], references: Sequence[Sequence[str]]) -> PRF:
    """Average per-reference ROUGE-L components over multiple references."""
    if not references:
        raise ValueError("rouge_l_multi needs at least one reference")
    return mean_prf([rouge_l(candidate, reference) for reference in references])
