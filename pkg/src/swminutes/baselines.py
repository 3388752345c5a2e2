"""Unsupervised extractive baselines: TextRank, LexRank, SumBasic, KL-Sum.

Each baseline selects a caller-supplied budget of utterances so results
are comparable with the sliding-window selection at equal summary length.
Scoring ties always break toward the lower utterance index, making every
baseline a pure function of (transcript, budget).
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .alignment import SummarySelection
from .corpus import Transcript

logger = logging.getLogger(__name__)

DAMPING = 0.85
POWER_TOL = 1e-6
POWER_MAX_ITER = 100
COSINE_THRESHOLD = 0.1


@dataclass(frozen=True)
class Budget:
    """Number of utterances a baseline must select."""

    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"budget must be >= 1, got {self.count}")

    def validate(self, transcript: Transcript) -> None:
        if self.count > len(transcript.utterances):
            raise ValueError(
                f"budget {self.count} exceeds the {len(transcript.utterances)} utterances "
                f"of meeting {transcript.meeting_id!r}"
            )


def power_iteration_scores(weights: np.ndarray, damping: float = DAMPING) -> np.ndarray:
    """Stationary scores of a weighted graph, PageRank style.

    Rows are normalized to transition probabilities; mass on dangling nodes
    is redistributed uniformly, so the result is a probability vector.
    """
    n = weights.shape[0]
    row_sums = weights.sum(axis=1)
    dangling = row_sums == 0.0
    transition = np.zeros_like(weights)
    active = ~dangling
    transition[active] = weights[active] / row_sums[active, None]
    scores = np.full(n, 1.0 / n)
    for _ in range(POWER_MAX_ITER):
        update = (1.0 - damping) / n + damping * (transition.T @ scores + scores[dangling].sum() / n)
        if np.abs(update - scores).sum() < POWER_TOL:
            return update
        scores = update
    return scores


def _top_k(scores, k: int, eligible: list[int]) -> list[int]:
    ranked = sorted(eligible, key=lambda i: (-scores[i], i))
    return sorted(ranked[:k])


def _selection(transcript: Transcript, indices: list[int]) -> SummarySelection:
    return SummarySelection(meeting_id=transcript.meeting_id, utterance_indices=tuple(indices))


def _eligible_indices(transcript: Transcript) -> list[int]:
    return [i for i, u in enumerate(transcript.utterances) if u.tokens]


def textrank(transcript: Transcript, budget: Budget) -> SummarySelection:
    """Graph centrality over shared-token similarity.

    Edge weight between two utterances is the shared unique-token count
    divided by log(1+len_i) + log(1+len_j); log(1+len) keeps one-token
    utterances from zeroing the denominator.
    """
    budget.validate(transcript)
    n = len(transcript.utterances)
    token_sets = [set(u.tokens) for u in transcript.utterances]
    lengths = [len(u.tokens) for u in transcript.utterances]
    weights = np.zeros((n, n))
    for i in range(n):
        if not lengths[i]:
            continue
        for j in range(i + 1, n):
            if not lengths[j]:
                continue
            shared = len(token_sets[i] & token_sets[j])
            if shared:
                weight = shared / (math.log(1 + lengths[i]) + math.log(1 + lengths[j]))
                weights[i, j] = weights[j, i] = weight
    scores = power_iteration_scores(weights)
    return _selection(transcript, _top_k(scores, budget.count, _eligible_indices(transcript)))


def _tfidf_vectors(transcript: Transcript) -> list[dict[str, float]]:
    n = len(transcript.utterances)
    doc_freq: Counter = Counter()
    for u in transcript.utterances:
        doc_freq.update(set(u.tokens))
    idf = {term: math.log(n / df) for term, df in doc_freq.items()}
    vectors = []
    for u in transcript.utterances:
        counts = Counter(u.tokens)
        vectors.append({term: count * idf[term] for term, count in counts.items() if idf[term] > 0.0})
    return vectors


def _cosine(a: dict[str, float], b: dict[str, float], norm_a: float, norm_b: float) -> float:
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(value * b[term] for term, value in a.items() if term in b)
    return dot / (norm_a * norm_b)


def lexrank(transcript: Transcript, budget: Budget) -> SummarySelection:
    """Graph centrality over thresholded TF-IDF cosine similarity.

    IDF is computed over the meeting's own utterances; utterance pairs with
    cosine >= 0.1 become (unweighted) edges of the row-normalized graph.
    """
    budget.validate(transcript)
    n = len(transcript.utterances)
    vectors = _tfidf_vectors(transcript)
    norms = [math.sqrt(sum(v * v for v in vec.values())) for vec in vectors]
    adjacency = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if _cosine(vectors[i], vectors[j], norms[i], norms[j]) >= COSINE_THRESHOLD:
                adjacency[i, j] = adjacency[j, i] = 1.0
    scores = power_iteration_scores(adjacency)
    return _selection(transcript, _top_k(scores, budget.count, _eligible_indices(transcript)))


def sumbasic(transcript: Transcript, budget: Budget) -> SummarySelection:
    """Frequency-driven selection with probability squaring.

    Repeatedly picks the best-scoring utterance containing the currently
    most probable word, then squares the probabilities of the chosen
    utterance's words to discourage redundancy.
    """
    budget.validate(transcript)
    counts = Counter(tok for u in transcript.utterances for tok in u.tokens)
    total = sum(counts.values())
    probs = {term: count / total for term, count in counts.items()}
    token_sets = {i: set(transcript.utterances[i].tokens) for i in _eligible_indices(transcript)}
    remaining = set(token_sets)
    selected: list[int] = []
    while len(selected) < budget.count:
        if not remaining:
            logger.warning(
                "sumbasic ran out of selectable utterances for meeting %r after %d of %d",
                transcript.meeting_id, len(selected), budget.count,
            )
            break
        means = {
            i: sum(probs[tok] for tok in transcript.utterances[i].tokens) / len(transcript.utterances[i].tokens)
            for i in remaining
        }
        chosen = None
        for term in sorted(probs, key=lambda t: (-probs[t], t)):
            containing = [i for i in remaining if term in token_sets[i]]
            if containing:
                chosen = min(containing, key=lambda i: (-means[i], i))
                break
        if chosen is None:
            break
        selected.append(chosen)
        remaining.discard(chosen)
        for term in token_sets[chosen]:
            probs[term] = probs[term] ** 2
    return _selection(transcript, sorted(selected))


def _kl_candidate_divergence(
    doc_probs: dict[str, float],
    summary_counts: Counter,
    summary_total: int,
    candidate_counts: Counter,
    candidate_total: int,
    vocab_size: int,
    doc_entropy_term: float,
) -> float:
    # KL(doc || summary+candidate) with add-1 smoothing over the meeting
    # vocabulary; only words present in summary or candidate shift away
    # from the smoothed floor, so the sum runs over those alone.
    covered = 0.0
    for term, count in summary_counts.items():
        covered += doc_probs[term] * math.log(count + candidate_counts.get(term, 0) + 1)
    for term in sorted(candidate_counts):
        if term not in summary_counts:
            covered += doc_probs[term] * math.log(candidate_counts[term] + 1)
    log_denominator = math.log(summary_total + candidate_total + vocab_size)
    return doc_entropy_term - covered + log_denominator


def klsum(transcript: Transcript, budget: Budget) -> SummarySelection:
    """Greedy selection minimizing KL(document || summary) at each step.

    Both unigram distributions use add-1 smoothing over the meeting
    vocabulary; ties break toward the lower utterance index.
    """
    budget.validate(transcript)
    doc_counts = Counter(tok for u in transcript.utterances for tok in u.tokens)
    vocab = sorted(doc_counts)
    vocab_size = len(vocab)
    doc_total = sum(doc_counts.values())
    doc_probs = {term: (doc_counts[term] + 1) / (doc_total + vocab_size) for term in vocab}
    doc_entropy_term = sum(doc_probs[term] * math.log(doc_probs[term]) for term in vocab)

    candidate_counts = {i: Counter(transcript.utterances[i].tokens) for i in _eligible_indices(transcript)}
    remaining = sorted(candidate_counts)
    summary_counts: Counter = Counter()
    summary_total = 0
    selected: list[int] = []
    while len(selected) < budget.count:
        if not remaining:
            logger.warning(
                "klsum ran out of selectable utterances for meeting %r after %d of %d",
                transcript.meeting_id, len(selected), budget.count,
            )
            break
        best_index = None
        best_kl = math.inf
        for i in remaining:
            kl = _kl_candidate_divergence(
                doc_probs,
                summary_counts,
                summary_total,
                candidate_counts[i],
                len(transcript.utterances[i].tokens),
                vocab_size,
                doc_entropy_term,
            )
            if kl < best_kl:
                best_kl = kl
                best_index = i
        selected.append(best_index)
        remaining.remove(best_index)
        summary_counts.update(candidate_counts[best_index])
        summary_total += len(transcript.utterances[best_index].tokens)
    return _selection(transcript, sorted(selected))


BASELINES = {
    "textrank": textrank,
    "lexrank": lexrank,
    "sumbasic": sumbasic,
    "klsum": klsum,
}
