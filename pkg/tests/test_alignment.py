"""Tests for support-link thresholds, consolidation, and minutes rendering."""

from __future__ import annotations

import random

import pytest

from conftest import transcript_from_counts

from swminutes.alignment import (
    AlignmentThresholds,
    SummarySelection,
    SupportLink,
    consolidate,
    find_supports,
    render_minutes,
    selection_from_dict,
    selection_to_dict,
)
from swminutes.corpus import make_transcript
from swminutes.summarizer import Abstract, StubBackend, summarize_windows
from swminutes.windowing import WindowConfig, build_windows


def single_window(transcript):
    (window,) = build_windows(transcript, WindowConfig(window=10_000, stride=10_000))
    return window


def utterance_text(prefix, count):
    return " ".join(f"{prefix}{j:02d}" for j in range(count))


class TestFindSupports:
    def test_short_utterance_gated_even_if_contained(self):
        t = make_transcript("m", [("A", utterance_text("u", 4))])
        window = single_window(t)
        abstract = Abstract.from_text(0, window.text + " " + utterance_text("f", 16))
        assert find_supports(window, abstract, t) == []

    def test_verbatim_utterance_in_long_abstract(self):
        # 8 utterance tokens inside a 40-token abstract: r=1.0, p=0.2.
        t = make_transcript("m", [("A", utterance_text("u", 8))])
        window = single_window(t)
        abstract = Abstract.from_text(0, window.text + " " + utterance_text("f", 32))
        (link,) = find_supports(window, abstract, t)
        assert link.recall == 1.0
        assert link.precision == pytest.approx(0.2)
        assert link.utterance_index == 0
        assert link.window_index == 0

    def test_exact_half_recall_excluded(self):
        # 10-token utterance sharing exactly 5 tokens: r = 0.5 fails the strict gate.
        t = make_transcript("m", [("A", utterance_text("u", 10))])
        window = single_window(t)
        shared = window.text.split()[:5]
        abstract = Abstract.from_text(0, " ".join(shared + utterance_text("f", 20).split()))
        assert find_supports(window, abstract, t) == []

    def test_exact_precision_threshold_excluded(self):
        # 6 of 11 utterance tokens in a 60-token abstract: r≈0.545 passes, p=0.1 fails.
        t = make_transcript("m", [("A", utterance_text("u", 11))])
        window = single_window(t)
        shared = window.text.split()[:6]
        abstract = Abstract.from_text(0, " ".join(shared + utterance_text("f", 54).split()))
        assert find_supports(window, abstract, t) == []

    def test_just_above_thresholds_included(self):
        t = make_transcript("m", [("A", utterance_text("u", 11))])
        window = single_window(t)
        shared = window.text.split()[:6]
        abstract = Abstract.from_text(0, " ".join(shared + utterance_text("f", 53).split()))
        (link,) = find_supports(window, abstract, t)
        assert link.recall == pytest.approx(6 / 11)
        assert link.precision == pytest.approx(6 / 59)

    def test_empty_abstract_yields_no_links(self):
        t = make_transcript("m", [("A", utterance_text("u", 10))])
        window = single_window(t)
        assert find_supports(window, Abstract.from_text(0, "..."), t) == []

    def test_mismatched_window_rejected(self):
        t = make_transcript("m", [("A", utterance_text("u", 10))])
        window = single_window(t)
        with pytest.raises(ValueError):
            find_supports(window, Abstract.from_text(3, "x"), t)

    def test_custom_thresholds(self):
        t = make_transcript("m", [("A", utterance_text("u", 4))])
        window = single_window(t)
        abstract = Abstract.from_text(0, window.text)
        loose = AlignmentThresholds(min_utterance_tokens=3, min_recall=0.5, min_precision=0.1)
        (link,) = find_supports(window, abstract, t, loose)
        assert link.recall == 1.0

    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            AlignmentThresholds(min_recall=1.5)
        with pytest.raises(ValueError):
            AlignmentThresholds(min_utterance_tokens=-1)


class TestConsolidate:
    def _transcript(self, n=12):
        return transcript_from_counts([7] * n)

    def _link(self, utterance, window, r=0.8, p=0.3):
        return SupportLink(utterance_index=utterance, window_index=window, recall=r, precision=p)

    def test_union_of_windows(self):
        t = self._transcript()
        links = [self._link(3, 0), self._link(7, 0), self._link(7, 1), self._link(9, 1)]
        selection = consolidate(links, t)
        assert selection.utterance_indices == (3, 7, 9)
        assert len(selection.links) == 4  # utterance 7 keeps both supports

    def test_empty_links_give_empty_selection(self):
        selection = consolidate([], self._transcript())
        assert selection.utterance_indices == ()
        assert selection.links == ()

    def test_duplicate_links_are_idempotent(self):
        t = self._transcript()
        links = [self._link(3, 0), self._link(3, 0)]
        assert consolidate(links, t) == consolidate(links[:1], t)

    def test_order_independence(self, rng):
        t = self._transcript(20)
        links = [self._link(rng.randrange(20), rng.randrange(5), r=rng.random(), p=rng.random())
                 for _ in range(30)]
        shuffled = links[:]
        rng.shuffle(shuffled)
        assert consolidate(links, t) == consolidate(shuffled, t)

    def test_monotone_in_links(self, rng):
        t = self._transcript(20)
        links = [self._link(rng.randrange(20), rng.randrange(5)) for _ in range(10)]
        extra = [self._link(rng.randrange(20), rng.randrange(5)) for _ in range(5)]
        base = set(consolidate(links, t).utterance_indices)
        grown = set(consolidate(links + extra, t).utterance_indices)
        assert base <= grown

    def test_out_of_range_link_rejected(self):
        with pytest.raises(ValueError):
            consolidate([self._link(99, 0)], self._transcript())


class TestLeadBiasPropagation:
    def test_supports_start_within_lead_span_for_non_overlapping_windows(self, rng):
        lead = 25
        for trial in range(10):
            counts = [rng.randint(1, 14) for _ in range(rng.randint(10, 40))]
            t = transcript_from_counts(counts, meeting_id=f"m{trial}")
            stride = rng.choice([16, 32, 64])
            windows = build_windows(t, WindowConfig(window=stride, stride=stride))
            abstracts = summarize_windows(windows, StubBackend(lead_words=lead))
            by_index = {w.window_index: w for w in windows}
            for abstract in abstracts:
                window = by_index[abstract.window_index]
                for link in find_supports(window, abstract, t):
                    utterance = t.utterances[link.utterance_index]
                    assert utterance.start_offset - window.first_token_offset < lead


class TestRenderMinutes:
    def test_single_utterance_with_speaker_prefix(self):
        t = make_transcript("m", [("Alice", "We decided to ship on Friday")])
        selection = SummarySelection(meeting_id="m", utterance_indices=(0,))
        document = render_minutes(selection, t)
        assert document.text == "Alice: We decided to ship on Friday"
        assert document.as_dict()["utterances"][0]["index"] == 0

    def test_empty_selection_renders_empty_document(self, caplog):
        t = make_transcript("m", [("A", "one two")])
        selection = SummarySelection(meeting_id="m", utterance_indices=())
        with caplog.at_level("WARNING"):
            document = render_minutes(selection, t)
        assert document.text == ""
        assert "empty" in caplog.text

    def test_transcript_order_not_selection_order(self):
        t = make_transcript("m", [("A", "first"), ("B", "second"), ("C", "third")])
        selection = SummarySelection(meeting_id="m", utterance_indices=(2, 0))
        document = render_minutes(selection, t)
        assert [entry[0] for entry in document.entries] == [0, 2]
        assert document.text == "A: first\nC: third"

    def test_out_of_range_selection_rejected(self):
        t = make_transcript("m", [("A", "one")])
        with pytest.raises(ValueError):
            render_minutes(SummarySelection(meeting_id="m", utterance_indices=(4,)), t)


class TestSelectionJson:
    def test_round_trip(self):
        selection = SummarySelection(
            meeting_id="m",
            utterance_indices=(1, 4),
            links=(
                SupportLink(utterance_index=1, window_index=0, recall=0.75, precision=0.25),
                SupportLink(utterance_index=4, window_index=2, recall=0.6, precision=0.11),
            ),
        )
        data = selection_to_dict(selection)
        assert data["utterance_indices"] == [1, 4]
        assert data["links"][0] == {"utterance": 1, "window": 0, "r": 0.75, "p": 0.25}
        assert selection_from_dict(data) == selection

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            selection_from_dict({"utterance_indices": [1]})
        with pytest.raises(ValueError):
            selection_from_dict({"meeting_id": "m", "utterance_indices": ["one"]})
