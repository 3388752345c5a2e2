"""Command-line orchestration: summarize, eval, sweep, baselines, analyze, stats."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .alignment import AlignmentThresholds, SummarySelection, render_minutes, selection_from_dict, selection_to_dict
from .analysis import (
    MeetingRun,
    PositionHistogram,
    abstract_length_stats,
    position_histogram,
    run_meeting,
    support_percentages,
    sweep,
)
from .baselines import BASELINES, Budget
from .corpus import CorpusError, Transcript, corpus_stats, load_gold_summaries, load_transcript
from .evaluation import evaluate_corpus, format_report_table, report_to_dict
from .metrics import PRF
from .summarizer import Abstract, BackendError, create_backend
from .windowing import WindowConfig, build_windows

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_BACKEND = 3

BACKEND_URL_ENV = "SWMINUTES_BACKEND_URL"

_FORMAT_PATTERNS = {
    "auto": ("*.jsonl", "*.tsv"),
    "jsonl": ("*.jsonl",),
    "tsv": ("*.tsv",),
}


class ConfigError(ValueError):
    """Bad flag combination or invalid configuration value."""


class MissingArtifactError(FileNotFoundError):
    """A prerequisite input or artifact does not exist."""


def _optional_int(raw: str) -> int | None:
    raw = raw.strip().lower()
    if raw in ("", "none"):
        return None
    return int(raw)


# Knobs resolved as: command-line flag > config file > (env, backend only) > default.
_KNOBS = {
    "window": (int, 1024),
    "stride": (int, 128),
    "backend": (str, "stub"),
    "lead_words": (int, 60),
    "max_words": (_optional_int, None),
    "min_utt_tokens": (int, 5),
    "min_recall": (float, 0.5),
    "min_precision": (float, 0.1),
    "jobs": (int, 1),
    "format": (str, "auto"),
    "backend_timeout": (float, 60.0),
    "backend_retries": (int, 3),
    "backend_backoff": (float, 1.0),
}


@dataclass(frozen=True)
class RunConfig:
    """Fully-resolved settings for one CLI invocation."""

    window: int
    stride: int
    backend: str
    lead_words: int
    max_words: int | None
    thresholds: AlignmentThresholds
    jobs: int
    format: str
    backend_timeout: float
    backend_retries: int
    backend_backoff: float
    transcripts: tuple[str, ...]
    golds: tuple[str, ...]
    out: Path | None

    @property
    def window_config(self) -> WindowConfig:
        return WindowConfig(window=self.window, stride=self.stride)

    def as_dict(self) -> dict:
        return {
            "window": self.window,
            "stride": self.stride,
            "backend": self.backend,
            "lead_words": self.lead_words,
            "max_words": self.max_words,
            "min_utt_tokens": self.thresholds.min_utterance_tokens,
            "min_recall": self.thresholds.min_recall,
            "min_precision": self.thresholds.min_precision,
            "jobs": self.jobs,
            "format": self.format,
            "transcripts": list(self.transcripts),
            "golds": list(self.golds),
            "out": str(self.out) if self.out else None,
        }


def _load_config_file(path: str | Path) -> dict[str, str]:
    """Parse a flat key = value config file; # starts a comment line."""
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"config file not found: {path}")
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}, line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        if key not in _KNOBS:
            raise ConfigError(f"{path}, line {lineno}: unknown setting {key!r}")
        mapping[key] = value.strip()
    return mapping


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}

    def knob(name: str):
        value = getattr(args, name, None)
        if value is not None:
            return value
        if name in file_cfg:
            parse, _ = _KNOBS[name]
            try:
                return parse(file_cfg[name])
            except ValueError as exc:
                raise ConfigError(f"config value for {name!r} is invalid: {file_cfg[name]!r}") from exc
        if name == "backend":
            env_url = os.environ.get(BACKEND_URL_ENV)
            if env_url:
                return env_url
        return _KNOBS[name][1]

    try:
        thresholds = AlignmentThresholds(
            min_utterance_tokens=knob("min_utt_tokens"),
            min_recall=knob("min_recall"),
            min_precision=knob("min_precision"),
        )
        window_config = WindowConfig(window=knob("window"), stride=knob("stride"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    jobs = knob("jobs")
    if jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {jobs}")
    fmt = knob("format")
    if fmt not in _FORMAT_PATTERNS:
        raise ConfigError(f"--format must be one of {sorted(_FORMAT_PATTERNS)}, got {fmt!r}")
    out = getattr(args, "out", None)
    return RunConfig(
        window=window_config.window,
        stride=window_config.stride,
        backend=knob("backend"),
        lead_words=knob("lead_words"),
        max_words=knob("max_words"),
        thresholds=thresholds,
        jobs=jobs,
        format=fmt,
        backend_timeout=knob("backend_timeout"),
        backend_retries=knob("backend_retries"),
        backend_backoff=knob("backend_backoff"),
        transcripts=tuple(getattr(args, "transcripts", ()) or ()),
        golds=tuple(getattr(args, "golds", ()) or ()),
        out=Path(out) if out else None,
    )


def _make_backend(cfg: RunConfig):
    try:
        return create_backend(
            cfg.backend,
            lead_words=cfg.lead_words,
            timeout=cfg.backend_timeout,
            retries=cfg.backend_retries,
            backoff=cfg.backend_backoff,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _collect_files(paths: Sequence[str], patterns: Sequence[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            matched: list[Path] = []
            for pattern in patterns:
                matched.extend(path.glob(pattern))
            files.extend(sorted(set(matched)))
        elif path.exists():
            files.append(path)
        else:
            raise MissingArtifactError(f"input not found: {path}")
    seen = set()
    unique = []
    for path in files:
        if path not in seen:
            seen.add(path)
            unique.append(path)
    return unique


def _load_transcripts(paths: Sequence[str], fmt: str) -> dict[str, Transcript]:
    if not paths:
        raise ConfigError("no transcripts given; pass --transcripts")
    files = _collect_files(paths, _FORMAT_PATTERNS[fmt])
    if not files:
        raise MissingArtifactError(f"no transcript files found under {list(paths)}")
    transcripts: dict[str, Transcript] = {}
    for path in files:
        transcript = load_transcript(path, format=None if fmt == "auto" else fmt)
        if transcript.meeting_id in transcripts:
            raise CorpusError(f"duplicate meeting id {transcript.meeting_id!r} from {path}")
        transcripts[transcript.meeting_id] = transcript
    return transcripts


def _load_golds(paths: Sequence[str]) -> dict[str, list]:
    golds: dict[str, list] = {}
    for path in _collect_files(paths, ("*.json",)):
        for gold in load_gold_summaries(path):
            golds.setdefault(gold.meeting_id, []).append(gold)
    return golds


def _load_selections(paths: Sequence[str]) -> dict[str, SummarySelection]:
    files = _collect_files(paths, ("*.json",))
    if not files:
        raise MissingArtifactError(f"no selection files found under {list(paths)}")
    selections: dict[str, SummarySelection] = {}
    for path in files:
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            selection = selection_from_dict(data)
        except (json.JSONDecodeError, ValueError, KeyError) as exc:
            raise CorpusError(f"{path}: not a valid selection file ({exc})") from exc
        selections[selection.meeting_id] = selection
    return selections


def _dump_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


def _prf_cells(score: PRF | None) -> list[str]:
    if score is None:
        return ["", "", ""]
    return [f"{score.precision:.6f}", f"{score.recall:.6f}", f"{score.f1:.6f}"]


# ---------------------------------------------------------------------------
# summarize


def _write_meeting_artifacts(out: Path, run: MeetingRun) -> None:
    meeting_id = run.transcript.meeting_id
    document = render_minutes(run.selection, run.transcript)
    text = document.text
    (out / "minutes" / f"{meeting_id}.txt").write_text(text + ("\n" if text else ""), encoding="utf-8")
    _dump_json(out / "minutes" / f"{meeting_id}.json", document.as_dict())
    _dump_json(out / "selections" / f"{meeting_id}.json", selection_to_dict(run.selection))
    _dump_json(
        out / "abstracts" / f"{meeting_id}.json",
        {
            "meeting_id": meeting_id,
            "window": run.config.window,
            "stride": run.config.stride,
            "abstracts": [
                {
                    "window": a.window_index,
                    "text": a.text,
                    "char_length": a.char_length,
                    "word_length": a.word_length,
                }
                for a in run.abstracts
            ],
        },
    )


def cmd_summarize(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if cfg.out is None:
        raise ConfigError("summarize needs --out")
    backend = _make_backend(cfg)
    transcripts = _load_transcripts(cfg.transcripts, cfg.format)
    transcript_files = [str(p) for p in _collect_files(cfg.transcripts, _FORMAT_PATTERNS[cfg.format])]

    out = cfg.out
    for sub in ("minutes", "selections", "abstracts"):
        (out / sub).mkdir(parents=True, exist_ok=True)

    started = time.monotonic()
    runs: dict[str, MeetingRun] = {}
    failures: dict[str, str] = {}
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = {
            meeting_id: pool.submit(
                run_meeting, transcripts[meeting_id], cfg.window_config, backend, cfg.thresholds, cfg.max_words
            )
            for meeting_id in sorted(transcripts)
        }
        for meeting_id, future in futures.items():
            try:
                runs[meeting_id] = future.result()
            except BackendError as exc:
                failures[meeting_id] = str(exc)

    for meeting_id in sorted(runs):
        _write_meeting_artifacts(out, runs[meeting_id])

    manifest = {
        "command": "summarize",
        "config": {**cfg.as_dict(), "transcript_files": transcript_files},
        "backend_identity": backend.describe(),
        "meetings": sorted(runs),
        "status": "failed" if failures else "ok",
        "elapsed_seconds": round(time.monotonic() - started, 3),
    }
    if failures:
        manifest["error"] = "; ".join(f"{mid}: {msg}" for mid, msg in sorted(failures.items()))
    _dump_json(out / "manifest.json", manifest)

    if failures:
        for meeting_id, message in sorted(failures.items()):
            print(f"error: backend failed for meeting {meeting_id}: {message}", file=sys.stderr)
        return EXIT_BACKEND
    total_selected = sum(len(run.selection.utterance_indices) for run in runs.values())
    print(f"wrote minutes for {len(runs)} meeting(s) ({total_selected} utterances selected) to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    selections = _load_selections(args.selections)
    transcripts = _load_transcripts(cfg.transcripts, cfg.format)
    golds = _load_golds(cfg.golds)
    for meeting_id in sorted(selections):
        if meeting_id not in transcripts:
            raise MissingArtifactError(f"no transcript for meeting {meeting_id!r}")
        if meeting_id not in golds:
            raise MissingArtifactError(f"no gold summary for meeting {meeting_id!r}")
    report = evaluate_corpus(selections, transcripts, golds)
    table = format_report_table(report, system_name=args.system)
    if cfg.out is not None:
        cfg.out.mkdir(parents=True, exist_ok=True)
        _dump_json(cfg.out / "report.json", report_to_dict(report))
        (cfg.out / "report.txt").write_text(table + "\n", encoding="utf-8")
    print(table)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def _write_sweep(out: Path, result) -> None:
    out.mkdir(parents=True, exist_ok=True)
    records = []
    for rec in result.records:
        records.append(
            {
                "stride": rec.stride,
                "window": rec.window,
                "rouge1": None if rec.rouge1 is None else {"p": rec.rouge1.precision, "r": rec.rouge1.recall, "f": rec.rouge1.f1},
                "rouge2": None if rec.rouge2 is None else {"p": rec.rouge2.precision, "r": rec.rouge2.recall, "f": rec.rouge2.f1},
                "selection": None if rec.selection is None else {"p": rec.selection.precision, "r": rec.selection.recall, "f": rec.selection.f1},
                "pct_supporting_per_meeting": rec.pct_supporting_per_meeting,
                "pct_supporting_per_window": rec.pct_supporting_per_window,
                "error": rec.error,
            }
        )
    _dump_json(out / "sweep.json", {"records": records})

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        [
            "stride", "window",
            "rouge1_p", "rouge1_r", "rouge1_f",
            "rouge2_p", "rouge2_r", "rouge2_f",
            "selection_p", "selection_r", "selection_f",
            "pct_supporting_per_meeting", "pct_supporting_per_window",
            "error",
        ]
    )
    for rec in result.ranked():
        writer.writerow(
            [rec.stride, rec.window]
            + _prf_cells(rec.rouge1)
            + _prf_cells(rec.rouge2)
            + _prf_cells(rec.selection)
            + [
                "" if rec.pct_supporting_per_meeting is None else f"{rec.pct_supporting_per_meeting:.4f}",
                "" if rec.pct_supporting_per_window is None else f"{rec.pct_supporting_per_window:.4f}",
                rec.error or "",
            ]
        )
    (out / "sweep.csv").write_text(buffer.getvalue(), encoding="utf-8")


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if cfg.out is None:
        raise ConfigError("sweep needs --out")
    if not cfg.golds:
        raise ConfigError("sweep needs --golds to score each configuration")
    backend = _make_backend(cfg)
    transcripts = _load_transcripts(cfg.transcripts, cfg.format)
    golds = _load_golds(cfg.golds)
    result = sweep(transcripts, golds, backend, cfg.thresholds, cfg.max_words)
    _write_sweep(cfg.out, result)
    best = [rec for rec in result.ranked() if rec.error is None]
    if best:
        top = best[0]
        print(
            f"best ROUGE-2 F at (stride={top.stride}, window={top.window}): "
            f"{100 * top.rouge2.f1:.1f} (table in {cfg.out / 'sweep.csv'})"
        )
        return EXIT_OK
    print("error: every sweep configuration failed; see sweep.csv", file=sys.stderr)
    return EXIT_BACKEND


# ---------------------------------------------------------------------------
# baselines


def _budgets_from_selections(paths: Sequence[str], transcripts: Mapping[str, Transcript]) -> dict[str, int]:
    selections = _load_selections(paths)
    budgets = {}
    for meeting_id in transcripts:
        if meeting_id not in selections:
            raise MissingArtifactError(f"budget source has no selection for meeting {meeting_id!r}")
        budgets[meeting_id] = len(selections[meeting_id].utterance_indices)
    return budgets


def cmd_baselines(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    if cfg.out is None:
        raise ConfigError("baselines needs --out")
    if (args.budget is None) == (args.budget_from is None):
        raise ConfigError("pass exactly one of --budget or --budget-from")
    method = BASELINES[args.method]
    transcripts = _load_transcripts(cfg.transcripts, cfg.format)
    if args.budget is not None:
        if args.budget < 1:
            raise ConfigError(f"--budget must be >= 1, got {args.budget}")
        budgets = {meeting_id: args.budget for meeting_id in transcripts}
    else:
        budgets = _budgets_from_selections([args.budget_from], transcripts)

    out = cfg.out / "baselines" / args.method
    out.mkdir(parents=True, exist_ok=True)
    selections: dict[str, SummarySelection] = {}
    for meeting_id in sorted(transcripts):
        transcript = transcripts[meeting_id]
        count = budgets[meeting_id]
        if count == 0:
            logger.warning("budget for meeting %r is 0; emitting an empty selection", meeting_id)
            selections[meeting_id] = SummarySelection(meeting_id=meeting_id, utterance_indices=())
        else:
            try:
                selections[meeting_id] = method(transcript, Budget(count))
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        _dump_json(out / f"{meeting_id}.json", selection_to_dict(selections[meeting_id]))

    if cfg.golds:
        golds = _load_golds(cfg.golds)
        report = evaluate_corpus(selections, transcripts, golds)
        _dump_json(out / "report.json", report_to_dict(report))
        print(format_report_table(report, system_name=args.method))
    else:
        lengths = {
            meeting_id: {
                "pct_utterances": 100.0 * len(sel.utterance_indices) / len(transcripts[meeting_id].utterances),
                "words": sum(len(transcripts[meeting_id].utterances[i].tokens) for i in sel.utterance_indices),
            }
            for meeting_id, sel in selections.items()
        }
        _dump_json(out / "report.json", {"method": args.method, "per_meeting": lengths})
        print(f"wrote {args.method} selections for {len(selections)} meeting(s) to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze


def _load_run_inputs(run_dir: Path):
    manifest_path = run_dir / "manifest.json"
    if not manifest_path.exists():
        raise MissingArtifactError(f"missing run manifest: {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    config = manifest.get("config", {})
    fmt = config.get("format", "auto")
    files = config.get("transcript_files") or config.get("transcripts") or []
    transcripts: dict[str, Transcript] = {}
    for raw in files:
        transcript = load_transcript(raw, format=None if fmt == "auto" else fmt)
        transcripts[transcript.meeting_id] = transcript
    window_config = WindowConfig(window=config["window"], stride=config["stride"])
    windows = {meeting_id: build_windows(t, window_config) for meeting_id, t in transcripts.items()}
    selections = _load_selections([str(run_dir / "selections")])
    return manifest, transcripts, windows, selections


def _load_run_abstracts(run_dir: Path) -> list[Abstract]:
    abstracts_dir = run_dir / "abstracts"
    if not abstracts_dir.is_dir():
        raise MissingArtifactError(f"missing abstracts directory: {abstracts_dir}")
    abstracts = []
    for path in sorted(abstracts_dir.glob("*.json")):
        data = json.loads(path.read_text(encoding="utf-8"))
        for record in data.get("abstracts", []):
            abstracts.append(Abstract.from_text(record["window"], record["text"]))
    return abstracts


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buffer.getvalue(), encoding="utf-8")


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.what == "sweep":
        return cmd_sweep(args)
    if not args.run:
        raise ConfigError(f"analyze --what {args.what} needs --run <summarize output dir>")
    run_dir = Path(args.run)
    out = Path(args.out) if args.out else run_dir / "analysis"
    out.mkdir(parents=True, exist_ok=True)

    if args.what == "positions":
        _, transcripts, windows, selections = _load_run_inputs(run_dir)
        histogram = PositionHistogram.empty()
        for meeting_id in sorted(selections):
            histogram = histogram + position_histogram(
                selections[meeting_id].links, windows[meeting_id], transcripts[meeting_id]
            )
        edges = [i / len(histogram.counts) for i in range(len(histogram.counts) + 1)]
        _dump_json(out / "positions.json", {"counts": list(histogram.counts), "bin_edges": edges})
        _write_csv(
            out / "positions.csv",
            ["bin_start", "bin_end", "count"],
            [[edges[i], edges[i + 1], count] for i, count in enumerate(histogram.counts)],
        )
        print(f"supporting-utterance positions: {list(histogram.counts)} (bins of width 0.2)")
    elif args.what == "lengths":
        stats = abstract_length_stats(_load_run_abstracts(run_dir))
        _dump_json(
            out / "lengths.json",
            {
                "mean_chars": stats.mean_chars,
                "bin_width": stats.bin_width,
                "counts": list(stats.counts),
                "overflow": stats.overflow,
            },
        )
        rows = [[i * stats.bin_width, (i + 1) * stats.bin_width, count] for i, count in enumerate(stats.counts)]
        rows.append([len(stats.counts) * stats.bin_width, "", stats.overflow])
        _write_csv(out / "lengths.csv", ["chars_from", "chars_to", "count"], rows)
        print(f"mean abstract length: {stats.mean_chars:.1f} chars over {stats.total} abstracts")
    elif args.what == "supports":
        _, transcripts, windows, selections = _load_run_inputs(run_dir)
        per_meeting, per_window = support_percentages(selections, transcripts, windows)
        _dump_json(out / "supports.json", {"per_meeting_pct": per_meeting, "per_window_pct": per_window})
        _write_csv(out / "supports.csv", ["per_meeting_pct", "per_window_pct"], [[per_meeting, per_window]])
        print(f"supporting utterances: {per_meeting:.1f}% per meeting, {per_window:.1f}% per window")
    else:
        raise ConfigError(f"unknown analysis {args.what!r}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# stats


def cmd_stats(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    transcripts = _load_transcripts(cfg.transcripts, cfg.format)
    stats = corpus_stats(list(transcripts.values()))
    print(f"meetings: {stats.meetings}")
    print(f"utterances per meeting: {stats.utterances_per_meeting:.1f}")
    print(f"words per utterance: {stats.words_per_utterance:.2f}")
    if cfg.out is not None:
        cfg.out.mkdir(parents=True, exist_ok=True)
        _dump_json(
            cfg.out / "stats.json",
            {
                "meetings": stats.meetings,
                "utterances": stats.utterances,
                "tokens": stats.tokens,
                "utterances_per_meeting": stats.utterances_per_meeting,
                "words_per_utterance": stats.words_per_utterance,
            },
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common_args(parser: argparse.ArgumentParser, *, transcripts=False, golds=False, out=False) -> None:
    if transcripts:
        parser.add_argument("--transcripts", nargs="+", metavar="PATH",
                            help="transcript files or directories (JSONL or TSV)")
    if golds:
        parser.add_argument("--golds", nargs="+", metavar="PATH", default=None,
                            help="gold summary JSON files or directories")
    if out:
        parser.add_argument("--out", metavar="DIR", help="output directory")
    parser.add_argument("--format", choices=sorted(_FORMAT_PATTERNS), default=None,
                        help="transcript format (default: infer from extension)")
    parser.add_argument("--config", metavar="FILE", default=None,
                        help="key = value config file; flags override it")


def _add_window_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", type=int, default=None, help="window size in tokens (default 1024)")
    parser.add_argument("--stride", type=int, default=None, help="stride in tokens (default 128)")


def _add_backend_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--backend", default=None,
                        help="summarizer backend: stub, http:<url>, or exec:<command> "
                             f"(default stub; ${BACKEND_URL_ENV} is used when set)")
    parser.add_argument("--lead-words", dest="lead_words", type=int, default=None,
                        help="words the stub backend copies from the window head (default 60)")
    parser.add_argument("--max-words", dest="max_words", type=int, default=None,
                        help="word cap passed to the backend per abstract")
    parser.add_argument("--backend-timeout", dest="backend_timeout", type=float, default=None)
    parser.add_argument("--backend-retries", dest="backend_retries", type=int, default=None)
    parser.add_argument("--backend-backoff", dest="backend_backoff", type=float, default=None)


def _add_threshold_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-utt-tokens", dest="min_utt_tokens", type=int, default=None,
                        help="supporting utterances must exceed this many tokens (default 5)")
    parser.add_argument("--min-recall", dest="min_recall", type=float, default=None,
                        help="supporting utterances must exceed this LCS recall (default 0.5)")
    parser.add_argument("--min-precision", dest="min_precision", type=float, default=None,
                        help="supporting utterances must exceed this LCS precision (default 0.1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swminutes",
        description="Extractive meeting minutes via a token-budgeted sliding window "
                    "and a pluggable abstractive summarizer backend.",
    )
    parser.add_argument("--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="subcommand", metavar="COMMAND")

    p = sub.add_parser("summarize", help="run the sliding-window pipeline over transcripts")
    _add_common_args(p, transcripts=True, out=True)
    _add_window_args(p)
    _add_backend_args(p)
    _add_threshold_args(p)
    p.add_argument("--jobs", type=int, default=None, help="meetings to process in parallel (default 1)")
    p.set_defaults(handler=cmd_summarize)

    p = sub.add_parser("eval", help="score selections against gold summaries")
    _add_common_args(p, transcripts=True, golds=True, out=True)
    p.add_argument("--selections", nargs="+", required=True, metavar="PATH",
                   help="selection JSON files or directories")
    p.add_argument("--system", default="sw", help="label for the report table")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("sweep", help="run the pipeline for all ten (stride, window) combinations")
    _add_common_args(p, transcripts=True, golds=True, out=True)
    _add_backend_args(p)
    _add_threshold_args(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("baselines", help="run an unsupervised extractive baseline")
    _add_common_args(p, transcripts=True, golds=True, out=True)
    p.add_argument("--method", choices=sorted(BASELINES), required=True)
    p.add_argument("--budget", type=int, default=None, help="utterances to select per meeting")
    p.add_argument("--budget-from", dest="budget_from", default=None, metavar="PATH",
                   help="selection JSON file or directory supplying per-meeting budgets")
    p.set_defaults(handler=cmd_baselines)

    p = sub.add_parser("analyze", help="diagnostics over a summarize run (or run the sweep)")
    _add_common_args(p, transcripts=True, golds=True, out=True)
    _add_backend_args(p)
    _add_threshold_args(p)
    p.add_argument("--what", choices=("sweep", "positions", "lengths", "supports"), required=True)
    p.add_argument("--run", metavar="DIR", default=None, help="output directory of a previous summarize run")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("stats", help="corpus statistics (utterances/meeting, words/utterance)")
    _add_common_args(p, transcripts=True, out=True)
    p.set_defaults(handler=cmd_stats)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handler = getattr(args, "handler", None)
    if handler is None:
        parser.print_help()
        return EXIT_CONFIG
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MissingArtifactError, CorpusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BackendError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BACKEND


if __name__ == "__main__":
    sys.exit(main())
