"""Batch execution of a segmentation script over an image directory.

Datasets hold ``<NAME>.png`` images next to ``<NAME>_seg_RGB.png`` reference
masks. Each case runs the script with ``INPUTDIR``, ``NAME`` and ``OUTPUTDIR``
bound; scores are recomputed from the saved ``<NAME>_nevSegV0.png``.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from . import dsl, imaging, metrics
from .dsl import EvalOptions

log = logging.getLogger(__name__)

TRUTH_SUFFIX = "_seg_RGB"
RESULT_SUFFIX = "_nevSegV0"
CSV_COLUMNS = [
    "name", "tp", "tn", "fp", "fn",
    "dice", "jaccard", "sensitivity", "specificity", "accuracy",
    "seconds", "status",
]
INDEXES = ["accuracy", "dice", "jaccard", "sensitivity", "specificity"]
# (label, predicate); the ">" rows are cumulative
DICE_BINS = [
    ("Dice > 0.9", lambda d: d > 0.9),
    ("Dice > 0.8", lambda d: d > 0.8),
    ("Dice > 0.7", lambda d: d > 0.7),
    ("Dice < 0.5", lambda d: d < 0.5),
    ("Dice = 0", lambda d: d == 0),
]


@dataclass
class CaseResult:
    name: str
    status: str  # "ok", "skipped" or "error"
    metrics: metrics.MetricsRecord | None = None
    seconds: float = 0.0
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass
class AggregateReport:
    count: int
    means: dict[str, float]
    bins: list[tuple[str, int, float]]
    failed: int = 0
    skipped: int = 0

    def to_text(self) -> str:
        lines = [f"cases: {self.count} scored, {self.skipped} skipped, {self.failed} failed", ""]
        lines.append("".join(f"{h:>13}" for h in ["", *[i.capitalize() for i in INDEXES]]))
        lines.append(f"{'Mean':>13}" + "".join(f"{self.means[i]:>13.3f}" for i in INDEXES))
        lines.append("")
        lines.append(f"{'':<12}{'images':>8}{'fraction':>10}")
        for label, n, frac in self.bins:
            lines.append(f"{label:<12}{n:>8}{frac:>10.2f}")
        return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def binarize_truth(path: str | os.PathLike, intensity: str = "rec601") -> np.ndarray:
    return imaging.intensity(imaging.load_png(path), intensity) > 0


def run_single(
    spec: str | os.PathLike,
    bindings: Mapping[str, str],
    output_dir: str | os.PathLike,
    options: EvalOptions | None = None,
    search_path: list[str | os.PathLike] | None = None,
    emit=None,
) -> CaseResult:
    """Run one case; failures are reported in the result, not raised."""
    options = options or EvalOptions()
    name = bindings.get("NAME", Path(spec).stem)
    out = Path(output_dir)
    env = {**bindings, "OUTPUTDIR": str(out)}
    start = time.perf_counter()
    try:
        out.mkdir(parents=True, exist_ok=True)
        dsl.run_file(spec, env, options, search_path, emit=emit)
        seg_path = out / f"{name}{RESULT_SUFFIX}.png"
        truth_path = Path(env.get("INPUTDIR", ".")) / f"{name}{TRUTH_SUFFIX}.png"
        seg = imaging.intensity(imaging.load_png(seg_path)) > 0
        truth = binarize_truth(truth_path, options.intensity)
        record = metrics.metrics_record(seg, truth)
    except (dsl.ImgQLError, OSError, ValueError, ArithmeticError) as exc:
        log.warning("case %s failed: %s", name, exc)
        return CaseResult(name, "error", None, time.perf_counter() - start, str(exc))
    return CaseResult(name, "ok", record, time.perf_counter() - start)


def discover(dataset: str | os.PathLike) -> list[str]:
    """Case names with both an image and a reference mask, sorted."""
    d = Path(dataset)
    names = []
    for p in sorted(d.glob("*.png")):
        stem = p.stem
        if stem.endswith(TRUTH_SUFFIX):
            continue
        if (d / f"{stem}{TRUTH_SUFFIX}.png").is_file():
            names.append(stem)
        else:
            log.info("skipping %s: no %s%s.png", p.name, stem, TRUTH_SUFFIX)
    return names


def read_skip_list(path: str | os.PathLike | None) -> set[str]:
    if path is None:
        return set()
    out = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.add(line)
    return out


def _run_case(args) -> CaseResult:
    spec, bindings, output_dir, options, search_path = args
    return run_single(spec, bindings, output_dir, options, search_path, emit=None)


def aggregate(results: Iterable[CaseResult]) -> AggregateReport:
    results = list(results)
    scored = [r for r in results if r.ok]
    n = len(scored)
    means = {i: (sum(getattr(r.metrics, i) for r in scored) / n if n else float("nan")) for i in INDEXES}
    dices = [r.metrics.dice for r in scored]
    bins = []
    for label, pred in DICE_BINS:
        count = sum(1 for d in dices if pred(d))
        bins.append((label, count, count / n if n else 0.0))
    return AggregateReport(
        count=n,
        means=means,
        bins=bins,
        failed=sum(r.status == "error" for r in results),
        skipped=sum(r.status == "skipped" for r in results),
    )


def results_csv(results: Iterable[CaseResult], timings: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        seconds = _fmt(r.seconds) if timings else "0"
        status = r.status if r.ok else f"{r.status}: {r.message}" if r.message else r.status
        if r.metrics is None:
            writer.writerow([r.name, "", "", "", "", "", "", "", "", "", seconds, status])
            continue
        m = r.metrics
        writer.writerow(
            [r.name, m.tp, m.tn, m.fp, m.fn]
            + [_fmt(getattr(m, c)) for c in ("dice", "jaccard", "sensitivity", "specificity", "accuracy")]
            + [seconds, status]
        )
    return buf.getvalue()


@dataclass
class BatchResult:
    results: list[CaseResult]
    report: AggregateReport
    csv_path: Path
    report_path: Path


def run_batch(
    dataset: str | os.PathLike,
    spec: str | os.PathLike,
    output_dir: str | os.PathLike,
    options: EvalOptions | None = None,
    skip: Iterable[str] = (),
    jobs: int = 1,
    timings: bool = True,
    search_path: list[str | os.PathLike] | None = None,
    defines: Mapping[str, str] | None = None,
) -> BatchResult:
    """Run every case of a dataset and write ``results.csv`` and ``report.txt``."""
    options = options or EvalOptions()
    names = discover(dataset)
    if not names:
        raise FileNotFoundError(f"no <NAME>.png / <NAME>{TRUTH_SUFFIX}.png pairs in {dataset}")
    skip = set(skip)
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = dsl.make_bindings(defines)
    work = [
        (str(spec), {**base, "INPUTDIR": str(dataset), "NAME": n}, str(out), options, search_path)
        for n in names
        if n not in skip
    ]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            ran = list(pool.map(_run_case, work))
    else:
        ran = [_run_case(w) for w in work]
    by_name = {r.name: r for r in ran}
    results = [by_name.get(n) or CaseResult(n, "skipped", message="skip list") for n in names]
    report = aggregate(results)
    csv_path = out / "results.csv"
    report_path = out / "report.txt"
    csv_path.write_text(results_csv(results, timings), encoding="utf-8", newline="\n")
    report_path.write_text(report.to_text(), encoding="utf-8", newline="\n")
    return BatchResult(results, report, csv_path, report_path)
