"""Command-line surface: run tuning studies and sampler comparisons from a manifest.

Manifests are JSON documents describing the space, the objective, the
sampler(s), the budget, and the seed list.  Every artifact written here is
byte-reproducible from the manifest: studies are fully seeded and trial wall
times are persisted as 0 (measured times are kept in memory only).

Exit codes: 0 success, 2 usage/manifest error, 3 objective setup failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .harness import (
    SYNTHETIC_NAMES,
    cv_objective,
    load_csv_dataset,
    metric_direction,
    synthetic_objective,
)
from .samplers import SamplerSpec, to_minimize
from .space import SearchSpace, preset_names, preset_space, space_from_dict
from .study import Study, StudyConfig, StudyResult, save_study
from .worker import ExternalWorker

EXIT_OK = 0
EXIT_MANIFEST = 2
EXIT_SETUP = 3

_CSV_MODEL_KEYS = {
    "path",
    "model",
    "target",
    "categorical",
    "metric",
    "folds",
    "cv_seed",
    "split",
    "shuffle",
    "split_seed",
}


class ManifestError(ValueError):
    """The manifest document is structurally invalid."""


class ObjectiveSetupError(RuntimeError):
    """The objective could not be constructed (bad file, dead worker, ...)."""


@dataclass(frozen=True)
class ObjectiveSpec:
    kind: str  # "builtin" | "csv_model" | "command"
    payload: object


@dataclass(frozen=True)
class RunManifest:
    """A parsed benchmark definition: space, objective, samplers, budget, seeds."""

    space: SearchSpace
    objective: ObjectiveSpec
    samplers: tuple[SamplerSpec, ...]
    budget: int
    seeds: tuple[int, ...]
    direction: Optional[str]
    output: Path


@dataclass(frozen=True)
class ComparisonCell:
    sampler: str
    seed: int
    best_score: Optional[float]
    n_trials: int
    wall_ms_total: float
    failed: bool


@dataclass(frozen=True)
class SamplerSummary:
    sampler: str
    median_best: Optional[float]
    iqr_best: Optional[float]
    n_ok: int


@dataclass(frozen=True)
class ComparisonReport:
    cells: tuple[ComparisonCell, ...] = field(default_factory=tuple)
    summaries: tuple[SamplerSummary, ...] = field(default_factory=tuple)


def _parse_sampler(entry: object) -> SamplerSpec:
    if not isinstance(entry, dict) or "kind" not in entry:
        raise ManifestError(f"sampler entries need a 'kind' field, got {entry!r}")
    unknown = set(entry) - {"kind", "options"}
    if unknown:
        raise ManifestError(f"unknown sampler fields: {sorted(unknown)}")
    options = entry.get("options", {})
    if not isinstance(options, dict):
        raise ManifestError(f"sampler options must be an object, got {options!r}")
    try:
        return SamplerSpec(kind=entry["kind"], options=options)
    except ValueError as exc:
        raise ManifestError(str(exc)) from exc


def _parse_space(entry: object) -> SearchSpace:
    if isinstance(entry, str):
        try:
            return preset_space(entry)
        except ValueError as exc:
            raise ManifestError(str(exc)) from exc
    if isinstance(entry, dict):
        try:
            return space_from_dict(entry)
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"invalid inline space: {exc}") from exc
    raise ManifestError(
        f"space must be a preset name (one of {', '.join(preset_names())}) or an inline object"
    )


def _parse_objective(entry: object) -> ObjectiveSpec:
    if not isinstance(entry, dict) or len(entry) != 1:
        raise ManifestError(
            "objective must be exactly one of {'builtin': ...}, {'csv_model': ...}, {'command': ...}"
        )
    kind, payload = next(iter(entry.items()))
    if kind == "builtin":
        if payload not in SYNTHETIC_NAMES:
            raise ManifestError(
                f"unknown builtin objective {payload!r}; valid names: {', '.join(SYNTHETIC_NAMES)}"
            )
        return ObjectiveSpec(kind="builtin", payload=payload)
    if kind == "csv_model":
        if not isinstance(payload, dict):
            raise ManifestError("csv_model must be an object")
        unknown = set(payload) - _CSV_MODEL_KEYS
        if unknown:
            raise ManifestError(f"unknown csv_model fields: {sorted(unknown)}")
        for required in ("path", "model", "target"):
            if required not in payload:
                raise ManifestError(f"csv_model needs a {required!r} field")
        if payload["model"] not in ("ridge", "logistic"):
            raise ManifestError(f"csv_model model must be 'ridge' or 'logistic', got {payload['model']!r}")
        return ObjectiveSpec(kind="csv_model", payload=dict(payload))
    if kind == "command":
        if not isinstance(payload, list) or not payload or not all(isinstance(p, str) for p in payload):
            raise ManifestError("command must be a non-empty list of strings")
        return ObjectiveSpec(kind="command", payload=tuple(payload))
    raise ManifestError(f"unknown objective source {kind!r}")


def load_manifest(
    path: str,
    *,
    want_samplers: bool,
    budget_override: Optional[int] = None,
    seeds_override: Optional[Sequence[int]] = None,
    output_override: Optional[str] = None,
) -> RunManifest:
    """Parse and validate a manifest file, applying command-line overrides."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ManifestError("manifest must be a JSON object")
    known = {"space", "objective", "sampler", "samplers", "budget", "seeds", "direction", "output"}
    unknown = set(doc) - known
    if unknown:
        raise ManifestError(f"unknown manifest fields: {sorted(unknown)}")
    for required in ("space", "objective"):
        if required not in doc:
            raise ManifestError(f"manifest needs a {required!r} field")

    space = _parse_space(doc["space"])
    objective = _parse_objective(doc["objective"])

    if want_samplers:
        if "samplers" not in doc:
            raise ManifestError("compare manifests need a 'samplers' list")
        raw = doc["samplers"]
        if not isinstance(raw, list) or len(raw) < 2:
            raise ManifestError("'samplers' must list at least two samplers")
        samplers = tuple(_parse_sampler(entry) for entry in raw)
    else:
        if "sampler" not in doc:
            raise ManifestError("tune manifests need a 'sampler' field")
        samplers = (_parse_sampler(doc["sampler"]),)

    budget = budget_override if budget_override is not None else doc.get("budget")
    if not isinstance(budget, int) or isinstance(budget, bool) or budget < 1:
        raise ManifestError(f"budget must be a positive integer, got {budget!r}")

    seeds_raw = list(seeds_override) if seeds_override is not None else doc.get("seeds")
    if not isinstance(seeds_raw, list) or not seeds_raw:
        raise ManifestError("seeds must be a non-empty list of integers")
    seeds: list[int] = []
    for value in seeds_raw:
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ManifestError(f"seeds must be non-negative integers, got {value!r}")
        seeds.append(value)

    direction = doc.get("direction")
    if direction is not None and direction not in ("minimize", "maximize"):
        raise ManifestError(f"direction must be 'minimize' or 'maximize', got {direction!r}")

    output = output_override if output_override is not None else doc.get("output", "tunekit-out")
    if not isinstance(output, str) or not output:
        raise ManifestError(f"output must be a non-empty path, got {output!r}")

    return RunManifest(
        space=space,
        objective=objective,
        samplers=samplers,
        budget=budget,
        seeds=tuple(seeds),
        direction=direction,
        output=Path(output),
    )


def build_objective(
    spec: ObjectiveSpec,
) -> tuple[Callable, str, Callable[[], None]]:
    """Construct (objective, default direction, cleanup) from an objective spec."""
    if spec.kind == "builtin":
        name = spec.payload
        return (lambda point: synthetic_objective(name, point)), "minimize", lambda: None
    if spec.kind == "csv_model":
        payload = dict(spec.payload)
        model = payload["model"]
        metric = payload.get("metric") or ("rmse" if model == "ridge" else "kappa")
        try:
            direction = metric_direction(metric)
        except ValueError as exc:
            raise ObjectiveSetupError(str(exc)) from exc
        try:
            train, _test = load_csv_dataset(
                payload["path"],
                target_column=payload["target"],
                categorical_columns=payload.get("categorical", ()),
                split_ratio=float(payload.get("split", 0.7)),
                shuffle=bool(payload.get("shuffle", False)),
                seed=int(payload.get("split_seed", 0)),
            )
        except (OSError, ValueError) as exc:
            raise ObjectiveSetupError(f"cannot load dataset: {exc}") from exc
        folds = int(payload.get("folds", 3))
        cv_seed = int(payload.get("cv_seed", 0))

        def objective(point):
            return cv_objective(model, train, point, k=folds, seed=cv_seed, metric=metric)

        return objective, direction, lambda: None
    if spec.kind == "command":
        try:
            worker = ExternalWorker(spec.payload)
        except (OSError, ValueError) as exc:
            raise ObjectiveSetupError(f"cannot spawn worker: {exc}") from exc
        return worker.evaluate, "minimize", worker.close
    raise ObjectiveSetupError(f"unknown objective kind {spec.kind!r}")


def _sampler_labels(samplers: Sequence[SamplerSpec]) -> list[str]:
    totals: dict[str, int] = {}
    for spec in samplers:
        totals[spec.kind] = totals.get(spec.kind, 0) + 1
    seen: dict[str, int] = {}
    labels = []
    for spec in samplers:
        seen[spec.kind] = seen.get(spec.kind, 0) + 1
        if totals[spec.kind] == 1:
            labels.append(spec.kind)
        else:
            labels.append(f"{spec.kind}-{seen[spec.kind]}")
    return labels


def _format_score(score: Optional[float]) -> str:
    return "" if score is None else repr(float(score))


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _run_cell(
    manifest: RunManifest,
    sampler: SamplerSpec,
    seed: int,
    direction: str,
    objective: Callable,
    trace_path: Path,
) -> tuple[Study, StudyResult]:
    config = StudyConfig(direction=direction, budget=manifest.budget, seed=seed, sampler=sampler)
    study = Study(manifest.space, config)
    result = study.run(objective)
    save_study(study, trace_path)
    return study, result


def cmd_tune(manifest: RunManifest) -> int:
    """Run one study per seed; write per-seed traces and a summary table."""
    try:
        objective, default_direction, cleanup = build_objective(manifest.objective)
    except ObjectiveSetupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SETUP
    direction = manifest.direction or default_direction
    sampler = manifest.samplers[0]
    manifest.output.mkdir(parents=True, exist_ok=True)
    rows = []
    try:
        for seed in manifest.seeds:
            trace_path = manifest.output / f"trace_{sampler.kind}_seed{seed}.jsonl"
            _study, result = _run_cell(manifest, sampler, seed, direction, objective, trace_path)
            best = result.best
            rows.append(
                [
                    sampler.kind,
                    seed,
                    _format_score(None if best is None else best.score),
                    json.dumps(best.point) if best is not None else "",
                    len(result.history),
                ]
            )
    finally:
        cleanup()
    _write_csv(
        manifest.output / "summary.csv",
        ["sampler", "seed", "best_score", "best_params", "n_trials"],
        rows,
    )
    return EXIT_OK


def _best_so_far_series(result: StudyResult, direction: str) -> list[tuple[int, float]]:
    series: list[tuple[int, float]] = []
    best: Optional[float] = None
    for record in result.history:
        if record.score is not None:
            if best is None or to_minimize(record.score, direction) < to_minimize(best, direction):
                best = record.score
        if best is not None:
            series.append((record.ordinal, best))
    return series


def compare_report(
    manifest: RunManifest, direction: str, objective: Callable
) -> tuple[ComparisonReport, dict[tuple[str, int], list[tuple[int, float]]]]:
    """Run the full sampler x seed grid and assemble the comparison report."""
    labels = _sampler_labels(manifest.samplers)
    cells: list[ComparisonCell] = []
    convergence: dict[tuple[str, int], list[tuple[int, float]]] = {}
    for label, sampler in zip(labels, manifest.samplers):
        for seed in manifest.seeds:
            trace_path = manifest.output / f"trace_{label}_seed{seed}.jsonl"
            started = time.perf_counter()
            try:
                _study, result = _run_cell(manifest, sampler, seed, direction, objective, trace_path)
            except Exception as exc:  # a broken cell must not abort the grid
                print(f"warning: cell ({label}, seed {seed}) failed: {exc}", file=sys.stderr)
                cells.append(
                    ComparisonCell(
                        sampler=label,
                        seed=seed,
                        best_score=None,
                        n_trials=0,
                        wall_ms_total=(time.perf_counter() - started) * 1000.0,
                        failed=True,
                    )
                )
                continue
            wall_total = (time.perf_counter() - started) * 1000.0
            best = result.best
            cells.append(
                ComparisonCell(
                    sampler=label,
                    seed=seed,
                    best_score=None if best is None else best.score,
                    n_trials=len(result.history),
                    wall_ms_total=wall_total,
                    failed=best is None,
                )
            )
            convergence[(label, seed)] = _best_so_far_series(result, direction)
    summaries: list[SamplerSummary] = []
    for label in labels:
        scores = [c.best_score for c in cells if c.sampler == label and c.best_score is not None]
        if scores:
            median = float(np.median(scores))
            iqr = float(np.percentile(scores, 75) - np.percentile(scores, 25))
        else:
            median = iqr = None
        summaries.append(
            SamplerSummary(sampler=label, median_best=median, iqr_best=iqr, n_ok=len(scores))
        )
    return ComparisonReport(cells=tuple(cells), summaries=tuple(summaries)), convergence


def cmd_compare(manifest: RunManifest) -> int:
    """Run every sampler over the same seed list; emit report, summary, convergence."""
    try:
        objective, default_direction, cleanup = build_objective(manifest.objective)
    except ObjectiveSetupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SETUP
    direction = manifest.direction or default_direction
    manifest.output.mkdir(parents=True, exist_ok=True)
    try:
        report, convergence = compare_report(manifest, direction, objective)
    finally:
        cleanup()
    _write_csv(
        manifest.output / "report.csv",
        ["sampler", "seed", "best_score", "n_trials", "status", "wall_ms"],
        [
            [c.sampler, c.seed, _format_score(c.best_score), c.n_trials,
             "failed" if c.failed else "ok", 0]
            for c in report.cells
        ],
    )
    _write_csv(
        manifest.output / "summary.csv",
        ["sampler", "median_best", "iqr_best", "n_ok"],
        [
            [s.sampler, _format_score(s.median_best), _format_score(s.iqr_best), s.n_ok]
            for s in report.summaries
        ],
    )
    convergence_rows = []
    for (label, seed), series in convergence.items():
        for ordinal, best in series:
            convergence_rows.append([label, seed, ordinal, repr(best)])
    _write_csv(
        manifest.output / "convergence.csv",
        ["sampler", "seed", "ordinal", "best_so_far"],
        convergence_rows,
    )
    return EXIT_OK


def _parse_seed_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seeds must be comma-separated integers: {exc}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tunekit", description="Run and compare hyperparameter tuning studies."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("tune", "run one sampler over every seed in the manifest"),
        ("compare", "run every manifest sampler over the same seeds"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--manifest", "-m", required=True, help="path to the JSON manifest")
        cmd.add_argument("--budget", type=int, default=None, help="override the trial budget")
        cmd.add_argument(
            "--seeds", type=_parse_seed_list, default=None, help="override seeds, e.g. 0,1,2"
        )
        cmd.add_argument("--output", default=None, help="override the output directory")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else int(exc.code)
    try:
        manifest = load_manifest(
            args.manifest,
            want_samplers=args.command == "compare",
            budget_override=args.budget,
            seeds_override=args.seeds,
            output_override=args.output,
        )
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MANIFEST
    if args.command == "tune":
        return cmd_tune(manifest)
    return cmd_compare(manifest)


if __name__ == "__main__":
    sys.exit(main())
