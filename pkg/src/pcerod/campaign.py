"""Non-intrusive campaign runner: sample, render, execute, fit, analyze.

Directory layout under ``<output_dir>/<campaign_id>/``::

    config.json  manifest.json  samples.csv  samples.json
    inputs/run_<index>/<input file>
    runs/<input sha256>/{<input file>, qoi.csv, log.txt}
    pce.json  uq_<output>.csv  sobol_<output>.csv  report.json

Runs are cached by the content hash of their rendered input, so repeating a
stage only executes what changed. Only the execution stage is concurrent;
the manifest is written by the calling thread alone.
"""
from __future__ import annotations

import hashlib
import json
import math
import re
import shlex
import subprocess
import sys
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import rodsim
from .basis import BasisSet
from .config import CampaignConfig
from .errors import (FitError, InterpolationRangeError, StageOrderError, TemplateError,
                     UndersampledWarning)
from .fit import ChaosExpansion, fit_expansion
from .sampling import SampleSet, draw_samples
from .sobol import sobol_table

PLACEHOLDER = re.compile(r"\{\{([A-Za-z_][A-Za-z0-9_]*)\}\}")
PLATEAU_TIME = 1e6
REFERENCE_FIGURES = {"burnup_ratio_u3si2_to_uo2": 1.4, "plenum_peak_ratio_u3si2_to_uo2": 1.13,
                   "plenum_peak_u3si2_Pa": 6.5e6}


@dataclass(frozen=True)
class ModelAdapter:
    """How one sample becomes one forward run."""
    kind: str = "builtin"
    command: tuple[str, ...] = ()
    template: str | None = None
    input_name: str = "input.json"
    output_file: str = "qoi.csv"
    output_columns: tuple[str, ...] = rodsim.QOI_NAMES
    constants: dict = field(default_factory=dict)
    timeout: float | None = None
    retries: int = 0
    rod_base: dict = field(default_factory=dict)  # built-in model: fixed sections of input.json

    @classmethod
    def from_config(cls, cfg: CampaignConfig) -> "ModelAdapter":
        a = cfg.adapter
        kind = a.get("kind", "builtin")
        command = a.get("command", ())
        if isinstance(command, str):
            command = shlex.split(command)
        retries = a.get("retries", 0)
        if not isinstance(retries, int) or retries < 0:
            raise TemplateError("retries must be a non-negative integer", [])
        base = {}
        if kind == "builtin":
            base = {"geometry": cfg.geometry, "conditions": cfg.conditions, "power": cfg.power,
                    "solver": cfg.solver, "inputs": cfg.base_rod_inputs().to_dict()}
        elif not command:
            raise TemplateError("external adapter needs a command", [])
        columns = tuple(a.get("output_columns", rodsim.QOI_NAMES))
        if not columns:
            raise TemplateError("output parser must name at least one column", [])
        return cls(kind=kind, command=tuple(command), template=cfg.template_text(),
                   input_name=a.get("input_name", "input.json" if kind == "builtin" else "input.txt"),
                   output_file=a.get("output_file", "qoi.csv"),
                   output_columns=columns,
                   constants=dict(a.get("constants", {})), timeout=a.get("timeout"),
                   retries=retries, rod_base=base)

    def render(self, values: dict[str, float], fixed: dict) -> str:
        """Text of the input file for one sample."""
        if self.kind == "builtin":
            doc = json.loads(json.dumps(self.rod_base))
            doc["inputs"].update({k: float(v) for k, v in values.items()})
            return json.dumps(doc, indent=1, sort_keys=True) + "\n"
        if self.template is None:
            raise TemplateError("external adapter needs an input template", [])
        used = set(PLACEHOLDER.findall(self.template))
        missing = sorted(set(values) - used)
        if missing:
            raise TemplateError(f"template has no placeholder for input(s): {', '.join(missing)}", missing)
        lookup = {**{k: str(v) for k, v in self.constants.items()}, **{k: str(v) for k, v in fixed.items()},
                  **{k: repr(float(v)) for k, v in values.items()}}
        unresolved = sorted(used - set(lookup))
        if unresolved:
            raise TemplateError(f"unresolved template placeholder(s): {', '.join(unresolved)}", unresolved)
        return PLACEHOLDER.sub(lambda m: lookup[m.group(1)], self.template)


@dataclass(frozen=True)
class RunSpec:
    index: int
    input_file: Path   # relative to the campaign directory
    input_hash: str


@dataclass
class RunResult:
    status: str
    attempts: int
    wall_time_s: float
    error: str | None = None


# -- rendering ---------------------------------------------------------------

def render_inputs(adapter: ModelAdapter, samples: SampleSet, campaign_dir,
                  fixed: dict | None = None) -> list[RunSpec]:
    """Write one rendered input per sample under ``inputs/run_<index>/``."""
    campaign_dir = Path(campaign_dir)
    width = max(4, len(str(samples.m - 1)))
    specs = []
    for j in range(samples.m):
        text = adapter.render(samples.row(j), {**(fixed or {}), "run_index": j})
        rel = Path("inputs") / f"run_{j:0{width}d}" / adapter.input_name
        path = campaign_dir / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        data = text.encode()
        path.write_bytes(data)
        specs.append(RunSpec(j, rel, hashlib.sha256(data).hexdigest()))
    return specs


# -- execution ---------------------------------------------------------------

def _read_output(path: Path, columns) -> rodsim.QoiSeries:
    return rodsim.QoiSeries.from_csv(path, tuple(columns))


def _attempt_builtin(adapter: ModelAdapter, run_dir: Path) -> tuple[bool, str]:
    try:
        series = rodsim.run_file(run_dir / adapter.input_name, run_dir)
    except Exception as exc:
        return False, f"ERROR {type(exc).__name__}: {exc}"
    return True, "".join(f"flag: {f}\n" for f in series.flags) or "ok\n"


def _attempt_external(adapter: ModelAdapter, run_dir: Path) -> tuple[bool, str]:
    argv = [a.replace("{input}", str(run_dir / adapter.input_name)).replace("{outdir}", str(run_dir))
            for a in adapter.command]
    try:
        proc = subprocess.run(argv, cwd=run_dir, capture_output=True, text=True, timeout=adapter.timeout)
    except subprocess.TimeoutExpired:
        return False, f"timeout after {adapter.timeout} s\n"
    except OSError as exc:
        return False, f"could not start command: {exc}\n"
    log = f"exit code {proc.returncode}\n--- stdout\n{proc.stdout}--- stderr\n{proc.stderr}"
    return proc.returncode == 0, log


def _execute_one(adapter: ModelAdapter, campaign_dir: Path, spec: RunSpec) -> RunResult:
    run_dir = campaign_dir / "runs" / spec.input_hash
    out = run_dir / adapter.output_file
    if out.exists():
        try:
            _read_output(out, adapter.output_columns)
            return RunResult("cached", 0, 0.0)
        except Exception:
            out.unlink()
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / adapter.input_name).write_bytes((campaign_dir / spec.input_file).read_bytes())
    attempt = adapter.kind == "builtin" and _attempt_builtin or _attempt_external
    logs, error = [], None
    start = time.perf_counter()
    for k in range(1, adapter.retries + 2):
        ok, log = attempt(adapter, run_dir)
        logs.append(f"=== attempt {k}\n{log}")
        if ok:
            try:
                _read_output(out, adapter.output_columns)
                error = None
                break
            except Exception as exc:
                ok, error = False, f"unparseable output: {exc}"
                logs.append(error + "\n")
        else:
            error = log.strip().splitlines()[0] if log.strip() else "run failed"
        if out.exists():
            out.unlink()
    wall = time.perf_counter() - start
    (run_dir / "log.txt").write_text("".join(logs))
    return RunResult("ok" if error is None else "failed", k, wall, error)


def execute(adapter: ModelAdapter, specs: list[RunSpec], campaign_dir, worker_limit: int = 1) -> list[dict]:
    """Execute every distinct input once and return per-run manifest records.

    Runs whose output already exists under ``runs/<hash>/`` are marked
    ``cached``; repeated inputs within one campaign reuse the first run.
    """
    campaign_dir = Path(campaign_dir)
    first: dict[str, RunSpec] = {}
    for spec in specs:
        first.setdefault(spec.input_hash, spec)
    unique = list(first.values())
    with ThreadPoolExecutor(max_workers=max(1, int(worker_limit))) as pool:
        results = dict(zip((s.input_hash for s in unique),
                           pool.map(lambda s: _execute_one(adapter, campaign_dir, s), unique)))
    records = []
    for spec in specs:
        r = results[spec.input_hash]
        primary = first[spec.input_hash] is spec
        status = r.status if primary else ("failed" if r.status == "failed" else "cached")
        records.append({
            "index": spec.index,
            "input_file": spec.input_file.as_posix(),
            "input_hash": spec.input_hash,
            "run_dir": f"runs/{spec.input_hash}",
            "status": status,
            "attempts": r.attempts if primary else 0,
            "wall_time_s": r.wall_time_s if primary else 0.0,
            "error": r.error,
        })
    return records


# -- collection and fit ------------------------------------------------------

def interpolate_series(times, values, grid) -> np.ndarray:
    """Linear interpolation in log-time; refuses to extrapolate."""
    times, grid = np.asarray(times, dtype=float), np.asarray(grid, dtype=float)
    if grid[0] < times[0] or grid[-1] > times[-1]:
        raise InterpolationRangeError(
            f"grid [{grid[0]:.6g}, {grid[-1]:.6g}] s outside run span [{times[0]:.6g}, {times[-1]:.6g}] s")
    return np.interp(np.log(grid), np.log(times), np.asarray(values, dtype=float))


def collect_and_fit(manifest: dict, basis: BasisSet, time_grid, samples: SampleSet, campaign_dir,
                    outputs=rodsim.QOI_NAMES, output_file: str = "qoi.csv",
                    metadata: dict | None = None) -> tuple[ChaosExpansion, list[dict]]:
    """Interpolate every usable run onto ``time_grid`` and fit all outputs."""
    campaign_dir = Path(campaign_dir)
    grid = np.asarray(time_grid, dtype=float)
    rows, used, excluded = [], [], []
    for rec in manifest["runs"]:
        if rec["status"] == "failed":
            excluded.append({"index": rec["index"], "reason": f"run failed: {rec['error']}"})
            continue
        try:
            series = _read_output(campaign_dir / rec["run_dir"] / output_file, outputs)
            rows.append(np.stack([interpolate_series(series.time_grid, series[o], grid) for o in outputs]))
            used.append(rec["index"])
        except InterpolationRangeError as exc:
            excluded.append({"index": rec["index"], "reason": str(exc)})
    need_hard, need_soft = len(basis) + 1, 2 * len(basis)
    if len(used) < need_hard:
        raise FitError(f"only {len(used)} usable runs; at least {need_hard} needed for {len(basis)} coefficients")
    if len(used) < need_soft:
        warnings.warn(f"{len(used)} usable runs is below the 2(P+1) = {need_soft} guideline",
                      UndersampledWarning, stacklevel=2)
    xi = samples.standardized[used]
    meta = {**(metadata or {}), "inputs": samples.names, "used_runs": used, "excluded": excluded}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UndersampledWarning)  # already reported above
        expansion = fit_expansion(basis, xi, np.stack(rows), tuple(outputs), grid, metadata=meta)
    return expansion, excluded


# -- stages ------------------------------------------------------------------

def _write_json(path: Path, data) -> Path:
    path.write_text(json.dumps(_clean(data), indent=1) + "\n")
    return path


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _require(path: Path, stage: str) -> Path:
    if not path.exists():
        raise StageOrderError(f"{stage} needs {path.name}; run the earlier stage first", missing=str(path))
    return path


def load_manifest(cdir: Path) -> dict:
    return json.loads(_require(cdir / "manifest.json", "this stage").read_text())


def stage_sample(cfg: CampaignConfig) -> Path:
    """Task 1: draw the sample set and start a fresh manifest."""
    cdir = cfg.campaign_dir()
    cdir.mkdir(parents=True, exist_ok=True)
    samples = draw_samples(cfg.inputs, cfg.sampling["method"], cfg.sampling["m"], cfg.sampling["seed"])
    samples.validate_against(cfg.build_basis())
    path = samples.to_csv(cdir / "samples.csv")
    _write_json(cdir / "config.json", {k: v for k, v in cfg.to_dict().items() if k not in ("output_dir", "workers")})
    _write_json(cdir / "manifest.json", {
        "campaign_id": cfg.campaign_id, "config_hash": cfg.config_hash(), "fuel": cfg.fuel,
        "samples": "samples.csv", "m": samples.m, "runs": [], "fit": None, "analysis": None})
    return path


def stage_run(cfg: CampaignConfig) -> dict:
    """Tasks 2-3: render one input per sample and execute the model."""
    cdir = cfg.campaign_dir()
    samples = SampleSet.from_csv(_require(cdir / "samples.csv", "run"))
    manifest = load_manifest(cdir)
    adapter = ModelAdapter.from_config(cfg)
    specs = render_inputs(adapter, samples, cdir, {"fuel": cfg.fuel})
    manifest["runs"] = execute(adapter, specs, cdir, cfg.workers)
    if adapter.kind == "builtin":
        manifest["model"] = {"coolant_film_coefficient_W_m2K": rodsim.coolant_film_coefficient(
            cfg.rod_records()["conditions"])}
    manifest["fit"] = manifest["analysis"] = None
    _write_json(cdir / "manifest.json", manifest)
    return manifest


def stage_fit(cfg: CampaignConfig) -> ChaosExpansion:
    """Task 4: regression of chaos coefficients plus mean/std series."""
    cdir = cfg.campaign_dir()
    manifest = load_manifest(cdir)
    if not manifest.get("runs"):
        raise StageOrderError("fit needs executed runs; run the 'run' stage first", missing="manifest.json:runs")
    samples = SampleSet.from_csv(_require(cdir / "samples.csv", "fit"))
    adapter = ModelAdapter.from_config(cfg)
    expansion, excluded = collect_and_fit(manifest, cfg.build_basis(), cfg.shared_time_grid(), samples, cdir,
                                          adapter.output_columns, adapter.output_file,
                                          {"campaign_id": cfg.campaign_id, "fuel": cfg.fuel})
    expansion.to_json(cdir / "pce.json")
    uq = expansion.export_moments(cdir)
    manifest["fit"] = {"pce": "pce.json", "uq": [p.name for p in uq], "n_used": len(manifest["runs"]) - len(excluded),
                       "excluded": excluded, "condition": expansion.diagnostics["condition"]}
    manifest["analysis"] = None
    _write_json(cdir / "manifest.json", manifest)
    return expansion


def stage_sobol(cfg: CampaignConfig) -> dict:
    """Task 5: Sobol indices and the plateau summary report."""
    cdir = cfg.campaign_dir()
    expansion = ChaosExpansion.from_json(_require(cdir / "pce.json", "sobol"))
    manifest = load_manifest(cdir)
    table = sobol_table(expansion, cfg.input_names)
    paths = table.to_csv(cdir)
    report = build_report(expansion, table, cfg)
    _write_json(cdir / "report.json", report)
    manifest["analysis"] = {"sobol": [p.name for p in paths], "report": "report.json"}
    _write_json(cdir / "manifest.json", manifest)
    return report


def run_pipeline(cfg: CampaignConfig) -> dict:
    """All five tasks in order; equivalent to the stage commands run in sequence."""
    stage_sample(cfg)
    stage_run(cfg)
    stage_fit(cfg)
    return stage_sobol(cfg)


# -- reporting ---------------------------------------------------------------

def build_report(expansion: ChaosExpansion, table, cfg: CampaignConfig) -> dict:
    grid = expansion.time_grid
    i = int(np.argmin(np.abs(np.log(grid) - math.log(PLATEAU_TIME))))
    mean, std = expansion.mean(), expansion.std()
    svar = np.asarray(expansion.diagnostics["sample_variance"], dtype=float)
    outputs = {}
    for o, name in enumerate(expansion.outputs):
        k = int(np.argmax(mean[o]))
        outputs[name] = {
            "plateau_mean": mean[o, i], "plateau_std": std[o, i],
            "plateau_rsd_percent": 100.0 * std[o, i] / abs(mean[o, i]) if mean[o, i] != 0 else None,
            "plateau_sample_variance": svar[o, i],
            "max_sample_variance": float(np.max(svar[o])),
            "max_mean": mean[o, k], "time_of_max_mean_s": grid[k],
            "final_mean": mean[o, -1],
            "plateau_first_order": table.at(name, i),
            "plateau_total_order": dict(zip(table.inputs, table.total_order[o, i])),
        }
    # undefined indices (NaN) become null so the report is strict JSON
    return _clean({"campaign_id": cfg.campaign_id, "fuel": cfg.fuel, "plateau_time_s": grid[i],
                   "n_runs_used": expansion.diagnostics["n_samples"], "outputs": outputs})


def compare_reports(uo2: dict, u3si2: dict) -> dict:
    """Achieved U3Si2/UO2 ratios next to reference figures from a full finite-element study."""
    a, b = uo2["outputs"], u3si2["outputs"]
    achieved = {
        "burnup_ratio_u3si2_to_uo2": b["avg_burnup"]["final_mean"] / a["avg_burnup"]["final_mean"],
        "plenum_peak_ratio_u3si2_to_uo2": b["plenum_pressure"]["max_mean"] / a["plenum_pressure"]["max_mean"],
        "plenum_peak_u3si2_Pa": b["plenum_pressure"]["max_mean"],
        "centerline_plateau_delta_K": b["max_fuel_centerline_T"]["plateau_mean"]
        - a["max_fuel_centerline_T"]["plateau_mean"],
        "clad_surface_plateau_delta_K": b["max_clad_surface_T"]["plateau_mean"]
        - a["max_clad_surface_T"]["plateau_mean"],
    }
    return {"achieved": achieved, "reference": dict(REFERENCE_FIGURES)}


def format_comparison(cmp: dict) -> str:
    lines = [f"{'quantity':36s} {'achieved':>14s} {'reference':>14s}"]
    for key, val in cmp["achieved"].items():
        ref = cmp["reference"].get(key)
        lines.append(f"{key:36s} {val:14.6g} {'' if ref is None else format(ref, '14.6g'):>14s}")
    return "\n".join(lines)


def main_rodsim_command() -> list[str]:
    """argv for running the built-in model as an external program."""
    return [sys.executable, "-m", "pcerod.rodsim", "{input}", "{outdir}"]
