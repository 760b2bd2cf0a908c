"""Campaign configuration: JSON file in, validated dataclass out."""
from __future__ import annotations

import copy
import hashlib
import json
import os
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .basis import BasisSet, PolynomialFamily, build_basis
from .errors import ConfigError, UndersampledWarning
from .rodsim import (QOI_NAMES, OperatingConditions, PowerHistory, RodGeometry, RodInputs, SolverConfig,
                     default_time_grid)
from .sampling import METHODS, RandomInput

# mean values of the uncertain inputs per fuel system, all at 5 % RSD
FUEL_DEFAULTS = {
    "UO2": {"fuel_density": 10430.0, "fuel_k": 2.8},
    "U3Si2": {"fuel_density": 11590.0, "fuel_k": 8.5},
}
CLAD_DEFAULTS = {"clad_density": 2650.0, "clad_k": 75.0}
INPUT_ORDER = ("fuel_density", "fuel_k", "clad_density", "clad_k")
DEFAULT_RSD = 5.0
WORKERS_ENV = "PCE_ROD_WORKERS"

_TOP_KEYS = {"fuel", "inputs", "basis", "sampling", "adapter", "geometry", "conditions", "power",
             "solver", "time_grid", "output_dir", "workers"}
_BASIS_KEYS = {"family", "order", "alpha", "beta"}
_SAMPLING_KEYS = {"method", "m", "seed"}
_ADAPTER_KEYS = {"kind", "command", "input_template", "template_path", "input_name", "output_file",
                 "output_columns", "constants", "timeout", "retries"}
# run-location settings that do not change results
_UNHASHED = {"output_dir", "workers"}


def default_inputs(fuel: str) -> list[RandomInput]:
    means = {**FUEL_DEFAULTS[fuel], **CLAD_DEFAULTS}
    return [RandomInput(name, means[name], DEFAULT_RSD) for name in INPUT_ORDER]


def _check_keys(section: str, data: dict, allowed: set) -> None:
    if not isinstance(data, dict):
        raise ConfigError(f"{section} must be a JSON object")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown {section} keys: {', '.join(unknown)}")


@dataclass
class CampaignConfig:
    fuel: str = "UO2"
    inputs: list = field(default_factory=list)
    basis: dict = field(default_factory=lambda: {"family": "legendre", "order": 3})
    sampling: dict = field(default_factory=lambda: {"method": "monte_carlo", "m": 100, "seed": 0})
    adapter: dict = field(default_factory=lambda: {"kind": "builtin"})
    geometry: dict = field(default_factory=dict)
    conditions: dict = field(default_factory=dict)
    power: dict = field(default_factory=dict)
    solver: dict = field(default_factory=dict)
    time_grid: list | None = None
    output_dir: str = "campaign"
    workers: int = 1
    base_dir: Path = field(default=Path("."), compare=False, repr=False)

    def __post_init__(self):
        if self.fuel not in FUEL_DEFAULTS:
            raise ConfigError(f"fuel must be one of {sorted(FUEL_DEFAULTS)}, got {self.fuel!r}")
        if not self.inputs:
            self.inputs = default_inputs(self.fuel)
        self.inputs = [i if isinstance(i, RandomInput) else _input_from_dict(i) for i in self.inputs]
        names = [i.name for i in self.inputs]
        if len(set(names)) != len(names):
            raise ConfigError("input names must be unique")
        _check_keys("basis", self.basis, _BASIS_KEYS)
        _check_keys("sampling", self.sampling, _SAMPLING_KEYS)
        _check_keys("adapter", self.adapter, _ADAPTER_KEYS)
        self.basis = {"family": "legendre", "order": 3, **self.basis}
        self.sampling = {"method": "monte_carlo", "m": 100, "seed": 0, **self.sampling}
        if self.sampling["method"] not in METHODS:
            raise ConfigError(f"sampling method must be one of {METHODS}")
        for key in ("m", "seed"):
            if not isinstance(self.sampling[key], int) or self.sampling[key] < (1 if key == "m" else 0):
                raise ConfigError(f"sampling {key} must be a {'positive' if key == 'm' else 'non-negative'} integer")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        kind = self.adapter.get("kind", "builtin")
        if kind not in ("builtin", "external"):
            raise ConfigError(f"adapter kind must be 'builtin' or 'external', got {kind!r}")
        if kind == "builtin":
            bad = sorted(set(names) - set(INPUT_ORDER))
            if bad:
                raise ConfigError(f"built-in rod model has no input(s) {', '.join(bad)}")
        # construct the rod records once so bad keys fail early
        self.rod_records()
        basis = self.build_basis()
        m, need = self.sampling["m"], 2 * len(basis)
        if m < len(basis) + 1:
            raise ConfigError(f"m={m} samples cannot determine {len(basis)} coefficients (need >= {len(basis) + 1})")
        if m < need:
            warnings.warn(f"m={m} is below the 2(P+1) = {need} guideline", UndersampledWarning, stacklevel=2)

    # -- derived objects --------------------------------------------------
    @property
    def input_names(self) -> list[str]:
        return [i.name for i in self.inputs]

    def family(self) -> PolynomialFamily:
        b = self.basis
        try:
            if b["family"] == "jacobi":
                return PolynomialFamily.jacobi(b.get("alpha", 0.0), b.get("beta", 0.0))
            return PolynomialFamily(b["family"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def build_basis(self) -> BasisSet:
        order = self.basis["order"]
        if not isinstance(order, int) or order < 0:
            raise ConfigError("basis order must be a non-negative integer")
        return build_basis(self.family(), len(self.inputs), order)

    def rod_records(self) -> dict:
        try:
            return {
                "geometry": RodGeometry.from_dict(self.geometry),
                "conditions": OperatingConditions.from_dict(self.conditions),
                "power": PowerHistory.from_dict(self.power),
                "solver_config": SolverConfig.from_dict(self.solver),
            }
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None

    def base_rod_inputs(self) -> RodInputs:
        means = {**FUEL_DEFAULTS[self.fuel], **CLAD_DEFAULTS}
        return RodInputs(self.fuel, **means)

    def shared_time_grid(self) -> list[float]:
        if self.time_grid is not None:
            return [float(t) for t in self.time_grid]
        rec = self.rod_records()
        s = rec["solver_config"]
        if s.time_grid is not None:
            return list(s.time_grid)
        return default_time_grid(rec["power"], s.n_points, s.t_first).tolist()

    def output_names(self) -> list[str]:
        return list(self.adapter.get("output_columns", QOI_NAMES))

    def template_text(self) -> str | None:
        a = self.adapter
        if "input_template" in a:
            return a["input_template"]
        if "template_path" in a:
            path = Path(a["template_path"])
            if not path.is_absolute():
                path = self.base_dir / path
            return path.read_text()
        return None

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "fuel": self.fuel,
            "inputs": [i.to_dict() for i in self.inputs],
            "basis": dict(self.basis),
            "sampling": dict(self.sampling),
            "adapter": copy.deepcopy(self.adapter),
            "geometry": dict(self.geometry),
            "conditions": dict(self.conditions),
            "power": dict(self.power),
            "solver": dict(self.solver),
            "time_grid": self.time_grid,
            "output_dir": self.output_dir,
            "workers": self.workers,
        }

    def config_hash(self) -> str:
        data = {k: v for k, v in self.to_dict().items() if k not in _UNHASHED}
        if "template_path" in data["adapter"]:
            # the template content, not its location, determines the runs
            data["adapter"]["template_sha256"] = hashlib.sha256(self.template_text().encode()).hexdigest()
            del data["adapter"]["template_path"]
        blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    @property
    def campaign_id(self) -> str:
        return f"{self.fuel.lower()}-{self.config_hash()[:12]}"

    def campaign_dir(self) -> Path:
        out = Path(self.output_dir)
        if not out.is_absolute():
            out = self.base_dir / out
        return out / self.campaign_id

    @classmethod
    def from_dict(cls, data: dict, base_dir=".") -> "CampaignConfig":
        _check_keys("config", data, _TOP_KEYS)
        return cls(**copy.deepcopy(data), base_dir=Path(base_dir))

    @classmethod
    def load(cls, path, seed: int | None = None, workers: int | None = None,
             out: str | None = None) -> "CampaignConfig":
        """Read a JSON config and apply command-line style overrides.

        The worker count falls back to ``$PCE_ROD_WORKERS`` when neither the
        file nor ``workers`` sets it.
        """
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
        if seed is not None:
            data.setdefault("sampling", {})["seed"] = seed
        if workers is None and "workers" not in data and os.environ.get(WORKERS_ENV):
            try:
                workers = int(os.environ[WORKERS_ENV])
            except ValueError:
                raise ConfigError(f"{WORKERS_ENV} must be an integer") from None
        if workers is not None:
            data["workers"] = workers
        if out is not None:
            data["output_dir"] = str(Path(out).resolve())
        return cls.from_dict(data, base_dir=path.parent)


def _input_from_dict(d) -> RandomInput:
    if not isinstance(d, dict):
        raise ConfigError("each input must be a JSON object")
    _check_keys("input", d, {"name", "mean", "rsd_percent", "standardization", "k_sigma"})
    try:
        return RandomInput.from_dict(d)
    except TypeError as exc:
        raise ConfigError(f"bad input {d.get('name')!r}: {exc}") from None
