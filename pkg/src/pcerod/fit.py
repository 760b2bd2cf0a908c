"""Least-squares regression of chaos coefficients and moment extraction."""
from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import linalg

from .basis import BasisSet
from .errors import ConditioningError, DomainError, UnderdeterminedError, UndersampledWarning
from .sampling import SampleSet, required_sample_count

DEFAULT_CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Basis terms evaluated at the sample points; entry (j, i) = psi_i(xi^j)."""

    values: np.ndarray = field(repr=False)
    basis: BasisSet
    sample_id: str | None = None

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def assemble_design(basis: BasisSet, samples, sample_id: str | None = None) -> DesignMatrix:
    """Build the design matrix for ``samples`` (a SampleSet or an (m, n) xi array)."""
    if isinstance(samples, SampleSet):
        xi = samples.standardized
    else:
        xi = np.atleast_2d(np.asarray(samples, dtype=float))
    if xi.shape[1] != basis.dimension:
        raise DomainError(f"samples have {xi.shape[1]} dimensions, basis has {basis.dimension}")
    need = required_sample_count(basis)
    if xi.shape[0] < need:
        warnings.warn(f"{xi.shape[0]} samples is below the 2(P+1) = {need} guideline",
                      UndersampledWarning, stacklevel=2)
    return DesignMatrix(basis.evaluate(xi), basis, sample_id)


def _qr_lstsq(a: np.ndarray, b: np.ndarray, condition_limit: float):
    m, k = a.shape
    if m <= k:
        raise UnderdeterminedError(f"{m} samples cannot determine {k} coefficients (need m > P+1)")
    q, r = linalg.qr(a, mode="economic")
    cond = float(np.linalg.cond(r))
    if not np.isfinite(cond) or cond > condition_limit:
        raise ConditioningError(
            f"design matrix is numerically rank deficient (condition estimate {cond:.3e})", cond)
    # Solve for deviations from the first response when the design has a
    # constant column: identical responses then give exactly zero higher
    # coefficients, and large offsets no longer cost relative precision.
    shift = b[0] if np.all(a[:, 0] == 1.0) else np.zeros(b.shape[1:])
    coef = linalg.solve_triangular(r, q.T @ (b - shift))
    coef[0] += shift
    resid = np.linalg.norm(a @ coef - b, axis=0)
    return coef, resid, cond


def solve_coefficients(design: DesignMatrix, responses,
                       condition_limit: float = DEFAULT_CONDITION_LIMIT) -> np.ndarray:
    """Least-squares coefficients minimising ||A u - b||_2.

    ``responses`` may be a vector of length m or an (m, k) matrix of
    independent right-hand sides sharing the design.
    """
    b = np.asarray(responses, dtype=float)
    a = design.values
    if b.shape[0] != a.shape[0]:
        raise DomainError(f"{b.shape[0]} responses for {a.shape[0]} design rows")
    coef, _, _ = _qr_lstsq(a, b, condition_limit)
    return coef


@dataclass(frozen=True, eq=False)
class ChaosExpansion:
    """Chaos coefficients for every (output, time) pair over one basis.

    ``coefficients`` has shape (n_outputs, n_times, P+1).
    """

    basis: BasisSet
    outputs: tuple[str, ...]
    time_grid: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)
    diagnostics: dict = field(default_factory=dict, repr=False)
    metadata: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        no, nt = len(self.outputs), len(self.time_grid)
        if self.coefficients.shape != (no, nt, len(self.basis)):
            raise DomainError(
                f"coefficient array shape {self.coefficients.shape} != {(no, nt, len(self.basis))}")

    def output_index(self, output) -> int:
        if isinstance(output, str):
            try:
                return self.outputs.index(output)
            except ValueError:
                raise KeyError(f"unknown output {output!r}") from None
        return int(output)

    def mean(self) -> np.ndarray:
        return self.coefficients[..., 0].copy()

    def variance(self) -> np.ndarray:
        c = self.coefficients[..., 1:]
        return np.sum(c * c * self.basis.norms[1:], axis=-1)

    def std(self) -> np.ndarray:
        return np.sqrt(self.variance())

    def predict(self, xi, output, t_index: int) -> np.ndarray:
        """Evaluate the surrogate at standardized points."""
        o = self.output_index(output)
        return self.basis.evaluate(xi) @ self.coefficients[o, t_index]

    def to_dict(self) -> dict:
        return {
            "basis": self.basis.to_dict(),
            "outputs": list(self.outputs),
            "time_grid": [float(t) for t in self.time_grid],
            "coefficients": self.coefficients.tolist(),
            "diagnostics": _jsonable(self.diagnostics),
            "metadata": _jsonable(self.metadata),
        }

    @classmethod
    def from_dict(cls, data: dict) -> ChaosExpansion:
        return cls(
            basis=BasisSet.from_dict(data["basis"]),
            outputs=tuple(data["outputs"]),
            time_grid=np.array(data["time_grid"], dtype=float),
            coefficients=np.array(data["coefficients"], dtype=float),
            diagnostics=data.get("diagnostics", {}),
            metadata=data.get("metadata", {}),
        )

    def to_json(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), indent=1) + "\n")
        return path

    @classmethod
    def from_json(cls, path) -> ChaosExpansion:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def export_moments(self, directory) -> list[Path]:
        """Write ``uq_<output>.csv`` files (time, mean, std, mean -/+ std)."""
        directory = Path(directory)
        mean, std = self.mean(), self.std()
        paths = []
        for o, name in enumerate(self.outputs):
            path = directory / f"uq_{name}.csv"
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["time_s", "mean", "std", "mean_minus_std", "mean_plus_std"])
                for t, mu, sd in zip(self.time_grid, mean[o], std[o]):
                    w.writerow([_g(t), _g(mu), _g(sd), _g(mu - sd), _g(mu + sd)])
            paths.append(path)
        return paths


def _g(x: float) -> str:
    return format(float(x), ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def fit_expansion(basis: BasisSet, xi, responses, outputs, time_grid,
                  metadata: dict | None = None,
                  condition_limit: float = DEFAULT_CONDITION_LIMIT) -> ChaosExpansion:
    """Fit every (output, time) series with one shared design matrix.

    ``responses`` has shape (m, n_outputs, n_times). Each column is an
    independent least-squares problem; they share a single QR factorisation.
    """
    design = assemble_design(basis, xi)
    b = np.asarray(responses, dtype=float)
    m, no, nt = b.shape
    if no != len(outputs) or nt != len(time_grid):
        raise DomainError(f"responses shape {b.shape} does not match outputs/time grid")
    coef, resid, cond = _qr_lstsq(design.values, b.reshape(m, no * nt), condition_limit)
    coef = coef.T.reshape(no, nt, len(basis))
    diagnostics = {
        "n_samples": m,
        "condition": cond,
        "residual_norm": resid.reshape(no, nt),
        "sample_mean": b.mean(axis=0),
        "sample_variance": b.var(axis=0, ddof=1) if m > 1 else np.zeros((no, nt)),
    }
    return ChaosExpansion(basis, tuple(outputs), np.asarray(time_grid, dtype=float), coef,
                          diagnostics, dict(metadata or {}))


def moments(expansion: ChaosExpansion, output, t_index: int) -> tuple[float, float]:
    """Mean u_0 and variance sum_{i>=1} u_i^2 <psi_i^2> of one fitted series."""
    o = expansion.output_index(output)
    c = expansion.coefficients[o, t_index]
    return float(c[0]), float(np.sum(c[1:] ** 2 * expansion.basis.norms[1:]))
