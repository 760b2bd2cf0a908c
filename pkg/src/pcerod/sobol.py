"""Variance-based (Sobol) sensitivity indices read off chaos coefficients.

Each basis term with multi-index ``d`` contributes ``u_i**2 <psi_i**2>`` to
the partial variance of the set of inputs where ``d`` is non-zero, so the
ANOVA partition needs no further model evaluations.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import UndefinedIndicesError
from .fit import ChaosExpansion

DEFAULT_RELATIVE_FLOOR = 1e-20


def _contributions(expansion: ChaosExpansion) -> np.ndarray:
    c = expansion.coefficients
    contrib = c * c * expansion.basis.norms
    contrib[..., 0] = 0.0
    return contrib


def _masks(expansion: ChaosExpansion) -> tuple[np.ndarray, np.ndarray]:
    nz = expansion.basis.index_array > 0
    only = nz & (nz.sum(axis=1) == 1)[:, None]
    return only.astype(float), nz.astype(float)


def partition_variance(expansion: ChaosExpansion, output, t_index: int) -> dict[tuple[int, ...], float]:
    """Partial variances keyed by the (0-based) input subset they belong to."""
    o = expansion.output_index(output)
    c = expansion.coefficients[o, t_index]
    out: dict[tuple[int, ...], float] = {}
    for coef, norm, idx in zip(c[1:], expansion.basis.norms[1:], expansion.basis.indices[1:]):
        v = coef * coef * norm
        if v == 0.0:
            continue
        key = tuple(k for k, d in enumerate(idx) if d > 0)
        out[key] = out.get(key, 0.0) + float(v)
    return out


def _check_defined(expansion, o, t_index, relative_floor):
    u0 = expansion.coefficients[o, t_index, 0]
    var = float(_contributions(expansion)[o, t_index].sum())
    if not var > relative_floor * u0 * u0 or var <= 0.0:
        raise UndefinedIndicesError(
            f"output {expansion.outputs[o]!r} at t[{t_index}] has variance {var:.3e} "
            f"below the floor ({relative_floor:g} * u0^2); Sobol indices are undefined")
    return var


def first_order_indices(expansion: ChaosExpansion, output, t_index: int,
                        relative_floor: float = DEFAULT_RELATIVE_FLOOR) -> np.ndarray:
    """S_i = V_{i} / V using terms supported on input i alone."""
    o = expansion.output_index(output)
    var = _check_defined(expansion, o, t_index, relative_floor)
    only, _ = _masks(expansion)
    return _contributions(expansion)[o, t_index] @ only / var


def total_order_indices(expansion: ChaosExpansion, output, t_index: int,
                        relative_floor: float = DEFAULT_RELATIVE_FLOOR) -> np.ndarray:
    """S_i^T: share of variance from every term in which input i appears."""
    o = expansion.output_index(output)
    var = _check_defined(expansion, o, t_index, relative_floor)
    _, anyk = _masks(expansion)
    return _contributions(expansion)[o, t_index] @ anyk / var


@dataclass(frozen=True, eq=False)
class SobolTable:
    """Time-resolved first/total-order indices; undefined entries are NaN."""

    outputs: tuple[str, ...]
    inputs: tuple[str, ...]
    time_grid: np.ndarray = field(repr=False)
    first_order: np.ndarray = field(repr=False)
    total_order: np.ndarray = field(repr=False)
    total_variance: np.ndarray = field(repr=False)

    @property
    def defined(self) -> np.ndarray:
        return ~np.isnan(self.first_order[..., 0])

    def at(self, output, t_index: int) -> dict[str, float]:
        o = self.outputs.index(output) if isinstance(output, str) else output
        return dict(zip(self.inputs, self.first_order[o, t_index].tolist()))

    def to_csv(self, directory) -> list[Path]:
        """Write ``sobol_<output>.csv``: time_s, S1..Sn, ST1..STn, variance."""
        directory = Path(directory)
        n = len(self.inputs)
        header = (["time_s"] + [f"S{k + 1}" for k in range(n)]
                  + [f"ST{k + 1}" for k in range(n)] + ["variance"])
        paths = []
        for o, name in enumerate(self.outputs):
            path = directory / f"sobol_{name}.csv"
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                for t in range(len(self.time_grid)):
                    row = [self.time_grid[t], *self.first_order[o, t], *self.total_order[o, t],
                           self.total_variance[o, t]]
                    w.writerow([format(float(v), ".17g") for v in row])
            paths.append(path)
        return paths


def sobol_table(expansion: ChaosExpansion, inputs=None,
                relative_floor: float = DEFAULT_RELATIVE_FLOOR) -> SobolTable:
    contrib = _contributions(expansion)
    var = contrib.sum(axis=-1)
    u0 = expansion.coefficients[..., 0]
    defined = (var > 0.0) & (var > relative_floor * u0 * u0)
    only, anyk = _masks(expansion)
    with np.errstate(divide="ignore", invalid="ignore"):
        first = (contrib @ only) / var[..., None]
        total = (contrib @ anyk) / var[..., None]
    first[~defined] = np.nan
    total[~defined] = np.nan
    if inputs is None:
        inputs = expansion.metadata.get("inputs") or [f"x{k + 1}" for k in range(expansion.basis.dimension)]
    return SobolTable(expansion.outputs, tuple(inputs), expansion.time_grid, first, total, var)
