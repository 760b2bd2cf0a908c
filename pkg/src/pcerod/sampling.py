"""Gaussian input sampling and the physical -> standardized variable map."""
from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy import special
from scipy.stats import qmc

from .basis import BasisSet
from .errors import DegenerateInputError, DomainError, UndersampledWarning

METHODS = ("monte_carlo", "latin_hypercube", "sobol")
STANDARDIZATIONS = ("linear_truncated", "zscore", "uniform_cdf")
SOBOL_MAX_DIM = 64

# keeps the inverse normal CDF finite when the uniform stream returns 0
_U_EPS = 2.0 ** -53


@dataclass(frozen=True)
class RandomInput:
    """A Gaussian input given by its mean and relative standard deviation.

    ``standardization`` picks the map into the chaos variable xi:

    * ``linear_truncated``: xi = clip((x - mu) / (k_sigma * sigma), -1, 1)
    * ``zscore``:           xi = (x - mu) / sigma        (Hermite bases)
    * ``uniform_cdf``:      xi = 2 Phi((x - mu) / sigma) - 1, so xi ~ U(-1, 1)
      exactly, matching the Legendre weight.
    """

    name: str
    mean: float
    rsd_percent: float
    standardization: str = "uniform_cdf"
    k_sigma: float = 3.0

    def __post_init__(self):
        if not self.name.isidentifier():
            raise DomainError(f"input name must be an identifier, got {self.name!r}")
        if self.standardization not in STANDARDIZATIONS:
            raise DomainError(
                f"unknown standardization {self.standardization!r}; expected one of {STANDARDIZATIONS}")
        if self.k_sigma <= 0:
            raise DomainError(f"k_sigma must be positive, got {self.k_sigma}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise DegenerateInputError(
                f"input {self.name!r} has non-positive standard deviation "
                f"(mean={self.mean}, rsd={self.rsd_percent}%)")

    @property
    def sigma(self) -> float:
        return self.mean * self.rsd_percent / 100.0

    def standardize(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / self.sigma
        if self.standardization == "zscore":
            return z
        if self.standardization == "linear_truncated":
            return np.clip(z / self.k_sigma, -1.0, 1.0)
        return special.erf(z / math.sqrt(2.0))

    def destandardize(self, xi):
        xi = np.asarray(xi, dtype=float)
        if self.standardization == "zscore":
            z = xi
        elif self.standardization == "linear_truncated":
            z = xi * self.k_sigma
        else:
            z = math.sqrt(2.0) * special.erfinv(xi)
        return self.mean + self.sigma * z

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> RandomInput:
        return cls(**data)


def standardize(inputs: list[RandomInput], physical) -> np.ndarray:
    """Map a physical row (or an (m, n) matrix) to standardized coordinates."""
    x = np.asarray(physical, dtype=float)
    if x.shape[-1] != len(inputs):
        raise DomainError(f"expected {len(inputs)} values per row, got {x.shape[-1]}")
    cols = [inp.standardize(x[..., k]) for k, inp in enumerate(inputs)]
    return np.stack(cols, axis=-1)


def destandardize(inputs: list[RandomInput], xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != len(inputs):
        raise DomainError(f"expected {len(inputs)} values per row, got {xi.shape[-1]}")
    cols = [inp.destandardize(xi[..., k]) for k, inp in enumerate(inputs)]
    return np.stack(cols, axis=-1)


def unit_samples(method: str, m: int, n: int, seed: int) -> np.ndarray:
    """The underlying (m, n) uniform stream on the open unit cube."""
    if m < 1:
        raise DomainError(f"sample count must be >= 1, got {m}")
    if n < 1:
        raise DomainError(f"need at least one input dimension, got {n}")
    rng = np.random.default_rng(seed)
    if method == "monte_carlo":
        u = rng.random((m, n))
    elif method == "latin_hypercube":
        u = qmc.LatinHypercube(d=n, rng=rng).random(m)
    elif method == "sobol":
        if n > SOBOL_MAX_DIM:
            raise DomainError(f"Sobol sequence supports at most {SOBOL_MAX_DIM} dimensions, got {n}")
        with warnings.catch_warnings():
            # balance warning for m not a power of two
            warnings.simplefilter("ignore", UserWarning)
            u = qmc.Sobol(d=n, scramble=True, rng=rng).random(m)
    else:
        raise DomainError(f"unknown sampling method {method!r}; expected one of {METHODS}")
    return np.clip(u, _U_EPS, 1.0 - _U_EPS)


@dataclass(frozen=True, eq=False)
class SampleSet:
    inputs: tuple[RandomInput, ...]
    method: str
    seed: int
    physical: np.ndarray = field(repr=False)
    standardized: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.physical.shape != self.standardized.shape:
            raise DomainError("physical and standardized matrices differ in shape")
        self.physical.setflags(write=False)
        self.standardized.setflags(write=False)

    @property
    def m(self) -> int:
        return self.physical.shape[0]

    @property
    def names(self) -> list[str]:
        return [inp.name for inp in self.inputs]

    def row(self, j: int) -> dict[str, float]:
        return {name: float(v) for name, v in zip(self.names, self.physical[j])}

    def validate_against(self, basis: BasisSet) -> bool:
        """Check support and the 2(P+1) oversampling rule; warns when undersampled."""
        if basis.dimension != len(self.inputs):
            raise DomainError(
                f"basis has {basis.dimension} dimensions but samples have {len(self.inputs)}")
        basis.check_support(self.standardized)
        need = required_sample_count(basis)
        if self.m < need:
            warnings.warn(f"{self.m} samples is below the 2(P+1) = {need} guideline",
                          UndersampledWarning, stacklevel=2)
            return False
        return True

    def metadata(self) -> dict:
        return {
            "method": self.method,
            "seed": self.seed,
            "m": self.m,
            "inputs": [inp.to_dict() for inp in self.inputs],
            "standardization": {inp.name: inp.standardization for inp in self.inputs},
        }

    def to_csv(self, path) -> Path:
        """Write ``samples.csv`` plus a ``samples.json`` sidecar next to it."""
        path = Path(path)
        header = self.names + [f"{name}_xi" for name in self.names]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for x, xi in zip(self.physical, self.standardized):
                w.writerow([format(v, ".17g") for v in np.concatenate([x, xi])])
        path.with_suffix(".json").write_text(json.dumps(self.metadata(), indent=2) + "\n")
        return path

    @classmethod
    def from_csv(cls, path) -> SampleSet:
        path = Path(path)
        meta = json.loads(path.with_suffix(".json").read_text())
        inputs = tuple(RandomInput.from_dict(d) for d in meta["inputs"])
        n = len(inputs)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        names = [inp.name for inp in inputs]
        if rows[0] != names + [f"{name}_xi" for name in names]:
            raise DomainError(f"{path}: header does not match sidecar inputs")
        data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float).reshape(-1, 2 * n)
        return cls(inputs, meta["method"], int(meta["seed"]), data[:, :n].copy(), data[:, n:].copy())


def draw_samples(inputs, method: str = "monte_carlo", m: int = 100, seed: int = 0) -> SampleSet:
    """Draw ``m`` Gaussian input samples by inverse-CDF transform of a uniform stream."""
    inputs = tuple(inputs)
    if method not in METHODS:
        raise DomainError(f"unknown sampling method {method!r}; expected one of {METHODS}")
    u = unit_samples(method, m, len(inputs), seed)
    z = special.ndtri(u)
    mu = np.array([inp.mean for inp in inputs])
    sigma = np.array([inp.sigma for inp in inputs])
    physical = mu + sigma * z
    return SampleSet(inputs, method, int(seed), physical, standardize(list(inputs), physical))


def required_sample_count(basis: BasisSet) -> int:
    return 2 * len(basis)
