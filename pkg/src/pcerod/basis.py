"""Orthogonal polynomial families and total-order multivariate chaos bases.

All inner products are taken against *probability* densities, so the
constant polynomial has unit norm and the chaos mean/variance formulas
apply directly::

    E[u]   = u_0
    Var[u] = sum_{i>=1} u_i**2 <psi_i**2>
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy import special

from .errors import CapacityError, DomainError

FAMILIES = ("jacobi", "legendre", "hermite")
DEFAULT_MAX_TERMS = 1_000_000


def eval_jacobi(degree: int, z, alpha: float = 0.0, beta: float = 0.0):
    """Evaluate the Jacobi polynomial P_n^(alpha, beta) at ``z``.

    Uses the standard three-term recurrence, which reproduces the
    Rodrigues-formula normalisation (P_n(1) = binom(n + alpha, n)).
    """
    if degree < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {degree}")
    if alpha <= -1 or beta <= -1:
        raise DomainError(f"Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}")
    return _jacobi_table(degree, np.asarray(z, dtype=float), alpha, beta)[degree]


def _jacobi_table(max_degree: int, z: np.ndarray, a: float, b: float) -> np.ndarray:
    out = np.empty((max_degree + 1,) + z.shape)
    out[0] = 1.0
    if max_degree >= 1:
        out[1] = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0
    for n in range(2, max_degree + 1):
        s = 2 * n + a + b
        c1 = 2 * n * (n + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * z + a * a - b * b)
        c3 = 2 * (n + a - 1) * (n + b - 1) * s
        out[n] = (c2 * out[n - 1] - c3 * out[n - 2]) / c1
    return out


def _legendre_table(max_degree: int, z: np.ndarray) -> np.ndarray:
    out = np.empty((max_degree + 1,) + z.shape)
    out[0] = 1.0
    if max_degree >= 1:
        out[1] = z
    for n in range(2, max_degree + 1):
        out[n] = ((2 * n - 1) * z * out[n - 1] - (n - 1) * out[n - 2]) / n
    return out


def _hermite_table(max_degree: int, z: np.ndarray) -> np.ndarray:
    # probabilists' Hermite, orthogonal under the standard normal density
    out = np.empty((max_degree + 1,) + z.shape)
    out[0] = 1.0
    if max_degree >= 1:
        out[1] = z
    for n in range(2, max_degree + 1):
        out[n] = z * out[n - 1] - (n - 1) * out[n - 2]
    return out


@dataclass(frozen=True)
class PolynomialFamily:
    """A one-dimensional orthogonal polynomial family.

    ``kind`` is one of ``"jacobi"``, ``"legendre"`` or ``"hermite"``
    (probabilists'). ``alpha`` and ``beta`` only matter for Jacobi.
    """

    kind: str = "legendre"
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise DomainError(f"unknown polynomial family {self.kind!r}; expected one of {FAMILIES}")
        if self.kind == "jacobi" and (self.alpha <= -1 or self.beta <= -1):
            raise DomainError(
                f"Jacobi parameters must exceed -1, got alpha={self.alpha}, beta={self.beta}")
        if self.kind != "jacobi" and (self.alpha != 0.0 or self.beta != 0.0):
            raise DomainError("alpha/beta are only meaningful for the Jacobi family")

    @classmethod
    def legendre(cls) -> PolynomialFamily:
        return cls("legendre")

    @classmethod
    def hermite(cls) -> PolynomialFamily:
        return cls("hermite")

    @classmethod
    def jacobi(cls, alpha: float, beta: float) -> PolynomialFamily:
        return cls("jacobi", float(alpha), float(beta))

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == "hermite":
            return (-math.inf, math.inf)
        return (-1.0, 1.0)

    @property
    def bounded(self) -> bool:
        return self.kind != "hermite"

    def table(self, max_degree: int, z) -> np.ndarray:
        """Values of degrees ``0..max_degree`` at ``z``, stacked on axis 0."""
        if max_degree < 0:
            raise DomainError(f"polynomial degree must be >= 0, got {max_degree}")
        z = np.asarray(z, dtype=float)
        if self.kind == "legendre":
            return _legendre_table(max_degree, z)
        if self.kind == "hermite":
            return _hermite_table(max_degree, z)
        return _jacobi_table(max_degree, z, self.alpha, self.beta)

    def __call__(self, degree: int, z):
        return self.table(degree, z)[degree]

    def weight(self, z):
        """Probability density the family is orthogonal under."""
        z = np.asarray(z, dtype=float)
        if self.kind == "hermite":
            return np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
        inside = (z >= -1.0) & (z <= 1.0)
        if self.kind == "legendre":
            return np.where(inside, 0.5, 0.0)
        a, b = self.alpha, self.beta
        mass = 2.0 ** (a + b + 1.0) * special.beta(a + 1.0, b + 1.0)
        zc = np.clip(z, -1.0, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = (1.0 - zc) ** a * (1.0 + zc) ** b / mass
        return np.where(inside, w, 0.0)

    def norms(self, max_degree: int) -> np.ndarray:
        """<P_d**2> under the probability weight for d = 0..max_degree."""
        d = np.arange(max_degree + 1)
        if self.kind == "legendre":
            return 1.0 / (2.0 * d + 1.0)
        if self.kind == "hermite":
            return special.factorial(d, exact=False).astype(float)
        # Gauss-Jacobi with max_degree + 2 nodes is exact up to degree 2*max_degree + 3
        nodes, weights = special.roots_jacobi(max_degree + 2, self.alpha, self.beta)
        weights = weights / weights.sum()
        vals = self.table(max_degree, nodes)
        return (vals * vals) @ weights

    def to_dict(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha, "beta": self.beta}

    @classmethod
    def from_dict(cls, data: dict) -> PolynomialFamily:
        return cls(data["kind"], float(data.get("alpha", 0.0)), float(data.get("beta", 0.0)))


def basis_size(n: int, p: int) -> int:
    """Number of total-order terms, (p + n)! / (p! n!)."""
    # iterative product keeps intermediates small
    size = 1
    for k in range(1, min(n, p) + 1):
        size = size * (max(n, p) + k) // k
    return size


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # descending lexicographic within a fixed total degree
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def graded_key(index: tuple[int, ...]) -> tuple:
    """Sort key of the basis ordering: total degree, then lex with x1 > x2 > ..."""
    return (sum(index),) + tuple(-d for d in index)


def total_order_indices(n: int, p: int) -> list[tuple[int, ...]]:
    return [idx for d in range(p + 1) for idx in _compositions(d, n)]


@dataclass(frozen=True, eq=False)
class BasisSet:
    """Total-order tensor basis psi_i(xi) = prod_k P_{d_ik}(xi_k)."""

    family: PolynomialFamily
    dimension: int
    order: int
    indices: tuple[tuple[int, ...], ...]
    norms: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.norms.setflags(write=False)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def index_array(self) -> np.ndarray:
        return np.array(self.indices, dtype=int).reshape(len(self.indices), self.dimension)

    def check_support(self, xi: np.ndarray) -> None:
        if not self.family.bounded:
            return
        lo, hi = self.family.support
        for k in range(xi.shape[1]):
            col = xi[:, k]
            bad = (col < lo) | (col > hi) | ~np.isfinite(col)
            if bad.any():
                raise DomainError(
                    f"xi dimension {k} has {int(bad.sum())} value(s) outside the "
                    f"{self.family.kind} support [{lo}, {hi}] (first: {col[bad][0]!r})")

    def evaluate(self, xi) -> np.ndarray:
        """Evaluate every basis term at each row of ``xi``; returns (m, P+1)."""
        xi = np.atleast_2d(np.asarray(xi, dtype=float))
        if xi.shape[1] != self.dimension:
            raise DomainError(f"expected {self.dimension} columns in xi, got {xi.shape[1]}")
        self.check_support(xi)
        idx = self.index_array
        out = np.ones((len(self), xi.shape[0]))
        for k in range(self.dimension):
            tab = self.family.table(self.order, xi[:, k])
            out *= tab[idx[:, k]]
        return out.T

    def term(self, position: int, xi) -> float:
        """Single basis term at one point (``eval_basis_term``)."""
        xi = np.asarray(xi, dtype=float).reshape(1, -1)
        if xi.shape[1] != self.dimension:
            raise DomainError(f"expected {self.dimension} coordinates, got {xi.shape[1]}")
        self.check_support(xi)
        value = 1.0
        for k, d in enumerate(self.indices[position]):
            value *= float(self.family(d, xi[0, k]))
        return value

    def position(self, index: tuple[int, ...]) -> int:
        return self.indices.index(tuple(index))

    def to_dict(self) -> dict:
        return {
            "family": self.family.to_dict(),
            "dimension": self.dimension,
            "order": self.order,
            "indices": [list(i) for i in self.indices],
            "norms": [float(v) for v in self.norms],
        }

    @classmethod
    def from_dict(cls, data: dict) -> BasisSet:
        return cls(
            family=PolynomialFamily.from_dict(data["family"]),
            dimension=int(data["dimension"]),
            order=int(data["order"]),
            indices=tuple(tuple(int(d) for d in i) for i in data["indices"]),
            norms=np.array(data["norms"], dtype=float),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasisSet):
            return NotImplemented
        return (self.family == other.family and self.dimension == other.dimension
                and self.order == other.order and self.indices == other.indices
                and np.array_equal(self.norms, other.norms))

    __hash__ = None


def build_basis(family: PolynomialFamily, n: int, p: int,
                max_terms: int = DEFAULT_MAX_TERMS) -> BasisSet:
    """Build the total-order basis of order ``p`` in ``n`` variables."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    if p < 0:
        raise DomainError(f"order must be >= 0, got {p}")
    size = basis_size(n, p)
    if size > max_terms:
        raise CapacityError(f"basis with n={n}, p={p} has {size} terms, cap is {max_terms}")
    indices = tuple(total_order_indices(n, p))
    norms_1d = family.norms(p)
    idx = np.array(indices, dtype=int).reshape(size, n)
    norms = np.prod(norms_1d[idx], axis=1)
    return BasisSet(family, n, p, indices, norms)


def eval_basis_term(basis: BasisSet, index_position: int, xi) -> float:
    return basis.term(index_position, xi)
