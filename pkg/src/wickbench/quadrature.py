"""Independent numerical oracles: tensor Gauss-Hermite quadrature against
the standard Gaussian, Monte Carlo against convolution measures, Lp norms,
and the smoothing-kernel form of the Ornstein-Uhlenbeck semigroup.

Everything here evaluates functions at points; nothing reads chaos or
exponential coefficients.  That independence is what makes these routines
usable as cross-checks for the closed-form paths.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .expspan import ExpCombo, mu_inner_exp, pointwise_exp
from .measures import ConvolutionMeasure, sample_rho

NODE_COUNT_WARN = 1_000_000


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor product rule: nodes (order^n, n), positive weights summing to 1."""

    dim: int
    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.nodes.shape != (self.order**self.dim, self.dim):
            raise ValueError("node array shape does not match order^n x n")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def dump_csv(self, path):
        # debugging aid: one node per row, weight in the last column
        data = np.column_stack([self.nodes, self.weights])
        np.savetxt(path, data, delimiter=",")


def gauss_hermite_grid(n: int, order: int) -> QuadratureGrid:
    """Gauss-Hermite rule for the standard normal weight, tensorized to R^n.

    Exact for polynomial integrands of per-axis degree <= 2*order - 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if order < 1:
        raise ValueError("order must be >= 1")
    if order**n > NODE_COUNT_WARN:
        warnings.warn(f"grid has {order**n} nodes; consider Monte Carlo instead", stacklevel=2)
    x, w = np.polynomial.hermite_e.hermegauss(order)
    w = w / w.sum()
    meshes = np.meshgrid(*([x] * n), indexing="ij")
    nodes = np.stack([m.ravel() for m in meshes], axis=1)
    weights = w
    for _ in range(n - 1):
        weights = np.outer(weights, w).ravel()
    return QuadratureGrid(n, order, nodes, weights)


def default_order(n: int) -> int:
    """Per-axis order keeping node counts reasonable as n grows."""
    if n <= 2:
        return 30
    if n == 3:
        return 12
    warnings.warn(f"tensor quadrature in n={n} is impractical; prefer Monte Carlo", stacklevel=2)
    return 6


def default_grid(n: int) -> QuadratureGrid:
    return gauss_hermite_grid(n, default_order(n))


def _eval_at(fn, pts: np.ndarray) -> np.ndarray:
    """Evaluate a point function on an (N, n) array, batch if it supports it."""
    try:
        vals = np.asarray(fn(pts), dtype=float)
        if vals.shape == (pts.shape[0],):
            return vals
    except Exception:
        pass
    return np.array([float(fn(p)) for p in pts])


def integrate_mu(fn, grid: QuadratureGrid) -> float:
    """Weighted node sum approximating int fn dmu."""
    return float(_eval_at(fn, grid.nodes) @ grid.weights)


def lp_norm_mu(fn, p: float, grid: QuadratureGrid) -> float:
    """(int |fn|^p dmu)^(1/p) by quadrature; p >= 1."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    vals = np.abs(_eval_at(fn, grid.nodes))
    return float((vals**p @ grid.weights) ** (1.0 / p))


def mehler_ou(fn, tau: float, grid: QuadratureGrid):
    """Smoothing form of the OU semigroup as a point-evaluable function.

    (P_tau fn)(w) = int fn(e^{-tau} w + sqrt(1 - e^{-2 tau}) u) dmu(u),
    realized on the grid.  Cross-checks the diagonal coefficient action.
    """
    if tau < 0:
        raise ValueError("tau must be >= 0")
    decay = math.exp(-tau)
    spread = math.sqrt(max(0.0, 1.0 - decay * decay))

    def smoothed(w):
        arr = np.asarray(w, dtype=float)
        pts = np.atleast_2d(arr)
        out = np.empty(pts.shape[0])
        for i, point in enumerate(pts):
            out[i] = float(_eval_at(fn, decay * point + spread * grid.nodes) @ grid.weights)
        return out if arr.ndim == 2 else float(out[0])

    return smoothed


def integrate_rho(fn, rho: ConvolutionMeasure, grid: QuadratureGrid) -> float:
    """int fn drho = sum_i p_i int fn(w + y_i) dmu(w), each term by quadrature."""
    total = 0.0
    for y, p in zip(rho.nu.atoms, rho.nu.weights):
        total += p * float(_eval_at(fn, grid.nodes + y) @ grid.weights)
    return total


def mc_integral_rho(fn, rho: ConvolutionMeasure, seed, count: int) -> tuple[float, float]:
    """Monte Carlo mean of fn under rho: (estimate, standard error)."""
    if count < 2:
        raise ValueError("count must be >= 2")
    vals = _eval_at(fn, sample_rho(rho, seed, count))
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(count))


def lp_norm_exp(f: ExpCombo, p: float, grid: QuadratureGrid | None = None) -> tuple[float, str]:
    """Lp(mu) norm of an exponential combination: (value, method tag).

    Exact routes: a single term has norm |w| e^{(p-1)|h|^2/2} for any p;
    p = 2 is a Gaussian inner product; even integer p expands the power.
    Anything else falls back to quadrature (n <= 3).
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if f.n_terms == 0:
        return 0.0, "exact"
    if f.n_terms == 1:
        w = float(f.weights[0])
        h_sq = float(np.dot(f.directions[0], f.directions[0]))
        return abs(w) * math.exp(0.5 * (p - 1.0) * h_sq), "exact"
    if p == 2:
        return math.sqrt(mu_inner_exp(f, f)), "exact"
    if float(p).is_integer() and int(p) % 2 == 0:
        # |f|^p = (f^{p/2})^2 since p/2 is a whole power
        half = int(p) // 2
        power = f
        for _ in range(half - 1):
            power = pointwise_exp(power, f)
        return mu_inner_exp(power, power) ** (1.0 / p), "exact"
    if grid is None:
        if f.dim > 3:
            raise ValueError("no exact route and quadrature impractical for n > 3; use Monte Carlo")
        grid = default_grid(f.dim)
    return lp_norm_mu(f.eval, p, grid), "quadrature"
