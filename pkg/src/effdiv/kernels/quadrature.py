"""Tensor-product Gauss-Legendre quadrature on polydiscs in polar coordinates.

P^N is covered by the N+1 closed polydiscs {|t_a| <= 1} of the standard
charts (they overlap in measure zero).  A rational curve is covered by two
parameter discs.  Depth L means L uniform panels of a fixed Gauss-Legendre
order in each of r and theta.  The adaptive driver raises L until two
successive values agree to the tolerance; that difference is the reported
error estimate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class ConvergenceError(RuntimeError):
    def __init__(self, msg, result=None):
        super().__init__(msg)
        self.result = result


@dataclass(frozen=True)
class QuadratureConfig:
    depth: int = 12
    tol: float = 1e-9
    lam: float = 0.0
    charts: str = "auto"
    order: int = 8
    min_depth: int = 2

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")
        if self.order < 1:
            raise ValueError("order must be >= 1")

    @classmethod
    def from_json(cls, data: dict | str) -> QuadratureConfig:
        if isinstance(data, str):
            data = json.loads(data)
        kw = {}
        for src, dst in (("depth", "depth"), ("tol", "tol"), ("lambda", "lam"), ("charts", "charts"),
                         ("order", "order"), ("min_depth", "min_depth")):
            if src in data:
                kw[dst] = data[src]
        return cls(**kw)

    def to_json(self) -> dict:
        return {"depth": self.depth, "tol": self.tol, "lambda": self.lam, "charts": self.charts,
                "order": self.order, "min_depth": self.min_depth}


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    depth: int
    cells: int
    converged: bool

    def to_json(self) -> dict:
        v = complex(self.value)
        return {"value": [v.real, v.imag], "error": self.error, "depth": self.depth,
                "cells": self.cells, "converged": self.converged}


@lru_cache(maxsize=None)
def panel_rule(panels: int, order: int, a: float, b: float):
    """Composite Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(order)
    h = (b - a) / panels
    nodes = np.concatenate([a + h * (k + (x + 1) / 2) for k in range(panels)])
    weights = np.concatenate([w * h / 2 for _ in range(panels)])
    return nodes, weights


@lru_cache(maxsize=None)
def disc_rule(panels: int, order: int):
    """Nodes t and weights for the area measure dx dy on the closed unit disc."""
    r, wr = panel_rule(panels, order, 0.0, 1.0)
    th, wt = panel_rule(panels, order, 0.0, 2 * np.pi)
    t = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    w = ((wr * r)[:, None] * wt[None, :]).ravel()
    return t, w


def polydisc_rule(n: int, panels: int, order: int):
    """Tensor product of ``n`` disc rules: nodes of shape (P, n), weights (P,)."""
    t1, w1 = disc_rule(panels, order)
    if n == 0:
        return np.zeros((1, 0), dtype=complex), np.ones(1)
    grids = np.meshgrid(*([np.arange(len(t1))] * n), indexing="ij")
    idx = [g.ravel() for g in grids]
    t = np.stack([t1[i] for i in idx], axis=1)
    w = np.prod(np.stack([w1[i] for i in idx], axis=1), axis=1)
    return t, w


def chart_points(N: int, chart: int, t: np.ndarray) -> np.ndarray:
    """Homogeneous coordinates with zeta_chart = 1 and the others from t (shape (P, N))."""
    P = t.shape[0]
    zeta = np.empty((P, N + 1), dtype=complex)
    cols = [j for j in range(N + 1) if j != chart]
    zeta[:, chart] = 1.0
    for a, j in enumerate(cols):
        zeta[:, j] = t[:, a]
    return zeta


def chart_jacobian(N: int, chart: int) -> dict:
    """dzeta_j = dt_a for the free coordinates, dzeta_chart = 0."""
    cols = [j for j in range(N + 1) if j != chart]
    return {j: {a: 1.0} for a, j in enumerate(cols)}


def adaptive(evaluate, cfg: QuadratureConfig, cells_per_depth=lambda L: L, raise_on_fail=True) -> QuadResult:
    """Raise depth until successive estimates agree to ``cfg.tol``.

    ``evaluate(L)`` returns the quadrature value at depth L.
    """
    prev = None
    val = None
    err = float("inf")
    L = 0
    for L in range(1, cfg.depth + 1):
        val = evaluate(L)
        if prev is not None:
            scale = max(1.0, abs(val))
            err = max(abs(val - prev), 4 * np.finfo(float).eps * scale)
            if L >= cfg.min_depth and err < cfg.tol:
                return QuadResult(complex(val), float(err), L, cells_per_depth(L), True)
        prev = val
    res = QuadResult(complex(val), float(err), L, cells_per_depth(L), False)
    if raise_on_fail:
        raise ConvergenceError(f"no convergence to tol {cfg.tol} by depth {cfg.depth} (est. error {err:.3g})", res)
    return res
