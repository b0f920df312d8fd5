"""Closed-form p=1 QAOA expectation for Max-Cut and gridded landscapes."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from qaoa_landscape.errors import ContractError
from qaoa_landscape.graphs import Graph, edge_structure

TWO_PI = 2 * math.pi


def fmt(x: float) -> str:
    """12 significant digits, with negative zero printed as ``0``."""
    return f"{float(x) + 0.0:.12g}"


def edge_expectation(dj: int, dk: int, fjk: int, beta, gamma):
    """``<Z_j Z_k>`` after one QAOA layer with unit coupling ``exp(-i gamma Z_j Z_k)``.

    ``dj``/``dk`` are the endpoint degrees and ``fjk`` the number of triangles
    through the edge. ``beta`` and ``gamma`` broadcast as numpy arrays.
    """
    if dj < 1 or dk < 1:
        raise ContractError(f"endpoint degrees must be >= 1, got ({dj}, {dk})")
    if not 0 <= fjk <= min(dj, dk) - 1:
        raise ContractError(f"shared-neighbour count {fjk} inconsistent with degrees ({dj}, {dk})")
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    c2 = np.cos(2 * gamma)
    first = 0.5 * np.sin(4 * beta) * np.sin(2 * gamma) * (c2 ** (dj - 1) + c2 ** (dk - 1))
    # The triangle term enters with a plus sign; a statevector simulation of
    # K3 fixes the sign unambiguously.
    second = (
        0.5 * np.sin(2 * beta) ** 2
        * c2 ** (dj + dk - 2 * fjk - 2)
        * (1 - np.cos(4 * gamma) ** fjk)
    )
    return first + second


def analytic_expectation(g: Graph, beta, gamma):
    """``<beta,gamma| H_P |beta,gamma>`` for the Max-Cut Hamiltonian of ``g``.

    ``H_P = -|E|/2 + (1/2) sum_E Z_j Z_k``; the half coupling maps onto the
    unit-coupling edge formula evaluated at ``gamma / 2``.
    """
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    structure = edge_structure(g)
    total = np.full(np.broadcast(beta, gamma).shape, -g.num_edges / 2)
    for (j, k), f in structure.shared_edges.items():
        total = total + 0.5 * edge_expectation(
            structure.degree[j], structure.degree[k], f, beta, gamma / 2
        )
    return total if total.ndim else float(total)


@dataclass(frozen=True)
class GridSpec:
    """Uniform half-open grid: ``rows`` beta values by ``cols`` gamma values."""

    beta_range: tuple[float, float] = (0.0, math.pi)
    gamma_range: tuple[float, float] = (0.0, TWO_PI)
    rows: int = 64
    cols: int = 128

    def __post_init__(self):
        if self.rows < 2 or self.cols < 2:
            raise ContractError(f"grid must be at least 2x2, got {self.rows}x{self.cols}")
        for name, (lo, hi) in (("beta", self.beta_range), ("gamma", self.gamma_range)):
            if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
                raise ContractError(f"degenerate {name} range ({lo}, {hi})")

    def betas(self) -> np.ndarray:
        lo, hi = self.beta_range
        return lo + np.arange(self.rows) * (hi - lo) / self.rows

    def gammas(self) -> np.ndarray:
        lo, hi = self.gamma_range
        return lo + np.arange(self.cols) * (hi - lo) / self.cols

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.betas(), self.gammas(), indexing="ij")

    def to_dict(self) -> dict:
        return {
            "betaRange": list(self.beta_range),
            "gammaRange": list(self.gamma_range),
            "rows": self.rows,
            "cols": self.cols,
        }


# Roughness metrics use a square 2*pi domain in both angles.
METRIC_GRID = GridSpec(beta_range=(0.0, TWO_PI), gamma_range=(0.0, TWO_PI))

PROVENANCES = ("analytic", "exact-sim", "sampled-sim")


@dataclass(frozen=True)
class Landscape:
    grid: GridSpec
    values: np.ndarray  # shape (rows, cols), rows indexed by beta
    provenance: str = "analytic"

    def __post_init__(self):
        if self.values.shape != (self.grid.rows, self.grid.cols):
            raise ContractError(
                f"values shape {self.values.shape} does not match grid "
                f"{self.grid.rows}x{self.grid.cols}"
            )
        if self.provenance not in PROVENANCES:
            raise ContractError(f"unknown provenance {self.provenance!r}")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["beta", "gamma", "energy"])
        betas, gammas = self.grid.betas(), self.grid.gammas()
        for r, beta in enumerate(betas):
            for c, gamma in enumerate(gammas):
                writer.writerow([fmt(beta), fmt(gamma), fmt(self.values[r, c])])
        return buf.getvalue()

    def metadata(self) -> dict:
        return {"provenance": self.provenance, "grid": self.grid.to_dict()}


def landscape_grid(g: Graph, grid: GridSpec = GridSpec()) -> Landscape:
    beta, gamma = grid.mesh()
    return Landscape(grid, np.asarray(analytic_expectation(g, beta, gamma)), "analytic")
