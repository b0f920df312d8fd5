"""Roughness of gridded landscapes: slice-wise total variation and Fourier density."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from qaoa_landscape.analytic import METRIC_GRID, GridSpec, Landscape, landscape_grid
from qaoa_landscape.errors import ContractError
from qaoa_landscape.graphs import Graph
from qaoa_landscape.ising import BETA_PERIOD, augmented_matrix, maxcut_ising, symmetry_report

_FLAT_TOL = 1e-12


def _as_values(landscape) -> np.ndarray:
    values = landscape.values if isinstance(landscape, Landscape) else np.asarray(landscape, float)
    if values.ndim != 2 or min(values.shape) < 2:
        raise ContractError(f"need a 2-D grid of at least 2x2, got shape {values.shape}")
    return values


def _is_whole_periods(span: float, period: float) -> bool:
    ratio = span / period
    return abs(ratio - round(ratio)) < 1e-9 and round(ratio) >= 1


def check_periodic_span(grid: GridSpec, gamma_period: float = 2 * math.pi) -> bool:
    """Warn unless the grid covers whole periods on both axes.

    The wrap-around difference in :func:`total_variation` is only meaningful
    when the last grid column is followed, periodically, by the first.
    """
    beta_span = grid.beta_range[1] - grid.beta_range[0]
    gamma_span = grid.gamma_range[1] - grid.gamma_range[0]
    ok = _is_whole_periods(beta_span, BETA_PERIOD) and _is_whole_periods(gamma_span, gamma_period)
    if not ok:
        warnings.warn(
            "grid does not span whole beta/gamma periods; wrap-around differences "
            "in the total variation will include a spurious jump",
            RuntimeWarning,
            stacklevel=3,
        )
    return ok


def total_variation(landscape) -> float:
    """Mean periodic total variation of the 1-D slices in each direction.

    Every gamma-slice (fixed beta) and every beta-slice (fixed gamma) gets
    ``sum |v[i+1] - v[i]|`` with the closing difference from the last sample
    back to the first; the per-direction means are then averaged.
    """
    if isinstance(landscape, Landscape):
        check_periodic_span(landscape.grid)
    values = _as_values(landscape)
    along_gamma = np.abs(np.roll(values, -1, axis=1) - values).sum(axis=1)
    along_beta = np.abs(np.roll(values, -1, axis=0) - values).sum(axis=0)
    return float((along_gamma.mean() + along_beta.mean()) / 2)


def _ac_magnitudes(values: np.ndarray) -> np.ndarray:
    spectrum = np.abs(np.fft.fft2(values)).ravel()
    return spectrum[1:]


def is_flat(landscape) -> bool:
    """True when the landscape has no AC Fourier content (constant grid)."""
    values = _as_values(landscape)
    scale = values.size * max(1.0, float(np.abs(values).max()))
    return bool(_ac_magnitudes(values).max() <= _FLAT_TOL * scale)


def fourier_density(landscape) -> float:
    """Squared ratio ``(||c||_1 / ||c||_2)**2`` of DFT magnitudes, DC excluded.

    A single real sinusoid in each direction gives 4; a constant grid is
    assigned 1.0 (see :func:`is_flat`).
    """
    values = _as_values(landscape)
    if is_flat(values):
        return 1.0
    c = _ac_magnitudes(values)
    return float((c.sum() / np.sqrt(np.dot(c, c))) ** 2)


@dataclass(frozen=True)
class RoughnessReport:
    total_variation: float
    fourier_density: float
    flat: bool
    grid: GridSpec

    def to_dict(self) -> dict:
        return {
            "totalVariation": self.total_variation,
            "fourierDensity": self.fourier_density,
            "flatSpectrum": self.flat,
            "grid": self.grid.to_dict(),
        }


def roughness_report(g: Graph, grid: GridSpec = METRIC_GRID) -> RoughnessReport:
    landscape = landscape_grid(g, grid)
    return RoughnessReport(
        total_variation(landscape),
        fourier_density(landscape),
        is_flat(landscape),
        grid,
    )


def metrics_row(g: Graph, experiment=None, grid: GridSpec = METRIC_GRID) -> dict:
    """One row of the per-experiment overview: sparsity, roughness and periods."""
    report = roughness_report(g, grid)
    symmetry = symmetry_report(g)
    return {
        "experiment": experiment,
        "sparsity": float(augmented_matrix(maxcut_ising(g)).sparsity),
        "totalVariation": report.total_variation,
        "fourierDensity": report.fourier_density,
        "flatSpectrum": report.flat,
        "betaPeriod": symmetry.beta_period,
        "gammaPeriod": symmetry.gamma_period,
        "grid": grid.to_dict(),
    }
