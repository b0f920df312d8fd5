"""Two-measurement SPSA over the periodic (beta, gamma) domain."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Callable

import numpy as np

from qaoa_landscape.analytic import fmt
from qaoa_landscape.errors import ContractError, OptimizationError

DOMAIN = np.array([math.pi, 2 * math.pi])


@dataclass(frozen=True)
class SpsaSettings:
    """Gain sequences ``a_k = a / (k + 1 + A)**alpha`` and ``c_k = c / (k + 1)**decay``.

    With ``a=None`` the step gain is calibrated before the first iteration so
    that the initial step has length ``target_step``, using the mean gradient
    magnitude over ``calibration_steps`` random perturbations at the start point.
    """

    a: float | None = None
    c: float = 0.2
    A: float = 0.0
    alpha: float = 0.602
    decay: float = 0.101
    target_step: float = 2 * math.pi / 10
    calibration_steps: int = 50


@dataclass
class OptimizationResult:
    best_params: tuple[float, float]  # (beta, gamma)
    best_expectation: float
    seed: int
    evaluations: int
    initial: tuple[float, float]
    settings: SpsaSettings
    # (iteration, beta, gamma, estimate)
    trace: list[tuple[int, float, float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "bestParams": {"beta": self.best_params[0], "gamma": self.best_params[1]},
            "bestExpectation": self.best_expectation,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "initial": {"beta": self.initial[0], "gamma": self.initial[1]},
            "hyperparameters": asdict(self.settings),
            "trace": [
                {"iter": k, "beta": b, "gamma": g, "estimate": e} for k, b, g, e in self.trace
            ],
        }

    def trace_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["iter", "beta", "gamma", "estimate"])
        for k, b, g, e in self.trace:
            writer.writerow([k, fmt(b), fmt(g), fmt(e)])
        return buf.getvalue()


def wrap(theta: np.ndarray) -> np.ndarray:
    """Map ``(beta, gamma)`` into ``[0, pi) x [0, 2 pi)``."""
    return np.mod(theta, DOMAIN)


def spsa_optimize(
    objective: Callable[[float, float], float],
    max_iter: int,
    seed: int,
    initial: tuple[float, float] | None = None,
    settings: SpsaSettings = SpsaSettings(),
) -> OptimizationResult:
    """Minimise ``objective(beta, gamma)``.

    Each iteration evaluates the objective at ``theta +- c_k * delta`` with
    Rademacher ``delta``; the mean of the two readings is logged as the
    estimate at ``theta``. The final iterate is evaluated once more, and the
    best logged point is re-evaluated to give ``best_expectation``. Without
    ``initial`` a start point is drawn uniformly from the domain. The returned
    settings carry the calibrated ``a``. Calibration failures report
    iteration -1.
    """
    if max_iter < 1:
        raise ContractError(f"max_iter must be >= 1, got {max_iter}")
    init_rng, delta_rng = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2))
    if initial is None:
        theta = init_rng.uniform(0.0, 1.0, size=2) * DOMAIN
    else:
        theta = wrap(np.asarray(initial, dtype=float))
    start = (float(theta[0]), float(theta[1]))

    def call(k: int, point: np.ndarray) -> float:
        try:
            return float(objective(float(point[0]), float(point[1])))
        except Exception as exc:
            raise OptimizationError(k, exc) from exc

    evaluations = 0
    a = settings.a
    if a is None:
        magnitudes = []
        for _ in range(settings.calibration_steps):
            delta = delta_rng.choice([-1.0, 1.0], size=2)
            diff = call(-1, wrap(theta + settings.c * delta)) - call(-1, wrap(theta - settings.c * delta))
            magnitudes.append(abs(diff) / (2 * settings.c))
        evaluations += 2 * settings.calibration_steps
        mean_magnitude = float(np.mean(magnitudes))
        scale = (1 + settings.A) ** settings.alpha
        a = settings.target_step * scale / mean_magnitude if mean_magnitude > 0 else settings.target_step
    settings = replace(settings, a=a)

    trace: list[tuple[int, float, float, float]] = []
    for k in range(max_iter):
        a_k = a / (k + 1 + settings.A) ** settings.alpha
        c_k = settings.c / (k + 1) ** settings.decay
        delta = delta_rng.choice([-1.0, 1.0], size=2)
        y_plus = call(k, wrap(theta + c_k * delta))
        y_minus = call(k, wrap(theta - c_k * delta))
        evaluations += 2
        trace.append((k, float(theta[0]), float(theta[1]), (y_plus + y_minus) / 2))
        grad = (y_plus - y_minus) / (2 * c_k) * delta
        theta = wrap(theta - a_k * grad)

    trace.append((max_iter, float(theta[0]), float(theta[1]), call(max_iter, theta)))
    evaluations += 1
    _, beta, gamma, _ = min(trace, key=lambda row: row[3])
    best = call(max_iter, np.array([beta, gamma]))
    evaluations += 1
    return OptimizationResult(
        best_params=(beta, gamma),
        best_expectation=best,
        seed=seed,
        evaluations=evaluations,
        initial=start,
        settings=settings,
        trace=trace,
    )
