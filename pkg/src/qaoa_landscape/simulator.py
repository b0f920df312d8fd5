"""Statevector simulation of the QAOA circuit for diagonal Ising Hamiltonians.

Basis index ``i`` encodes ``x_j = (i >> j) & 1`` (qubit ``j`` is bit ``j``).
Sampling uses numpy's PCG64 generator seeded through ``SeedSequence``, so
runs are reproducible from a single integer seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from qaoa_landscape.analytic import GridSpec, Landscape
from qaoa_landscape.errors import CapacityError, ContractError
from qaoa_landscape.ising import IsingModel

MAX_QUBITS = 22


@dataclass
class Statevector:
    n: int
    amplitudes: np.ndarray

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.sqrt(self.probabilities().sum()))

    @classmethod
    def uniform(cls, n: int) -> "Statevector":
        dim = 1 << n
        return cls(n, np.full(dim, 1 / np.sqrt(dim), dtype=complex))

    @classmethod
    def basis(cls, bits: Sequence[int]) -> "Statevector":
        n = len(bits)
        amps = np.zeros(1 << n, dtype=complex)
        amps[sum(int(b) << j for j, b in enumerate(bits))] = 1.0
        return cls(n, amps)


def _check_qubits(n: int) -> None:
    if n > MAX_QUBITS:
        raise CapacityError(f"statevector simulation limited to {MAX_QUBITS} qubits, got {n}")


def apply_rx_layer(psi: np.ndarray, n: int, beta, order: Sequence[int] | None = None) -> np.ndarray:
    """Apply ``prod_j exp(-i beta X_j)`` along the last axis of ``psi``.

    ``beta`` may be an array broadcasting against the leading axes.
    """
    beta = np.asarray(beta, dtype=float)[..., None, None]
    cos, msin = np.cos(beta), -1j * np.sin(beta)
    lead = psi.shape[:-1]
    for j in (range(n) if order is None else order):
        view = psi.reshape(*lead, -1, 2, 1 << j)
        a0 = view[..., 0, :]
        a1 = view[..., 1, :]
        psi = np.stack((cos * a0 + msin * a1, msin * a0 + cos * a1), axis=-2).reshape(psi.shape)
    return psi


def qaoa_state(model: IsingModel, schedule: Sequence[tuple[float, float]]) -> Statevector:
    """Run ``U_M(beta_p) U_P(gamma_p) ... U_M(beta_1) U_P(gamma_1)`` on ``|+>^n``.

    ``schedule`` lists ``(gamma, beta)`` pairs, first layer first. The Ising
    offset only contributes a global phase and is left out of ``U_P``.
    """
    _check_qubits(model.n)
    if len(schedule) < 1:
        raise ContractError("schedule needs at least one (gamma, beta) layer")
    return _evolve(model.n, model.diagonal(include_offset=False), schedule)


def _evolve(n: int, energies: np.ndarray, schedule) -> Statevector:
    psi = Statevector.uniform(n).amplitudes
    for gamma, beta in schedule:
        psi = np.exp(-1j * gamma * energies) * psi
        psi = apply_rx_layer(psi, n, beta)
    return Statevector(n, psi)


def exact_expectation(v: Statevector, model: IsingModel) -> float:
    if v.n != model.n:
        raise ContractError(f"state has {v.n} qubits, model has {model.n}")
    return float(v.probabilities() @ model.diagonal())


def sampled_expectation(v: Statevector, model: IsingModel, shots: int, seed) -> float:
    """Mean energy of ``shots`` measurement outcomes.

    ``seed`` is anything ``numpy.random.default_rng`` accepts: an int, a
    ``SeedSequence`` or an existing ``Generator`` (which is advanced).
    """
    if shots < 1:
        raise ContractError(f"shots must be positive, got {shots}")
    if v.n != model.n:
        raise ContractError(f"state has {v.n} qubits, model has {model.n}")
    rng = np.random.default_rng(seed)
    probs = v.probabilities()
    counts = rng.multinomial(shots, probs / probs.sum())
    return float(counts @ model.diagonal() / shots)


def expectation_grid(model: IsingModel, betas: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    """Exact p=1 expectations on the outer product ``betas x gammas``."""
    _check_qubits(model.n)
    energies = model.diagonal(include_offset=False)
    full = model.diagonal()
    dim = 1 << model.n
    after_phase = np.exp(-1j * np.outer(gammas, energies)) / np.sqrt(dim)
    out = np.empty((len(betas), len(gammas)))
    for r, beta in enumerate(betas):
        psi = apply_rx_layer(after_phase, model.n, beta)
        out[r] = (np.abs(psi) ** 2) @ full
    return out


def simulated_landscape(
    model: IsingModel,
    grid: GridSpec,
    mode: str = "exact-sim",
    shots: int | None = None,
    seed: int | None = None,
) -> Landscape:
    """Landscape from the simulator; ``sampled-sim`` draws one child seed per grid point."""
    if mode == "exact-sim":
        return Landscape(grid, expectation_grid(model, grid.betas(), grid.gammas()), mode)
    if mode != "sampled-sim":
        raise ContractError(f"unknown simulation mode {mode!r}")
    if shots is None or seed is None:
        raise ContractError("sampled landscapes need both shots and seed")
    _check_qubits(model.n)
    children = np.random.SeedSequence(seed).spawn(grid.rows * grid.cols)
    phases = model.diagonal(include_offset=False)
    values = np.empty((grid.rows, grid.cols))
    for r, beta in enumerate(grid.betas()):
        for c, gamma in enumerate(grid.gammas()):
            state = _evolve(model.n, phases, [(gamma, beta)])
            values[r, c] = sampled_expectation(state, model, shots, children[r * grid.cols + c])
    return Landscape(grid, values, mode)


def exact_objective(model: IsingModel) -> Callable[[float, float], float]:
    _check_qubits(model.n)
    phases = model.diagonal(include_offset=False)
    energies = model.diagonal()

    def objective(beta: float, gamma: float) -> float:
        return float(_evolve(model.n, phases, [(gamma, beta)]).probabilities() @ energies)

    return objective


def sampled_objective(model: IsingModel, shots: int, seed: int) -> Callable[[float, float], float]:
    """Shot-noise objective; successive calls consume one seeded stream."""
    _check_qubits(model.n)
    if shots < 1:
        raise ContractError(f"shots must be positive, got {shots}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    phases = model.diagonal(include_offset=False)
    energies = model.diagonal()

    def objective(beta: float, gamma: float) -> float:
        probs = _evolve(model.n, phases, [(gamma, beta)]).probabilities()
        counts = rng.multinomial(shots, probs / probs.sum())
        return float(counts @ energies / shots)

    return objective
