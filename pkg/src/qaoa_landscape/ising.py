"""QUBO construction for Max-Cut, conversion to Ising form with exact rational
coefficients, the augmented interaction matrix, and symmetry periods."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from pathlib import Path

import numpy as np

from qaoa_landscape.errors import ContractError
from qaoa_landscape.graphs import Graph, cut_values

BETA_PERIOD = math.pi / 2


@dataclass(frozen=True)
class QuboProblem:
    """Minimise ``x^T Q x`` over ``x in {0,1}^n``; ``Q`` is a symmetric integer matrix."""

    Q: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.Q)

    def objective(self, x) -> int:
        q = np.asarray(self.Q, dtype=np.int64)
        x = np.asarray(x, dtype=np.int64)
        return int(x @ q @ x)


def maxcut_qubo(g: Graph) -> QuboProblem:
    """Negated cut objective: ``x^T Q x = -cut(x)``."""
    q = [[0] * g.n for _ in range(g.n)]
    for j, k in g.edges:
        q[j][j] -= 1
        q[k][k] -= 1
        q[j][k] += 1
        q[k][j] += 1
    return QuboProblem(tuple(tuple(row) for row in q))


def load_qubo(path) -> QuboProblem:
    """Read ``{"Q": [[...], ...]}`` from a JSON file."""
    data = json.loads(Path(path).read_text())
    return QuboProblem(tuple(tuple(int(v) for v in row) for row in data["Q"]))


@dataclass(frozen=True)
class IsingModel:
    """``offset + sum_j h_j s_j + sum_{j<k} J_jk s_j s_k`` over spins ``s in {+1,-1}^n``.

    Spin ``s_j = 1 - 2 x_j``, so basis state ``|x>`` has ``Z_j`` eigenvalue ``s_j``.
    """

    n: int
    h: tuple[Fraction, ...]
    J: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if len(self.h) != self.n:
            raise ContractError(f"h has length {len(self.h)}, expected {self.n}")
        for j, k in self.J:
            if not 0 <= j < k < self.n:
                raise ContractError(f"coupling key ({j}, {k}) must satisfy 0 <= j < k < n")

    def energy(self, s) -> Fraction:
        """Exact energy of a spin configuration."""
        total = Fraction(self.offset)
        for j, hj in enumerate(self.h):
            total += hj * s[j]
        for (j, k), value in self.J.items():
            total += value * s[j] * s[k]
        return total

    def diagonal(self, include_offset: bool = True) -> np.ndarray:
        """Energy of every basis state, index bit ``j`` giving ``x_j``."""
        index = np.arange(1 << self.n, dtype=np.int64)
        spins = 1 - 2 * ((index[:, None] >> np.arange(self.n)) & 1)
        energies = np.zeros(1 << self.n)
        for j, hj in enumerate(self.h):
            if hj:
                energies += float(hj) * spins[:, j]
        for (j, k), value in self.J.items():
            energies += float(value) * spins[:, j] * spins[:, k]
        if include_offset:
            energies += float(self.offset)
        return energies

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "h": [exact_decimal(v) for v in self.h],
            "J": [[j, k, exact_decimal(v)] for (j, k), v in sorted(self.J.items())],
            "offset": exact_decimal(self.offset),
        }


def qubo_to_ising(q: QuboProblem) -> IsingModel:
    """Substitute ``x_j = (1 - s_j) / 2``; exact for every ``x``."""
    n = q.n
    for j in range(n):
        if len(q.Q[j]) != n:
            raise ContractError("Q must be square")
        for k in range(j + 1, n):
            if q.Q[j][k] != q.Q[k][j]:
                raise ContractError(f"Q is not symmetric at ({j}, {k})")

    h = [Fraction(0)] * n
    J: dict[tuple[int, int], Fraction] = {}
    offset = Fraction(0)
    for j in range(n):
        qjj = Fraction(q.Q[j][j])
        # Q_jj x_j = Q_jj (1 - s_j) / 2
        offset += qjj / 2
        h[j] -= qjj / 2
        for k in range(j + 1, n):
            qjk = Fraction(q.Q[j][k])
            if not qjk:
                continue
            # 2 Q_jk x_j x_k = Q_jk (1 - s_j - s_k + s_j s_k) / 2
            offset += qjk / 2
            h[j] -= qjk / 2
            h[k] -= qjk / 2
            J[(j, k)] = qjk / 2
    return IsingModel(n, tuple(h), J, offset)


@dataclass(frozen=True)
class AugmentedMatrix:
    m: tuple[tuple[Fraction, ...], ...]
    sparsity: Fraction

    def to_dict(self) -> dict:
        return {
            "matrix": [[exact_decimal(v) for v in row] for row in self.m],
            "sparsity": exact_decimal(self.sparsity),
        }


def augmented_matrix(model: IsingModel) -> AugmentedMatrix:
    """Couplings off the diagonal, linear fields ``h_j`` on it."""
    n = model.n
    m = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        m[j][j] = Fraction(model.h[j])
    for (j, k), value in model.J.items():
        m[j][k] = m[k][j] = Fraction(value)
    zeros = sum(1 for row in m for v in row if v == 0)
    return AugmentedMatrix(tuple(tuple(row) for row in m), Fraction(zeros, n * n))


def cut_spectrum(g: Graph) -> np.ndarray:
    """All ``2**n`` cut values in index order of ``x``."""
    return cut_values(g)


@dataclass(frozen=True)
class SymmetryReport:
    beta_period: float
    gamma_period: float | None  # None when the landscape does not depend on gamma
    delta: int

    @property
    def constant_in_gamma(self) -> bool:
        return self.delta == 0

    def to_dict(self) -> dict:
        return {
            "betaPeriod": self.beta_period,
            "gammaPeriod": self.gamma_period,
            "delta": self.delta,
            "constantInGamma": self.constant_in_gamma,
        }


def symmetry_report(g: Graph) -> SymmetryReport:
    delta = reduce(math.gcd, (int(v) for v in np.unique(cut_spectrum(g))), 0)
    gamma_period = 2 * math.pi / delta if delta else None
    return SymmetryReport(BETA_PERIOD, gamma_period, delta)


def maxcut_ising(g: Graph) -> IsingModel:
    return qubo_to_ising(maxcut_qubo(g))


def exact_decimal(value: Fraction) -> str:
    """Decimal string for a rational; falls back to ``p/q`` when not terminating."""
    value = Fraction(value)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(value.numerator)
    scaled = value * 10**digits
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def hamiltonian_report(g: Graph) -> dict:
    model = maxcut_ising(g)
    aug = augmented_matrix(model)
    report = model.to_dict()
    report["augmentedMatrix"] = aug.to_dict()["matrix"]
    report["sparsity"] = exact_decimal(aug.sparsity)
    report["symmetry"] = symmetry_report(g).to_dict()
    return report
