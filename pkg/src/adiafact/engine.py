"""Discretized adiabatic evolution and spectra, by dense eigendecomposition.

The schedule interpolates H(s) = (1 - s) * H0 + s * Hp linearly in s and
applies the M step unitaries U_m = exp(-i * H(m/M) * T/M) in order to the
mixer ground state.  Each exponential is formed from the eigensystem of
the dense Hamiltonian at that step, so unitarity holds to roundoff and
norms drift only through accumulated floating error.  Natural units
throughout (hbar = 1): T and the inverse of g share one time scale.

Sizes are desk scale on purpose: the matrices are 2^n x 2^n dense arrays
and n is capped (see hamiltonian.qubit_cap).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NumericalFailure,
)
from .hamiltonian import (
    DiagonalOperator,
    MixerSpec,
    _check_dim,
    interpolated_hamiltonian,
)

_FLOAT_FMT = "%.12g"


@dataclass(frozen=True)
class Schedule:
    """Linear annealing schedule: total time T, M steps, field strength g.

    checkpoints lists the step counts after which populations are
    recorded; step 0 is the initial state.  An empty tuple means the
    default quartiles {0, M/4, M/2, 3M/4, M} (rounded, deduplicated).
    """

    g: float = 0.6
    T: float = 20.0
    M: int = 20
    checkpoints: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"total time must be positive, got {self.T}")
        if self.M < 1 or self.M != int(self.M):
            raise ValueError(f"step count must be a positive integer, got {self.M}")
        if not self.g > 0:
            raise ValueError(f"field strength must be positive, got {self.g}")
        for c in self.checkpoints:
            if not 0 <= c <= self.M:
                raise ValueError(f"checkpoint {c} outside 0..{self.M}")

    @property
    def tau(self) -> float:
        return self.T / self.M

    def s_at(self, step: int) -> float:
        return step / self.M

    def resolved_checkpoints(self) -> tuple[int, ...]:
        if self.checkpoints:
            return tuple(sorted(set(self.checkpoints)))
        quarters = {round(k * self.M / 4) for k in range(5)}
        return tuple(sorted(quarters))

    def to_json_dict(self) -> dict:
        return {
            "g": self.g,
            "T": self.T,
            "M": self.M,
            "checkpoints": list(self.resolved_checkpoints()),
        }


@dataclass(frozen=True)
class TracePoint:
    step: int
    s: float
    populations: np.ndarray


@dataclass(frozen=True)
class EvolutionTrace:
    """Populations at the requested checkpoints plus the final state."""

    n: int
    schedule: Schedule
    points: tuple[TracePoint, ...]
    final_state: np.ndarray

    @property
    def final_populations(self) -> np.ndarray:
        return populations(self.final_state)

    def to_csv(self, stream: IO[str]) -> None:
        writer = csv.writer(stream)
        writer.writerow(["step", "s", "index", "population"])
        for point in self.points:
            for index, value in enumerate(point.populations):
                writer.writerow(
                    [point.step, _FLOAT_FMT % point.s, index, _FLOAT_FMT % value]
                )


@dataclass(frozen=True)
class GapTrace:
    """k lowest energies sampled along s, and the minimal E1 - E0 before s = 1."""

    s_values: np.ndarray
    energies: np.ndarray  # shape (len(s_values), k), ascending within a row
    min_gap: Optional[float]

    @property
    def k(self) -> int:
        return self.energies.shape[1]

    def to_csv(self, stream: IO[str]) -> None:
        writer = csv.writer(stream)
        writer.writerow(["s"] + [f"E{j}" for j in range(self.k)])
        for s, row in zip(self.s_values, self.energies):
            writer.writerow([_FLOAT_FMT % s] + [_FLOAT_FMT % e for e in row])


def initial_state(n: int) -> np.ndarray:
    """Mixer ground state: amplitude (-1)^popcount(b) / 2^(n/2) on basis state b."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got {n}")
    _check_dim(n)
    dim = 1 << n
    signs = np.array([1.0 if bin(b).count("1") % 2 == 0 else -1.0 for b in range(dim)])
    return (signs / np.sqrt(dim)).astype(np.complex128)


def populations(state: np.ndarray) -> np.ndarray:
    return np.abs(state) ** 2


def propagate_step(state: np.ndarray, hamiltonian: np.ndarray, tau: float) -> np.ndarray:
    """Apply exp(-i * hamiltonian * tau) to the state.

    The exponential is synthesized from the eigendecomposition of the
    (real symmetric or Hermitian) Hamiltonian.

    Raises:
        DimensionMismatch: state and Hamiltonian sizes differ.
        NumericalFailure: non-finite entries or a failed eigensolve.
    """
    if hamiltonian.ndim != 2 or hamiltonian.shape[0] != hamiltonian.shape[1]:
        raise DimensionMismatch(f"Hamiltonian shape {hamiltonian.shape} is not square")
    if state.shape != (hamiltonian.shape[0],):
        raise DimensionMismatch(
            f"state of length {state.shape} against matrix {hamiltonian.shape}"
        )
    if not np.all(np.isfinite(hamiltonian)):
        raise NumericalFailure("Hamiltonian contains non-finite entries")
    try:
        energies, basis = np.linalg.eigh(hamiltonian)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigendecomposition failed: {exc}") from exc
    phases = np.exp(-1j * energies * tau)
    return basis @ (phases * (basis.conj().T @ state))


def run_schedule(
    mixer: MixerSpec, problem: DiagonalOperator, schedule: Schedule
) -> EvolutionTrace:
    """Evolve the mixer ground state through the discretized schedule.

    Returns the populations at every requested checkpoint and the final
    state.  Identical inputs produce identical traces: the evolution is
    deterministic and no tolerance-based branching occurs.

    Raises:
        DimensionMismatch: mixer and problem qubit counts differ.
        NumericalFailure: a step failed or the norm drifted badly.
    """
    if mixer.n != problem.n:
        raise DimensionMismatch(
            f"mixer acts on {mixer.n} qubits but the problem has {problem.n}"
        )
    marks = set(schedule.resolved_checkpoints())
    state = initial_state(mixer.n)
    points = []
    if 0 in marks:
        points.append(TracePoint(0, 0.0, populations(state)))
    for step in range(1, schedule.M + 1):
        s = schedule.s_at(step)
        hamiltonian = interpolated_hamiltonian(s, mixer, problem)
        state = propagate_step(state, hamiltonian, schedule.tau)
        if step in marks:
            points.append(TracePoint(step, s, populations(state)))
    drift = abs(float(np.linalg.norm(state)) - 1.0)
    if drift > 1e-6:
        raise NumericalFailure(f"state norm drifted by {drift:.3e}")
    return EvolutionTrace(mixer.n, schedule, tuple(points), state)


def lowest_eigenvalues(hamiltonian: np.ndarray, k: int) -> np.ndarray:
    """The k smallest eigenvalues, ascending."""
    dim = hamiltonian.shape[0]
    if not 1 <= k <= dim:
        raise IndexOutOfRange(f"k={k} outside 1..{dim}")
    if not np.all(np.isfinite(hamiltonian)):
        raise NumericalFailure("Hamiltonian contains non-finite entries")
    try:
        energies = np.linalg.eigvalsh(hamiltonian)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolve failed: {exc}") from exc
    return energies[:k]


def gap_profile(
    mixer: MixerSpec, problem: DiagonalOperator, points: int = 101, k: int = 3
) -> GapTrace:
    """Sample the k lowest energies on a uniform s grid over [0, 1].

    min_gap is the smallest E1 - E0 over sampled s < 1 (None for k = 1);
    at s = 1 a degenerate ground manifold closes the gap by construction,
    which is why that endpoint is excluded.
    """
    if points < 2:
        raise ValueError(f"need at least two sample points, got {points}")
    s_values = np.linspace(0.0, 1.0, points)
    rows = np.empty((points, k))
    for i, s in enumerate(s_values):
        rows[i] = lowest_eigenvalues(interpolated_hamiltonian(s, mixer, problem), k)
    min_gap = None
    if k >= 2:
        before_end = s_values < 1.0
        min_gap = float(np.min(rows[before_end, 1] - rows[before_end, 0]))
    return GapTrace(s_values, rows, min_gap)
