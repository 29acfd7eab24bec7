"""Problem and mixer operators for the compiled equation systems.

Each simplified equation contributes a penalty that vanishes exactly on
its solutions.  Squaring the residual is the default; when the square
would exceed quadratic order and the residual contains a two-variable
product A*B, the penalty

    2 * (1/2 * (A + B - 1/2) + S)^2 - 1/8        with S = residual - A*B

is used instead.  Expanded over binary variables it equals
A*B + (2A + 2B - 1)*S + 2*S^2, which is nonnegative on integer S and
vanishes exactly where A*B + S does, while cutting the top monomial
degree by one.  The mixer is the uniform transverse field g * sum_i X_i,
whose ground state is the uniform-magnitude superposition used as the
start of every schedule.

Energies stay exact rationals end to end; float views are derived, so
ground manifolds are identified by exact comparison, never by tolerance.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Mapping, Union

import numpy as np

from .compiler import ColumnEquation, EquationSystem
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EmptySystem,
    InconsistentMap,
    NotApplicable,
    UnmappedVariable,
)
from .pseudobool import Poly, VarId

_CAP_ENV = "ADIAFACT_MAX_QUBITS"
_DEFAULT_CAP = 14

PAIRINGS = ("last", "first", "none")


def qubit_cap() -> int:
    """Densest register this build will materialize (override via ADIAFACT_MAX_QUBITS)."""
    raw = os.environ.get(_CAP_ENV)
    if raw is None:
        return _DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{_CAP_ENV} must be positive, got {cap}")
    return cap


def _check_dim(n: int) -> None:
    cap = qubit_cap()
    if n > cap:
        raise DimensionTooLarge(f"{n} qubits exceed the cap of {cap} (2^{n} amplitudes)")


@dataclass(frozen=True)
class QubitMap:
    """Assigns each free variable a qubit; variables[0] is the most significant bit.

    Sorted variable order is p interiors ascending, then q interiors,
    then carries by (source column, target column).
    """

    variables: tuple[VarId, ...]

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise InconsistentMap("duplicate variables in qubit map")
        if tuple(sorted(self.variables)) != self.variables:
            raise InconsistentMap("qubit map must list variables in sorted order")

    @classmethod
    def from_system(cls, system: EquationSystem) -> "QubitMap":
        return cls(system.free_variables())

    @property
    def n(self) -> int:
        return len(self.variables)

    @cached_property
    def _positions(self) -> dict:
        return {var: i for i, var in enumerate(self.variables)}

    def index_of(self, assignment: Mapping[VarId, int]) -> int:
        index = 0
        for i, var in enumerate(self.variables):
            try:
                bit = assignment[var]
            except KeyError as exc:
                raise UnmappedVariable(f"assignment is missing {var}") from exc
            if bit:
                index |= 1 << (self.n - 1 - i)
        return index

    def assignment_of(self, index: int) -> dict:
        if not 0 <= index < (1 << self.n):
            raise ValueError(f"index {index} outside 0..{(1 << self.n) - 1}")
        return {
            var: (index >> (self.n - 1 - i)) & 1 for i, var in enumerate(self.variables)
        }


@dataclass(frozen=True)
class DiagonalOperator:
    """A 2^n diagonal of exact rational energies in the computational basis."""

    n: int
    energies: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.energies) != 1 << self.n:
            raise DimensionMismatch(
                f"{len(self.energies)} energies for {self.n} qubits (need {1 << self.n})"
            )

    @property
    def dim(self) -> int:
        return 1 << self.n

    @cached_property
    def as_array(self) -> np.ndarray:
        values = np.array([float(e) for e in self.energies])
        values.setflags(write=False)
        return values

    def min_energy(self) -> Fraction:
        return min(self.energies)

    def max_energy(self) -> Fraction:
        return max(self.energies)

    def ground_indices(self) -> tuple[int, ...]:
        floor = self.min_energy()
        return tuple(i for i, e in enumerate(self.energies) if e == floor)


def _residual(source: Union[ColumnEquation, Poly]) -> Poly:
    return source.residual if isinstance(source, ColumnEquation) else source


def penalty_polynomial(equation: Union[ColumnEquation, Poly]) -> Poly:
    """Squared residual: nonnegative, zero exactly on the equation's solutions."""
    residual = _residual(equation)
    return residual * residual


def quadratize_equation(
    equation: Union[ColumnEquation, Poly], pairing: str = "last"
) -> Poly:
    """Penalty for residual A*B + S built without squaring the product.

    pairing picks which two-variable product becomes (A, B): "last" takes
    the lexicographically last product term, "first" the first.

    Raises:
        NotApplicable: no two-variable product to pair, or non-integer
            coefficients (the identity needs integer-valued S).
    """
    residual = _residual(equation)
    if any(coeff.denominator != 1 for _, coeff in residual.items()):
        raise NotApplicable("quadratization needs integer coefficients")
    products = [mono for mono, _ in residual.items() if mono.degree == 2]
    if not products:
        raise NotApplicable("no two-variable product term to pair")
    if pairing not in ("last", "first"):
        raise ValueError(f"pairing must be 'last' or 'first', got {pairing!r}")
    mono = products[-1] if pairing == "last" else products[0]
    a, b = mono
    half = Fraction(1, 2)
    s_part = residual - Poly({mono: 1})
    bracket = half * (Poly.variable(a) + Poly.variable(b) - half) + s_part
    return 2 * bracket * bracket - Fraction(1, 8)


def assemble_problem(
    system: EquationSystem, pairing: str = "last"
) -> tuple[QubitMap, Poly]:
    """Sum the per-equation penalties into the problem polynomial.

    pairing: "last" (default) and "first" choose the paired product for
    equations whose squared penalty would exceed quadratic order; "none"
    always squares, which keeps the penalty symmetric under the p/q swap
    at the cost of higher-degree monomials.

    Returns:
        (qubit map over the free variables, penalty polynomial).  The
        polynomial is nonnegative on all assignments and vanishes exactly
        on the system's solutions.

    Raises:
        EmptySystem: the system has no free variables left.
    """
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}, got {pairing!r}")
    qmap = QubitMap.from_system(system)
    if qmap.n == 0:
        raise EmptySystem(f"{system.target}: nothing left to solve")
    total = Poly()
    for eq in system.equations:
        penalty = penalty_polynomial(eq)
        if pairing != "none" and penalty.degree > 2:
            try:
                penalty = quadratize_equation(eq, pairing)
            except NotApplicable:
                pass  # no pairable product; keep the plain square
        total = total + penalty
    return qmap, total


def polynomial_to_diagonal(poly: Poly, qmap: QubitMap) -> DiagonalOperator:
    """Evaluate the polynomial on every computational basis state.

    Raises:
        UnmappedVariable: the polynomial mentions a variable outside the map.
        DimensionTooLarge: the map exceeds the qubit cap.
    """
    unmapped = set(poly.variables()) - set(qmap.variables)
    if unmapped:
        raise UnmappedVariable(f"no qubit for {sorted(unmapped)}")
    n = qmap.n
    _check_dim(n)
    dim = 1 << n
    scale = lcm(*(coeff.denominator for _, coeff in poly.items())) if poly else 1
    index = np.arange(dim)
    bits = {
        var: (index >> (n - 1 - i)) & 1 for i, var in enumerate(qmap.variables)
    }
    acc = np.zeros(dim, dtype=np.int64)
    for mono, coeff in poly.items():
        term = np.ones(dim, dtype=np.int64)
        for var in mono:
            term = term * bits[var]
        acc += int(coeff * scale) * term
    energies = tuple(Fraction(int(v), scale) for v in acc)
    return DiagonalOperator(n, energies)


def direct_cost_diagonal(target: int, w_x: int, w_y: int) -> DiagonalOperator:
    """Cost (target - x*y)^2 over all w_x- and w_y-bit integers.

    Basis index is (x << w_y) | y.  This is the comparison scheme whose
    spectral range grows with target^2, unlike the table compilation.
    """
    if target < 1:
        raise ValueError(f"target must be positive, got {target}")
    if w_x < 1 or w_y < 1:
        raise ValueError(f"widths must be positive, got ({w_x}, {w_y})")
    n = w_x + w_y
    _check_dim(n)
    x = np.arange(1 << w_x, dtype=np.int64)
    y = np.arange(1 << w_y, dtype=np.int64)
    costs = (target - np.outer(x, y)) ** 2
    energies = tuple(Fraction(int(v)) for v in costs.reshape(-1))
    return DiagonalOperator(n, energies)


@dataclass(frozen=True)
class MixerSpec:
    """Uniform transverse field g * sum_i X_i on n qubits."""

    n: int
    g: float = 0.6

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got {self.n}")
        _check_dim(self.n)
        if not self.g > 0:
            raise ValueError(f"field strength must be positive, got {self.g}")

    @property
    def dim(self) -> int:
        return 1 << self.n

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense form: entry g between basis states differing in exactly one bit."""
        dim = self.dim
        out = np.zeros((dim, dim))
        rows = np.arange(dim)
        for k in range(self.n):
            out[rows, rows ^ (1 << k)] = self.g
        out.setflags(write=False)
        return out


def interpolated_hamiltonian(
    s: float, mixer: MixerSpec, problem: DiagonalOperator
) -> np.ndarray:
    """(1 - s) * mixer + s * problem, as a dense real symmetric matrix."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"interpolation parameter must lie in [0, 1], got {s}")
    if mixer.n != problem.n:
        raise DimensionMismatch(
            f"mixer acts on {mixer.n} qubits but the problem has {problem.n}"
        )
    out = (1.0 - s) * mixer.matrix
    np.fill_diagonal(out, out.diagonal() + s * problem.as_array)
    return out
