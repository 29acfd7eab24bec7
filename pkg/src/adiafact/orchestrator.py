"""End-to-end factoring: compile, screen, evolve, decode.

factor() walks the width splits in balance order.  A split either dies
in propagation (Infeasible), collapses completely so the factors read
off the fixed bits (preprocessed mode), or leaves a small system whose
penalty operator is simulated through the default schedule (adiabatic
mode).  The answer is decoded from the most populated zero-energy basis
state and verified exactly against the target; the run's ground-manifold
population is reported as a diagnostic, never used as a gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .compiler import (
    EquationSystem,
    build_layout,
    compile_system,
    enumerate_width_splits,
    simplify,
)
from .errors import (
    DimensionTooLarge,
    IndexOutOfRange,
    Infeasible,
    NotFactorable,
    TooManyVariables,
    UnmappedVariable,
)
from .engine import EvolutionTrace, Schedule, gap_profile, run_schedule
from .hamiltonian import (
    DiagonalOperator,
    MixerSpec,
    assemble_problem,
    polynomial_to_diagonal,
    qubit_cap,
)
from .pseudobool import Monomial, Poly, VarId

ENUMERATION_LIMIT = 24


@dataclass(frozen=True)
class GroundManifold:
    indices: tuple[int, ...]
    energy: Fraction


def ground_manifold(problem: DiagonalOperator) -> GroundManifold:
    """Exact minimum of the diagonal and every index attaining it."""
    return GroundManifold(problem.ground_indices(), problem.min_energy())


def success_probability(
    populations: np.ndarray, manifold: Union[GroundManifold, Sequence[int]]
) -> float:
    """Total population on the manifold indices."""
    indices = manifold.indices if isinstance(manifold, GroundManifold) else tuple(manifold)
    total = 0.0
    for index in indices:
        if not 0 <= index < len(populations):
            raise IndexOutOfRange(f"index {index} outside 0..{len(populations) - 1}")
        total += float(populations[index])
    return total


def decode_assignment(
    assignment: Mapping[VarId, int], system: EquationSystem
) -> tuple[int, int]:
    """Read the factors (p, q) off interior bits plus the system's fixed values.

    The assignment covers free variables; fixed variables come from the
    system.  Bits 0 and width-1 of each factor are 1 by construction.

    Raises:
        UnmappedVariable: an interior bit is neither assigned nor fixed.
    """
    merged = dict(system.fixed)
    merged.update(assignment)

    def read(kind: str, width: int) -> int:
        value = 1 | (1 << (width - 1))
        for i in range(1, width - 1):
            var = VarId(kind, i)
            try:
                bit = merged[var]
            except KeyError as exc:
                raise UnmappedVariable(f"no value for interior bit {var}") from exc
            value |= bit << i
        return value

    w_p, w_q = system.widths
    return read("p", w_p), read("q", w_q)


def _system_objective(system: EquationSystem) -> Poly:
    """Sum of squared residuals plus pair products: zero exactly on solutions."""
    total = Poly()
    for eq in system.equations:
        residual = eq.residual
        total = total + residual * residual
    for pair in system.forbidden_pairs:
        total = total + Poly({Monomial(pair): 1})
    return total


def brute_force_min(
    objective: Union[Poly, EquationSystem], limit: int = ENUMERATION_LIMIT
) -> tuple[Fraction, tuple[dict, ...]]:
    """Exact minimum of a polynomial (or a system's violation measure) by enumeration.

    For an EquationSystem the objective is the sum of squared residuals
    plus the forbidden-pair products, so the minimum is 0 exactly when
    the system is solvable and the argmin set is the solution set.

    Returns:
        (minimum value, assignments attaining it in basis-index order).

    Raises:
        TooManyVariables: more than limit variables to enumerate.
    """
    poly = _system_objective(objective) if isinstance(objective, EquationSystem) else objective
    variables = poly.variables()
    if len(variables) > limit:
        raise TooManyVariables(f"{len(variables)} variables exceed the limit of {limit}")
    if not variables:
        value = poly.constant_term
        return value, ({},)
    n = len(variables)
    dim = 1 << n
    scale = lcm(*(coeff.denominator for _, coeff in poly.items())) if poly else 1
    index = np.arange(dim)
    bits = {var: (index >> (n - 1 - i)) & 1 for i, var in enumerate(variables)}
    acc = np.zeros(dim, dtype=np.int64)
    for mono, coeff in poly.items():
        term = np.ones(dim, dtype=np.int64)
        for var in mono:
            term = term * bits[var]
        acc += int(coeff * scale) * term
    floor = int(acc.min())
    argmin = [
        {var: int(bits[var][i]) for var in variables}
        for i in np.flatnonzero(acc == floor)
    ]
    return Fraction(floor, scale), tuple(argmin)


@dataclass(frozen=True)
class FactorResult:
    """Outcome of factor(): the factors plus run diagnostics."""

    target: int
    p: int
    q: int
    widths: tuple[int, int]
    mode: str  # "preprocessed" | "adiabatic"
    success_probability: float
    ground_manifold: tuple[int, ...]
    min_gap: Optional[float]
    schedule: Optional[Schedule]
    trace: Optional[EvolutionTrace] = None

    def to_json_dict(self) -> dict:
        return {
            "n": self.target,
            "p": self.p,
            "q": self.q,
            "widths": list(self.widths),
            "mode": self.mode,
            "success_probability": self.success_probability,
            "ground_manifold": list(self.ground_manifold),
            "min_gap": self.min_gap,
            "schedule": self.schedule.to_json_dict() if self.schedule else None,
        }


def factor(
    target: int,
    widths: Optional[tuple[int, int]] = None,
    g: float = 0.6,
    T: float = 20.0,
    M: int = 20,
    pairing: str = "last",
    checkpoints: tuple[int, ...] = (),
    gap_points: int = 51,
) -> FactorResult:
    """Factor an odd target by compiled adiabatic evolution.

    Args:
        target: odd integer >= 9.
        widths: try only this split instead of the enumeration order.
        g, T, M, checkpoints: schedule parameters (see Schedule).
        pairing: penalty strategy passed to assemble_problem.
        gap_points: s samples for the reported minimal gap; 0 skips it.

    Returns:
        FactorResult with p <= q and p * q == target, exactly.

    Raises:
        EvenInput, TooSmall: target outside the model.
        WidthMismatch: explicit widths are invalid.
        NotFactorable: every split is infeasible or has no zero-energy
            state (the target is prime under this model).
        DimensionTooLarge: the only viable splits exceed the qubit cap.
    """
    splits = [tuple(widths)] if widths is not None else enumerate_width_splits(target)
    too_large = False
    for w_p, w_q in splits:
        base = build_layout(target, w_p, w_q)
        try:
            system = simplify(base)
        except Infeasible:
            continue
        if system.is_solved:
            p, q = decode_assignment({}, system)
            assert p * q == target
            return FactorResult(
                target, *sorted((p, q)), widths=(w_p, w_q), mode="preprocessed",
                success_probability=1.0, ground_manifold=(), min_gap=None,
                schedule=None,
            )
        qmap, penalty = assemble_problem(system, pairing=pairing)
        if qmap.n > qubit_cap():
            too_large = True
            continue
        problem = polynomial_to_diagonal(penalty, qmap)
        manifold = ground_manifold(problem)
        if manifold.energy != 0:
            continue  # no factorization under this split
        schedule = Schedule(g=g, T=T, M=M, checkpoints=checkpoints)
        mixer = MixerSpec(qmap.n, g)
        trace = run_schedule(mixer, problem, schedule)
        pops = trace.final_populations
        best = max(manifold.indices, key=lambda i: pops[i])
        p, q = decode_assignment(qmap.assignment_of(best), system)
        assert p * q == target  # zero energy certifies the equations, hence the product
        min_gap = None
        if gap_points:
            min_gap = gap_profile(mixer, problem, points=gap_points, k=2).min_gap
        return FactorResult(
            target, *sorted((p, q)), widths=(w_p, w_q), mode="adiabatic",
            success_probability=success_probability(pops, manifold),
            ground_manifold=manifold.indices, min_gap=min_gap,
            schedule=schedule, trace=trace,
        )
    if too_large:
        raise DimensionTooLarge(
            f"{target}: remaining splits need more than {qubit_cap()} qubits"
        )
    raise NotFactorable(f"{target}: no width split admits a zero-energy factorization")


@dataclass(frozen=True)
class SweepPoint:
    value: float
    success_probability: float
    min_gap: Optional[float]


def sweep(
    target: int,
    axis: str,
    values: Sequence[float],
    widths: Optional[tuple[int, int]] = None,
    g: float = 0.6,
    T: float = 20.0,
    M: int = 20,
    pairing: str = "last",
    gap_points: int = 51,
) -> list[SweepPoint]:
    """Rerun one compiled instance while varying a single schedule axis.

    axis is "g", "T" or "M"; values replaces that parameter pointwise.
    The instance is compiled once (first feasible split unless widths is
    given); the minimal gap only depends on g, so it is cached per field
    strength.

    Raises:
        EmptySystem: the instance is fully solved by preprocessing, so
            there is no evolution to sweep.
    """
    if axis not in ("g", "T", "M"):
        raise ValueError(f"axis must be g, T or M, got {axis!r}")
    system = compile_system(target, widths)
    qmap, penalty = assemble_problem(system, pairing=pairing)
    problem = polynomial_to_diagonal(penalty, qmap)
    manifold = ground_manifold(problem)
    gaps: dict[float, Optional[float]] = {}
    points = []
    for value in values:
        params = {"g": g, "T": T, "M": M}
        params[axis] = value if axis != "M" else int(value)
        mixer = MixerSpec(qmap.n, params["g"])
        schedule = Schedule(g=params["g"], T=params["T"], M=params["M"])
        trace = run_schedule(mixer, problem, schedule)
        prob = success_probability(trace.final_populations, manifold)
        if params["g"] not in gaps:
            gaps[params["g"]] = (
                gap_profile(mixer, problem, points=gap_points, k=2).min_gap
                if gap_points
                else None
            )
        points.append(SweepPoint(float(value), prob, gaps[params["g"]]))
    return points
