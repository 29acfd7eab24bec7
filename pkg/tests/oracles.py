"""Independent reference computations for the test suite.

Nothing here imports the package's compiler or engine internals beyond
plain data types: solutions are recomputed by grade-school column
arithmetic over candidate factor bits, and evolutions by scipy's matrix
exponential, so agreement with the library is a genuine cross-check.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from adiafact import VarId


def odd_semiprimes(limit: int) -> list[int]:
    """All products of exactly two odd primes (with multiplicity) below limit."""
    primes = []
    for k in range(2, limit):
        if all(k % p for p in primes):
            primes.append(k)
    out = set()
    for i, p in enumerate(primes):
        if p == 2:
            continue
        for q in primes[i:]:
            if p * q >= limit:
                break
            out.add(p * q)
    return sorted(out)


def odd_primes(lo: int, hi: int) -> list[int]:
    return [k for k in range(lo | 1, hi, 2) if k > 2 and all(k % d for d in range(3, int(k**0.5) + 1, 2))]


def candidate_factors(width: int) -> list[int]:
    """All width-bit odd integers with the top bit set."""
    base = 1 | (1 << (width - 1))
    interiors = width - 2
    return [base | (bits << 1) for bits in range(1 << interiors)]


def column_solutions(target: int, w_p: int, w_q: int) -> list[dict]:
    """Solve the multiplication table by direct column arithmetic.

    Every pair of candidate factors is pushed through grade-school column
    addition; the carry emitted by column c is decomposed into bits that
    must fit the budget floor(log2(max lhs)) truncated at the last
    column.  Accepted assignments (interior bits plus all carry bits) are
    exactly the solutions of the layout's equation system, which the
    tests exploit as ground truth.
    """
    last_col = w_p + w_q - 1
    # independent budget computation: max lhs per column, walking left to right
    n_incoming = [0] * (last_col + 1)
    budgets = []
    for c in range(last_col + 1):
        lo = max(0, c - w_q + 1)
        hi = min(w_p - 1, c)
        n_products = max(0, hi - lo + 1)
        max_lhs = n_products + n_incoming[c]
        k = max_lhs.bit_length() - 1 if max_lhs >= 1 else 0
        k = min(k, last_col - c)
        budgets.append(k)
        for m in range(1, k + 1):
            n_incoming[c + m] += 1

    solutions = []
    for p in candidate_factors(w_p):
        for q in candidate_factors(w_q):
            carries_into = [0] * (last_col + 2)
            carry_bits: dict[VarId, int] = {}
            ok = True
            for c in range(last_col + 1):
                total = carries_into[c]
                for i in range(max(0, c - w_q + 1), min(w_p - 1, c) + 1):
                    total += ((p >> i) & 1) * ((q >> (c - i)) & 1)
                n_c = (target >> c) & 1
                if (total - n_c) % 2 or total < n_c:
                    ok = False
                    break
                value = (total - n_c) // 2
                if value >= (1 << budgets[c]):
                    ok = False
                    break
                for m in range(1, budgets[c] + 1):
                    bit = (value >> (m - 1)) & 1
                    carry_bits[VarId.carry(c, c + m)] = bit
                    carries_into[c + m] += bit
            if not ok:
                continue
            assignment = dict(carry_bits)
            for i in range(1, w_p - 1):
                assignment[VarId.p(i)] = (p >> i) & 1
            for i in range(1, w_q - 1):
                assignment[VarId.q(i)] = (q >> i) & 1
            solutions.append(assignment)
    return solutions


def simplified_solutions(system) -> set:
    """Full solution set of a simplified system, as sorted (var, bit) tuples.

    Free variables are enumerated exhaustively (vectorized); a solution
    must zero every residual and respect every forbidden pair, and is
    completed with the system's fixed values so it ranges over the same
    variables as the unsimplified layout.
    """
    from math import lcm

    free = system.free_variables()
    k = len(free)
    index = np.arange(1 << k)
    bits = {v: (index >> (k - 1 - i)) & 1 for i, v in enumerate(free)}
    keep = np.ones(1 << k, dtype=bool)
    for eq in system.equations:
        residual = eq.residual
        scale = lcm(*(c.denominator for _, c in residual.items())) if residual else 1
        acc = np.zeros(1 << k, dtype=np.int64)
        for mono, coeff in residual.items():
            term = np.ones(1 << k, dtype=np.int64)
            for var in mono:
                term = term * bits[var]
            acc += int(coeff * scale) * term
        keep &= acc == 0
    for pair in system.forbidden_pairs:
        x, y = sorted(pair)
        keep &= (bits[x] & bits[y]) == 0
    out = set()
    for i in np.flatnonzero(keep):
        solution = dict(system.fixed)
        for v in free:
            solution[v] = int(bits[v][i])
        out.add(tuple(sorted(solution.items())))
    return out


def expm_schedule(diag: np.ndarray, g: float, T: float, M: int) -> np.ndarray:
    """Reference evolution with scipy.linalg.expm, literal s_m = m/M rule."""
    dim = len(diag)
    n = dim.bit_length() - 1
    mixer = np.zeros((dim, dim))
    rows = np.arange(dim)
    for k in range(n):
        mixer[rows, rows ^ (1 << k)] = g
    state = np.array(
        [(-1.0) ** bin(b).count("1") for b in range(dim)], dtype=complex
    ) / np.sqrt(dim)
    tau = T / M
    for m in range(1, M + 1):
        s = m / M
        h = (1 - s) * mixer + s * np.diag(diag)
        state = expm(-1j * h * tau) @ state
    return state
