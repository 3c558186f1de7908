"""Dense phase-1 simplex for small linear feasibility problems.

Decides whether {x >= 0 : A x = b} is non-empty. Artificial variables are
added for every row and their sum is minimized with Bland's rule, so the
routine terminates without cycling. The pivot loop lives in ``kernels``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class Phase1Result:
    status: str
    x: np.ndarray | None
    infeasibility: float
    iterations: int


def phase1(A, b, feas_tol: float = 1e-9, pivot_tol: float = 1e-12, max_iter: int | None = None) -> Phase1Result:
    """Find a non-negative solution of A x = b or report that none exists.

    Parameters
    ----------
    A, b
        Constraint matrix (m, n) and right-hand side (m,).
    feas_tol
        Largest phase-1 objective (sum of artificials) still counted feasible.
    pivot_tol
        Entries at or below this magnitude are never pivoted on.
    max_iter
        Pivot cap; hitting it yields status ``"undecided"``.
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :n] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(n, n + m, dtype=np.int64)
    if max_iter is None:
        max_iter = 50 * (n + m)
    status, iters = kernels.simplex_phase1(T, basis, int(max_iter), float(pivot_tol))
    if status != 0:
        return Phase1Result(UNDECIDED, None, float("nan"), int(iters))
    obj = -T[m, -1]
    x = np.zeros(n + m)
    x[basis] = T[:m, -1]
    sol = np.clip(x[:n], 0.0, None)
    resid = float(np.max(np.abs(A @ sol - b), initial=0.0))
    infeas = max(float(obj), resid)
    if infeas <= feas_tol:
        return Phase1Result(FEASIBLE, sol, infeas, int(iters))
    return Phase1Result(INFEASIBLE, None, infeas, int(iters))
