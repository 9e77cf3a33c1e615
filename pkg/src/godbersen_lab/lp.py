"""Small dense linear programs solved in-package.

Everything the kernel needs from linear programming is tiny (tens of
variables, at most a few hundred constraints): interior witnesses by
max-slack, support values for boundedness checks, Chebyshev centers and
hull-membership feasibility tests.  A two-phase tableau simplex with
Bland's rule is deterministic, cycle-free and fast at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_COST_TOL = 1e-9
_PIVOT_TOL = 1e-11
_FEAS_TOL = 1e-8


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    value: float
    status: str


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row] /= T[row, col]
    other = np.arange(T.shape[0]) != row
    T[other] -= np.outer(T[other, col], T[row])
    basis[row] = col


def _bland_iterate(T: np.ndarray, basis: list[int], ncols: int) -> str:
    """Run simplex iterations on tableau T until optimal or unbounded.

    Objective row is T[-1], holding reduced costs for a maximization;
    optimality when all reduced costs >= -_COST_TOL.
    """
    m = T.shape[0] - 1
    max_iters = 2000 + 50 * (m + ncols)
    for _ in range(max_iters):
        costs = T[-1, :ncols]
        entering = -1
        for j in range(ncols):
            if costs[j] < -_COST_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        col = T[:m, entering]
        rows = np.where(col > _PIVOT_TOL)[0]
        if rows.size == 0:
            return UNBOUNDED
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        # Bland tie-break: smallest basis index among minimizing rows
        tied = rows[ratios <= best + 1e-12]
        leave = min(tied, key=lambda i: basis[i])
        _pivot(T, basis, leave, entering)
    raise RuntimeError("simplex iteration limit exceeded")


def solve_lp_max(c, A, b) -> LPResult:
    """Maximize c.x subject to A x <= b with x free.

    Returns an LPResult whose status is one of 'optimal', 'unbounded',
    'infeasible'.  Free variables are split into positive parts and the
    standard two-phase method is applied.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).copy()
    c = np.asarray(c, dtype=float)
    m, n = A.shape

    # columns: u (n), v (n), slacks (m), artificials appended as needed
    flip = b < 0
    Arows = np.where(flip[:, None], -A, A)
    brhs = np.where(flip, -b, b)
    slack = np.diag(np.where(flip, -1.0, 1.0))
    art_rows = np.where(flip)[0]
    nart = art_rows.size
    art = np.zeros((m, nart))
    for k, i in enumerate(art_rows):
        art[i, k] = 1.0

    body = np.hstack([Arows, -Arows, slack, art])
    ncols = body.shape[1]
    T = np.zeros((m + 1, ncols + 1))
    T[:m, :ncols] = body
    T[:m, -1] = brhs

    basis: list[int] = []
    for i in range(m):
        if flip[i]:
            basis.append(2 * n + m + int(np.where(art_rows == i)[0][0]))
        else:
            basis.append(2 * n + i)

    if nart:
        # phase 1: maximize -(sum of artificials)
        c1 = np.zeros(ncols)
        c1[2 * n + m:] = -1.0
        T[-1, :ncols] = -c1
        for i, bi in enumerate(basis):
            if c1[bi] != 0.0:
                T[-1] += c1[bi] * T[i]
        status = _bland_iterate(T, basis, ncols)
        if status != OPTIMAL or T[-1, -1] < -_FEAS_TOL:
            return LPResult(np.zeros(n), np.nan, INFEASIBLE)
        # drive leftover artificials out of the basis where possible
        for i in range(m):
            if basis[i] >= 2 * n + m:
                cand = np.where(np.abs(T[i, : 2 * n + m]) > _PIVOT_TOL)[0]
                if cand.size:
                    _pivot(T, basis, i, int(cand[0]))

    ncols2 = 2 * n + m
    c2 = np.concatenate([c, -c, np.zeros(m)])
    T2 = np.hstack([T[:m, :ncols2], T[:m, -1:]])
    T2 = np.vstack([T2, np.zeros(ncols2 + 1)])
    T2[-1, :ncols2] = -c2
    keep = [bi for bi in basis if bi < ncols2]
    if len(keep) != m:
        # redundant rows left with a zeroed artificial basic: drop them
        rows = [i for i in range(m) if basis[i] < ncols2]
        T2 = np.vstack([T2[rows], T2[-1:]])
        basis = [basis[i] for i in rows]
        m = len(rows)
    for i, bi in enumerate(basis):
        if c2[bi] != 0.0:
            T2[-1] += c2[bi] * T2[i]

    status = _bland_iterate(T2, basis, ncols2)
    xfull = np.zeros(ncols2)
    for i, bi in enumerate(basis):
        xfull[bi] = T2[i, -1]
    x = xfull[:n] - xfull[n: 2 * n]
    if status == UNBOUNDED:
        return LPResult(x, np.inf, UNBOUNDED)
    return LPResult(x, float(c @ x), OPTIMAL)


def max_slack_point(normals, offsets) -> tuple[np.ndarray, float]:
    """Point maximizing the minimum slack of <a_i, x> <= b_i.

    Rows are assumed unit-normalized, so the optimum is the Chebyshev
    center and the optimal value the inradius (negative if infeasible,
    infinite if the constraints do not pin the body down).
    """
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    offsets = np.asarray(offsets, dtype=float)
    m, d = normals.shape
    c = np.zeros(d + 1)
    c[-1] = 1.0
    A = np.hstack([normals, np.ones((m, 1))])
    res = solve_lp_max(c, A, offsets)
    if res.status == UNBOUNDED:
        return res.x[:d], np.inf
    if res.status == INFEASIBLE:
        return np.zeros(d), -np.inf
    return res.x[:d], float(res.value)


def support_value(normals, offsets, direction) -> float:
    """max <direction, x> over {A x <= b}; +inf when unbounded."""
    res = solve_lp_max(direction, normals, offsets)
    if res.status == UNBOUNDED:
        return np.inf
    if res.status == INFEASIBLE:
        return -np.inf
    return float(res.value)


def point_in_hull(points, x, tol: float = 1e-9) -> bool:
    """Feasibility test: is x a convex combination of the given points?"""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    x = np.asarray(x, dtype=float)
    k, d = P.shape
    # variables w >= 0, sum w = 1, P^T w = x; solved as inequalities
    eye = np.eye(k)
    A = np.vstack([P.T, -P.T, np.ones((1, k)), -np.ones((1, k)), -eye])
    b = np.concatenate([x + tol, -(x - tol), [1.0 + tol], [-(1.0 - tol)],
                        np.zeros(k)])
    res = solve_lp_max(np.zeros(k), A, b)
    return res.status == OPTIMAL
