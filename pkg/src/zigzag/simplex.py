"""Dense two-phase simplex for small layout programs.

Minimizes c.x subject to A_ub x <= b_ub and A_eq x = b_eq with x >= 0,
optionally letting chosen variables range over all reals by splitting
them into a difference of two nonnegative columns.  Pivots follow
Bland's rule, so runs are deterministic and cycling is impossible.
The solver is deliberately tiny: layout programs have tens of
variables, and a fixed pivot rule matters more than speed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagram import KernelError

PIVOT_EPS = 1e-9
FEAS_EPS = 1e-7


class SolverError(KernelError):
    pass


class InfeasibleError(SolverError):
    pass


class UnboundedError(SolverError):
    pass


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    objective: float


def solve_lp(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, free=None) -> LPResult:
    """Minimize c.x with x >= 0 except the indices listed in `free`.

    Raises InfeasibleError or UnboundedError instead of returning junk:
    for layout both indicate a constraint-generation bug upstream.
    """
    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    a_ub = _as_matrix(a_ub, n)
    b_ub = np.asarray(b_ub if b_ub is not None else [], dtype=float)
    a_eq = _as_matrix(a_eq, n)
    b_eq = np.asarray(b_eq if b_eq is not None else [], dtype=float)
    if a_ub.shape[0] != b_ub.shape[0] or a_eq.shape[0] != b_eq.shape[0]:
        raise SolverError("constraint matrix and right-hand side disagree")

    free = sorted(set(free or ()))
    cols = [(j, 1.0) for j in range(n)] + [(j, -1.0) for j in free]

    def widen(m):
        if m.shape[0] == 0:
            return np.zeros((0, len(cols)))
        return np.column_stack([sign * m[:, j] for j, sign in cols])

    wc = np.array([sign * c[j] for j, sign in cols])
    x = _simplex_standard(wc, widen(a_ub), b_ub, widen(a_eq), b_eq)
    out = np.zeros(n)
    for value, (j, sign) in zip(x, cols):
        out[j] += sign * value
    return LPResult(out, float(c @ out))


def _as_matrix(m, n):
    if m is None:
        return np.zeros((0, n))
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return np.zeros((0, n))
    if m.ndim != 2 or m.shape[1] != n:
        raise SolverError("constraint matrix has the wrong shape")
    return m


def _simplex_standard(c, a_ub, b_ub, a_eq, b_eq):
    """Solve min c.x, A_ub x <= b_ub, A_eq x = b_eq, x >= 0."""
    n = c.shape[0]
    m_ub, m_eq = a_ub.shape[0], a_eq.shape[0]
    m = m_ub + m_eq
    if m == 0:
        if np.any(c < -PIVOT_EPS):
            raise UnboundedError("no constraints bound a negative cost column")
        return np.zeros(n)

    # rows: [A_ub | slack I ; A_eq | 0], right-hand sides made nonnegative
    a = np.zeros((m, n + m_ub))
    a[:m_ub, :n] = a_ub
    a[:m_ub, n : n + m_ub] = np.eye(m_ub)
    a[m_ub:, :n] = a_eq
    b = np.concatenate([b_ub, b_eq])
    for i in range(m):
        if b[i] < 0:
            a[i] *= -1.0
            b[i] *= -1.0

    total = n + m_ub
    # phase 1: artificial variables for rows without a ready slack unit
    basis = []
    art_cols = []
    for i in range(m):
        if i < m_ub and a[i, n + i] > PIVOT_EPS:
            basis.append(n + i)
        else:
            art_cols.append(i)
            basis.append(total + len(art_cols) - 1)
    if art_cols:
        art = np.zeros((m, len(art_cols)))
        for j, i in enumerate(art_cols):
            art[i, j] = 1.0
        a = np.hstack([a, art])
        phase1 = np.concatenate([np.zeros(total), np.ones(len(art_cols))])
        _run(a, b, phase1, basis)
        if _objective(phase1, a, b, basis) > FEAS_EPS:
            raise InfeasibleError("phase one left artificial residue")
        keep = _evict_artificials(a, b, basis, total)
        a = a[keep][:, :total]
        b = b[keep]
        basis = [basis[i] for i in keep]

    cost = np.concatenate([c, np.zeros(m_ub)])
    _run(a, b, cost, basis)
    x = np.zeros(total)
    for i, j in enumerate(basis):
        if j < total:
            x[j] = b[i]
    return x[:n]


def _objective(c, a, b, basis):
    return float(sum(c[j] * b[i] for i, j in enumerate(basis)))


def _run(a, b, c, basis):
    """Bland-rule simplex on tableau rows a x = b with given basis."""
    m = a.shape[0]
    # keep an explicit tableau: small problems, clarity over speed
    for i, j in enumerate(basis):
        piv = a[i, j]
        if abs(piv) <= PIVOT_EPS:
            raise SolverError("starting basis is singular")
        a[i] /= piv
        b[i] /= piv
        for r in range(m):
            if r != i and abs(a[r, j]) > PIVOT_EPS:
                b[r] -= a[r, j] * b[i]
                a[r] -= a[r, j] * a[i]
    z = c.copy().astype(float)
    for i, j in enumerate(basis):
        if abs(z[j]) > 0:
            z = z - z[j] * a[i]
    while True:
        enter = -1
        for j in range(a.shape[1]):
            if z[j] < -PIVOT_EPS and j not in basis:
                enter = j
                break
        if enter < 0:
            return
        leave, best = -1, None
        for i in range(m):
            if a[i, enter] > PIVOT_EPS:
                ratio = b[i] / a[i, enter]
                if best is None or ratio < best - PIVOT_EPS or (
                    abs(ratio - best) <= PIVOT_EPS and basis[i] < basis[leave]
                ):
                    leave, best = i, ratio
        if leave < 0:
            raise UnboundedError("improving column has no blocking row")
        piv = a[leave, enter]
        a[leave] /= piv
        b[leave] /= piv
        for r in range(m):
            if r != leave and abs(a[r, enter]) > PIVOT_EPS:
                b[r] -= a[r, enter] * b[leave]
                a[r] -= a[r, enter] * a[leave]
        if abs(z[enter]) > 0:
            z = z - z[enter] * a[leave]
        basis[leave] = enter
        b[b < 0] = np.where(b[b < 0] > -FEAS_EPS, 0.0, b[b < 0])


def _evict_artificials(a, b, basis, total):
    """Pivot leftover artificial basics onto real columns.

    Returns the rows to keep; a row whose artificial cannot be evicted
    is linearly dependent on the others and is dropped.
    """
    keep = []
    for i in range(len(basis)):
        if basis[i] < total:
            keep.append(i)
            continue
        pivot = -1
        for j in range(total):
            if abs(a[i, j]) > PIVOT_EPS:
                pivot = j
                break
        if pivot < 0:
            continue
        piv = a[i, pivot]
        a[i] /= piv
        b[i] /= piv
        for r in range(a.shape[0]):
            if r != i and abs(a[r, pivot]) > PIVOT_EPS:
                b[r] -= a[r, pivot] * b[i]
                a[r] -= a[r, pivot] * a[i]
        basis[i] = pivot
        keep.append(i)
    return keep


def enumerate_vertices(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, free=None):
    """Brute-force optimum over basic feasible solutions.

    Exponential reference oracle for small programs: every basis of the
    standard-form system is solved and checked for feasibility.
    Returns the best objective value, or raises InfeasibleError.
    """
    from itertools import combinations

    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    a_ub = _as_matrix(a_ub, n)
    b_ub = np.asarray(b_ub if b_ub is not None else [], dtype=float)
    a_eq = _as_matrix(a_eq, n)
    b_eq = np.asarray(b_eq if b_eq is not None else [], dtype=float)
    free = sorted(set(free or ()))
    cols = [(j, 1.0) for j in range(n)] + [(j, -1.0) for j in free]

    m_ub = a_ub.shape[0]
    rows = m_ub + a_eq.shape[0]
    width = len(cols) + m_ub
    a = np.zeros((rows, width))
    for k, (j, sign) in enumerate(cols):
        a[:m_ub, k] = sign * a_ub[:, j]
        a[m_ub:, k] = sign * a_eq[:, j]
    a[:m_ub, len(cols) :] = np.eye(m_ub)
    b = np.concatenate([b_ub, b_eq])
    wc = np.concatenate([[sign * c[j] for j, sign in cols], np.zeros(m_ub)])

    if rows == 0:
        if np.any(wc < -PIVOT_EPS):
            raise UnboundedError("no constraints bound a negative cost column")
        return 0.0
    best = None
    for subset in combinations(range(width), rows):
        sub = a[:, subset]
        if abs(np.linalg.det(sub)) <= PIVOT_EPS:
            continue
        x = np.linalg.solve(sub, b)
        if np.any(x < -FEAS_EPS):
            continue
        value = float(wc[list(subset)] @ x)
        if best is None or value < best:
            best = value
    if best is None:
        raise InfeasibleError("no basic feasible solution exists")
    return best
