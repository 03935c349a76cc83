"""Exact solver for the balanced transportation problem.

Minimizes sum(T * C) subject to row sums = supply, column sums =
demand, T >= 0, where supply and demand are probability vectors.  The
method is the classic transportation simplex: a northwest-corner basic
feasible solution (padded with degenerate zero cells so the basis is
always a spanning tree of m + n - 1 cells), dual values read off the
basis tree, and cycle pivots on the most negative reduced cost.  After
a while the entering rule switches to Bland's (first negative), which
rules out cycling on degenerate instances.
"""
from __future__ import annotations

from collections import deque

import numpy as np

__all__ = ["TransportError", "solve_transport", "transport_cost"]


class TransportError(RuntimeError):
    """The pivot limit was exhausted before reaching optimality."""


def _northwest_corner(a: np.ndarray, b: np.ndarray):
    m, n = len(a), len(b)
    T = np.zeros((m, n))
    basis: list[tuple[int, int]] = []
    rem_a = a.astype(float).copy()
    rem_b = b.astype(float).copy()
    i = j = 0
    while True:
        t = min(rem_a[i], rem_b[j])
        T[i, j] = t
        basis.append((i, j))
        rem_a[i] -= t
        rem_b[j] -= t
        if i == m - 1 and j == n - 1:
            break
        # advancing exactly one index per step keeps the basis at
        # m + n - 1 cells, inserting zero-flow cells on exact ties
        if i < m - 1 and (rem_a[i] <= rem_b[j] or j == n - 1):
            i += 1
        else:
            j += 1
    return T, basis


def _duals(basis, C, m, n):
    """Solve u_i + v_j = c_ij over the basis tree, anchored at u_0 = 0."""
    row_adj: list[list[int]] = [[] for _ in range(m)]
    col_adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in basis:
        row_adj[i].append(j)
        col_adj[j].append(i)
    u = np.full(m, np.nan)
    v = np.full(n, np.nan)
    u[0] = 0.0
    stack = [(True, 0)]
    while stack:
        is_row, k = stack.pop()
        if is_row:
            for j in row_adj[k]:
                if np.isnan(v[j]):
                    v[j] = C[k, j] - u[k]
                    stack.append((False, j))
        else:
            for i in col_adj[k]:
                if np.isnan(u[i]):
                    u[i] = C[i, k] - v[k]
                    stack.append((True, i))
    return u, v


def _cycle(basis, enter):
    """The unique alternating cycle closed by the entering cell.

    Returns the cycle as a cell list starting with ``enter``; cells at
    odd positions lose flow during the pivot.
    """
    ei, ej = enter
    row_adj: dict[int, list[tuple[int, int]]] = {}
    col_adj: dict[int, list[tuple[int, int]]] = {}
    for cell in basis:
        i, j = cell
        row_adj.setdefault(i, []).append(cell)
        col_adj.setdefault(j, []).append(cell)

    # walk the basis tree from column node ej back to row node ei
    start = ("c", ej)
    target = ("r", ei)
    parent: dict[tuple[str, int], tuple[tuple[str, int], tuple[int, int]]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == target:
            break
        kind, k = node
        edges = col_adj.get(k, ()) if kind == "c" else row_adj.get(k, ())
        for cell in edges:
            i, j = cell
            nxt = ("r", i) if kind == "c" else ("c", j)
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = (node, cell)
                queue.append(nxt)

    path_cells = []
    node = target
    while node != start:
        node, cell = parent[node]
        path_cells.append(cell)
    path_cells.reverse()
    return [enter] + path_cells


def solve_transport(
    supply, demand, cost, *, tol: float = 1e-11, max_pivots: int | None = None
):
    """Returns (objective, flow matrix) for the balanced problem.

    ``supply`` and ``demand`` must sum to the same total (callers
    normalize to 1).  Optimality is declared when no reduced cost is
    below -tol.
    """
    a = np.asarray(supply, dtype=float)
    b = np.asarray(demand, dtype=float)
    C = np.asarray(cost, dtype=float)
    m, n = C.shape
    if len(a) != m or len(b) != n:
        raise ValueError("cost shape does not match supply/demand lengths")
    if abs(a.sum() - b.sum()) > 1e-9:
        raise ValueError("unbalanced problem: supply and demand totals differ")
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("negative mass")

    T, basis = _northwest_corner(a, b)
    basis_set = set(basis)
    if max_pivots is None:
        max_pivots = 4000 + 200 * (m + n)
    bland_after = 500 + 20 * (m + n)

    for pivot in range(max_pivots):
        u, v = _duals(basis, C, m, n)
        if np.isnan(u).any() or np.isnan(v).any():
            raise TransportError("basis lost tree structure")
        R = C - u[:, None] - v[None, :]
        for i, j in basis:
            R[i, j] = 0.0

        if pivot < bland_after:
            flat = int(np.argmin(R))
            enter = (flat // n, flat % n)
            if R[enter] >= -tol:
                break
        else:
            candidates = np.argwhere(R < -tol)
            if len(candidates) == 0:
                break
            enter = tuple(int(x) for x in candidates[0])

        cycle = _cycle(basis, enter)
        losers = cycle[1::2]
        theta = min(T[c] for c in losers)
        leave = min(
            (c for c in losers if T[c] == theta), key=lambda c: (c[0], c[1])
        )
        for idx, cell in enumerate(cycle):
            if idx % 2 == 0:
                T[cell] += theta
            else:
                T[cell] -= theta
        T[leave] = 0.0
        basis_set.remove(leave)
        basis_set.add(enter)
        basis = list(basis_set)
    else:
        raise TransportError(f"no optimum after {max_pivots} pivots")

    return float(np.sum(T * C)), T


def transport_cost(supply, demand, cost) -> float:
    """Objective value only."""
    value, _ = solve_transport(supply, demand, cost)
    return value
