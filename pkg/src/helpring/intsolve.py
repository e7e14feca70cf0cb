"""Exact enumeration of integer solutions to small rational linear systems.

Constraints are two-sided affine conditions ``lo <= sum_j c_j x_j <= hi``
with rational coefficients (either side may be absent, equalities have
``lo == hi``).  Variable ranges are derived with an exact rational simplex;
if some variable is unbounded over the relaxation the system is refused
rather than truncated, so enumeration is always complete.  Enumeration
itself is a depth-first search with interval pruning.

Everything here is pure and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

_ZERO = Fraction(0)


class UnboundedSystem(ValueError):
    """The constraint system does not bound every variable."""


@dataclass(frozen=True)
class Constraint:
    """lo <= coeffs . x <= hi;  either bound may be None."""

    coeffs: tuple[Fraction, ...]
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    @staticmethod
    def of(coeffs: Sequence, lo=None, hi=None) -> "Constraint":
        return Constraint(
            tuple(Fraction(c) for c in coeffs),
            None if lo is None else Fraction(lo),
            None if hi is None else Fraction(hi),
        )

    def holds(self, point: Sequence[Fraction]) -> bool:
        total = sum((c * x for c, x in zip(self.coeffs, point)), _ZERO)
        if self.lo is not None and total < self.lo:
            return False
        if self.hi is not None and total > self.hi:
            return False
        return True


# ---------------------------------------------------------------------------
# exact simplex (maximisation over Ax <= b with free variables)


_UNBOUNDED = object()
_INFEASIBLE = object()


def _simplex_max(rows: list[tuple[tuple[Fraction, ...], Fraction]], objective: Sequence[Fraction]):
    """Maximise ``objective . y`` over ``{y : row . y <= bound}`` with y free.

    Returns the optimal value, _UNBOUNDED, or _INFEASIBLE.  Free variables are
    split as y = u - v; Bland's rule guarantees termination.
    """
    n = len(objective)
    m = len(rows)
    # columns: u_0..u_{n-1}, v_0..v_{n-1}, slacks s_0..s_{m-1}, then artificials
    ncols = 2 * n + m
    tab: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    artificial_cols: list[int] = []
    for i, (coeffs, b) in enumerate(rows):
        row = [Fraction(c) for c in coeffs] + [-Fraction(c) for c in coeffs]
        row += [_ZERO] * m
        row[2 * n + i] = Fraction(1)
        b = Fraction(b)
        if b < 0:
            row = [-c for c in row]
            b = -b
        tab.append(row)
        rhs.append(b)
        if row[2 * n + i] == 1:
            basis.append(2 * n + i)
        else:
            basis.append(-1)  # needs an artificial
    for i in range(m):
        if basis[i] == -1:
            col = ncols + len(artificial_cols)
            artificial_cols.append(col)
            for j, row in enumerate(tab):
                row.append(Fraction(1) if j == i else _ZERO)
            basis[i] = col
    total_cols = ncols + len(artificial_cols)
    for row in tab:
        while len(row) < total_cols:
            row.append(_ZERO)

    def pivot(r: int, c: int):
        inv = 1 / tab[r][c]
        tab[r] = [v * inv for v in tab[r]]
        rhs[r] *= inv
        for i in range(m):
            if i != r and tab[i][c]:
                f = tab[i][c]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
                rhs[i] -= f * rhs[r]
        basis[r] = c

    def optimise(costs: list[Fraction]):
        # maximise costs . z; returns True normally, False if unbounded
        while True:
            # reduced costs via basis cost vector
            zrow = list(costs)
            for i in range(m):
                cb = costs[basis[i]]
                if cb:
                    for j in range(total_cols):
                        if tab[i][j]:
                            zrow[j] -= cb * tab[i][j]
            entering = -1
            for j in range(total_cols):
                if zrow[j] > 0:
                    entering = j
                    break
            if entering == -1:
                return True
            leaving = -1
            best: Optional[Fraction] = None
            for i in range(m):
                if tab[i][entering] > 0:
                    ratio = rhs[i] / tab[i][entering]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                        best = ratio
                        leaving = i
            if leaving == -1:
                return False
            pivot(leaving, entering)

    if artificial_cols:
        costs = [_ZERO] * total_cols
        for c in artificial_cols:
            costs[c] = Fraction(-1)
        optimise(costs)
        value = sum((costs[basis[i]] * rhs[i] for i in range(m)), _ZERO)
        if value != 0:
            return _INFEASIBLE
        # pivot remaining artificials out of the basis where possible
        for i in range(m):
            if basis[i] in artificial_cols:
                for j in range(ncols):
                    if tab[i][j]:
                        pivot(i, j)
                        break
    costs = [Fraction(c) for c in objective] + [-Fraction(c) for c in objective]
    costs += [_ZERO] * (total_cols - 2 * n)
    for c in artificial_cols:
        costs[c] = Fraction(-10**9)  # keep artificials glued to zero
    if not optimise(costs):
        return _UNBOUNDED
    return sum((costs[basis[i]] * rhs[i] for i in range(m)), _ZERO)


def _as_upper_rows(constraints: Sequence[Constraint], nvars: int):
    rows = []
    for con in constraints:
        if len(con.coeffs) != nvars:
            raise ValueError("constraint arity mismatch")
        if con.hi is not None:
            rows.append((con.coeffs, con.hi))
        if con.lo is not None:
            rows.append((tuple(-c for c in con.coeffs), -con.lo))
    return rows


def variable_bounds(constraints: Sequence[Constraint], nvars: int) -> Optional[list[tuple[int, int]]]:
    """Integer box containing all rational solutions, or None if infeasible.

    Raises UnboundedSystem when some variable has no finite bound.
    """
    rows = _as_upper_rows(constraints, nvars)
    box: list[tuple[int, int]] = []
    for j in range(nvars):
        obj = [_ZERO] * nvars
        obj[j] = Fraction(1)
        top = _simplex_max(rows, obj)
        if top is _INFEASIBLE:
            return None
        if top is _UNBOUNDED:
            raise UnboundedSystem(f"variable #{j} has no upper bound")
        obj[j] = Fraction(-1)
        bottom = _simplex_max(rows, obj)
        if bottom is _INFEASIBLE:
            return None
        if bottom is _UNBOUNDED:
            raise UnboundedSystem(f"variable #{j} has no lower bound")
        box.append((math.ceil(-bottom), math.floor(top)))
        if box[-1][0] > box[-1][1]:
            return None
    return box


def enumerate_integer_points(constraints: Sequence[Constraint], nvars: int) -> Iterator[tuple[int, ...]]:
    """All integer points satisfying every constraint, in lexicographic order."""
    if nvars == 0:
        if all(c.holds(()) for c in constraints):
            yield ()
        return
    box = variable_bounds(constraints, nvars)
    if box is None:
        return
    cons = list(constraints)

    def remaining_interval(con: Constraint, depth: int, partial_sum: Fraction):
        lo_rest = partial_sum
        hi_rest = partial_sum
        for j in range(depth, nvars):
            c = con.coeffs[j]
            if c > 0:
                lo_rest += c * box[j][0]
                hi_rest += c * box[j][1]
            elif c < 0:
                lo_rest += c * box[j][1]
                hi_rest += c * box[j][0]
        return lo_rest, hi_rest

    point: list[int] = [0] * nvars
    sums: list[list[Fraction]] = [[_ZERO] * (nvars + 1) for _ in cons]

    def dfs(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == nvars:
            yield tuple(point)
            return
        lo, hi = box[depth]
        for v in range(lo, hi + 1):
            point[depth] = v
            ok = True
            for ci, con in enumerate(cons):
                s = sums[ci][depth] + con.coeffs[depth] * v
                sums[ci][depth + 1] = s
                lo_rest, hi_rest = remaining_interval(con, depth + 1, s)
                if con.lo is not None and hi_rest < con.lo:
                    ok = False
                    break
                if con.hi is not None and lo_rest > con.hi:
                    ok = False
                    break
            if ok:
                yield from dfs(depth + 1)
        point[depth] = 0

    yield from dfs(0)
