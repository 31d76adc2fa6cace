"""Dense two-phase simplex and the lower convex envelope used for memory sharing.

The solver works over whatever number type it is given. With ints and
Fractions everywhere it runs in exact arithmetic with zero tolerance;
as soon as a float appears it switches to floats with tolerance 1e-9.
Bland's rule is used for both the entering and leaving variable, so the
solver cannot cycle and always returns the same vertex for the same input.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ndtlab.errors import DimensionMismatch, OutsideHull

FLOAT_TOL = 1e-9


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LinearProgram:
    """minimize c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lo <= x <= hi.

    ``bounds`` defaults to ``(0, inf)`` for every variable; ``None`` or
    ``math.inf`` / ``-math.inf`` stand for a missing bound.
    """

    objective: Sequence
    eq_constraints: list = field(default_factory=list)
    ineq_constraints: list = field(default_factory=list)
    bounds: list | None = None

    @property
    def n(self) -> int:
        return len(self.objective)


@dataclass
class LpSolution:
    status: LpStatus
    objective_value: object = None
    x: list | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def _is_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def _finite(b) -> bool:
    return b is not None and not (isinstance(b, float) and math.isinf(b))


def _validate(lp: LinearProgram):
    n = lp.n
    if n == 0:
        raise DimensionMismatch("objective vector is empty")
    for kind, rows in (("equality", lp.eq_constraints), ("inequality", lp.ineq_constraints)):
        for i, row in enumerate(rows):
            if len(row) != 2:
                raise DimensionMismatch(f"{kind} constraint {i} must be (coefficients, rhs)")
            if len(row[0]) != n:
                raise DimensionMismatch(
                    f"{kind} constraint {i} has {len(row[0])} coefficients, expected {n}")
    bounds = lp.bounds if lp.bounds is not None else [(0, None)] * n
    if len(bounds) != n:
        raise DimensionMismatch(f"{len(bounds)} bounds for {n} variables")
    for j, (lo, hi) in enumerate(bounds):
        if _finite(lo) and _finite(hi) and lo > hi:
            raise DimensionMismatch(f"variable {j}: lower bound {lo} > upper bound {hi}")
    return bounds


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` and return the optimal vertex, or the failure status."""
    bounds = _validate(lp)
    n = lp.n
    scalars = list(lp.objective)
    for coeffs, rhs in lp.eq_constraints + lp.ineq_constraints:
        scalars.extend(coeffs)
        scalars.append(rhs)
    scalars.extend(b for pair in bounds for b in pair if _finite(b))
    exact = _is_exact(scalars)
    conv = Fraction if exact else float
    tol = 0 if exact else FLOAT_TOL

    # Column map: each original variable becomes lo + x' (x' >= 0), or
    # hi - x' when only an upper bound exists, or x+ - x- when free.
    cols = []  # (original index, sign)
    offsets = [conv(0)] * n
    extra_ub = []  # (column, cap) for x' <= hi - lo
    for j, (lo, hi) in enumerate(bounds):
        if _finite(lo):
            offsets[j] = conv(lo)
            cols.append((j, 1))
            if _finite(hi):
                extra_ub.append((len(cols) - 1, conv(hi) - conv(lo)))
        elif _finite(hi):
            offsets[j] = conv(hi)
            cols.append((j, -1))
        else:
            cols.append((j, 1))
            cols.append((j, -1))

    def transform(coeffs, rhs):
        row = [sign * conv(coeffs[j]) for j, sign in cols]
        shift = sum((conv(coeffs[j]) * offsets[j] for j in range(n)), conv(0))
        return row, conv(rhs) - shift

    eq_rows = [transform(a, b) for a, b in lp.eq_constraints]
    ub_rows = [transform(a, b) for a, b in lp.ineq_constraints]
    for c, cap in extra_ub:
        row = [conv(0)] * len(cols)
        row[c] = conv(1)
        ub_rows.append((row, cap))
    cost = [sign * conv(lp.objective[j]) for j, sign in cols]

    result = _simplex(cost, eq_rows, ub_rows, conv, tol)
    if result[0] is not LpStatus.OPTIMAL:
        return LpSolution(result[0])
    x = list(offsets)
    for (j, sign), v in zip(cols, result[1]):
        x[j] += sign * v
    value = sum((conv(lp.objective[j]) * x[j] for j in range(n)), conv(0))
    return LpSolution(LpStatus.OPTIMAL, value, x)


def _simplex(cost, eq_rows, ub_rows, conv, tol):
    """Two-phase tableau simplex on  min cost.x, E x = e, U x <= u, x >= 0."""
    n = len(cost)
    n_slack = len(ub_rows)
    width = n + n_slack
    rows = []
    for k, (a, b) in enumerate(ub_rows):
        row = list(a) + [conv(0)] * n_slack
        row[n + k] = conv(1)
        rows.append((row, b))
    for a, b in eq_rows:
        rows.append((list(a) + [conv(0)] * n_slack, b))

    # A slack whose row keeps a nonnegative rhs starts in the basis;
    # every other row gets an artificial column.
    basis = []
    for i, (row, b) in enumerate(rows):
        if b < 0:
            rows[i] = ([-v for v in row], -b)
            basis.append(None)
        else:
            basis.append(n + i if i < n_slack else None)
    n_art = basis.count(None)
    tab = []
    art = width
    for i, (row, b) in enumerate(rows):
        full = row + [conv(0)] * n_art
        if basis[i] is None:
            full[art] = conv(1)
            basis[i] = art
            art += 1
        tab.append(full + [b])

    def pivot(r, c):
        piv = tab[r][c]
        tab[r] = [v / piv for v in tab[r]]
        pr = tab[r]
        for i in range(len(tab)):
            f = tab[i][c]
            if i != r and f != 0:
                tab[i] = [vi - f * vr for vi, vr in zip(tab[i], pr)]
        basis[r] = c

    def run(obj, allowed):
        while True:
            cb = [obj[b] for b in basis]
            in_basis = set(basis)
            entering = None
            for c in range(allowed):
                if c in in_basis:
                    continue
                red = obj[c] - sum(cb[i] * tab[i][c] for i in range(len(tab)) if cb[i] != 0)
                if red < -tol:
                    entering = c
                    break
            if entering is None:
                return True
            best = None
            for i in range(len(tab)):
                a = tab[i][entering]
                if a > tol:
                    ratio = tab[i][-1] / a
                    if (best is None or ratio < best[0] - tol
                            or (ratio <= best[0] + tol and basis[i] < basis[best[1]])):
                        best = (ratio, i)
            if best is None:
                return False
            pivot(best[1], entering)

    if n_art:
        run([conv(0)] * width + [conv(1)] * n_art, width + n_art)
        infeas = sum((tab[i][-1] for i in range(len(tab)) if basis[i] >= width), conv(0))
        if infeas > tol:
            return (LpStatus.INFEASIBLE,)
        # Zero-valued artificials left in the basis are pivoted out, or
        # their (redundant) rows dropped.
        for i in range(len(tab)):
            if basis[i] >= width:
                in_basis = set(basis)
                for c in range(width):
                    if c not in in_basis and abs(tab[i][c]) > tol:
                        pivot(i, c)
                        break
        keep = [i for i in range(len(tab)) if basis[i] < width]
        tab[:] = [tab[i][:width] + [tab[i][-1]] for i in keep]
        basis[:] = [basis[i] for i in keep]

    if not run(list(cost) + [conv(0)] * n_slack, width):
        return (LpStatus.UNBOUNDED,)
    x = [conv(0)] * width
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    return (LpStatus.OPTIMAL, x[:n])


@dataclass(frozen=True)
class EnvelopePoint:
    coords: tuple
    value: object


def envelope_weights(points: Sequence[EnvelopePoint], query) -> tuple:
    """Weights of the cheapest convex combination of ``points`` landing on ``query``.

    Returns ``(value, weights)``. The value is the lower convex envelope
    of the point set at ``query``.
    """
    if not points:
        raise OutsideHull("no points given")
    query = tuple(query) if isinstance(query, (tuple, list)) else (query,)
    dim = len(query)
    for p in points:
        if len(p.coords) != dim:
            raise DimensionMismatch(f"point {p.coords} does not match query dimension {dim}")
    k = len(points)
    eqs = [([1] * k, 1)]
    for d in range(dim):
        eqs.append(([p.coords[d] for p in points], query[d]))
    sol = solve_lp(LinearProgram([p.value for p in points], eqs))
    if not sol.optimal:
        raise OutsideHull(f"query {query} is outside the convex hull of the points")
    return sol.objective_value, sol.x


def lower_convex_envelope(points: Sequence[EnvelopePoint], query):
    """Value at ``query`` of the lower convex envelope of ``points``."""
    return envelope_weights(points, query)[0]
