"""Exact Gaussian elimination over Q with infeasibility certificates."""

from dataclasses import dataclass, field

from .scalars import as_fraction

__all__ = ["Solution", "Infeasible", "solve_linear"]


@dataclass(frozen=True)
class Solution:
    """A particular solution; variables listed in ``free`` were set to 0."""

    values: tuple
    free: tuple = ()


@dataclass(frozen=True)
class Infeasible:
    """Proof that rows @ x = rhs has no solution.

    ``witness`` maps row index -> multiplier y_r with sum_r y_r * rows[r] == 0
    and sum_r y_r * rhs[r] == 1.
    """

    witness: dict = field(default_factory=dict)

    def check(self, rows, rhs):
        n = len(rows[0]) if rows else 0
        combo = [as_fraction(0)] * n
        total = as_fraction(0)
        for r, y in self.witness.items():
            for j, a in enumerate(rows[r]):
                combo[j] += y * as_fraction(a)
            total += y * as_fraction(rhs[r])
        return all(c == 0 for c in combo) and total == 1


def solve_linear(rows, rhs):
    """Solve ``rows @ x = rhs`` exactly.

    Returns a :class:`Solution` or an :class:`Infeasible` carrying a rational
    certificate. Rows are processed incrementally so only the pivot rows (at
    most one per unknown) are ever stored.
    """
    if len(rows) != len(rhs):
        raise ValueError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
    n = len(rows[0]) if rows else 0
    for r, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {r} has length {len(row)}, expected {n}")

    # each pivot: (column, dense row, rhs, combination {orig_row: coeff})
    pivots = []
    for r, (row, b) in enumerate(zip(rows, rhs)):
        vec = [as_fraction(a) for a in row]
        b = as_fraction(b)
        combo = {r: as_fraction(1)}
        for col, prow, pb, pcombo in pivots:
            f = vec[col]
            if not f:
                continue
            for j in range(col, n):
                if prow[j]:
                    vec[j] -= f * prow[j]
            b -= f * pb
            for k, y in pcombo.items():
                v = combo.get(k, 0) - f * y
                if v:
                    combo[k] = v
                else:
                    combo.pop(k, None)
        lead = next((j for j in range(n) if vec[j]), None)
        if lead is None:
            if b:
                return Infeasible({k: y / b for k, y in sorted(combo.items())})
            continue
        s = vec[lead]
        vec = [a / s for a in vec]
        pivots.append((lead, vec, b / s, {k: y / s for k, y in combo.items()}))

    x = [as_fraction(0)] * n
    pivot_cols = {col for col, *_ in pivots}
    for col, prow, pb, _ in sorted(pivots, key=lambda t: -t[0]):
        x[col] = pb - sum(prow[j] * x[j] for j in range(col + 1, n) if prow[j])
    free = tuple(j for j in range(n) if j not in pivot_cols)
    return Solution(tuple(x), free)
