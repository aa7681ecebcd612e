"""Small linear solves used by the chain statistics.

Floating point goes through LAPACK (partial pivoting) followed by a residual
check; the exact path is a sparse Gauss-Jordan elimination over ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

RESIDUAL_TOL = 1e-9


class SingularSystem(ArithmeticError):
    pass


def solve_float(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[0] == 0:
        return np.zeros(b.shape, dtype=float)
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    resid = np.max(np.abs(a @ x - b)) if b.size else 0.0
    if not np.isfinite(resid) or resid > RESIDUAL_TOL:
        raise SingularSystem(f"residual {resid:.3g} exceeds {RESIDUAL_TOL}")
    return x


def solve_exact(rows: Sequence[Mapping[int, int | Fraction]], rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve ``A x = rhs`` exactly; ``rows[i]`` maps column index to coefficient."""
    n = len(rows)
    work = [{j: Fraction(v) for j, v in r.items() if v} for r in rows]
    b = [Fraction(v) for v in rhs]
    # column -> rows that still mention it
    where: dict[int, set[int]] = {}
    for i, r in enumerate(work):
        for j in r:
            where.setdefault(j, set()).add(i)
    pivot_row_of: dict[int, int] = {}
    used: set[int] = set()
    for col in range(n):
        cands = [i for i in where.get(col, ()) if i not in used]
        if not cands:
            raise SingularSystem(f"no pivot for column {col}")
        piv = min(cands, key=lambda i: len(work[i]))
        used.add(piv)
        pivot_row_of[col] = piv
        prow = work[piv]
        inv = 1 / prow[col]
        for j in prow:
            prow[j] *= inv
        b[piv] *= inv
        for i in list(where[col]):
            if i == piv:
                continue
            r = work[i]
            f = r[col]
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        where.setdefault(j, set()).add(i)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    where[j].discard(i)
            b[i] -= f * b[piv]
    return [b[pivot_row_of[col]] for col in range(n)]
