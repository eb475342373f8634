"""Exact linear algebra over the complex rationals.

Two independent elimination routes are kept deliberately separate: a
reduced row echelon form over the scalar field (used to produce kernel
bases), and a fraction-free Bareiss elimination over Gaussian integers
(used as the rank oracle the solver results are checked against).
"""

from __future__ import annotations

from math import lcm

from .scalars import ONE, ZERO


def rref(rows):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def kernel_basis(rows, ncols):
    """Exact basis of the null space of the matrix (rows of length ncols)."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Fraction-free rank oracle over Gaussian integers.

def _gauss_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gauss_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gauss_divexact(a, b):
    """Exact division in Z[i]; Bareiss guarantees divisibility."""
    d = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    if re % d or im % d:
        raise ArithmeticError("inexact Gaussian division in Bareiss step")
    return (re // d, im // d)


def scalars_to_gaussian(rows):
    """Clear denominators rowwise; row scaling leaves the rank unchanged."""
    out = []
    for row in rows:
        denom = 1
        for s in row:
            denom = lcm(denom, s.re.denominator, s.im.denominator)
        out.append(
            tuple(
                (int(s.re * denom), int(s.im * denom))
                for s in row
            )
        )
    return out


def bareiss_rank(int_rows):
    """Rank by fraction-free forward elimination over Gaussian integers.

    Entries are (re, im) integer pairs.  The one-step division by the
    previous pivot is exact provided every row below the pivot is updated
    at every step, including rows whose leading entry is already zero.
    """
    m = [list(r) for r in int_rows]
    if not m:
        return 0
    ncols = len(m[0])
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != (0, 0):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            fi = m[i][c]
            m[i] = [
                _gauss_divexact(
                    _gauss_sub(_gauss_mul(pv, m[i][k]), _gauss_mul(fi, m[r][k])),
                    prev,
                )
                for k in range(ncols)
            ]
        prev = pv
        r += 1
        if r == len(m):
            break
    return r
