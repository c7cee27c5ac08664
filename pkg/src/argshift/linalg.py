"""Exact linear algebra over the rationals.

Dense matrices are plain lists of rows.  Entries may be ``int`` or
``Fraction``; results are always ``Fraction`` (or ``int`` for ranks).
Elimination is fraction-free wherever only rank, determinant or
consistency is needed; reduced echelon forms are computed over ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InputError


def _int_row(row: Iterable) -> list[int]:
    """Scale a rational row to a primitive integer row (same span)."""
    row = [Fraction(v) for v in row]
    den = 1
    for v in row:
        den = lcm(den, v.denominator)
    out = [int(v * den) for v in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out


def bareiss(rows: Sequence[Sequence]) -> tuple[list[list[int]], int, int]:
    """Fraction-free Bareiss elimination.

    Returns ``(echelon, rank, sign)`` where ``echelon`` is the integer upper
    echelon form and ``sign`` tracks row swaps.  The input is first scaled
    row-by-row to integers; callers needing the determinant must undo that
    scaling (see :func:`det`).
    """
    m = [list(map(int, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        p = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            q = mi[c]
            mr = m[r]
            for j in range(c + 1, ncols):
                mi[j] = (p * mi[j] - q * mr[j]) // prev
            mi[c] = 0
        prev = p
        r += 1
    return m, r, sign


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not len(rows[0]):
        return 0
    return bareiss([_int_row(r) for r in rows])[1]


def det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        row = [Fraction(v) for v in row]
        den = 1
        for v in row:
            den = lcm(den, v.denominator)
        int_rows.append([int(v * den) for v in row])
        scale *= den
    m, r, sign = bareiss(int_rows)
    if r < n:
        return Fraction(0)
    return Fraction(sign * m[n - 1][n - 1]) / scale


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows dropped.  Returns (rows, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                q = m[i][c]
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Canonical basis of the right kernel, itself in reduced echelon form."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return span_basis(basis, ncols)


def span_basis(vectors: Iterable[Sequence], ncols: int) -> list[list[Fraction]]:
    """Reduced echelon basis of the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    return rref(vectors)[0]


def contains(basis: Sequence[Sequence], vectors: Iterable[Sequence]) -> bool:
    """True iff every vector lies in the span of ``basis``."""
    basis = [list(b) for b in basis]
    k = rank(basis) if basis else 0
    for v in vectors:
        if rank(basis + [list(v)]) != k:
            return False
    return True


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows]


def vec_mat(v: Sequence, rows: Sequence[Sequence]) -> list:
    ncols = len(rows[0]) if rows else 0
    out = [Fraction(0)] * ncols
    for vi, r in zip(v, rows):
        if vi:
            for j, a in enumerate(r):
                if a:
                    out[j] += vi * a
    return out


def solve_sparse(
    equations: Iterable[tuple[dict[int, Fraction], Fraction]], nvars: int
) -> tuple[list[Fraction], list[int]] | None:
    """Solve a sparse rational system by fraction-free elimination.

    ``equations`` yields ``(row, rhs)`` with ``row`` a map column -> coefficient.
    Rows are scaled to primitive integer vectors and eliminated pairwise
    (``p*r - q*s``, then divided by the content), so no fractions appear
    until back substitution.  Returns ``None`` if the system is inconsistent,
    otherwise ``(solution, free_columns)`` with free columns set to zero.
    """
    echelon: dict[int, tuple[dict[int, int], int]] = {}
    for row, rhs in equations:
        cols = sorted(c for c, v in row.items() if v)
        if any(c < 0 or c >= nvars for c in cols):
            raise InputError("column index out of range")
        ints = _int_row([row[c] for c in cols] + [rhs])
        cur = {c: v for c, v in zip(cols, ints) if v}
        b = ints[-1]
        while cur:
            c = min(cur)
            if c not in echelon:
                echelon[c] = (cur, b)
                break
            prow, pb = echelon[c]
            p, q = prow[c], cur[c]
            new = {k: p * v for k, v in cur.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - q * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            b = p * b - q * pb
            g = abs(b)
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {k: v // g for k, v in new.items()}
                b //= g
            cur = new
        else:
            if b != 0:
                return None
    sol = [Fraction(0)] * nvars
    for c in sorted(echelon, reverse=True):
        prow, pb = echelon[c]
        acc = Fraction(pb)
        for k, v in prow.items():
            if k != c:
                acc -= v * sol[k]
        sol[c] = acc / prow[c]
    free = [c for c in range(nvars) if c not in echelon]
    return sol, free
