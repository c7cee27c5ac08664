"""Truncated formal Ad*-invariants at a regular point.

A formal invariant at ``a`` is a series F = f1 + f2 + ... of homogeneous
polynomials whose differential annihilates the coadjoint orbit through
``a + x``.  Degree by degree this is the linear recursion

    ad*_{df_k(x)} a = -ad*_{df_{k-1}(x)} x,     ad*_{df_1(x)} a = 0,

which :func:`next_term` solves by coefficient matching.  The solution is
unique up to polynomials in Ann(a); we pin it by requiring that no term of
degree >= 2 contains a monomial built only from the pivot variables of the
echelon basis of Ann(a), i.e. every higher term vanishes on the span of the
corresponding dual basis covectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import CheckFailed, InputError, RecursionBroken, SingularPointError
from .lie import DEFAULT_SEED, LieAlgebra, annihilator, as_point, index, poisson_matrix
from .poly import Poly, differential, homogeneous_monomials, substitute


@dataclass(frozen=True)
class TruncatedFormalInvariant:
    base_point: tuple[Fraction, ...]
    terms: tuple[Poly, ...]  # terms[k-1] is the homogeneous degree-k term

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, k: int) -> Poly:
        return self.terms[k - 1]

    def as_poly(self) -> Poly:
        total = Poly.zero(self.terms[0].nvars)
        for t in self.terms:
            total = total + t
        return total


@dataclass(frozen=True)
class InvariantBasis:
    base_point: tuple[Fraction, ...]
    order: int
    members: tuple[TruncatedFormalInvariant, ...]
    ann_basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]


def _linear_forms(alg: LieAlgebra) -> list[list[Poly]]:
    """A_x as a matrix of linear polynomials: entry (i, j) = sum_k c_ij^k x_k."""
    n = alg.dim
    forms = [[Poly.zero(n) for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in alg.structure.items():
        xk = Poly.var(n, k) * c
        forms[i][j] = forms[i][j] + xk
        forms[j][i] = forms[j][i] - xk
    return forms


def _covector(grad: Sequence[Poly], matrix) -> list[Poly]:
    """Component j of sum_i grad[i] * matrix[i][j]."""
    n = len(grad)
    out = []
    for j in range(n):
        acc = Poly.zero(n)
        for i in range(n):
            if grad[i] and matrix[i][j]:
                acc = acc + grad[i] * matrix[i][j]
        out.append(acc)
    return out


def _const_matrix(alg: LieAlgebra, a) -> list[list[Poly]]:
    n = alg.dim
    return [[Poly.const(n, v) for v in row] for row in poisson_matrix(alg, a)]


def recursion_residual(alg: LieAlgebra, a: Sequence, cur: Poly, prev: Poly | None) -> list[Poly]:
    """ad*_{d cur(x)} a + ad*_{d prev(x)} x as n polynomial components."""
    a = as_point(a, alg.dim)
    res = _covector(differential(cur), _const_matrix(alg, a))
    if prev is not None and prev:
        rhs = _covector(differential(prev), _linear_forms(alg))
        res = [r + s for r, s in zip(res, rhs)]
    return res


def _pivots(alg: LieAlgebra, a) -> tuple[list[list[Fraction]], list[int]]:
    basis = annihilator(alg, a)
    pivots = [next(i for i, v in enumerate(b) if v) for b in basis]
    return basis, pivots


def _require_regular(alg: LieAlgebra, a, ind: int | None, seed: int) -> int:
    if ind is None:
        ind = index(alg, seed).index
    if alg.dim - linalg.rank(poisson_matrix(alg, a)) != ind:
        raise SingularPointError(f"point {[str(v) for v in a]} is singular; F_a is undefined there")
    return ind


def next_term(alg: LieAlgebra, a: Sequence, prev: Poly, k: int, *,
              ind: int | None = None, seed: int = DEFAULT_SEED,
              pivots: Sequence[int] | None = None) -> Poly:
    """Solve for the normalized degree-k term given the degree-(k-1) term."""
    n = alg.dim
    a = as_point(a, n)
    if k < 2:
        raise InputError("next_term needs k >= 2")
    if prev.nvars != n:
        raise InputError("polynomial and algebra dimensions differ")
    if pivots is None:
        _require_regular(alg, a, ind, seed)
        pivots = _pivots(alg, a)[1]
    pivot_set = set(pivots)
    A = poisson_matrix(alg, a)

    unknowns = [m for m in homogeneous_monomials(n, k)
                if any(e and i not in pivot_set for i, e in enumerate(m))]
    col = {m: c for c, m in enumerate(unknowns)}

    # one scalar equation per (covector component j, monomial of degree k-1)
    rows: dict[tuple[int, tuple[int, ...]], dict[int, Fraction]] = {}
    for m, c in col.items():
        for i, e in enumerate(m):
            if not e:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1:]
            for j, aij in enumerate(A[i]):
                if aij:
                    row = rows.setdefault((j, dm), {})
                    row[c] = row.get(c, 0) + e * aij

    rhs: dict[tuple[int, tuple[int, ...]], Fraction] = {}
    for j, comp in enumerate(_covector(differential(prev), _linear_forms(alg))):
        for mono, v in comp.terms.items():
            rhs[(j, mono)] = -v

    keys = set(rows) | set(rhs)
    equations = ((rows.get(key, {}), rhs.get(key, Fraction(0))) for key in sorted(keys))
    solved = linalg.solve_sparse(equations, len(unknowns))
    if solved is None:
        raise RecursionBroken(f"degree-{k} system is inconsistent: the previous term does not "
                              "satisfy the recursion or the point is not regular")
    sol, free = solved
    if free:
        raise RecursionBroken(f"degree-{k} solution is not unique ({len(free)} free unknowns)")
    return Poly(n, {m: v for m, v in zip(unknowns, sol) if v})


def build_invariant(alg: LieAlgebra, a: Sequence, xi: Sequence, order: int, *,
                    pivots: Sequence[int] | None = None, ind: int | None = None,
                    seed: int = DEFAULT_SEED) -> TruncatedFormalInvariant:
    n = alg.dim
    a = as_point(a, n)
    if pivots is None:
        _require_regular(alg, a, ind, seed)
        pivots = _pivots(alg, a)[1]
    terms = [Poly.linear(as_point(xi, n))]
    for k in range(2, order + 1):
        terms.append(next_term(alg, a, terms[-1], k, pivots=pivots))
    return TruncatedFormalInvariant(a, tuple(terms))


def build_basis(alg: LieAlgebra, a: Sequence, order: int, *,
                ann_basis: Sequence[Sequence] | None = None,
                seed: int = DEFAULT_SEED) -> InvariantBasis:
    """Formal invariants F_1..F_s whose linear terms are a basis of Ann(a).

    ``ann_basis`` defaults to the reduced echelon basis of Ann(a); any other
    basis of Ann(a) may be supplied and is normalized the same way.
    """
    if order < 1:
        raise InputError("order must be >= 1")
    n = alg.dim
    a = as_point(a, n)
    _require_regular(alg, a, None, seed)
    canonical, pivots = _pivots(alg, a)
    if ann_basis is None:
        ann_basis = canonical
    else:
        ann_basis = [as_point(v, n) for v in ann_basis]
        if len(ann_basis) != len(canonical) or linalg.span_basis(ann_basis, n) != canonical:
            raise InputError("supplied vectors are not a basis of Ann(a)")
    members = []
    for xi in ann_basis:
        try:
            members.append(build_invariant(alg, a, xi, order, pivots=pivots))
        except RecursionBroken as exc:
            raise RecursionBroken(f"internal error: recursion failed at a regular point ({exc})") from exc
    return InvariantBasis(a, order, tuple(members),
                          tuple(tuple(v) for v in ann_basis), tuple(pivots))


def check_formal_invariant(alg: LieAlgebra, a: Sequence, F: TruncatedFormalInvariant) -> int | None:
    """First level k whose recursion residual is nonzero, or None if all vanish."""
    a = as_point(a, alg.dim)
    prev = None
    for k, term in enumerate(F.terms, start=1):
        if any(r for r in recursion_residual(alg, a, term, prev)):
            return k
        prev = term
    return None


def homogeneous_kernel_dim(alg: LieAlgebra, a: Sequence, k: int) -> int:
    """Dimension of {g homogeneous of degree k : ad*_{dg(x)} a = 0}, unnormalized."""
    n = alg.dim
    A = poisson_matrix(alg, as_point(a, n))
    unknowns = homogeneous_monomials(n, k)
    rows: dict = {}
    for c, m in enumerate(unknowns):
        for i, e in enumerate(m):
            if not e:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1:]
            for j, aij in enumerate(A[i]):
                if aij:
                    row = rows.setdefault((j, dm), {})
                    row[c] = row.get(c, 0) + e * aij
    _, free = linalg.solve_sparse(((r, Fraction(0)) for r in rows.values()), len(unknowns))
    return len(free)


def truncate(p: Poly, order: int) -> Poly:
    return Poly(p.nvars, {e: c for e, c in p.terms.items() if sum(e) <= order})


def truncated_product(p: Poly, q: Poly, order: int) -> Poly:
    return truncate(p * q, order)


def compose_truncated(P: Poly, series: Sequence[Poly], order: int) -> Poly:
    """P(series_1, ..., series_s) with all terms of degree > order dropped."""
    n = series[0].nvars
    total = Poly.zero(n)
    for e, c in P.terms.items():
        term = Poly.const(n, c)
        for i, k in enumerate(e):
            for _ in range(k):
                term = truncated_product(term, series[i], order)
        total = total + term
    return total


def express_in_basis(alg: LieAlgebra, F: TruncatedFormalInvariant,
                     basis: InvariantBasis) -> list[Poly]:
    """Write F as sum_m p_m(F_1, ..., F_s) up to the order of F.

    Returns p_1..p_N as polynomials in s symbols.  At each level the lowest
    surviving term must have its gradient in Ann(a); it is then a polynomial
    in the linear terms of the basis, which is subtracted with all its
    higher-order consequences.
    """
    N = F.order
    if tuple(F.base_point) != tuple(basis.base_point):
        raise InputError("formal invariant and basis have different base points")
    if basis.order < N:
        raise InputError(f"basis order {basis.order} is below invariant order {N}")
    n = alg.dim
    s = len(basis.members)
    A_a = _const_matrix(alg, basis.base_point)
    xis = [Poly.linear(v) for v in basis.ann_basis]
    series = [truncate(m.as_poly(), N) for m in basis.members]
    residual = truncate(F.as_poly(), N)
    result = []
    for m in range(1, N + 1):
        g = residual.homogeneous(m)
        if any(c for c in _covector(differential(g), A_a)):
            raise CheckFailed(f"degree-{m} term has gradient outside Ann(a); input is not a formal invariant")
        # on the span of the pivot covectors, xi_i takes the value of the i-th pivot coordinate
        terms = {}
        for e, c in g.terms.items():
            if any(e[i] for i in range(n) if i not in basis.pivots):
                continue
            terms[tuple(e[p] for p in basis.pivots)] = c
        P = Poly(s, terms) if s else Poly(1, {})
        if s and substitute(P, xis) != g:
            raise CheckFailed(f"degree-{m} term is not a polynomial in Ann(a)")
        if not s and g:
            raise CheckFailed(f"degree-{m} term is nonzero but Ann(a) is trivial")
        result.append(P)
        if s and P:
            residual = residual - compose_truncated(P, series, N)
    return result

