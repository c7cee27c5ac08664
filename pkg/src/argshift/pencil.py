"""The skew pencil A_{x + lambda a}: Pfaffians, kernels and dimension counts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import CheckFailed, InputError, LineInSingError, SingularPointError
from .lie import (DEFAULT_SEED, INDEX_BOUND, LieAlgebra, ann_dim, as_point, index,
                  poisson_matrix, random_regular_point)
from .poly import UniPoly, unipoly_gcd

SEMIINV_LINES = 8


def _pfaffian(entry, idx: tuple[int, ...], memo: dict, one):
    if not idx:
        return one
    if idx in memo:
        return memo[idx]
    first, rest = idx[0], idx[1:]
    total = None
    for pos, j in enumerate(rest):
        a = entry(first, j)
        if not a:
            continue
        sub = _pfaffian(entry, rest[:pos] + rest[pos + 1:], memo, one)
        term = a * sub
        if pos % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        total = one * 0
    memo[idx] = total
    return total


def pfaffian(M: Sequence[Sequence]) -> Fraction:
    """Pfaffian by expansion along the first row (memoized over index subsets)."""
    n = len(M)
    if n % 2:
        raise InputError("Pfaffian of an odd-sized matrix")
    M = [[Fraction(v) for v in row] for row in M]
    for i in range(n):
        if len(M[i]) != n:
            raise InputError("matrix is not square")
        for j in range(i, n):
            if M[i][j] != -M[j][i]:
                raise InputError("matrix is not skew-symmetric")
    return _pfaffian(lambda i, j: M[i][j], tuple(range(n)), {}, Fraction(1))


def _line_matrix(alg: LieAlgebra, x, a) -> list[list[UniPoly]]:
    Ax = poisson_matrix(alg, x)
    Aa = poisson_matrix(alg, a)
    n = alg.dim
    return [[UniPoly([Ax[i][j], Aa[i][j]]) for j in range(n)] for i in range(n)]


def minor_pfaffians_along_line(alg: LieAlgebra, x: Sequence, a: Sequence, r: int) -> list[UniPoly]:
    """Pfaffians of all r x r principal minors of A_{x + lambda a}, subsets in lex order."""
    n = alg.dim
    if r % 2 or not 0 <= r <= n:
        raise InputError(f"minor size {r} must be even and at most {n}")
    M = _line_matrix(alg, as_point(x, n), as_point(a, n))
    memo: dict = {}
    one = UniPoly([1])
    return [_pfaffian(lambda i, j: M[i][j], S, memo, one) for S in combinations(range(n), r)]


@dataclass(frozen=True)
class PencilLine:
    x: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    r: int
    sampled_lambdas: tuple[Fraction, ...]


def pencil_line(alg: LieAlgebra, x: Sequence, a: Sequence) -> PencilLine:
    """Pencil rank r = max rank A_{x + lambda a} over lambda = 0..n (plus A_a itself)."""
    n = alg.dim
    x, a = as_point(x, n), as_point(a, n)
    lams = tuple(Fraction(k) for k in range(n + 1))
    best = linalg.rank(poisson_matrix(alg, a))
    for lam in lams:
        y = [xi + lam * ai for xi, ai in zip(x, a)]
        best = max(best, linalg.rank(poisson_matrix(alg, y)))
    return PencilLine(x, a, best, lams)


@dataclass(frozen=True)
class LineGcdReport:
    p_xa: UniPoly
    degree: int
    minor_count: int
    minor_size: int
    sampled_lambdas: tuple[Fraction, ...]
    pencil_rank: int


def line_gcd(alg: LieAlgebra, x: Sequence, a: Sequence, *, ind: int | None = None,
             seed: int = DEFAULT_SEED) -> LineGcdReport:
    """Monic gcd of the r x r minor Pfaffians along x + lambda a, r = n - ind g."""
    n = alg.dim
    x, a = as_point(x, n), as_point(a, n)
    if not any(a):
        raise InputError("direction a = 0 degenerates the pencil")
    if ind is None:
        ind = index(alg, seed).index
    r = n - ind
    minors = minor_pfaffians_along_line(alg, x, a, r)
    nonzero = [p for p in minors if not p.is_zero()]
    if not nonzero:
        raise LineInSingError("all minor Pfaffians vanish identically: the line lies inside Sing")
    g = nonzero[0].monic()
    for p in nonzero[1:]:
        if g.degree == 0:
            break
        g = unipoly_gcd(g, p)
    line = pencil_line(alg, x, a)
    return LineGcdReport(g, g.degree, len(minors), r, line.sampled_lambdas, line.r)


def default_lambdas(n: int):
    """Candidate parameters 1, 2, ..., 10n; the caller stops after n admissible ones."""
    return (Fraction(j) for j in range(1, 10 * n + 1))


def kernel_sum(alg: LieAlgebra, x: Sequence, a: Sequence, lambdas: Sequence | None = None, *,
               ind: int | None = None, seed: int = DEFAULT_SEED) -> list[list[Fraction]]:
    """Echelon basis of the sum of ker A_{x + lambda a} over admissible lambdas.

    A lambda is admissible when x + lambda a is regular.  With ``lambdas``
    omitted, 1, 2, ... are tried until n admissible values are found (or 10n
    candidates are exhausted).
    """
    n = alg.dim
    x, a = as_point(x, n), as_point(a, n)
    if not any(a):
        raise InputError("direction a = 0 degenerates the pencil")
    if ind is None:
        ind = index(alg, seed).index
    explicit = lambdas is not None
    if explicit:
        lambdas = [Fraction(v) for v in lambdas]
        if len(set(lambdas)) != len(lambdas):
            raise InputError("lambdas must be distinct")
    else:
        lambdas = default_lambdas(n)
    vectors: list = []
    used = 0
    for lam in lambdas:
        y = [xi + lam * ai for xi, ai in zip(x, a)]
        ker = linalg.nullspace(poisson_matrix(alg, y), n)
        if len(ker) != ind:
            continue
        vectors = linalg.span_basis(vectors + ker, n)
        used += 1
        if not explicit and used == n:
            break
    if not used:
        raise LineInSingError("no admissible lambda: the sampled line lies inside Sing")
    return vectors


def dim_dFa(alg: LieAlgebra, x: Sequence, a: Sequence, *, seed: int = DEFAULT_SEED) -> int:
    """dim dF_a(x) = (n + ind)/2 - deg p_{x,a}, cross-checked against the kernel sum."""
    n = alg.dim
    ind = index(alg, seed).index
    if ann_dim(alg, a) != ind:
        raise SingularPointError("shift point a is singular")
    formula = (n + ind) // 2 - line_gcd(alg, x, a, ind=ind).degree
    direct = len(kernel_sum(alg, x, a, ind=ind))
    if formula != direct:
        raise CheckFailed(f"dimension formula gives {formula} but the kernel sum has dimension {direct}")
    return formula


@dataclass(frozen=True)
class SemiInvariantDegree:
    degree: int
    seed: int
    lines: int
    degrees: tuple[int, ...] = field(default=())
    probabilistic: bool = True


def semiinvariant_degree(alg: LieAlgebra, *, seed: int = DEFAULT_SEED,
                         lines: int = SEMIINV_LINES) -> SemiInvariantDegree:
    """deg p_g as the minimum line-gcd degree over random lines through regular points."""
    ind = index(alg, seed).index
    rng = random.Random(seed)
    degrees = []
    for _ in range(lines):
        x = random_regular_point(alg, rng, ind, INDEX_BOUND)
        a = random_regular_point(alg, rng, ind, INDEX_BOUND)
        degrees.append(line_gcd(alg, x, a, ind=ind).degree)
    return SemiInvariantDegree(min(degrees), seed, lines, tuple(degrees))


def completeness_test(alg: LieAlgebra, *, seed: int = DEFAULT_SEED) -> bool:
    """F_a(g) is complete iff the fundamental semi-invariant is constant."""
    return semiinvariant_degree(alg, seed=seed).degree == 0


@dataclass(frozen=True)
class Sing1Result:
    in_sing1: bool
    certificate: tuple[Fraction, ...] | None
    target_degree: int
    samples: int
    seed: int

    @property
    def probabilistic(self) -> bool:
        # a found certificate proves a is outside Sing_1
        return self.certificate is None


def sing1_test(alg: LieAlgebra, a: Sequence, *, seed: int = DEFAULT_SEED,
               samples: int = SEMIINV_LINES, target: int | None = None) -> Sing1Result:
    """Look for x with deg p_{a,x} = deg p_g; such an x certifies a is not in Sing_1."""
    n = alg.dim
    a = as_point(a, n)
    ind = index(alg, seed).index
    if target is None:
        target = semiinvariant_degree(alg, seed=seed).degree
    rng = random.Random(seed + 1)
    for _ in range(samples):
        x = random_regular_point(alg, rng, ind, INDEX_BOUND)
        try:
            deg = line_gcd(alg, a, x, ind=ind).degree
        except LineInSingError:
            continue
        if deg == target:
            return Sing1Result(False, x, target, samples, seed)
    return Sing1Result(True, None, target, samples, seed)
