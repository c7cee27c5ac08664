"""Finite-dimensional Lie algebras given by rational structure constants.

Basis vectors are indexed from 0 in the Python API.  ``labels`` are the
names used when printing polynomials on g* (a coordinate function on g* is
the same thing as a basis vector of g).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import InputError

DEFAULT_SEED = 20240229
INDEX_BOUND = 10**4


def as_point(values: Iterable, n: int | None = None) -> tuple[Fraction, ...]:
    pt = tuple(Fraction(v) for v in values)
    if n is not None and len(pt) != n:
        raise InputError(f"point has {len(pt)} coordinates, algebra has dimension {n}")
    return pt


def unit(n: int, i: int) -> tuple[Fraction, ...]:
    """The dual basis covector e_i^* (or basis vector e_i)."""
    return tuple(Fraction(int(j == i)) for j in range(n))


def random_point(n: int, rng: random.Random, bound: int = INDEX_BOUND) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i, j, k] e_k``, stored for i < j."""

    dim: int
    structure: Mapping[tuple[int, int, int], Fraction]
    labels: tuple[str, ...] = ()
    name: str = ""
    _brackets: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.dim
        if not isinstance(n, int) or n < 1:
            raise InputError("dimension must be a positive integer")
        clean = {}
        for key, c in self.structure.items():
            if len(key) != 3:
                raise InputError(f"structure key {key!r} is not a triple")
            i, j, k = key
            for idx in key:
                if not (0 <= idx < n):
                    raise InputError(f"index {idx} out of range for dimension {n}")
            if not i < j:
                raise InputError(f"structure constants are stored for i < j only, got {key}")
            c = Fraction(c)
            if c:
                clean[(i, j, k)] = c
        object.__setattr__(self, "structure", clean)
        labels = tuple(self.labels) or tuple(f"x{i + 1}" for i in range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise InputError("labels must be n distinct strings")
        object.__setattr__(self, "labels", labels)
        brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j, k), c in clean.items():
            brackets.setdefault((i, j), {})[k] = c
            brackets.setdefault((j, i), {})[k] = -c
        object.__setattr__(self, "_brackets", brackets)

    def _key(self):
        return (self.dim, tuple(sorted(self.structure.items())), self.labels)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                      labels: Sequence[str] = (), name: str = "") -> "LieAlgebra":
        """Build from ``{(i, j): {k: c}}``; pairs with i > j are flipped with a sign."""
        structure: dict[tuple[int, int, int], Fraction] = {}
        for (i, j), terms in brackets.items():
            if i == j:
                if any(Fraction(c) for c in terms.values()):
                    raise InputError(f"[e{i}, e{i}] must vanish")
                continue
            sgn = 1 if i < j else -1
            lo, hi = min(i, j), max(i, j)
            for k, c in terms.items():
                key = (lo, hi, k)
                structure[key] = structure.get(key, Fraction(0)) + sgn * Fraction(c)
        return cls(dim, structure, tuple(labels), name)

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Expanded antisymmetric tensor entry c_ij^k."""
        return self._brackets.get((i, j), {}).get(k, Fraction(0))

    def bracket_terms(self, i: int, j: int) -> dict[int, Fraction]:
        return self._brackets.get((i, j), {})

    def bracket(self, xi: Sequence, eta: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for (i, j), terms in self._brackets.items():
            w = xi[i] * eta[j]
            if w:
                for k, c in terms.items():
                    out[k] += w * c
        return out

    def is_abelian(self) -> bool:
        return not self.structure


def validate(alg: LieAlgebra) -> list[tuple[tuple[int, int, int, int], Fraction]]:
    """Return the violated Jacobi identities; an empty list means ok.

    Each violation is ``((i, j, k, m), residual)`` with i < j < k: the
    e_m-component of [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j].
    Antisymmetry holds by construction of :class:`LieAlgebra`.
    """
    n = alg.dim
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                res = [Fraction(0)] * n
                for (p, q, r) in ((i, j, k), (j, k, i), (k, i, j)):
                    for l, c1 in alg.bracket_terms(p, q).items():
                        for m, c2 in alg.bracket_terms(l, r).items():
                            res[m] += c1 * c2
                for m, v in enumerate(res):
                    if v:
                        bad.append(((i, j, k, m), v))
    return bad


def poisson_matrix(alg: LieAlgebra, y: Sequence) -> list[list[Fraction]]:
    """The skew matrix A_y with entries sum_k c_ij^k y_k."""
    y = as_point(y, alg.dim)
    n = alg.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j, k), c in alg.structure.items():
        if y[k]:
            m[i][j] += c * y[k]
            m[j][i] -= c * y[k]
    return m


def coadjoint(alg: LieAlgebra, xi: Sequence, y: Sequence) -> list[Fraction]:
    """ad*_xi y as the covector eta -> <y, [xi, eta]>."""
    xi = as_point(xi, alg.dim)
    return linalg.vec_mat(xi, poisson_matrix(alg, y))


def annihilator(alg: LieAlgebra, a: Sequence) -> list[list[Fraction]]:
    """Reduced echelon basis of Ann(a) = ker A_a."""
    return linalg.nullspace(poisson_matrix(alg, a), alg.dim)


@dataclass(frozen=True)
class IndexResult:
    index: int
    witness: tuple[Fraction, ...]
    samples: int
    seed: int
    probabilistic: bool = True


_index_cache: dict = {}


def index(alg: LieAlgebra, seed: int = DEFAULT_SEED, samples: int | None = None) -> IndexResult:
    """ind g = n - max rank A_y over random integer points y.

    ``samples`` defaults to max(20, 2n); coordinates are uniform in
    [-10^4, 10^4].  A rank deficit at every sample is astronomically unlikely,
    but the answer is still an upper bound certified only by sampling.
    """
    n = alg.dim
    m = samples if samples is not None else max(20, 2 * n)
    key = (alg, seed, m)
    if key in _index_cache:
        return _index_cache[key]
    rng = random.Random(seed)
    best, witness = -1, None
    for _ in range(m):
        y = random_point(n, rng)
        r = linalg.rank(poisson_matrix(alg, y))
        if r > best:
            best, witness = r, y
    result = IndexResult(n - best, witness, m, seed)
    _index_cache[key] = result
    return result


def ann_dim(alg: LieAlgebra, y: Sequence) -> int:
    return alg.dim - linalg.rank(poisson_matrix(alg, y))


def is_regular(alg: LieAlgebra, a: Sequence, ind: int | None = None, seed: int = DEFAULT_SEED) -> bool:
    if ind is None:
        ind = index(alg, seed).index
    return ann_dim(alg, a) == ind


def random_regular_point(alg: LieAlgebra, rng: random.Random, ind: int | None = None,
                         bound: int = INDEX_BOUND, tries: int = 100) -> tuple[Fraction, ...]:
    if ind is None:
        ind = index(alg).index
    for _ in range(tries):
        y = random_point(alg.dim, rng, bound)
        if ann_dim(alg, y) == ind:
            return y
    raise RuntimeError("no regular point found by sampling")
