"""The two commutative subalgebras: polynomial shifts F_a and Mishchenko-Fomenko Y_a."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import CheckFailed, InputError, SingularPointError
from .formal import build_basis
from .lie import (DEFAULT_SEED, LieAlgebra, annihilator, ann_dim, as_point, index,
                  random_point, random_regular_point)
from .pencil import kernel_sum
from .poly import Poly, format_poly, frozen_bracket, gradient_at, poisson_bracket, shift_expansion

TRDEG_SAMPLES = 5
TRDEG_BOUND = 10**3
PROP1_SAMPLES = 8

SHIFT_F = "F"
SHIFT_Y = "Y"


@dataclass(frozen=True)
class GeneratorSet:
    kind: str
    base_point: tuple[Fraction, ...]
    generators: tuple[Poly, ...]
    provenance: tuple[tuple[int, int], ...]  # (source invariant index, degree level or shift power)

    def __len__(self):
        return len(self.generators)

    def linear(self) -> list[Poly]:
        return [g for g in self.generators if g.degree == 1]


def build_Fa(alg: LieAlgebra, a: Sequence, order: int, *, seed: int = DEFAULT_SEED) -> GeneratorSet:
    """All nonzero homogeneous terms f_i^(k), k <= order, of the canonical formal basis."""
    basis = build_basis(alg, a, order, seed=seed)
    gens, prov = [], []
    for i, member in enumerate(basis.members):
        for k, term in enumerate(member.terms, start=1):
            if term:
                gens.append(term)
                prov.append((i, k))
    return GeneratorSet(SHIFT_F, basis.base_point, tuple(gens), tuple(prov))


def invariance_check(alg: LieAlgebra, p: Poly) -> int | None:
    """First coordinate index i with {p, x_i} != 0, or None when p is central."""
    for i in range(alg.dim):
        if poisson_bracket(alg, p, Poly.var(alg.dim, i)):
            return i
    return None


def build_Ya(alg: LieAlgebra, a: Sequence, invariants: Sequence[Poly]) -> GeneratorSet:
    """Nonconstant a-shifts of the supplied invariants, made monic and deduplicated."""
    n = alg.dim
    a = as_point(a, n)
    seen: dict[Poly, tuple[int, int]] = {}
    for idx, f in enumerate(invariants):
        bad = invariance_check(alg, f)
        if bad is not None:
            raise InputError(f"invariant #{idx + 1} ({format_poly(f, alg.labels)}) does not "
                             f"commute with {alg.labels[bad]}")
        for m, shift in enumerate(shift_expansion(f, a)):
            if shift.degree < 1:
                continue
            key = shift.monic()
            seen.setdefault(key, (idx, m))
    order = sorted(seen, key=lambda p: (p.degree, format_poly(p)))
    return GeneratorSet(SHIFT_Y, a, tuple(order), tuple(seen[p] for p in order))


@dataclass(frozen=True)
class CommuteReport:
    poisson_failure: tuple[int, int, Poly] | None
    frozen_failure: tuple[int, int, Poly] | None
    pairs: int

    @property
    def ok(self) -> bool:
        return self.poisson_failure is None and self.frozen_failure is None


def commutativity_check(alg: LieAlgebra, a: Sequence, S: GeneratorSet) -> CommuteReport:
    gens = S.generators
    failures: dict[str, tuple[int, int, Poly] | None] = {"poisson": None, "frozen": None}
    pairs = 0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            pairs += 1
            if failures["poisson"] is None:
                v = poisson_bracket(alg, gens[i], gens[j])
                if v:
                    failures["poisson"] = (i, j, v)
            if failures["frozen"] is None:
                v = frozen_bracket(alg, a, gens[i], gens[j])
                if v:
                    failures["frozen"] = (i, j, v)
    return CommuteReport(failures["poisson"], failures["frozen"], pairs)


@dataclass(frozen=True)
class TrdegResult:
    trdeg: int
    seed: int
    samples: int
    probabilistic: bool = True


def jacobian_rank(gens: Sequence[Poly], x: Sequence) -> int:
    rows = [gradient_at(g, x) for g in gens]
    return linalg.rank(rows) if rows else 0


def trdeg(alg: LieAlgebra, S: GeneratorSet | Sequence[Poly], *, seed: int = DEFAULT_SEED,
          samples: int = TRDEG_SAMPLES) -> TrdegResult:
    """Transcendence degree as the generic rank of the Jacobian (max over random points)."""
    gens = S.generators if isinstance(S, GeneratorSet) else tuple(S)
    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        best = max(best, jacobian_rank(gens, random_point(alg.dim, rng, TRDEG_BOUND)))
    return TrdegResult(best, seed, samples)


def span_at(alg: LieAlgebra, S: GeneratorSet | Sequence[Poly], x: Sequence) -> list[list[Fraction]]:
    """Echelon basis of span{dg(x)} over the generators g."""
    gens = S.generators if isinstance(S, GeneratorSet) else tuple(S)
    x = as_point(x, alg.dim)
    return linalg.span_basis([gradient_at(g, x) for g in gens], alg.dim)


def crit_test(alg: LieAlgebra, invariants: Sequence[Poly], y: Sequence, *,
              seed: int = DEFAULT_SEED) -> bool:
    """y is in Crit iff the invariants' differentials at y span fewer than ind g dimensions."""
    ind = index(alg, seed).index
    y = as_point(y, alg.dim)
    rows = [gradient_at(f, y) for f in invariants]
    return (linalg.rank(rows) if rows else 0) < ind


@dataclass(frozen=True)
class SpanComparison:
    dim_dYa: int
    dim_dFa: int
    included: bool
    equal: bool
    linear_Ya: tuple[Poly, ...]
    linear_Fa_dim: int
    swap_checked: bool
    swap_holds: bool | None

    @property
    def strict(self) -> bool:
        return not self.equal


def _line_avoids_crit(alg, invariants, base, direction, ind) -> bool:
    """A line is not contained in Crit iff one of its points lies outside Crit."""
    for k in range(alg.dim + 1):
        y = [b + k * d for b, d in zip(base, direction)]
        rows = [gradient_at(f, y) for f in invariants]
        if rows and linalg.rank(rows) >= ind:
            return True
    return False


def span_compare(alg: LieAlgebra, a: Sequence, invariants: Sequence[Poly], x: Sequence, *,
                 seed: int = DEFAULT_SEED) -> SpanComparison:
    """Compare dY_a(x) with dF_a(x) = sum of kernels along x + lambda a.

    Raises :class:`CheckFailed` if the inclusion dY_a(x) in dF_a(x) fails.
    When x is regular and the line a + lambda x leaves Crit, also checks
    dY_a(x) = dF_x(a).
    """
    n = alg.dim
    a, x = as_point(a, n), as_point(x, n)
    ind = index(alg, seed).index
    if ann_dim(alg, a) != ind:
        raise SingularPointError("shift point a is singular")
    Y = build_Ya(alg, a, invariants)
    dY = span_at(alg, Y, x)
    dF = kernel_sum(alg, x, a, ind=ind)
    included = linalg.contains(dF, dY)
    if not included:
        raise CheckFailed("dY_a(x) is not contained in dF_a(x)")
    equal = len(dY) == len(dF)

    swap_checked, swap_holds = False, None
    if any(x) and ann_dim(alg, x) == ind and _line_avoids_crit(alg, invariants, a, x, ind):
        swap_checked = True
        dFx = kernel_sum(alg, a, x, ind=ind)
        swap_holds = dFx == dY
    return SpanComparison(len(dY), len(dF), included, equal, tuple(Y.linear()),
                          len(annihilator(alg, a)), swap_checked, swap_holds)


@dataclass(frozen=True)
class Prop1Result:
    condition1: bool
    condition2: bool
    samples: int
    seed: int

    @property
    def agree(self) -> bool:
        return self.condition1 == self.condition2


def prop1_test(alg: LieAlgebra, a: Sequence, invariants: Sequence[Poly], *,
               seed: int = DEFAULT_SEED, samples: int = PROP1_SAMPLES) -> Prop1Result:
    """Check the two conditions of the F_a = Y_a criterion independently.

    Condition 1: span{df(a)} = Ann(a).  Condition 2, at span level: a is
    regular and dY_a(x) = dF_a(x) at ``samples`` random regular x.  The
    second is only a proxy for equality of the algebras.
    """
    n = alg.dim
    a = as_point(a, n)
    ann = annihilator(alg, a)
    diffs = linalg.span_basis([gradient_at(f, a) for f in invariants], n)
    cond1 = diffs == ann

    ind = index(alg, seed).index
    cond2 = ann_dim(alg, a) == ind
    if cond2:
        rng = random.Random(seed)
        Y = build_Ya(alg, a, invariants)
        for _ in range(samples):
            x = random_regular_point(alg, rng, ind)
            if span_at(alg, Y, x) != kernel_sum(alg, x, a, ind=ind):
                cond2 = False
                break
    return Prop1Result(cond1, cond2, samples, seed)
