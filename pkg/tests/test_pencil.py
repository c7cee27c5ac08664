import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from argshift import lie, linalg, pencil
from argshift.errors import InputError, LineInSingError, SingularPointError
from argshift.poly import UniPoly
from conftest import e

LAM = UniPoly([0, 1])
entries = st.fractions(min_value=-10, max_value=10, max_denominator=5)


@st.composite
def skew(draw, sizes=(2, 4, 6)):
    n = draw(st.sampled_from(sizes))
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(entries)
            M[i][j], M[j][i] = v, -v
    return M


def test_pfaffian_small():
    assert pencil.pfaffian([[0, 5], [-5, 0]]) == 5
    a = {(0, 1): 2, (0, 2): 3, (0, 3): 5, (1, 2): 7, (1, 3): 11, (2, 3): 13}
    M = [[0] * 4 for _ in range(4)]
    for (i, j), v in a.items():
        M[i][j], M[j][i] = v, -v
    assert pencil.pfaffian(M) == 2 * 13 - 3 * 11 + 5 * 7
    assert pencil.pfaffian([]) == 1


def test_pfaffian_rejects_bad_input():
    with pytest.raises(InputError):
        pencil.pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])
    with pytest.raises(InputError):
        pencil.pfaffian([[0, 1], [1, 0]])


@settings(max_examples=50, deadline=None)
@given(skew())
def test_pfaffian_squared_is_det(M):
    assert pencil.pfaffian(M) ** 2 == linalg.det(M)


def test_minor_pfaffians(algs):
    assert all(p.is_zero() for p in pencil.minor_pfaffians_along_line(algs["abelian3"], (1, 2, 3), (4, 5, 6), 2))
    x = (Fraction(2), Fraction(-3), Fraction(5))
    got = pencil.minor_pfaffians_along_line(algs["so3"], x, (0, 0, 1), 2)
    assert got == [UniPoly([x[2]]) + LAM, UniPoly([-x[1]]), UniPoly([x[0]])]
    with pytest.raises(InputError):
        pencil.minor_pfaffians_along_line(algs["so3"], x, (0, 0, 1), 3)


def test_ooms8_minor_gcd_is_one(algs):
    alg = algs["ooms8"]
    rng = random.Random(3)
    x = lie.random_regular_point(alg, rng)
    minors = pencil.minor_pfaffians_along_line(alg, x, e(8, 7), 6)
    assert len(minors) == 28
    rep = pencil.line_gcd(alg, x, e(8, 7))
    assert rep.degree == 0 and rep.p_xa == UniPoly([1]) and rep.minor_count == 28


def test_line_gcd_examples(algs):
    assert pencil.line_gcd(algs["so3"], (1, 0, 0), (0, 0, 1)).degree == 0
    aff = algs["aff1"]
    rep = pencil.line_gcd(aff, (3, 4), (0, 2))
    assert rep.degree == 1 and rep.p_xa == UniPoly([2, 1])
    with pytest.raises(InputError):
        pencil.line_gcd(aff, (3, 4), (0, 0))
    with pytest.raises(LineInSingError):
        pencil.line_gcd(aff, (1, 0), (1, 0))


def test_kernel_sum_examples(algs):
    assert len(pencil.kernel_sum(algs["abelian3"], (1, 2, 3), (0, 1, 0))) == 3
    assert len(pencil.kernel_sum(algs["so3"], (1, 0, 0), (0, 0, 1))) == 2
    ooms = algs["ooms8"]
    x = lie.random_regular_point(ooms, random.Random(5))
    assert len(pencil.kernel_sum(ooms, x, e(8, 7))) == 5
    with pytest.raises(InputError):
        pencil.kernel_sum(ooms, x, e(8, 7), lambdas=[1, 1])
    with pytest.raises(LineInSingError):
        pencil.kernel_sum(algs["aff1"], (1, 0), (1, 0))


def test_dim_dfa_examples(algs):
    assert pencil.dim_dFa(algs["abelian3"], (1, 2, 3), (3, 1, 2)) == 3
    assert pencil.dim_dFa(algs["so3"], (1, 0, 0), (0, 0, 1)) == 2
    ooms = algs["ooms8"]
    x = lie.random_regular_point(ooms, random.Random(11))
    assert pencil.dim_dFa(ooms, x, e(8, 7)) == 5
    assert pencil.dim_dFa(algs["aff1"], (5, 7), (0, 1)) == 0
    with pytest.raises(SingularPointError):
        pencil.dim_dFa(ooms, x, (1, 0, 0, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("name,deg", [("abelian3", 0), ("aff1", 1), ("heisenberg3", 1), ("so3", 0),
                                      ("ooms8", 0), ("nilp7_155", 0)])
def test_semiinvariant_degree(algs, name, deg):
    res = pencil.semiinvariant_degree(algs[name])
    assert res.degree == deg and res.probabilistic and len(res.degrees) == res.lines
    assert pencil.completeness_test(algs[name]) == (deg == 0)


def test_sing1(algs):
    res = pencil.sing1_test(algs["ooms8"], e(8, 7))
    assert not res.in_sing1 and res.certificate is not None and not res.probabilistic
    assert not pencil.sing1_test(algs["abelian3"], (1, 2, 3)).in_sing1
    assert not pencil.sing1_test(algs["aff1"], (1, 0)).in_sing1


PENCIL_ALGS = ["so3", "heisenberg3", "aff1", "ooms8", "nilp7_155"]


@pytest.mark.parametrize("name", PENCIL_ALGS)
def test_pencil_line_properties(algs, name):
    alg = algs[name]
    n = alg.dim
    ind = lie.index(alg).index
    rng = random.Random(21)
    for _ in range(3):
        x = lie.random_regular_point(alg, rng, ind, 50)
        a = lie.random_regular_point(alg, rng, ind, 50)
        rep = pencil.line_gcd(alg, x, a)
        # dimension formula and the swapped pencil
        assert len(pencil.kernel_sum(alg, x, a)) == (n + ind) // 2 - rep.degree
        assert pencil.line_gcd(alg, a, x).degree == rep.degree
        # non-roots are regular points of the line
        for k in range(-3, 4):
            lam = Fraction(k, 2)
            y = [xi + lam * ai for xi, ai in zip(x, a)]
            if rep.p_xa(lam) != 0:
                assert lie.ann_dim(alg, y) == ind
        roots = {Fraction(k, d) for k in range(-30, 31) for d in (1, 2, 3) if rep.p_xa(Fraction(k, d)) == 0}
        assert len(roots) <= rep.degree


@pytest.mark.parametrize("name", PENCIL_ALGS)
def test_kernel_sum_monotone(algs, name):
    alg = algs[name]
    n = alg.dim
    rng = random.Random(8)
    x = lie.random_regular_point(alg, rng)
    a = lie.random_regular_point(alg, rng)
    full = len(pencil.kernel_sum(alg, x, a))
    dims = []
    for m in range(1, n + 1):
        dims.append(len(pencil.kernel_sum(alg, x, a, lambdas=range(1, m + 1))))
    assert dims == sorted(dims) and dims[-1] == full
