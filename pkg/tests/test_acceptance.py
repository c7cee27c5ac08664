"""Acceptance criteria 1-8.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import io
import random
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest

from argshift import cli, formal, lie, linalg, pencil, shifts
from argshift.corpus import load_algebra, load_corpus
from argshift.pencil import pfaffian
from argshift.poly import Poly, gradient_at, parse_poly

RESULTS: dict[int, tuple[bool, str]] = {}
SEED = lie.DEFAULT_SEED

TARGET_TERMS = {
    "f1.2": "-13/7*x3*x7 + x4*x6 + 1/2*x5^2",
    "f1.3": "39/49*x3*x7^2 - 3/7*x5^2*x7 - 6/7*x4*x6*x7",
    "f2.2": "-8/7*x4*x7 + x5*x6",
    "f2.3": "4/49*x4*x7^2 - 1/7*x5*x6*x7 + 1/3*x6^3",
}


def unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def _record(num, ok, detail):
    RESULTS[num] = (ok, detail)
    return ok, detail


# -- criterion 1 ---------------------------------------------------------------

def criterion_1():
    alg = load_algebra("corpus/ooms8.alg")
    out = io.StringIO()
    t0 = time.perf_counter()
    code = cli.run(["shift-basis", "--algebra", "corpus/ooms8.alg", "--point", "corpus/ooms8_a.pt",
                    "--order", "3"], out, io.StringIO())
    elapsed = time.perf_counter() - t0
    got = dict(line.split("=", 1) for line in out.getvalue().splitlines())
    mismatches = []
    for key, want in TARGET_TERMS.items():
        if key not in got or parse_poly(got[key], alg.labels) != parse_poly(want, alg.labels):
            mismatches.append(f"{key}: got {got.get(key)!r}, want {want!r}")
    ok = code == 0 and not mismatches and elapsed < 5
    detail = f"{elapsed:.2f}s; " + ("; ".join(mismatches) if mismatches else "all four terms match")
    return _record(1, ok, detail)


# -- criterion 2 ---------------------------------------------------------------

def criterion_2():
    alg = load_algebra("corpus/ooms8.alg")
    a = unit(8, 7)
    rng = random.Random(SEED)
    checks = {}
    checks["index=2"] = lie.index(alg, SEED).index == 2
    checks["Ann=span{e3,e4}"] = lie.annihilator(alg, a) == [list(unit(8, 3)), list(unit(8, 4))]
    on_locus = []
    for _ in range(10):
        y = list(lie.random_point(8, rng))
        y[5] = y[6] = y[7] = Fraction(0)
        on_locus.append(y)
    checks["locus singular"] = all(lie.ann_dim(alg, y) > 2 for y in on_locus)
    checks["off locus regular"] = all(lie.ann_dim(alg, lie.random_point(8, rng)) == 2 for _ in range(10))
    S = shifts.build_Fa(alg, a, 3, seed=SEED)
    checks["six generators"] = len(S) == 6
    checks["trdeg=5"] = shifts.trdeg(alg, S, seed=SEED).trdeg == 5
    checks["deg p_g=0"] = pencil.semiinvariant_degree(alg, seed=SEED).degree == 0
    checks["complete"] = pencil.completeness_test(alg, seed=SEED) is True
    bad = [k for k, v in checks.items() if not v]
    return _record(2, not bad, "failed: " + ", ".join(bad) if bad else "all structural facts hold")


# -- criterion 3 ---------------------------------------------------------------

def criterion_3():
    t0 = time.perf_counter()
    entry = next(e for e in load_corpus() if e.name == "nilp7_155")
    alg = entry.algebra
    inv = dict(entry.invariants)
    a = unit(7, 4)
    rng = random.Random(SEED)
    checks = {}
    checks["index=3"] = lie.index(alg, SEED).index == 3
    checks["invariants central"] = all(shifts.invariance_check(alg, p) is None for p in inv.values())
    rel = 4 * inv["f"] ** 5 - inv["g"] ** 2 - inv["h"] * inv["x7"] ** 3
    checks["relation"] = rel.is_zero()
    invs = list(inv.values())
    crit_on = []
    for _ in range(10):
        y = list(lie.random_point(7, rng))
        y[5] = y[6] = Fraction(0)
        crit_on.append(shifts.crit_test(alg, invs, y, seed=SEED))
    checks["crit on x6=x7=0"] = all(crit_on)
    checks["crit off generic"] = not any(shifts.crit_test(alg, invs, lie.random_point(7, rng), seed=SEED)
                                         for _ in range(10))
    Y = shifts.build_Ya(alg, a, invs)
    checks["linear Y_a = {x7}"] = Y.linear() == [Poly.var(7, 6)]
    F = shifts.build_Fa(alg, a, 3, seed=SEED)
    lin = [[g.coeff(tuple(int(j == i) for j in range(7))) for i in range(7)] for g in F.linear()]
    checks["linear F_a = {x5,x6,x7}"] = linalg.span_basis(lin, 7) == [list(unit(7, i)) for i in (4, 5, 6)]
    checks["prop1 condition 1 false"] = shifts.prop1_test(alg, a, invs, seed=SEED).condition1 is False
    elapsed = time.perf_counter() - t0
    checks["runtime < 30 s"] = elapsed < 30
    bad = [k for k, v in checks.items() if not v]
    return _record(3, not bad, f"{elapsed:.2f}s; " + ("failed: " + ", ".join(bad) if bad else "all facts hold"))


# -- criterion 4 ---------------------------------------------------------------

def criterion_4():
    tested, failures = [], []
    for entry in load_corpus():
        alg, a = entry.algebra, entry.point
        if a is None or not lie.is_regular(alg, a, seed=SEED):
            continue
        S = shifts.build_Fa(alg, a, 3, seed=SEED)
        rep = shifts.commutativity_check(alg, a, S)
        tested.append(f"{entry.name}({rep.pairs} pairs)")
        if not rep.ok:
            failures.append(entry.name)
    ok = bool(tested) and not failures
    return _record(4, ok, ("failed: " + ", ".join(failures)) if failures else "commute: " + ", ".join(tested))


# -- criterion 5 ---------------------------------------------------------------

def criterion_5(instances=24):
    algs = [e.algebra for e in load_corpus()]
    rng = random.Random(SEED)
    bad = []
    for t in range(instances):
        alg = algs[t % len(algs)]
        n = alg.dim
        ind = lie.index(alg, SEED).index
        x = lie.random_regular_point(alg, rng, ind, 1000)
        a = lie.random_regular_point(alg, rng, ind, 20)
        direct = len(pencil.kernel_sum(alg, x, a, ind=ind))
        formula = (n + ind) // 2 - pencil.line_gcd(alg, x, a, ind=ind).degree
        S = shifts.build_Fa(alg, a, 3, seed=SEED)
        jac = shifts.jacobian_rank(S.generators, x)
        if not direct == formula == jac:
            bad.append(f"{alg.name}: {direct}/{formula}/{jac}")
    ok = not bad
    return _record(5, ok, f"{instances} instances; " + ("; ".join(bad) if bad else "all three agree"))


# -- criterion 6 ---------------------------------------------------------------

def _lagrange_derivative_at_zero(values):
    """d/dt at t=0 of the interpolant through (t, values[t]), t = 0..m."""
    m = len(values) - 1
    total = Fraction(0)
    for j in range(m + 1):
        # derivative at 0 of the Lagrange basis polynomial L_j
        others = [k for k in range(m + 1) if k != j]
        denom = 1
        for k in others:
            denom *= (j - k)
        deriv = Fraction(0)
        for skip in others:
            prod = Fraction(1)
            for k in others:
                if k != skip:
                    prod *= -k
            deriv += prod
        total += values[j] * deriv / denom
    return total


def _gradient(poly_terms, n, x):
    """Gradient of sum c*x^e at x, by interpolation along coordinate lines."""
    deg = max((sum(e) for e in poly_terms), default=0)

    def value(pt):
        s = Fraction(0)
        for e, c in poly_terms.items():
            term = Fraction(c)
            for xi, k in zip(pt, e):
                term *= xi ** k
            s += term
        return s

    grad = []
    for i in range(n):
        vals = []
        for t in range(deg + 1):
            pt = list(x)
            pt[i] += t
            vals.append(value(pt))
        grad.append(_lagrange_derivative_at_zero(vals) if deg else Fraction(0))
    return grad


def _coadjoint_raw(structure, n, xi, y):
    """Components (ad*_xi y)(e_j) = <y, [xi, e_j]> straight from the structure constants."""
    out = [Fraction(0)] * n
    for (i, j, k), c in structure.items():
        # [e_i, e_j] = c e_k and [e_j, e_i] = -c e_k
        out[j] += xi[i] * c * y[k]
        out[i] -= xi[j] * c * y[k]
    return out


def criterion_6(points=10):
    rng = random.Random(SEED)
    bad = []
    levels = 0
    for entry in load_corpus():
        alg, a = entry.algebra, entry.point
        if a is None or not lie.is_regular(alg, a, seed=SEED):
            continue
        n = alg.dim
        basis = formal.build_basis(alg, a, 3, seed=SEED)
        for idx, member in enumerate(basis.members):
            lvl = formal.check_formal_invariant(alg, a, member)
            if lvl is not None:
                bad.append(f"{entry.name} member {idx + 1}: check fails at level {lvl}")
            prev = {}
            for k, term in enumerate(member.terms, start=1):
                cur = dict(term.terms)
                for _ in range(points):
                    x = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)]
                    r1 = _coadjoint_raw(alg.structure, n, _gradient(cur, n, x), a)
                    r2 = _coadjoint_raw(alg.structure, n, _gradient(prev, n, x), x) if prev else [0] * n
                    if any(u + v for u, v in zip(r1, r2)):
                        bad.append(f"{entry.name} member {idx + 1} level {k}")
                        break
                levels += 1
                prev = cur
    ok = not bad and levels > 0
    return _record(6, ok, f"{levels} levels x {points} points; " + ("; ".join(bad) if bad else "all residuals zero"))


# -- criterion 7 ---------------------------------------------------------------

def criterion_7(count=100):
    rng = random.Random(SEED)
    sizes = (2, 4, 6, 8)
    bad = 0
    for t in range(count):
        n = sizes[t % len(sizes)]
        M = [[Fraction(0)] * n for _ in range(n)]
        for i, j in combinations(range(n), 2):
            v = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
            M[i][j], M[j][i] = v, -v
        if pfaffian(M) ** 2 != linalg.det(M):
            bad += 1
    return _record(7, bad == 0, f"{count} matrices, {bad} mismatches")


# -- criterion 8 ---------------------------------------------------------------

def criterion_8():
    alg = load_algebra("corpus/aff1.alg")
    rng = random.Random(SEED)
    checks = {}
    checks["deg p_g=1"] = pencil.semiinvariant_degree(alg, seed=SEED).degree == 1
    checks["not complete"] = pencil.completeness_test(alg, seed=SEED) is False
    dims = []
    for _ in range(5):
        x = lie.random_regular_point(alg, rng)
        a = lie.random_regular_point(alg, rng)
        dims.append(pencil.dim_dFa(alg, x, a, seed=SEED))
    checks["dim dF_a = 0"] = all(d == 0 for d in dims)
    bad = [k for k, v in checks.items() if not v]
    return _record(8, not bad, "failed: " + ", ".join(bad) if bad else "negative branch confirmed")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


def format_results():
    lines = []
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        lines.append(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    return lines


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(check):
    ok, detail = check()
    assert ok, detail


def test_residual_oracle_rejects_bad_terms():
    # the brute-force evaluator must see a nonzero residual for the target f3
    # at a = e7* and for a level-2 term with one coefficient perturbed
    alg = load_algebra("corpus/ooms8.alg")
    a = unit(8, 7)
    F = formal.build_basis(alg, a, 3).members[0]
    rng = random.Random(1)
    x = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)]

    def residual(cur, prev):
        r1 = _coadjoint_raw(alg.structure, 8, _gradient(dict(cur.terms), 8, x), a)
        r2 = _coadjoint_raw(alg.structure, 8, _gradient(dict(prev.terms), 8, x), x)
        return [u + v for u, v in zip(r1, r2)]

    assert not any(residual(F.term(3), F.term(2)))
    target_f3 = parse_poly(TARGET_TERMS["f1.3"], alg.labels)
    assert any(residual(target_f3, F.term(2)))
    perturbed = F.term(2) + parse_poly("1/7*x3*x7", alg.labels)
    assert any(residual(perturbed, F.term(1)))


def test_lagrange_gradient_matches_symbolic():
    p = parse_poly("3*x1^3*x2 - 1/2*x2^2 + x1", ("x1", "x2"))
    x = [Fraction(2, 3), Fraction(-5, 4)]
    assert _gradient(dict(p.terms), 2, x) == gradient_at(p, x)


if __name__ == "__main__":
    for check in CRITERIA:
        check()
    print("\n".join(format_results()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
